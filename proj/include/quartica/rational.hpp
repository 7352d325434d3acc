#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

namespace quartica {

// All exact scalar arithmetic bottoms out here. cpp_rational keeps
// gcd(|num|, den) = 1 and den > 0 as class invariants, so every stored
// coordinate is in lowest terms with zero represented as 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::optional<BigInt> integer_sqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt r = boost::multiprecision::sqrt(n);
    if (r * r != n) return std::nullopt;
    return r;
}

// Exact square root in Q, or nullopt. A reduced fraction is a square
// iff numerator and denominator are both perfect squares.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    auto num = integer_sqrt(boost::multiprecision::numerator(q));
    if (!num) return std::nullopt;
    auto den = integer_sqrt(boost::multiprecision::denominator(q));
    if (!den) return std::nullopt;
    return Rational(*num, *den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

} // namespace quartica
