#pragma once

// Towers of quadratic extensions of Q and their elements.
//
// A tower is a chain Q = K_0 < K_1 < ... < K_L where K_{k+1} = K_k(g) with
// g^2 = r for some r in K_k that is not a square there.  Every constant the
// kernel ever touches (i, sqrt2, sqrt[4]2, sqrt3, sqrt5, the primitive 8th
// root of unity) lives in such a tower, and the quadratic shape keeps the
// square-root oracle complete by plain recursion.
//
// Elements are stored dense: 2^L rational coordinates, the top bit of the
// index selecting the last generator.  All operations are exact; the complex
// embedding is diagnostic only and never feeds back into coordinates.

#include "quartica/errors.hpp"
#include "quartica/rational.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace quartica {

class TowerField;
using TowerPtr = std::shared_ptr<const TowerField>;
class FieldElement;

class TowerField {
public:
    struct Level {
        std::string name;
        std::vector<Rational> radicand; // coords over the subtower below (size 2^k)
        bool scalar_radicand = false;
        std::complex<double> gen_embed; // chosen square root of the embedded radicand
    };

    static TowerPtr rationals();

    std::size_t levels() const { return levels_.size(); }
    std::size_t dim() const { return std::size_t(1) << levels_.size(); }
    const Level& level(std::size_t k) const { return levels_[k]; }
    int level_of(const std::string& name) const; // -1 if absent

    // "Q(i:-1,r2:2,...)" with radicands printed over the subtower basis.
    const std::string& spec_string() const { return spec_; }
    bool same_as(const TowerField& o) const;

    // -- span arithmetic on raw coordinate arrays (nlv = number of levels) --
    void mul_span(std::size_t nlv, const Rational* a, const Rational* b,
                  Rational* out, Rational* scratch) const;
    void inv_span(std::size_t nlv, const Rational* a, Rational* out) const;
    bool sqrt_span(std::size_t nlv, const Rational* a, Rational* out) const;
    std::complex<double> embed_span(std::size_t nlv, const Rational* a) const;

private:
    friend TowerPtr extend_tower(const TowerPtr&, const std::string&, const FieldElement&);
    void radicand_mul(std::size_t lv, const Rational* a, Rational* out, Rational* scratch) const;

    std::vector<Level> levels_;
    std::string spec_;
};

class FieldElement {
public:
    FieldElement(TowerPtr t, Rational r);
    FieldElement(TowerPtr t, std::vector<Rational> coords);

    static FieldElement zero(const TowerPtr& t) { return FieldElement(t, Rational(0)); }
    static FieldElement one(const TowerPtr& t) { return FieldElement(t, Rational(1)); }
    static FieldElement generator(const TowerPtr& t, std::size_t level);
    static FieldElement generator(const TowerPtr& t, const std::string& name);

    const TowerPtr& tower() const { return tower_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;              // only coordinate [0] may be nonzero
    const Rational& rational_part() const { return c_[0]; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement operator*(const Rational& r) const;
    FieldElement operator/(const Rational& r) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // deterministic total order on a fixed tower (coordinate-wise); exact, no floats
    bool operator<(const FieldElement& o) const;

    FieldElement inverse() const;
    FieldElement pow(long e) const;
    std::complex<double> embed() const;
    std::string str() const;

    // embed into a tower whose levels contain this element's levels as a
    // subsequence (matched by name, radicands verified exactly)
    FieldElement lift_to(const TowerPtr& super) const;

    void require_same_tower(const FieldElement& o) const;

private:
    TowerPtr tower_;
    std::vector<Rational> c_;
};

// Appends one quadratic level.  Throws DegenerateExtension if the radicand is
// already a square in the base tower, MalformedSpec on a zero radicand or a
// reused generator name.
TowerPtr extend_tower(const TowerPtr& base, const std::string& name,
                      const FieldElement& radicand);

// Square root with a deterministic branch choice: among the two exact roots,
// the one whose numeric embedding has non-negative real part wins (ties on
// the real axis resolved toward non-negative imaginary part).  nullopt means
// the element is provably not a square in its tower.
std::optional<FieldElement> sqrt_in_tower(const FieldElement& a);

inline std::complex<double> embed_numeric(const FieldElement& a) { return a.embed(); }

} // namespace quartica
