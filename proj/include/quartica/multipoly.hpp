#pragma once

// Sparse polynomials in x, y, z over a tower field, dense univariate
// polynomials, and the elimination machinery built on them: Sylvester
// resultants (fraction-free over the polynomial ring), Yun squarefree
// decomposition, vanishing orders, and structured root extraction capped at
// degree 4 so everything stays inside quadratic towers.

#include "quartica/projgeom.hpp"
#include "quartica/tower.hpp"

#include <map>
#include <optional>
#include <vector>

namespace quartica {

enum class Var : int { X = 0, Y = 1, Z = 2 };

struct Exponents {
    int e[3] = {0, 0, 0};
    int total() const { return e[0] + e[1] + e[2]; }
    int operator[](int i) const { return e[i]; }
    bool operator==(const Exponents& o) const {
        return e[0] == o.e[0] && e[1] == o.e[1] && e[2] == o.e[2];
    }
};

// graded lexicographic with x > y > z, largest term first
struct GrlexDesc {
    bool operator()(const Exponents& a, const Exponents& b) const {
        if (a.total() != b.total()) return a.total() > b.total();
        if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
        if (a.e[1] != b.e[1]) return a.e[1] > b.e[1];
        return a.e[2] > b.e[2];
    }
};

class UniPoly;

class MultiPoly {
public:
    using TermMap = std::map<Exponents, FieldElement, GrlexDesc>;

    explicit MultiPoly(TowerPtr t) : tower_(std::move(t)) {}
    static MultiPoly constant(const FieldElement& c);
    static MultiPoly constant(const TowerPtr& t, const Rational& r);
    static MultiPoly variable(const TowerPtr& t, Var v);
    static MultiPoly monomial(const FieldElement& c, Exponents e);

    const TowerPtr& tower() const { return tower_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int degree() const; // -1 for the zero polynomial
    int degree_in(Var v) const;
    bool is_homogeneous() const;

    FieldElement coeff(Exponents e) const;
    const FieldElement& leading_coeff() const; // grlex
    Exponents leading_exponents() const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const FieldElement& c) const;
    MultiPoly operator*(const Rational& r) const;
    MultiPoly pow(int e) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    FieldElement eval(const Triple& p) const;
    FieldElement eval(const ProjPoint& p) const { return eval(p.coords()); }
    MultiPoly derivative(Var v) const;

    // coefficient of v^k as a polynomial in the other variables, k = 0..deg
    std::vector<MultiPoly> coefficients_in(Var v) const;
    // v_i -> sum_j M[i][j] v_j
    MultiPoly substitute_linear(const std::array<std::array<FieldElement, 3>, 3>& m) const;
    // exact quotient; nullopt if the division leaves a remainder
    std::optional<MultiPoly> exact_divide(const MultiPoly& d) const;

    MultiPoly lift_to(const TowerPtr& t) const;
    bool proportional_to(const MultiPoly& o) const; // equal up to a nonzero scalar
    std::string str() const; // canonical grlex form, '^' powers, explicit '*'

    void add_term(Exponents e, const FieldElement& c); // builder; drops zeros

private:
    TowerPtr tower_;
    TermMap terms_;
};

class UniPoly {
public:
    explicit UniPoly(TowerPtr t) : tower_(std::move(t)) {}
    UniPoly(TowerPtr t, std::vector<FieldElement> coeffs); // lowest degree first

    static UniPoly constant(const FieldElement& c);
    static UniPoly from_roots(const TowerPtr& t, const std::vector<FieldElement>& roots);

    const TowerPtr& tower() const { return tower_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }
    const FieldElement& leading_coeff() const;
    FieldElement coeff(int k) const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const FieldElement& c) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    FieldElement eval(const FieldElement& r) const;
    UniPoly derivative() const;
    UniPoly monic() const;
    // field division: returns (quotient, remainder)
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;
    UniPoly mod(const UniPoly& d) const { return divrem(d).second; }
    bool proportional_to(const UniPoly& o) const;
    std::string str() const;

private:
    void trim();
    TowerPtr tower_;
    std::vector<FieldElement> c_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b); // monic

// Yun decomposition: pairwise-coprime monic squarefree factors with their
// multiplicities, ascending; the product of factor^multiplicity is p up to
// the leading unit.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);

// largest k with (t - r)^k | p, by repeated exact synthetic division
int vanishing_order(const UniPoly& p, const FieldElement& r);

struct StructuredRoots {
    std::vector<std::pair<FieldElement, int>> roots; // (root, multiplicity)
    bool complete = false; // false: residual factors have no roots in the tower
};
// deg p <= 4; degree <= 2 by the quadratic formula, 3..4 by linear-factor
// peeling and biquadratic / resolvent splits -- never by radicals outside the
// quadratic tower.
StructuredRoots roots_structured(const UniPoly& p);

FieldElement resultant(const UniPoly& f, const UniPoly& g);
// Sylvester determinant with respect to v, computed fraction-free over the
// polynomial ring; identically zero iff f and g share a factor of positive
// degree in v.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, Var v);

// Restriction of a homogeneous form to a line.  The line is parametrized as
// s*A + t*B with A, B picked from the standard basis vectors against the
// line's largest embedded coefficient (deterministic); poly is the binary
// form dehomogenized at t = 1, so the parameter point of a root s0 is
// s0*A + B and A itself is the point "at infinity" with multiplicity
// full_degree - deg(poly).
struct LineSection {
    UniPoly poly;
    int full_degree = 0;
    Triple A, B;

    int multiplicity_at_infinity() const { return full_degree - poly.degree(); }
    ProjPoint point_at(const FieldElement& s) const;
    ProjPoint point_at_infinity() const { return ProjPoint(A); }
};
LineSection restrict_to_line(const MultiPoly& p, const ProjLine& line);

MultiPoly conic_to_poly(const Conic& c);
Conic poly_to_conic(const MultiPoly& p);
MultiPoly line_to_poly(const ProjLine& l);

using LinearChange = std::array<std::array<FieldElement, 3>, 3>;

// Deterministic invertible coordinate change with small integer entries drawn
// from the seed; the same seed always yields the same matrix.
LinearChange seeded_coordinate_change(const TowerPtr& t, std::uint64_t seed);
FieldElement change_determinant(const LinearChange& m);
Triple apply_change(const LinearChange& m, const Triple& p); // p -> M p

} // namespace quartica
