#pragma once

// Groebner-free verification of ideal-theoretic claims about finite point
// sets: Hilbert functions as evaluation-matrix ranks, consistency against a
// claimed free-resolution shape, complete-intersection certificates, and a
// resultant-divisibility containment test.

#include "quartica/census.hpp"
#include "quartica/contact.hpp"

namespace quartica {

// throws on duplicates or mixed towers
void validate_point_set(const std::vector<ProjPoint>& ps);

// Hilbert function of the quotient by the ideal of the points at degree t:
// the exact rank of the |ps| x C(t+2,2) evaluation matrix of the degree-t
// monomials at canonical representatives.
long hilbert_function(const std::vector<ProjPoint>& ps, int t);

// the numerator of a claimed Hilbert series, as (degree, signed multiplicity)
struct BettiSpec {
    std::vector<std::pair<int, long>> numerator;
    long expected_cardinality = 0;

    BettiSpec(std::vector<std::pair<int, long>> num, long expected);
    long expected_value(int t) const; // sum of m_a * C(t-a+2, 2)
    int largest_shift() const;
};

struct HilbertRow {
    int t;
    long computed;
    long expected;
    long full; // C(t+2,2): rank of the whole degree-t space
};

struct HilbertReport {
    bool consistent = false;
    std::vector<HilbertRow> table;
    std::vector<int> rank_drops; // degrees t with computed < min(C(t+2,2), |ps|)... first generators
    long stable_value = 0;
};

// Per-degree comparison of the computed Hilbert function against the claimed
// numerator up to t_max, plus the degrees where forms vanishing on the whole
// set first appear.  Throws SpecInconsistent if the numerator itself does not
// stabilize at |ps|.
HilbertReport hilbert_consistency(const std::vector<ProjPoint>& ps, const BettiSpec& spec,
                                  int t_max);

struct CiCertificate {
    bool on_both = false;     // (a) every point vanishes on f and g
    bool count_ok = false;    // (b) |ps| = deg f * deg g
    bool coprime = false;     // (c) no shared component in any elimination
    bool transversal = false; // (d) independent gradients at every point
    std::string failing_clause;
    bool certified() const { return on_both && count_ok && coprime && transversal; }
};
// (a)-(d) jointly force V(f,g) = ps exactly.
CiCertificate verify_complete_intersection(const std::vector<ProjPoint>& ps, const MultiPoly& f,
                                           const MultiPoly& g);

struct LocusCheck {
    bool equal = false;
    bool infinite = false; // a whole line satisfies every generator
    std::vector<ProjPoint> extra;   // common zeros not in ps
    std::vector<ProjPoint> missing; // ps points not in the common zero locus
};
// Combinatorial zero-locus comparison for generators that are products of
// line forms: the hint lists each generator's lines, the candidate points are
// the pairwise meets, and equality with ps is exact set equality.
LocusCheck generator_zero_locus_check(const std::vector<ProjPoint>& ps,
                                      const std::vector<MultiPoly>& gens,
                                      const std::vector<std::vector<ProjLine>>& hint);

enum class Containment { Certified, Inconclusive };
// Sufficient test for V(f,g) inside V(prod h_i) in generic coordinates: the
// squarefree part of Res_z(f,g) must divide Res_z(f, prod h_i) under a shared
// seeded change, for two independent seeds.  Failure is inconclusive, never a
// refutation.
Containment variety_containment(const MultiPoly& f, const MultiPoly& g,
                                const std::vector<MultiPoly>& h_factors,
                                std::uint64_t seed1 = 1, std::uint64_t seed2 = 2);

} // namespace quartica
