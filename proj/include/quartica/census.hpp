#pragma once

// Coordinate-free certification of conic-arrangement intersection statistics:
// per-pair multiplicity patterns from resultants in seeded coordinates,
// cross-pair coincidence detection through resultant gcds, verification of
// claimed special points, and the global Bezout ledger.

#include "quartica/contact.hpp"

#include <cstdint>
#include <map>

namespace quartica {

// Resultant of two forms with respect to z after a seeded coordinate change,
// dehomogenized at y = 1.  Reseeds deterministically until the change neither
// drops the z-degrees nor pushes an intersection point to the chart infinity,
// so the returned polynomial has full degree deg(f)*deg(g).
UniPoly generic_resultant(const MultiPoly& f, const MultiPoly& g, std::uint64_t seed);

struct PairPattern {
    std::vector<int> mults;                          // descending, sums to 4
    std::vector<std::pair<ProjPoint, int>> located;  // tower-resident points only
};

// Intersection pattern of two distinct conics (a partition of 4 by local
// multiplicities).  The pattern is recomputed under a second derived seed and
// the two runs must agree; persistent disagreement raises
// ProjectionCollision rather than ever returning a wrong pattern.
PairPattern conic_pair_pattern(const Conic& a, const Conic& b, std::uint64_t seed);

struct TripleCoincidence {
    std::vector<ProjPoint> points; // verified common points of all three conics
    bool resolved = false;         // false: candidates escaped the tower
};
// Common points of three pairwise-distinct conics, certified through
// gcd(Res_z(q1,q2), Res_z(q1,q3)) in shared seeded coordinates; every root is
// either verified by direct evaluation or reported unresolved, never counted
// silently.
TripleCoincidence triple_coincidence(const Conic& q1, const Conic& q2, const Conic& q3,
                                     std::uint64_t seed);

struct SpecialPointReport {
    ProjPoint point;
    std::vector<std::size_t> conics;                            // incident, ascending
    std::vector<std::tuple<std::size_t, std::size_t, int>> contacts; // pairwise orders
    int multiplicity_sum = 0; // sum of pair multiplicities at the point
};

enum class CensusStatus { Conclusive, Inconclusive };

struct ConicCensus {
    std::map<std::pair<std::size_t, std::size_t>, PairPattern> pairs;
    std::vector<SpecialPointReport> special_points;
    long total = 0;        // 4 * C(n,2)
    long distinct = -1;    // -1 while inconclusive
    long simple = -1;
    long tangency = 0;     // special points on exactly two conics, contact >= 2
    long quadruple = 0;    // special points on exactly four conics
    std::map<int, long> kfold; // incident-conic count -> number of such points
    CensusStatus status = CensusStatus::Inconclusive;
    std::string note;
};

// Full census of a conic arrangement against a list of claimed special
// points.  The claimed points may live in an extension of the conics' tower;
// pair and triple elimination runs in the conics' tower, per-point
// verification in the claims' tower.  A verified coincidence that is not
// claimed fails loudly (UnexplainedCoincidence); candidates that escape every
// tower leave the census inconclusive instead of wrong.
ConicCensus conic_census(const std::vector<Conic>& conics,
                         const std::vector<ProjPoint>& claimed,
                         std::uint64_t seed1 = 1, std::uint64_t seed2 = 2);

struct OcticCertificate {
    bool all_on_octic = false;
    bool all_on_lines = false;
    bool count_matches = false;      // |pts| = 8 * 3
    bool restrictions_squarefree = false;
    std::array<int, 3> per_line{0, 0, 0};
    bool certified() const {
        return all_on_octic && all_on_lines && count_matches && restrictions_squarefree;
    }
};
// Certifies a 24-point set as the transversal complete intersection of a
// degree-8 form with xyz: membership, 8 points per coordinate line, and a
// squarefree restriction on each line.
OcticCertificate octic_membership(const std::vector<ProjPoint>& pts, const MultiPoly& octic);

} // namespace quartica
