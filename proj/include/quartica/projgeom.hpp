#pragma once

// Projective points, lines and conics over a tower field, plus the
// line-arrangement census (t-vectors and the P_n point extraction).

#include "quartica/tower.hpp"

#include <array>
#include <map>
#include <set>
#include <vector>

namespace quartica {

using Triple = std::array<FieldElement, 3>;

// Canonical normalization shared by points and lines: scale so the first
// nonzero coordinate is 1.  Equality of objects is equality of these triples.
Triple normalize_triple(Triple t);

class ProjPoint {
public:
    explicit ProjPoint(Triple coords);
    ProjPoint(FieldElement x, FieldElement y, FieldElement z);

    const Triple& coords() const { return c_; }
    const FieldElement& operator[](std::size_t i) const { return c_[i]; }
    const TowerPtr& tower() const { return c_[0].tower(); }

    bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const;

    ProjPoint lift_to(const TowerPtr& t) const;
    std::string str() const; // "(a : b : c)"

private:
    Triple c_;
};

class ProjLine {
public:
    explicit ProjLine(Triple coeffs);
    ProjLine(FieldElement a, FieldElement b, FieldElement c);

    const Triple& coeffs() const { return c_; }
    const FieldElement& operator[](std::size_t i) const { return c_[i]; }
    const TowerPtr& tower() const { return c_[0].tower(); }

    bool operator==(const ProjLine& o) const { return c_ == o.c_; }
    bool operator!=(const ProjLine& o) const { return !(*this == o); }
    bool operator<(const ProjLine& o) const;

    bool contains(const ProjPoint& p) const;
    ProjLine lift_to(const TowerPtr& t) const;
    std::string str() const;

private:
    Triple c_;
};

// A conic as a projective class of symmetric 3x3 Gram matrices, normalized so
// the first nonzero entry (row-major upper triangle) is 1.
class Conic {
public:
    // coefficient order: xx, xy, xz, yy, yz, zz for
    // a0 x^2 + a1 xy + a2 xz + a3 y^2 + a4 yz + a5 z^2
    explicit Conic(std::array<FieldElement, 6> coeffs);

    const std::array<FieldElement, 6>& coeffs() const { return a_; }
    const TowerPtr& tower() const { return a_[0].tower(); }

    bool operator==(const Conic& o) const { return a_ == o.a_; }
    bool operator!=(const Conic& o) const { return !(*this == o); }
    bool operator<(const Conic& o) const;

    FieldElement eval(const ProjPoint& p) const;
    std::array<FieldElement, 3> gradient(const Triple& p) const;
    int gram_rank() const;    // 3 smooth, 2 line pair, 1 double line
    bool is_reduced() const { return gram_rank() >= 2; }
    Conic lift_to(const TowerPtr& t) const;
    std::string str() const;

private:
    std::array<FieldElement, 6> a_;
};

ProjLine dualize(const ProjPoint& p);
ProjPoint dualize(const ProjLine& l);

ProjPoint meet(const ProjLine& l1, const ProjLine& l2);
ProjLine join(const ProjPoint& p1, const ProjPoint& p2);

bool collinear(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3);

// CR(a,b;c,d) = ((a-c)(b-d)) / ((a-d)(b-c)) in an affine chart of the common
// line; the chart drops the coordinate with the largest embedded coefficient
// of the line (deterministic, and the value is chart-independent anyway).
FieldElement cross_ratio(const ProjPoint& p1, const ProjPoint& p2,
                         const ProjPoint& p3, const ProjPoint& p4);
// Same value recomputed in a different affine chart of the line; used to
// assert chart invariance.
FieldElement cross_ratio_second_chart(const ProjPoint& p1, const ProjPoint& p2,
                                      const ProjPoint& p3, const ProjPoint& p4);
// Unordered harmonicity: CR lies in {-1, 1/2, 2}.
bool is_harmonic(const ProjPoint& p1, const ProjPoint& p2,
                 const ProjPoint& p3, const ProjPoint& p4);

struct LineCensus {
    struct Entry {
        ProjPoint point;
        std::vector<std::size_t> lines; // indices of incident lines, ascending
    };
    std::vector<Entry> points;   // deterministic order (by point)
    std::vector<long> t_vector;  // t_vector[0] = t_2, ..., up to max multiplicity

    std::vector<ProjPoint> points_of_multiplicity(const std::set<int>& n) const;
    std::vector<ProjPoint> points_of_multiplicity(int n) const;
    long multiplicity_weighted_pairs() const; // sum over points of C(k,2)
};

// All pairwise meets of a duplicate-free arrangement, grouped exactly.
LineCensus line_census(const std::vector<ProjLine>& lines);

} // namespace quartica
