#include "quartica/projgeom.hpp"

#include <algorithm>
#include <cmath>

namespace quartica {

Triple normalize_triple(Triple t) {
    t[0].require_same_tower(t[1]);
    t[0].require_same_tower(t[2]);
    for (auto& c : t) {
        if (!c.is_zero()) {
            FieldElement inv = c.inverse();
            for (auto& d : t) d = d * inv;
            return t;
        }
    }
    throw DegenerateInput("all three homogeneous coordinates are zero");
}

static bool triple_less(const Triple& a, const Triple& b) {
    for (int i = 0; i < 3; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

static std::string triple_str(const Triple& t, const char* open, const char* close) {
    return std::string(open) + t[0].str() + " : " + t[1].str() + " : " + t[2].str() + close;
}

static Triple lift_triple(const Triple& t, const TowerPtr& super) {
    return Triple{t[0].lift_to(super), t[1].lift_to(super), t[2].lift_to(super)};
}

ProjPoint::ProjPoint(Triple coords) : c_(normalize_triple(std::move(coords))) {}
ProjPoint::ProjPoint(FieldElement x, FieldElement y, FieldElement z)
    : ProjPoint(Triple{std::move(x), std::move(y), std::move(z)}) {}

bool ProjPoint::operator<(const ProjPoint& o) const { return triple_less(c_, o.c_); }
std::string ProjPoint::str() const { return triple_str(c_, "(", ")"); }
ProjPoint ProjPoint::lift_to(const TowerPtr& t) const { return ProjPoint(lift_triple(c_, t)); }

ProjLine::ProjLine(Triple coeffs) : c_(normalize_triple(std::move(coeffs))) {}
ProjLine::ProjLine(FieldElement a, FieldElement b, FieldElement c)
    : ProjLine(Triple{std::move(a), std::move(b), std::move(c)}) {}

bool ProjLine::operator<(const ProjLine& o) const { return triple_less(c_, o.c_); }
std::string ProjLine::str() const { return triple_str(c_, "[", "]"); }
ProjLine ProjLine::lift_to(const TowerPtr& t) const { return ProjLine(lift_triple(c_, t)); }

bool ProjLine::contains(const ProjPoint& p) const {
    return (c_[0] * p[0] + c_[1] * p[1] + c_[2] * p[2]).is_zero();
}

Conic::Conic(std::array<FieldElement, 6> coeffs) : a_(std::move(coeffs)) {
    for (int i = 1; i < 6; ++i) a_[0].require_same_tower(a_[i]);
    for (auto& c : a_) {
        if (!c.is_zero()) {
            FieldElement inv = c.inverse();
            for (auto& d : a_) d = d * inv;
            return;
        }
    }
    throw DegenerateInput("zero conic");
}

bool Conic::operator<(const Conic& o) const {
    for (int i = 0; i < 6; ++i)
        if (a_[i] != o.a_[i]) return a_[i] < o.a_[i];
    return false;
}

FieldElement Conic::eval(const ProjPoint& p) const {
    const auto& x = p[0];
    const auto& y = p[1];
    const auto& z = p[2];
    return a_[0] * x * x + a_[1] * x * y + a_[2] * x * z + a_[3] * y * y + a_[4] * y * z +
           a_[5] * z * z;
}

std::array<FieldElement, 3> Conic::gradient(const Triple& p) const {
    const auto& x = p[0];
    const auto& y = p[1];
    const auto& z = p[2];
    return {a_[0] * x * Rational(2) + a_[1] * y + a_[2] * z,
            a_[3] * y * Rational(2) + a_[1] * x + a_[4] * z,
            a_[5] * z * Rational(2) + a_[2] * x + a_[4] * y};
}

int Conic::gram_rank() const {
    const Rational half(1, 2);
    FieldElement g[3][3] = {{a_[0], a_[1] * half, a_[2] * half},
                            {a_[1] * half, a_[3], a_[4] * half},
                            {a_[2] * half, a_[4] * half, a_[5]}};
    int rank = 0;
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        int pivot = -1;
        for (int r = row; r < 3; ++r)
            if (!g[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(g[pivot], g[row]);
        for (int r = row + 1; r < 3; ++r) {
            if (g[r][col].is_zero()) continue;
            FieldElement f = g[r][col] / g[row][col];
            for (int c = col; c < 3; ++c) g[r][c] = g[r][c] - f * g[row][c];
        }
        ++rank;
        ++row;
    }
    return rank;
}

Conic Conic::lift_to(const TowerPtr& t) const {
    std::array<FieldElement, 6> out{a_[0].lift_to(t), a_[1].lift_to(t), a_[2].lift_to(t),
                                    a_[3].lift_to(t), a_[4].lift_to(t), a_[5].lift_to(t)};
    return Conic(std::move(out));
}

std::string Conic::str() const {
    static const char* mono[6] = {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"};
    std::string s;
    for (int i = 0; i < 6; ++i) {
        if (a_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        if (a_[i] == FieldElement::one(tower())) {
            s += mono[i];
        } else {
            s += "(" + a_[i].str() + ")*" + mono[i];
        }
    }
    return s.empty() ? "0" : s;
}

ProjLine dualize(const ProjPoint& p) { return ProjLine(p.coords()); }
ProjPoint dualize(const ProjLine& l) { return ProjPoint(l.coeffs()); }

static Triple cross(const Triple& a, const Triple& b) {
    return Triple{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                  a[0] * b[1] - a[1] * b[0]};
}

ProjPoint meet(const ProjLine& l1, const ProjLine& l2) {
    if (l1 == l2) throw IdenticalInputs("meet of a line with itself");
    return ProjPoint(cross(l1.coeffs(), l2.coeffs()));
}

ProjLine join(const ProjPoint& p1, const ProjPoint& p2) {
    if (p1 == p2) throw IdenticalInputs("join of a point with itself");
    return ProjLine(cross(p1.coords(), p2.coords()));
}

bool collinear(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3) {
    if (p1 == p2 || p1 == p3 || p2 == p3) return true;
    Triple n = cross(p1.coords(), p2.coords());
    return (n[0] * p3[0] + n[1] * p3[1] + n[2] * p3[2]).is_zero();
}

// Chart for the cross-ratio: drop the line coordinate with the largest
// embedded coefficient; the two remaining coordinates act as homogeneous
// parameters on the line.  ((a-c)(b-d))/((a-d)(b-c)) in those parameters
// becomes a ratio of 2x2 determinants, which also absorbs points sitting at
// the chart's infinity.
static FieldElement cross_ratio_in_chart(const std::array<const ProjPoint*, 4>& p, int drop) {
    int u = (drop == 0) ? 1 : 0;
    int v = (drop == 2) ? 1 : 2;
    auto wedge = [&](const ProjPoint& a, const ProjPoint& b) {
        return a[u] * b[v] - b[u] * a[v];
    };
    FieldElement num = wedge(*p[0], *p[2]) * wedge(*p[1], *p[3]);
    FieldElement den = wedge(*p[0], *p[3]) * wedge(*p[1], *p[2]);
    if (den.is_zero()) throw NotDistinct("cross-ratio with coincident points");
    return num / den;
}

static int cross_ratio_chart(const ProjLine& l) {
    double best = -1;
    int drop = 0;
    for (int i = 0; i < 3; ++i) {
        double m = std::abs(l[i].embed());
        if (m > best + 1e-15) {
            best = m;
            drop = i;
        }
    }
    return drop;
}

FieldElement cross_ratio(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                         const ProjPoint& p4) {
    std::array<const ProjPoint*, 4> p{&p1, &p2, &p3, &p4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (*p[i] == *p[j]) throw NotDistinct(p[i]->str());
    ProjLine l = join(p1, p2);
    if (!l.contains(p3) || !l.contains(p4)) throw NotCollinear("cross-ratio needs collinear points");
    return cross_ratio_in_chart(p, cross_ratio_chart(l));
}

FieldElement cross_ratio_second_chart(const ProjPoint& p1, const ProjPoint& p2,
                                      const ProjPoint& p3, const ProjPoint& p4) {
    std::array<const ProjPoint*, 4> p{&p1, &p2, &p3, &p4};
    ProjLine l = join(p1, p2);
    int primary = cross_ratio_chart(l);
    for (int drop = 0; drop < 3; ++drop) {
        // a usable chart must not project from a point of the line itself
        if (drop == primary || l[drop].is_zero()) continue;
        return cross_ratio_in_chart(p, drop);
    }
    throw DegenerateInput("no second chart available");
}

bool is_harmonic(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                 const ProjPoint& p4) {
    FieldElement cr = cross_ratio(p1, p2, p3, p4);
    const TowerPtr& t = cr.tower();
    return cr == FieldElement(t, Rational(-1)) || cr == FieldElement(t, Rational(1, 2)) ||
           cr == FieldElement(t, Rational(2));
}

std::vector<ProjPoint> LineCensus::points_of_multiplicity(const std::set<int>& n) const {
    std::vector<ProjPoint> out;
    for (const auto& e : points)
        if (n.count(int(e.lines.size()))) out.push_back(e.point);
    return out;
}

std::vector<ProjPoint> LineCensus::points_of_multiplicity(int n) const {
    return points_of_multiplicity(std::set<int>{n});
}

long LineCensus::multiplicity_weighted_pairs() const {
    long s = 0;
    for (const auto& e : points) {
        long k = long(e.lines.size());
        s += k * (k - 1) / 2;
    }
    return s;
}

LineCensus line_census(const std::vector<ProjLine>& lines) {
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] == lines[j])
                throw DegenerateInput("duplicate line at indices " + std::to_string(i) + "," +
                                      std::to_string(j));

    std::map<ProjPoint, std::set<std::size_t>> groups;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            ProjPoint p = meet(lines[i], lines[j]);
            auto& g = groups[p];
            g.insert(i);
            g.insert(j);
        }
    }

    LineCensus census;
    std::size_t max_mult = 2;
    for (auto& [pt, idx] : groups) {
        max_mult = std::max(max_mult, idx.size());
        census.points.push_back({pt, std::vector<std::size_t>(idx.begin(), idx.end())});
    }
    census.t_vector.assign(max_mult - 1, 0);
    for (const auto& e : census.points) ++census.t_vector[e.lines.size() - 2];

    // Sum over points of C(k,2) must exhaust all C(d,2) pairs.
    long d = long(lines.size());
    if (census.multiplicity_weighted_pairs() != d * (d - 1) / 2)
        throw KernelError("line census pair ledger mismatch");
    return census;
}

} // namespace quartica
