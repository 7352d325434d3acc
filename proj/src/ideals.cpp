#include "quartica/ideals.hpp"

#include "quartica/linalg.hpp"

#include <algorithm>

namespace quartica {

void validate_point_set(const std::vector<ProjPoint>& ps) {
    if (ps.empty()) return;
    const TowerPtr& t = ps[0].tower();
    std::set<ProjPoint> seen;
    for (const auto& p : ps) {
        if (!p.tower()->same_as(*t)) throw TowerMismatch("point set over mixed towers");
        if (!seen.insert(p).second) throw DegenerateInput("repeated point " + p.str());
    }
}

static long binom2(long n) { return n < 2 ? (n == 1 ? 1 : 0) : n * (n - 1) / 2; }

// C(t+2, 2) monomials of degree t, graded-lex order
static std::vector<Exponents> degree_monomials(int t) {
    std::vector<Exponents> out;
    for (int ex = t; ex >= 0; --ex)
        for (int ey = t - ex; ey >= 0; --ey) out.push_back({{ex, ey, t - ex - ey}});
    return out;
}

long hilbert_function(const std::vector<ProjPoint>& ps, int t) {
    if (t < 0) throw DegenerateInput("negative degree");
    validate_point_set(ps);
    if (ps.empty()) return 0;
    const TowerPtr& tw = ps[0].tower();
    auto monos = degree_monomials(t);
    Matrix m;
    m.reserve(ps.size());
    for (const auto& p : ps) {
        std::vector<FieldElement> row;
        row.reserve(monos.size());
        std::vector<FieldElement> px{FieldElement::one(tw)}, py{FieldElement::one(tw)},
            pz{FieldElement::one(tw)};
        for (int k = 1; k <= t; ++k) {
            px.push_back(px.back() * p[0]);
            py.push_back(py.back() * p[1]);
            pz.push_back(pz.back() * p[2]);
        }
        for (const auto& e : monos) row.push_back(px[e.e[0]] * py[e.e[1]] * pz[e.e[2]]);
        m.push_back(std::move(row));
    }
    return matrix_rank(std::move(m));
}

BettiSpec::BettiSpec(std::vector<std::pair<int, long>> num, long expected)
    : numerator(std::move(num)), expected_cardinality(expected) {
    long m0 = 0, m1 = 0, m2 = 0;
    for (const auto& [a, m] : numerator) {
        m0 += m;
        m1 += m * a;
        m2 += m * a * a;
    }
    if (m0 != 0 || m1 != 0)
        throw SpecInconsistent("numerator does not define a finite length quotient");
    if (m2 != 2 * expected_cardinality)
        throw SpecInconsistent("numerator stabilizes at " + std::to_string(m2 / 2) + ", not " +
                               std::to_string(expected_cardinality));
}

long BettiSpec::expected_value(int t) const {
    long v = 0;
    for (const auto& [a, m] : numerator)
        if (t - a >= 0) v += m * binom2(long(t) - a + 2);
    return v;
}

int BettiSpec::largest_shift() const {
    int s = 0;
    for (const auto& [a, m] : numerator) s = std::max(s, a);
    return s;
}

HilbertReport hilbert_consistency(const std::vector<ProjPoint>& ps, const BettiSpec& spec,
                                  int t_max) {
    validate_point_set(ps);
    if (spec.expected_cardinality != long(ps.size()))
        throw SpecInconsistent("numerator stabilizes at " +
                               std::to_string(spec.expected_cardinality) + " but the set has " +
                               std::to_string(ps.size()) + " points");
    HilbertReport rep;
    rep.consistent = true;
    rep.stable_value = spec.expected_cardinality;
    for (int t = 0; t <= t_max; ++t) {
        long computed = hilbert_function(ps, t);
        long expected = spec.expected_value(t);
        long full = binom2(long(t) + 2);
        rep.table.push_back({t, computed, expected, full});
        if (computed != expected) rep.consistent = false;
        if (computed < full) rep.rank_drops.push_back(t);
    }
    return rep;
}

CiCertificate verify_complete_intersection(const std::vector<ProjPoint>& ps, const MultiPoly& f,
                                           const MultiPoly& g) {
    if (!f.is_homogeneous() || !g.is_homogeneous() || f.is_zero() || g.is_zero())
        throw NotHomogeneous("complete intersection certificate needs forms");
    validate_point_set(ps);
    CiCertificate cert;
    if (ps.empty()) {
        cert.failing_clause = "empty point set";
        return cert;
    }
    const TowerPtr& tw = ps[0].tower();
    MultiPoly fu = f.lift_to(tw), gu = g.lift_to(tw);

    cert.on_both = true;
    for (const auto& p : ps)
        if (!fu.eval(p).is_zero() || !gu.eval(p).is_zero()) cert.on_both = false;
    if (!cert.on_both) cert.failing_clause = "a point misses V(f) or V(g)";

    cert.count_ok = long(ps.size()) == long(f.degree()) * long(g.degree());
    if (!cert.count_ok && cert.failing_clause.empty())
        cert.failing_clause = "cardinality differs from deg f * deg g";

    cert.coprime = true;
    for (Var v : {Var::X, Var::Y, Var::Z}) {
        if (f.degree_in(v) < 1 || g.degree_in(v) < 1) continue;
        if (resultant(f, g, v).is_zero()) cert.coprime = false;
    }
    if (!cert.coprime && cert.failing_clause.empty())
        cert.failing_clause = "f and g share a component";

    cert.transversal = true;
    for (const auto& p : ps) {
        auto gf = PlaneCurve(fu).gradient_at(p.coords());
        auto gg = PlaneCurve(gu).gradient_at(p.coords());
        bool independent = false;
        for (int a = 0; a < 3 && !independent; ++a)
            for (int b = a + 1; b < 3 && !independent; ++b)
                if (!(gf[a] * gg[b] - gf[b] * gg[a]).is_zero()) independent = true;
        if (!independent) {
            cert.transversal = false;
            if (cert.failing_clause.empty())
                cert.failing_clause = "gradients proportional at " + p.str();
        }
    }
    return cert;
}

LocusCheck generator_zero_locus_check(const std::vector<ProjPoint>& ps,
                                      const std::vector<MultiPoly>& gens,
                                      const std::vector<std::vector<ProjLine>>& hint) {
    if (gens.empty() || gens.size() != hint.size())
        throw DegenerateInput("each generator needs its line decomposition");
    validate_point_set(ps);
    const TowerPtr& tw = gens[0].tower();

    // the hint must reproduce each generator exactly (up to a scalar)
    for (std::size_t k = 0; k < gens.size(); ++k) {
        MultiPoly prod = MultiPoly::constant(tw, Rational(1));
        for (const auto& l : hint[k]) prod = prod * line_to_poly(l.lift_to(tw));
        if (!prod.proportional_to(gens[k]))
            throw DegenerateInput("hint lines do not factor generator " + std::to_string(k));
    }

    LocusCheck check;
    // a line lying in every generator's zero set makes the locus infinite
    for (const auto& l : hint[0]) {
        bool in_all = true;
        for (std::size_t k = 1; k < gens.size() && in_all; ++k) {
            bool found = false;
            for (const auto& l2 : hint[k])
                if (l2 == l) found = true;
            in_all = found;
        }
        if (in_all) {
            check.infinite = true;
            check.equal = false;
            return check;
        }
    }

    // candidate points: all pairwise meets of hint lines
    std::set<ProjPoint> candidates;
    std::vector<ProjLine> all;
    for (const auto& lines : hint)
        for (const auto& l : lines) all.push_back(l.lift_to(tw));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i] != all[j]) candidates.insert(meet(all[i], all[j]));

    std::set<ProjPoint> locus;
    for (const auto& p : candidates) {
        bool on_all = true;
        for (const auto& gen : gens)
            if (!gen.eval(p).is_zero()) on_all = false;
        if (on_all) locus.insert(p);
    }
    std::set<ProjPoint> expected;
    for (const auto& p : ps) expected.insert(p.lift_to(tw));
    for (const auto& p : locus)
        if (!expected.count(p)) check.extra.push_back(p);
    for (const auto& p : expected)
        if (!locus.count(p)) check.missing.push_back(p);
    check.equal = check.extra.empty() && check.missing.empty();
    return check;
}

Containment variety_containment(const MultiPoly& f, const MultiPoly& g,
                                const std::vector<MultiPoly>& h_factors, std::uint64_t seed1,
                                std::uint64_t seed2) {
    if (h_factors.empty()) throw DegenerateInput("empty containment target");
    const TowerPtr& t = f.tower();

    auto pass = [&](std::uint64_t seed) -> bool {
        for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
            LinearChange m = seeded_coordinate_change(t, seed + 101 * attempt);
            MultiPoly fc = f.substitute_linear(m);
            if (fc.degree_in(Var::Z) != f.degree()) continue;
            MultiPoly gc = g.substitute_linear(m);
            if (gc.degree_in(Var::Z) != g.degree()) continue;
            std::vector<MultiPoly> hc;
            bool ok = true;
            for (const auto& h : h_factors) {
                hc.push_back(h.substitute_linear(m));
                if (hc.back().degree_in(Var::Z) != h.degree()) ok = false;
            }
            if (!ok) continue;

            MultiPoly rfg = resultant(fc, gc, Var::Z);
            if (rfg.is_zero()) throw CommonComponent("f and g share a component");
            auto dehom = [&](const MultiPoly& form) {
                int n = form.degree();
                std::vector<FieldElement> c;
                for (int k = 0; k <= n; ++k) c.push_back(form.coeff({{k, n - k, 0}}));
                return UniPoly(t, std::move(c));
            };
            UniPoly r = dehom(rfg);
            if (r.degree() < rfg.degree()) continue; // projection hit infinity

            UniPoly d = r.divrem(gcd(r, r.derivative())).first; // squarefree part
            // accumulate Res_z(f, prod h_i) modulo d factor by factor
            UniPoly acc = UniPoly::constant(FieldElement::one(t));
            for (std::size_t hi = 0; hi < hc.size(); ++hi) {
                MultiPoly rfh = resultant(fc, hc[hi], Var::Z);
                if (rfh.is_zero()) {
                    // a shared component: sound only when f divides the factor,
                    // in which case V(f) itself sits inside the target
                    if (h_factors[hi].exact_divide(f)) return true;
                    throw CommonComponent("f and a target factor share a component");
                }
                acc = (acc * dehom(rfh)).mod(d);
                if (acc.is_zero()) return true; // divisible already
            }
            return acc.is_zero();
        }
        return false;
    };

    if (pass(seed1) && pass(seed2)) return Containment::Certified;
    return Containment::Inconclusive;
}

} // namespace quartica
