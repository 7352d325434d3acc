#include "quartica/census.hpp"

#include <algorithm>

namespace quartica {

namespace {

struct ChangedSystem {
    LinearChange m;
    LinearChange m_inv;
    std::vector<MultiPoly> forms; // substituted forms
};

LinearChange invert_change(const LinearChange& m) {
    FieldElement det = change_determinant(m);
    if (det.is_zero()) throw DegenerateInput("singular coordinate change");
    FieldElement inv = det.inverse();
    auto cof = [&](int r0, int c0, int r1, int c1) {
        return (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * inv;
    };
    // inverse = adjugate / det (transposed cofactors)
    return LinearChange{{{cof(1, 1, 2, 2), cof(0, 2, 2, 1), cof(0, 1, 1, 2)},
                         {cof(1, 2, 2, 0), cof(0, 0, 2, 2), cof(0, 2, 1, 0)},
                         {cof(1, 0, 2, 1), cof(0, 1, 2, 0), cof(0, 0, 1, 1)}}};
}

LinearChange lift_change(const LinearChange& m, const TowerPtr& t) {
    FieldElement z = FieldElement::zero(t);
    LinearChange out{{{z, z, z}, {z, z, z}, {z, z, z}}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = m[i][j].lift_to(t);
    return out;
}

UniPoly lift_unipoly(const UniPoly& p, const TowerPtr& t) {
    std::vector<FieldElement> c;
    c.reserve(p.coeffs().size());
    for (const auto& e : p.coeffs()) c.push_back(e.lift_to(t));
    return UniPoly(t, std::move(c));
}

// change that keeps every form's z-degree equal to its total degree
std::optional<ChangedSystem> try_change(const std::vector<const MultiPoly*>& polys,
                                        const TowerPtr& t, std::uint64_t seed) {
    LinearChange m = seeded_coordinate_change(t, seed);
    ChangedSystem sys{m, invert_change(m), {}};
    sys.forms.reserve(polys.size());
    for (const MultiPoly* p : polys) {
        MultiPoly pc = p->substitute_linear(m);
        if (pc.degree_in(Var::Z) != p->degree()) return std::nullopt;
        sys.forms.push_back(std::move(pc));
    }
    return sys;
}

UniPoly dehomogenize_binary(const MultiPoly& form) {
    const TowerPtr& t = form.tower();
    if (form.is_zero()) return UniPoly(t);
    int n = form.degree();
    std::vector<FieldElement> c;
    c.reserve(std::size_t(n) + 1);
    for (int k = 0; k <= n; ++k) c.push_back(form.coeff({{k, n - k, 0}}));
    return UniPoly(t, std::move(c));
}

// fiber q(x0, 1, z) as a polynomial in z
UniPoly fiber(const MultiPoly& q, const FieldElement& x0) {
    const TowerPtr& t = q.tower();
    auto cz = q.coefficients_in(Var::Z);
    std::vector<FieldElement> c;
    c.reserve(cz.size());
    Triple at{x0, FieldElement::one(t), FieldElement::zero(t)};
    for (const auto& layer : cz) c.push_back(layer.eval(at));
    return UniPoly(t, std::move(c));
}

struct PatternRun {
    std::vector<int> mults;
    std::vector<std::pair<ProjPoint, int>> located;
};

std::optional<PatternRun> pattern_run(const MultiPoly& fa, const MultiPoly& fb,
                                      const TowerPtr& t, std::uint64_t seed) {
    auto sys = try_change({&fa, &fb}, t, seed);
    if (!sys) return std::nullopt;
    MultiPoly res = resultant(sys->forms[0], sys->forms[1], Var::Z);
    if (res.is_zero()) throw CommonComponent("conics share a component");
    UniPoly r = dehomogenize_binary(res);
    if (r.degree() < res.degree()) return std::nullopt; // root at chart infinity

    PatternRun out;
    for (const auto& [fac, mult] : squarefree_decomposition(r)) {
        for (int i = 0; i < fac.degree(); ++i) out.mults.push_back(mult);
        auto roots = roots_structured(fac);
        for (const auto& [x0, rm] : roots.roots) {
            (void)rm;
            UniPoly g = gcd(fiber(sys->forms[0], x0), fiber(sys->forms[1], x0));
            if (g.degree() != 1) continue; // collision or fiber outside the tower
            FieldElement z0 = -(g.coeff(0) / g.coeff(1));
            Triple primed{x0, FieldElement::one(t), z0};
            out.located.emplace_back(ProjPoint(apply_change(sys->m, primed)), mult);
        }
    }
    std::sort(out.mults.rbegin(), out.mults.rend());
    return out;
}

std::vector<int> pattern_of(const UniPoly& r) {
    std::vector<int> mults;
    for (const auto& [fac, mult] : squarefree_decomposition(r))
        for (int i = 0; i < fac.degree(); ++i) mults.push_back(mult);
    std::sort(mults.rbegin(), mults.rend());
    return mults;
}

} // namespace

UniPoly generic_resultant(const MultiPoly& f, const MultiPoly& g, std::uint64_t seed) {
    const TowerPtr& t = f.tower();
    for (std::uint64_t attempt = 0;; ++attempt) {
        auto sys = try_change({&f, &g}, t, seed + 101 * attempt);
        if (!sys) continue;
        MultiPoly res = resultant(sys->forms[0], sys->forms[1], Var::Z);
        if (res.is_zero()) throw CommonComponent("forms share a component");
        UniPoly r = dehomogenize_binary(res);
        if (r.degree() < res.degree()) continue;
        return r;
    }
}

PairPattern conic_pair_pattern(const Conic& a, const Conic& b, std::uint64_t seed) {
    if (a == b) throw CommonComponent("identical conics");
    const TowerPtr& t = a.tower();
    MultiPoly fa = conic_to_poly(a), fb = conic_to_poly(b);

    // two independent runs must agree; a disagreement is a projection
    // collision under one of the changes, cured by deterministic re-seeding
    for (int round = 0; round < 8; ++round) {
        std::optional<PatternRun> first, second;
        std::uint64_t s = seed + 1009 * std::uint64_t(round);
        for (int tries = 0; tries < 64 && !first; ++tries, s += 101)
            first = pattern_run(fa, fb, t, s);
        s = seed * 7919 + 1 + 2027 * std::uint64_t(round);
        for (int tries = 0; tries < 64 && !second; ++tries, s += 101)
            second = pattern_run(fa, fb, t, s);
        if (!first || !second) break;
        if (first->mults != second->mults) continue;

        PairPattern out;
        out.mults = first->mults;
        std::map<ProjPoint, int> pts;
        bool located_consistent = true;
        for (const auto& run : {*first, *second}) {
            for (const auto& [p, m] : run.located) {
                auto [it, fresh] = pts.emplace(p, m);
                if (!fresh && it->second != m) located_consistent = false;
            }
        }
        if (!located_consistent) continue;
        for (const auto& [p, m] : pts)
            if (a.eval(p).is_zero() && b.eval(p).is_zero()) out.located.emplace_back(p, m);
        return out;
    }
    throw ProjectionCollision("patterns disagree across seeds");
}

TripleCoincidence triple_coincidence(const Conic& q1, const Conic& q2, const Conic& q3,
                                     std::uint64_t seed) {
    if (q1 == q2 || q1 == q3 || q2 == q3) throw CommonComponent("repeated conic in triple");
    const TowerPtr& t = q1.tower();
    MultiPoly f1 = conic_to_poly(q1), f2 = conic_to_poly(q2), f3 = conic_to_poly(q3);

    TripleCoincidence out;
    std::set<ProjPoint> certified;
    for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
        auto sys = try_change({&f1, &f2, &f3}, t, seed + 101 * attempt);
        if (!sys) continue;
        MultiPoly r12m = resultant(sys->forms[0], sys->forms[1], Var::Z);
        MultiPoly r13m = resultant(sys->forms[0], sys->forms[2], Var::Z);
        if (r12m.is_zero() || r13m.is_zero()) throw CommonComponent("conics share a component");
        UniPoly r12 = dehomogenize_binary(r12m);
        UniPoly r13 = dehomogenize_binary(r13m);
        if (r12.degree() < r12m.degree() || r13.degree() < r13m.degree()) continue;

        UniPoly g = gcd(r12, r13);
        if (g.degree() == 0) {
            out.resolved = true;
            out.points.assign(certified.begin(), certified.end());
            return out;
        }
        auto roots = roots_structured(g);
        bool all_settled = roots.complete;
        for (const auto& [x0, m] : roots.roots) {
            (void)m;
            UniPoly gz = gcd(gcd(fiber(sys->forms[0], x0), fiber(sys->forms[1], x0)),
                             fiber(sys->forms[2], x0));
            if (gz.degree() == 0) continue; // projection collision, not a common point
            auto zroots = roots_structured(gz);
            if (!zroots.complete) all_settled = false;
            for (const auto& [z0, zm] : zroots.roots) {
                (void)zm;
                ProjPoint p(apply_change(sys->m, Triple{x0, FieldElement::one(t), z0}));
                if (q1.eval(p).is_zero() && q2.eval(p).is_zero() && q3.eval(p).is_zero())
                    certified.insert(p);
            }
        }
        if (all_settled) {
            out.resolved = true;
            out.points.assign(certified.begin(), certified.end());
            return out;
        }
    }
    out.resolved = false;
    out.points.assign(certified.begin(), certified.end());
    return out;
}

// -------------------------------------------------------------------- census

namespace {

// per-attempt shared coordinate system for a whole arrangement, with the
// lifted copies needed for claim verification, and cached pair resultants
class CensusCache {
public:
    CensusCache(const std::vector<MultiPoly>& forms, const std::vector<MultiPoly>& up_forms,
                TowerPtr tc, TowerPtr ts, std::uint64_t seed)
        : tc_(std::move(tc)), ts_(std::move(ts)), up_forms_(&up_forms), seed_(seed) {
        for (const auto& f : forms) form_ptrs_.push_back(&f);
    }

    struct Attempt {
        ChangedSystem sys;
        LinearChange m_up, minv_up;       // lifted to the claims tower
        std::vector<MultiPoly> primed_up; // claims-tower forms in the new coordinates
    };

    const Attempt& attempt(int a) {
        while (int(attempts_.size()) <= a) {
            std::uint64_t s = seed_ + 101 * std::uint64_t(attempts_.size());
            for (;; s += 7919) {
                auto sys = try_change(form_ptrs_, tc_, s);
                if (!sys) continue;
                LinearChange m_up = lift_change(sys->m, ts_);
                LinearChange minv_up = lift_change(sys->m_inv, ts_);
                std::vector<MultiPoly> primed;
                primed.reserve(up_forms_->size());
                for (const auto& f : *up_forms_) primed.push_back(f.substitute_linear(m_up));
                attempts_.push_back(Attempt{std::move(*sys), std::move(m_up), std::move(minv_up),
                                            std::move(primed)});
                break;
            }
        }
        return attempts_[std::size_t(a)];
    }

    // full-degree dehomogenized resultant of the pair under the shared
    // attempt coordinates; nullopt when some root sits at the chart infinity
    const std::optional<UniPoly>& resultant_of(std::size_t i, std::size_t j, int a) {
        auto key = std::make_tuple(i, j, a);
        auto it = res_.find(key);
        if (it != res_.end()) return it->second;
        const Attempt& at = attempt(a);
        MultiPoly r = resultant(at.sys.forms[i], at.sys.forms[j], Var::Z);
        if (r.is_zero())
            throw CommonComponent("conics " + std::to_string(i) + "," + std::to_string(j) +
                                  " share a component");
        UniPoly u = dehomogenize_binary(r);
        std::optional<UniPoly> val;
        if (u.degree() == r.degree()) val = std::move(u);
        return res_.emplace(key, std::move(val)).first->second;
    }

private:
    TowerPtr tc_, ts_;
    std::vector<const MultiPoly*> form_ptrs_;
    const std::vector<MultiPoly>* up_forms_;
    std::uint64_t seed_;
    std::vector<Attempt> attempts_;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::optional<UniPoly>> res_;
};

} // namespace

ConicCensus conic_census(const std::vector<Conic>& conics, const std::vector<ProjPoint>& claimed,
                         std::uint64_t seed1, std::uint64_t seed2) {
    std::size_t n = conics.size();
    if (n < 2) throw DegenerateInput("census needs at least two conics");
    const TowerPtr& tc = conics[0].tower();
    for (std::size_t i = 0; i < n; ++i) {
        if (!conics[i].tower()->same_as(*tc)) throw TowerMismatch("conics in mixed towers");
        for (std::size_t j = i + 1; j < n; ++j)
            if (conics[i] == conics[j]) throw DegenerateInput("duplicate conics in census");
    }
    TowerPtr ts = claimed.empty() ? tc : claimed[0].tower();
    for (const auto& p : claimed)
        if (!p.tower()->same_as(*ts)) throw TowerMismatch("claimed points in mixed towers");

    ConicCensus census;
    census.total = 4L * long(n) * long(n - 1) / 2;

    std::vector<MultiPoly> forms, up_forms;
    std::vector<Conic> up;
    for (const auto& c : conics) {
        forms.push_back(conic_to_poly(c));
        up.push_back(c.lift_to(ts));
        up_forms.push_back(conic_to_poly(up.back()));
    }

    // ---- claimed special points: incidences and exact pairwise contacts
    std::map<std::pair<std::size_t, std::size_t>, std::vector<int>> claimed_contacts;
    std::set<ProjPoint> claim_set;
    for (const auto& p : claimed) {
        if (!claim_set.insert(p).second)
            throw DegenerateInput("duplicate claimed point " + p.str());
        SpecialPointReport rep{p, {}, {}, 0};
        for (std::size_t i = 0; i < n; ++i)
            if (up[i].eval(p).is_zero()) rep.conics.push_back(i);
        if (rep.conics.size() < 2)
            throw DegenerateInput("claimed point " + p.str() + " lies on fewer than two conics");
        for (std::size_t a = 0; a < rep.conics.size(); ++a) {
            for (std::size_t b = a + 1; b < rep.conics.size(); ++b) {
                std::size_t i = rep.conics[a], j = rep.conics[b];
                int order = contact_order(PlaneCurve(up_forms[i]), up_forms[j], p).order;
                rep.contacts.emplace_back(i, j, order);
                rep.multiplicity_sum += order;
                claimed_contacts[{i, j}].push_back(order);
            }
        }
        census.special_points.push_back(std::move(rep));
    }

    CensusCache cache1(forms, up_forms, tc, ts, seed1);
    CensusCache cache2(forms, up_forms, tc, ts, seed2);

    // pattern under independent seeds, escalating attempts past collisions
    auto agreed_pattern = [&](std::size_t i, std::size_t j) {
        std::optional<std::vector<int>> last1, last2;
        for (int a = 0; a < 6; ++a) {
            const auto& r1 = cache1.resultant_of(i, j, a);
            const auto& r2 = cache2.resultant_of(i, j, a);
            if (r1) last1 = pattern_of(*r1);
            if (r2) last2 = pattern_of(*r2);
            if (last1 && last2 && *last1 == *last2) return *last1;
        }
        throw ProjectionCollision("pair " + std::to_string(i) + "," + std::to_string(j) +
                                  " patterns disagree");
    };

    long entry_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto p1 = agreed_pattern(i, j);
            // every multiple entry must be explained by a claimed tangency
            std::vector<int> expect;
            auto it = claimed_contacts.find({i, j});
            if (it != claimed_contacts.end())
                for (int c : it->second)
                    if (c >= 2) expect.push_back(c);
            std::sort(expect.rbegin(), expect.rend());
            std::vector<int> found;
            for (int m : p1)
                if (m >= 2) found.push_back(m);
            if (found != expect)
                throw UnexplainedCoincidence("pair " + std::to_string(i) + "," +
                                             std::to_string(j) +
                                             " tangencies do not match the claimed points");
            PairPattern pat;
            pat.mults = std::move(p1);
            entry_total += long(pat.mults.size());
            census.pairs.emplace(std::make_pair(i, j), std::move(pat));
        }
    }

    // ---- triples: any point on three or more conics must be claimed
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                bool settled = false;
                for (int a = 0; a < 3 && !settled; ++a) {
                    const auto& r12 = cache1.resultant_of(i, j, a);
                    const auto& r13 = cache1.resultant_of(i, k, a);
                    if (!r12 || !r13) continue;
                    UniPoly g = gcd(*r12, *r13);
                    if (g.degree() == 0) {
                        settled = true;
                        break;
                    }
                    const auto& at = cache1.attempt(a);
                    UniPoly residual = lift_unipoly(g, ts);
                    for (const auto& rep : census.special_points) {
                        std::size_t want[3] = {i, j, k};
                        bool on_all = std::includes(rep.conics.begin(), rep.conics.end(),
                                                    std::begin(want), std::end(want));
                        if (!on_all) continue;
                        Triple v = apply_change(at.minv_up, rep.point.coords());
                        if (v[1].is_zero())
                            throw KernelError("claimed point at chart infinity at full degree");
                        FieldElement x0 = v[0] / v[1];
                        int ord = vanishing_order(residual, x0);
                        if (ord == 0)
                            throw KernelError("claimed common point missing from resultant gcd");
                        UniPoly lin(ts, {-x0, FieldElement::one(ts)});
                        for (int q = 0; q < ord; ++q) residual = residual.divrem(lin).first;
                        if (residual.degree() == 0) break;
                    }
                    if (residual.degree() == 0) {
                        settled = true;
                        break;
                    }
                    // refute the leftovers or expose an unclaimed coincidence
                    auto roots = roots_structured(residual);
                    if (!roots.complete) continue;
                    bool all_refuted = true;
                    for (const auto& [x0, m] : roots.roots) {
                        (void)m;
                        UniPoly gz = gcd(gcd(fiber(at.primed_up[i], x0), fiber(at.primed_up[j], x0)),
                                         fiber(at.primed_up[k], x0));
                        if (gz.degree() == 0) continue;
                        auto zr = roots_structured(gz);
                        if (!zr.complete) {
                            all_refuted = false;
                            continue;
                        }
                        for (const auto& [z0, zm] : zr.roots) {
                            (void)zm;
                            ProjPoint cand(
                                apply_change(at.m_up, Triple{x0, FieldElement::one(ts), z0}));
                            if (up[i].eval(cand).is_zero() && up[j].eval(cand).is_zero() &&
                                up[k].eval(cand).is_zero())
                                throw UnexplainedCoincidence(
                                    "unclaimed common point " + cand.str() + " of conics " +
                                    std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(k));
                        }
                    }
                    if (all_refuted) settled = true;
                }
                if (!settled) {
                    census.status = CensusStatus::Inconclusive;
                    census.note = "triple " + std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + " has candidates outside the tower";
                    return census;
                }
            }
        }
    }

    // ---- ledger and classification
    long correction = 0;
    long excess = 0;
    for (const auto& rep : census.special_points) {
        long s = long(rep.conics.size());
        if (s >= 3) correction += s * (s - 1) / 2 - 1;
        excess += rep.multiplicity_sum - 1;
        census.kfold[int(s)] += 1;
        if (s == 2) {
            int cmax = 0;
            for (const auto& [a, b, c] : rep.contacts) {
                (void)a;
                (void)b;
                cmax = std::max(cmax, c);
            }
            if (cmax < 2)
                throw DegenerateInput("claimed double point " + rep.point.str() + " is ordinary");
            census.tangency += 1;
        }
        if (s == 4) census.quadruple += 1;
    }
    census.distinct = entry_total - correction;
    // Bezout ledger: the multiplicity-weighted budget 4*C(n,2) minus the
    // claimed excesses must reproduce the distinct count
    if (census.distinct != census.total - excess)
        throw KernelError("census ledger identity failed: " + std::to_string(census.distinct) +
                          " vs " + std::to_string(census.total - excess));
    census.simple = census.distinct - long(census.special_points.size());
    census.status = CensusStatus::Conclusive;
    return census;
}

OcticCertificate octic_membership(const std::vector<ProjPoint>& pts, const MultiPoly& octic) {
    OcticCertificate cert;
    const TowerPtr& t = pts.empty() ? octic.tower() : pts[0].tower();
    MultiPoly oc = octic.tower()->same_as(*t) ? octic : octic.lift_to(t);
    FieldElement one = FieldElement::one(t), zero = FieldElement::zero(t);

    cert.all_on_octic = true;
    cert.all_on_lines = true;
    for (const auto& p : pts) {
        if (!oc.eval(p).is_zero()) cert.all_on_octic = false;
        if (!(p[0].is_zero() || p[1].is_zero() || p[2].is_zero())) cert.all_on_lines = false;
        for (int v = 0; v < 3; ++v)
            if (p[std::size_t(v)].is_zero()) cert.per_line[std::size_t(v)] += 1;
    }
    cert.count_matches = long(pts.size()) == 3L * oc.degree() && cert.per_line[0] == 8 &&
                         cert.per_line[1] == 8 && cert.per_line[2] == 8;

    cert.restrictions_squarefree = true;
    for (int v = 0; v < 3; ++v) {
        Triple lc{zero, zero, zero};
        lc[std::size_t(v)] = one;
        LineSection sec = restrict_to_line(oc, ProjLine(lc));
        if (sec.poly.is_zero() || sec.poly.degree() != oc.degree() ||
            gcd(sec.poly, sec.poly.derivative()).degree() != 0)
            cert.restrictions_squarefree = false;
    }
    return cert;
}

} // namespace quartica
