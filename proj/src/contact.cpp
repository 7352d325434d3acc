#include "quartica/contact.hpp"

#include "quartica/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace quartica {

PlaneCurve::PlaneCurve(MultiPoly form) : form_(std::move(form)) {
    if (form_.is_zero() || !form_.is_homogeneous() || form_.degree() < 1)
        throw DegenerateCurve("a plane curve needs a nonzero homogeneous form");
}

std::array<FieldElement, 3> PlaneCurve::gradient_at(const Triple& p) const {
    return {form_.derivative(Var::X).eval(p), form_.derivative(Var::Y).eval(p),
            form_.derivative(Var::Z).eval(p)};
}

bool PlaneCurve::smooth_at(const ProjPoint& p) const {
    auto g = gradient_at(p.coords());
    return !(g[0].is_zero() && g[1].is_zero() && g[2].is_zero());
}

// ------------------------------------------------------------- BranchSeries

namespace {

// series arithmetic mod s^{trunc+1} on dense coefficient vectors
std::vector<FieldElement> series_mul(const std::vector<FieldElement>& a,
                                     const std::vector<FieldElement>& b, int trunc,
                                     const TowerPtr& t) {
    std::vector<FieldElement> out(std::size_t(trunc) + 1, FieldElement::zero(t));
    for (std::size_t i = 0; i < a.size() && int(i) <= trunc; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && int(i + j) <= trunc; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<FieldElement> compose_on_coords(const MultiPoly& g,
                                            const std::array<std::vector<FieldElement>, 3>& coord,
                                            int trunc) {
    const TowerPtr& t = g.tower();
    int up[3] = {0, 0, 0};
    for (const auto& [e, c] : g.terms())
        for (int i = 0; i < 3; ++i) up[i] = std::max(up[i], e.e[i]);
    std::array<std::vector<std::vector<FieldElement>>, 3> pows;
    for (int i = 0; i < 3; ++i) {
        pows[i].push_back({FieldElement::one(t)});
        for (int k = 1; k <= up[i]; ++k)
            pows[i].push_back(series_mul(pows[i].back(), coord[i], trunc, t));
    }
    std::vector<FieldElement> acc(std::size_t(trunc) + 1, FieldElement::zero(t));
    for (const auto& [e, c] : g.terms()) {
        auto term = series_mul(pows[0][e.e[0]], pows[1][e.e[1]], trunc, t);
        term = series_mul(term, pows[2][e.e[2]], trunc, t);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += term[k] * c;
    }
    return acc;
}

} // namespace

BranchSeries::BranchSeries(const PlaneCurve& curve, const ProjPoint& center, int order)
    : center_(center), chart_var_(-1), solve_var_(-1), param_var_(-1),
      p_param_(FieldElement::zero(curve.tower())), p_solve_(FieldElement::zero(curve.tower())),
      tower_(curve.tower()) {
    if (!curve.tower()->same_as(*center.tower()))
        throw TowerMismatch("curve and point live in different towers");
    if (!curve.contains(center)) throw PointNotOnCurve(center.str());
    auto grad = curve.gradient_at(center.coords());
    if (grad[0].is_zero() && grad[1].is_zero() && grad[2].is_zero())
        throw SingularPoint(center.str());

    // solve variable: largest embedded partial derivative such that some other
    // coordinate of the center is nonzero (ties break toward x > y > z)
    std::array<int, 3> by_mag{0, 1, 2};
    std::stable_sort(by_mag.begin(), by_mag.end(), [&](int a, int b) {
        return std::abs(grad[a].embed()) > std::abs(grad[b].embed()) + 1e-15;
    });
    for (int v : by_mag) {
        if (grad[v].is_zero()) continue;
        double best = -1;
        int w = -1;
        for (int cand = 0; cand < 3; ++cand) {
            if (cand == v || center[cand].is_zero()) continue;
            double m = std::abs(center[cand].embed());
            if (m > best + 1e-15) {
                best = m;
                w = cand;
            }
        }
        if (w >= 0) {
            solve_var_ = v;
            chart_var_ = w;
            break;
        }
    }
    if (solve_var_ < 0) throw SingularPoint("no usable chart at " + center.str());
    param_var_ = 3 - solve_var_ - chart_var_;

    FieldElement scale = center[chart_var_].inverse();
    p_param_ = center[param_var_] * scale;
    p_solve_ = center[solve_var_] * scale;

    // undetermined coefficients: at step k the residual's s^k coefficient is
    // A*c_k + B with A the solving partial evaluated at the chart center
    const MultiPoly& f = curve.form();
    FieldElement a = grad[solve_var_] * scale.pow(curve.degree() - 1);
    FieldElement a_inv = a.inverse();
    coeffs_.reserve(std::size_t(order));
    for (int k = 1; k <= order; ++k) {
        std::array<std::vector<FieldElement>, 3> coord;
        coord[chart_var_] = {FieldElement::one(tower_)};
        coord[param_var_] = {p_param_, FieldElement::one(tower_)};
        std::vector<FieldElement> v{p_solve_};
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        coord[solve_var_] = v;
        auto residual = compose_on_coords(f, coord, k);
        coeffs_.push_back(-(residual[std::size_t(k)] * a_inv));
    }

    // construction invariant: the curve vanishes along the series mod s^{n+1}
    auto check = compose(f, order);
    if (!check.is_zero())
        throw KernelError("branch series residual does not vanish at " + center.str());
}

UniPoly BranchSeries::compose(const MultiPoly& g, int trunc) const {
    if (trunc > order())
        throw DegenerateInput("composition truncation exceeds the series order");
    std::array<std::vector<FieldElement>, 3> coord;
    coord[chart_var_] = {FieldElement::one(tower_)};
    coord[param_var_] = {p_param_, FieldElement::one(tower_)};
    std::vector<FieldElement> v{p_solve_};
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    coord[solve_var_] = v;
    return UniPoly(tower_, compose_on_coords(g, coord, trunc));
}

// ------------------------------------------------------------ contact order

ContactReport contact_order(const PlaneCurve& c, const MultiPoly& d, const ProjPoint& p,
                            int cap) {
    if (!d.eval(p).is_zero() || !c.contains(p)) throw PointNotOnBoth(p.str());
    int bezout = c.degree() * std::max(d.degree(), 1);
    if (cap < 0) cap = bezout;
    int trunc = std::max(2 * c.degree() + 2, 8);
    while (true) {
        BranchSeries bs(c, p, trunc);
        UniPoly w = bs.compose(d, trunc);
        for (int k = 0; k <= trunc; ++k) {
            if (!w.coeff(k).is_zero()) return {p, k, true, w};
        }
        if (trunc > cap) {
            // vanishing beyond the Bezout budget: a shared component through P
            return {p, cap + 1, false, w};
        }
        trunc *= 2;
    }
}

ContactReport contact_order(const PlaneCurve& c, const ProjLine& d, const ProjPoint& p, int cap) {
    return contact_order(c, line_to_poly(d), p, cap);
}

ContactReport contact_order(const PlaneCurve& c, const Conic& d, const ProjPoint& p, int cap) {
    return contact_order(c, conic_to_poly(d), p, cap);
}

// -------------------------------------------------------------- mtl_verify

MtlResult mtl_verify(const PlaneCurve& c, const ProjLine& line) {
    LineSection sec = restrict_to_line(c.form(), line);
    if (sec.poly.is_zero()) throw ComponentLine(line.str());
    int d = c.degree();
    int ds = sec.poly.degree();
    if (ds == 0) {
        // restriction is a scalar times t^d: all contact sits at A
        return {true, sec.point_at_infinity()};
    }
    if (ds < d) return {false, std::nullopt}; // split between A and finite roots
    const TowerPtr& t = sec.poly.tower();
    FieldElement r = -(sec.poly.coeff(d - 1) / (sec.poly.coeff(d) * Rational(d)));
    UniPoly lin(t, {-r, FieldElement::one(t)});
    UniPoly power = UniPoly::constant(sec.poly.coeff(d));
    for (int k = 0; k < d; ++k) power = power * lin;
    if (power == sec.poly) return {true, sec.point_at(r)};
    return {false, std::nullopt};
}

// ------------------------------------------------------- hessian and flexes

PlaneCurve hessian(const PlaneCurve& c) {
    if (c.degree() < 3) throw DegenerateCurve("hessian needs degree >= 3");
    const MultiPoly& f = c.form();
    std::vector<std::vector<MultiPoly>> h(3, std::vector<MultiPoly>(3, MultiPoly(f.tower())));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = f.derivative(Var(i)).derivative(Var(j));
    MultiPoly det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                    h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                    h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    return PlaneCurve(det);
}

namespace {

// multiplicity pattern of an intersection scheme via a resultant in seeded
// shifted coordinates; the coordinate-free fallback when points cannot be
// extracted inside the tower
std::vector<int> resultant_pattern(const MultiPoly& f, const MultiPoly& g) {
    const TowerPtr& t = f.tower();
    for (std::uint64_t seed = 1;; seed += 101) {
        LinearChange m = seeded_coordinate_change(t, seed);
        MultiPoly fc = f.substitute_linear(m);
        MultiPoly gc = g.substitute_linear(m);
        if (fc.degree_in(Var::Z) != f.degree() || gc.degree_in(Var::Z) != g.degree()) continue;
        MultiPoly res = resultant(fc, gc, Var::Z);
        if (res.is_zero()) throw CommonComponent("in intersection pattern");
        int n = res.degree();
        std::vector<FieldElement> coeffs;
        for (int k = 0; k <= n; ++k) coeffs.push_back(res.coeff({{k, n - k, 0}}));
        UniPoly r(t, coeffs);
        if (r.degree() < n) continue; // a root escaped to infinity; reseed
        std::vector<int> pattern;
        for (const auto& [fac, mult] : squarefree_decomposition(r))
            for (int i = 0; i < fac.degree(); ++i) pattern.push_back(mult);
        std::sort(pattern.rbegin(), pattern.rend());
        return pattern;
    }
}

} // namespace

FlexScheme flex_scheme(const PlaneCurve& c, const std::vector<ProjPoint>& candidates) {
    PlaneCurve h = hessian(c);
    long target = 3L * c.degree() * (c.degree() - 2);
    FlexScheme out;
    std::set<ProjPoint> seen;
    for (const auto& p : candidates) {
        if (seen.count(p)) continue;
        seen.insert(p);
        if (!c.contains(p) || !h.form().eval(p).is_zero()) continue;
        auto rep = contact_order(c, h.form(), p);
        out.points.emplace_back(p, rep.order);
        out.total += rep.order;
    }
    out.complete = (out.total == target);
    if (!out.complete) out.pattern = resultant_pattern(c.form(), h.form());
    return out;
}

FlexScheme flex_scheme(const PlaneCurve& c) {
    PlaneCurve h = hessian(c);
    const MultiPoly& hf = h.form();
    // the useful special case: the hessian is a single monomial, so its zero
    // set is a union of coordinate lines and candidates come from restrictions
    if (hf.term_count() == 1) {
        Exponents e = hf.leading_exponents();
        std::vector<ProjPoint> candidates;
        const TowerPtr& t = c.tower();
        FieldElement one = FieldElement::one(t), zero = FieldElement::zero(t);
        for (int v = 0; v < 3; ++v) {
            if (e.e[v] == 0) continue;
            Triple lc{zero, zero, zero};
            lc[v] = one;
            LineSection sec = restrict_to_line(c.form(), ProjLine(lc));
            if (sec.poly.is_zero()) throw ComponentLine("coordinate line inside the curve");
            auto roots = roots_structured(sec.poly);
            for (const auto& [r, mult] : roots.roots) candidates.push_back(sec.point_at(r));
            if (sec.multiplicity_at_infinity() > 0) candidates.push_back(sec.point_at_infinity());
        }
        return flex_scheme(c, candidates);
    }
    FlexScheme out;
    out.complete = false;
    out.pattern = resultant_pattern(c.form(), hf);
    return out;
}

// --------------------------------------------------- osculating / sextactic

std::vector<std::vector<FieldElement>> conic_jet_rows(const PlaneCurve& c, const ProjPoint& p,
                                                      int rows) {
    const TowerPtr& t = c.tower();
    int trunc = rows + 2;
    BranchSeries bs(c, p, trunc);
    static const Exponents mono[6] = {{{2, 0, 0}}, {{1, 1, 0}}, {{1, 0, 1}},
                                      {{0, 2, 0}}, {{0, 1, 1}}, {{0, 0, 2}}};
    std::vector<std::vector<FieldElement>> m;
    m.resize(std::size_t(rows));
    for (int k = 0; k < rows; ++k) m[std::size_t(k)].reserve(6);
    for (int i = 0; i < 6; ++i) {
        UniPoly comp = bs.compose(MultiPoly::monomial(FieldElement::one(t), mono[i]), trunc);
        for (int k = 0; k < rows; ++k) m[std::size_t(k)].push_back(comp.coeff(k));
    }
    return m;
}

static Conic conic_from_vector(const std::vector<FieldElement>& v) {
    return Conic({v[0], v[1], v[2], v[3], v[4], v[5]});
}

OsculatingConic osculating_conic(const PlaneCurve& c, const ProjPoint& p) {
    if (c.degree() <= 2) throw DegenerateCurve("osculating conics need degree >= 3");
    auto rows = conic_jet_rows(c, p, 5);
    auto kernel = kernel_basis(rows, c.tower());
    if (kernel.empty()) throw KernelError("five jet conditions left no conic");
    Conic conic = conic_from_vector(kernel.front());
    auto rep = contact_order(c, conic, p);
    return {conic, rep.order};
}

SextacticReport sextactic_classify(const PlaneCurve& c, const ProjPoint& p) {
    if (c.degree() <= 2) throw DegenerateCurve("sextactic classification needs degree >= 3");
    auto rows = conic_jet_rows(c, p, 6);
    auto kernel = kernel_basis(rows, c.tower());
    if (kernel.empty()) return {SextacticClass::NotSextactic, std::nullopt, 0};

    // prefer a reduced representative; two independent double lines always
    // combine to a rank >= 2 conic
    std::optional<Conic> reduced;
    for (const auto& v : kernel) {
        Conic cand = conic_from_vector(v);
        if (cand.is_reduced()) {
            reduced = cand;
            break;
        }
    }
    if (!reduced && kernel.size() >= 2) {
        std::vector<FieldElement> sum;
        for (std::size_t i = 0; i < 6; ++i) sum.push_back(kernel[0][i] + kernel[1][i]);
        Conic cand = conic_from_vector(sum);
        if (cand.is_reduced()) reduced = cand;
    }
    if (reduced) {
        auto rep = contact_order(c, *reduced, p);
        if (rep.order >= 6) return {SextacticClass::Proper, reduced, rep.order};
    }
    Conic dbl = conic_from_vector(kernel.front());
    auto rep = contact_order(c, dbl, p);
    return {SextacticClass::Improper, dbl, rep.order};
}

std::vector<BiosculatingConic> biosculating_conics(const PlaneCurve& c,
                                                   const std::vector<ProjPoint>& pts) {
    const TowerPtr& t = c.tower();
    std::vector<std::vector<std::vector<FieldElement>>> jets;
    jets.reserve(pts.size());
    for (const auto& p : pts) jets.push_back(conic_jet_rows(c, p, 4));

    std::vector<BiosculatingConic> out;
    std::set<Conic> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Matrix m = jets[i];
            m.insert(m.end(), jets[j].begin(), jets[j].end());
            auto kernel = kernel_basis(std::move(m), t);
            if (kernel.size() != 1) continue;
            Conic cand = conic_from_vector(kernel.front());
            if (!cand.is_reduced()) continue; // a doubled bitangent, not a conic
            auto rp = contact_order(c, cand, pts[i]);
            auto rq = contact_order(c, cand, pts[j]);
            if (rp.order < 4 || rq.order < 4) continue;
            if (seen.insert(cand).second)
                out.push_back({cand, pts[i], pts[j], rp.order, rq.order});
        }
    }
    return out;
}

} // namespace quartica
