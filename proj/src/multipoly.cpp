#include "quartica/multipoly.hpp"

#include <algorithm>
#include <cmath>

namespace quartica {

// ----------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(const FieldElement& c) {
    MultiPoly p(c.tower());
    p.add_term({}, c);
    return p;
}

MultiPoly MultiPoly::constant(const TowerPtr& t, const Rational& r) {
    return constant(FieldElement(t, r));
}

MultiPoly MultiPoly::variable(const TowerPtr& t, Var v) {
    MultiPoly p(t);
    Exponents e;
    e.e[int(v)] = 1;
    p.add_term(e, FieldElement::one(t));
    return p;
}

MultiPoly MultiPoly::monomial(const FieldElement& c, Exponents e) {
    MultiPoly p(c.tower());
    p.add_term(e, c);
    return p;
}

void MultiPoly::add_term(Exponents e, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int MultiPoly::degree() const {
    return terms_.empty() ? -1 : terms_.begin()->first.total();
}

int MultiPoly::degree_in(Var v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[int(v)]);
    return terms_.empty() ? -1 : d;
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.total();
    for (const auto& [e, c] : terms_)
        if (e.total() != d) return false;
    return true;
}

FieldElement MultiPoly::coeff(Exponents e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElement::zero(tower_) : it->second;
}

const FieldElement& MultiPoly::leading_coeff() const {
    if (terms_.empty()) throw ZeroPolynomial("leading coefficient of 0");
    return terms_.begin()->second;
}

Exponents MultiPoly::leading_exponents() const {
    if (terms_.empty()) throw ZeroPolynomial("leading term of 0");
    return terms_.begin()->first;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(tower_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly out(tower_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e{{e1.e[0] + e2.e[0], e1.e[1] + e2.e[1], e1.e[2] + e2.e[2]}};
            out.add_term(e, c1 * c2);
        }
    }
    return out;
}

MultiPoly MultiPoly::operator*(const FieldElement& c) const {
    MultiPoly out(tower_);
    if (c.is_zero()) return out;
    for (const auto& [e, t] : terms_) out.terms_.emplace(e, t * c);
    return out;
}

MultiPoly MultiPoly::operator*(const Rational& r) const {
    return *this * FieldElement(tower_, r);
}

MultiPoly MultiPoly::pow(int e) const {
    MultiPoly acc = constant(tower_, Rational(1));
    MultiPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (!(it->first == jt->first) || it->second != jt->second) return false;
    }
    return true;
}

FieldElement MultiPoly::eval(const Triple& p) const {
    int dx = 0, dy = 0, dz = 0;
    for (const auto& [e, c] : terms_) {
        dx = std::max(dx, e.e[0]);
        dy = std::max(dy, e.e[1]);
        dz = std::max(dz, e.e[2]);
    }
    auto powers = [&](const FieldElement& v, int up) {
        std::vector<FieldElement> ps{FieldElement::one(tower_)};
        for (int i = 1; i <= up; ++i) ps.push_back(ps.back() * v);
        return ps;
    };
    auto px = powers(p[0], dx);
    auto py = powers(p[1], dy);
    auto pz = powers(p[2], dz);
    FieldElement acc = FieldElement::zero(tower_);
    for (const auto& [e, c] : terms_) acc += c * px[e.e[0]] * py[e.e[1]] * pz[e.e[2]];
    return acc;
}

MultiPoly MultiPoly::derivative(Var v) const {
    int k = int(v);
    MultiPoly out(tower_);
    for (const auto& [e, c] : terms_) {
        if (e.e[k] == 0) continue;
        Exponents d = e;
        d.e[k] -= 1;
        out.add_term(d, c * Rational(e.e[k]));
    }
    return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Var v) const {
    int k = int(v);
    int d = std::max(degree_in(v), 0);
    std::vector<MultiPoly> out(d + 1, MultiPoly(tower_));
    for (const auto& [e, c] : terms_) {
        Exponents rest = e;
        rest.e[k] = 0;
        out[e.e[k]].add_term(rest, c);
    }
    return out;
}

MultiPoly MultiPoly::substitute_linear(
    const std::array<std::array<FieldElement, 3>, 3>& m) const {
    std::array<MultiPoly, 3> image{MultiPoly(tower_), MultiPoly(tower_), MultiPoly(tower_)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            image[i] = image[i] + MultiPoly::variable(tower_, Var(j)) * m[i][j];

    std::array<std::vector<MultiPoly>, 3> pows;
    for (int i = 0; i < 3; ++i) {
        pows[i].push_back(constant(tower_, Rational(1)));
        int up = 0;
        for (const auto& [e, c] : terms_) up = std::max(up, e.e[i]);
        for (int k = 1; k <= up; ++k) pows[i].push_back(pows[i].back() * image[i]);
    }
    MultiPoly out(tower_);
    for (const auto& [e, c] : terms_)
        out = out + pows[0][e.e[0]] * pows[1][e.e[1]] * pows[2][e.e[2]] * c;
    return out;
}

std::optional<MultiPoly> MultiPoly::exact_divide(const MultiPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    MultiPoly q(tower_);
    MultiPoly r = *this;
    Exponents lead = d.leading_exponents();
    const FieldElement& lc = d.leading_coeff();
    FieldElement lc_inv = lc.inverse();
    while (!r.is_zero()) {
        Exponents e = r.leading_exponents();
        if (e.e[0] < lead.e[0] || e.e[1] < lead.e[1] || e.e[2] < lead.e[2]) return std::nullopt;
        Exponents t{{e.e[0] - lead.e[0], e.e[1] - lead.e[1], e.e[2] - lead.e[2]}};
        FieldElement c = r.leading_coeff() * lc_inv;
        MultiPoly term = monomial(c, t);
        q = q + term;
        r = r - term * d;
    }
    return q;
}

MultiPoly MultiPoly::lift_to(const TowerPtr& t) const {
    MultiPoly out(t);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.lift_to(t));
    return out;
}

bool MultiPoly::proportional_to(const MultiPoly& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return *this * o.leading_coeff() == o * leading_coeff();
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[3] = {"x", "y", "z"};
    std::string s;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (int i = 0; i < 3; ++i) {
            if (e.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e.e[i] > 1) mono += "^" + std::to_string(e.e[i]);
        }
        std::string cs = c.str();
        std::string term;
        if (mono.empty()) {
            term = "(" + cs + ")";
        } else if (cs == "1") {
            term = mono;
        } else if (cs == "-1") {
            term = "-" + mono;
        } else if (c.is_rational() && cs.find('-') == std::string::npos) {
            term = cs + "*" + mono;
        } else {
            term = "(" + cs + ")*" + mono;
        }
        if (!s.empty()) s += " + ";
        s += term;
    }
    return s;
}

// ------------------------------------------------------------------- UniPoly

UniPoly::UniPoly(TowerPtr t, std::vector<FieldElement> coeffs)
    : tower_(std::move(t)), c_(std::move(coeffs)) {
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const FieldElement& c) {
    return UniPoly(c.tower(), std::vector<FieldElement>{c});
}

UniPoly UniPoly::from_roots(const TowerPtr& t, const std::vector<FieldElement>& roots) {
    UniPoly p(t, {FieldElement::one(t)});
    for (const auto& r : roots) {
        UniPoly lin(t, {-r, FieldElement::one(t)});
        p = p * lin;
    }
    return p;
}

const FieldElement& UniPoly::leading_coeff() const {
    if (c_.empty()) throw ZeroPolynomial("leading coefficient of 0");
    return c_.back();
}

FieldElement UniPoly::coeff(int k) const {
    if (k < 0 || k >= int(c_.size())) return FieldElement::zero(tower_);
    return c_[k];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<FieldElement> out;
    std::size_t n = std::max(c_.size(), o.c_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement a = i < c_.size() ? c_[i] : FieldElement::zero(tower_);
        FieldElement b = i < o.c_.size() ? o.c_[i] : FieldElement::zero(tower_);
        out.push_back(a + b);
    }
    return UniPoly(tower_, std::move(out));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<FieldElement> out;
    std::size_t n = std::max(c_.size(), o.c_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement a = i < c_.size() ? c_[i] : FieldElement::zero(tower_);
        FieldElement b = i < o.c_.size() ? o.c_[i] : FieldElement::zero(tower_);
        out.push_back(a - b);
    }
    return UniPoly(tower_, std::move(out));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(tower_);
    std::vector<FieldElement> out(c_.size() + o.c_.size() - 1, FieldElement::zero(tower_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] += c_[i] * o.c_[j];
    }
    return UniPoly(tower_, std::move(out));
}

UniPoly UniPoly::operator*(const FieldElement& c) const {
    if (c.is_zero()) return UniPoly(tower_);
    std::vector<FieldElement> out;
    out.reserve(c_.size());
    for (const auto& a : c_) out.push_back(a * c);
    return UniPoly(tower_, std::move(out));
}

FieldElement UniPoly::eval(const FieldElement& r) const {
    FieldElement acc = FieldElement::zero(tower_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly(tower_);
    std::vector<FieldElement> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * Rational(long(i)));
    return UniPoly(tower_, std::move(out));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inverse();
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    UniPoly r = *this;
    if (degree() < d.degree()) return {UniPoly(tower_), r};
    std::vector<FieldElement> q(degree() - d.degree() + 1, FieldElement::zero(tower_));
    FieldElement lc_inv = d.leading_coeff().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        FieldElement f = r.leading_coeff() * lc_inv;
        q[k] = f;
        std::vector<FieldElement> sub(k, FieldElement::zero(tower_));
        sub.insert(sub.end(), d.c_.begin(), d.c_.end());
        r = r - UniPoly(tower_, std::move(sub)) * f;
    }
    return {UniPoly(tower_, std::move(q)), r};
}

bool UniPoly::proportional_to(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    return *this * o.leading_coeff() == o * leading_coeff();
}

std::string UniPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        if (c_[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c_[k].str();
        if (k == 0) {
            s += "(" + cs + ")";
        } else {
            std::string mono = k == 1 ? "t" : "t^" + std::to_string(k);
            s += (cs == "1") ? mono : "(" + cs + ")*" + mono;
        }
    }
    return s;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly f = a, g = b;
    while (!g.is_zero()) {
        // monic remainders keep coefficient growth bounded at these degrees
        UniPoly r = f.mod(g);
        if (!r.is_zero()) r = r.monic();
        f = g;
        g = r;
    }
    return f.is_zero() ? f : f.monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree decomposition of 0");
    std::vector<std::pair<UniPoly, int>> out;
    if (p.degree() == 0) return out;
    UniPoly pm = p.monic();
    UniPoly d = gcd(pm, pm.derivative());
    // Yun's algorithm
    UniPoly wi = pm.divrem(d).first;
    UniPoly yi = pm.derivative().divrem(d).first;
    UniPoly zi = yi - wi.derivative();
    int i = 1;
    while (wi.degree() > 0) {
        UniPoly ai = gcd(wi, zi);
        if (ai.degree() > 0) out.emplace_back(ai, i);
        wi = wi.divrem(ai).first;
        yi = zi.divrem(ai).first;
        zi = yi - wi.derivative();
        ++i;
    }
    return out;
}

int vanishing_order(const UniPoly& p, const FieldElement& r) {
    if (p.is_zero()) throw ZeroPolynomial("vanishing order of 0");
    UniPoly lin(p.tower(), {-r, FieldElement::one(p.tower())});
    int order = 0;
    UniPoly q = p;
    while (true) {
        auto [quot, rem] = q.divrem(lin);
        if (!rem.is_zero()) return order;
        ++order;
        q = quot;
        if (q.is_zero()) return order; // fully consumed (p was a power of the factor)
    }
}

// roots of a monic squarefree polynomial of degree <= 4 lying in the tower
static std::vector<FieldElement> squarefree_roots(const UniPoly& f, bool& complete);

static std::vector<FieldElement> quadratic_roots(const FieldElement& p, const FieldElement& q,
                                                 bool& complete) {
    // t^2 + p t + q
    const TowerPtr& t = p.tower();
    FieldElement disc = p * p - q * Rational(4);
    auto s = sqrt_in_tower(disc);
    if (!s) {
        complete = false;
        return {};
    }
    FieldElement half(t, Rational(1, 2));
    return {(-p + *s) * half, (-p - *s) * half};
}

// rational root candidates of an integer polynomial via divisor enumeration;
// only used when all coefficients are rational
static std::vector<Rational> rational_root_candidates(const UniPoly& f) {
    BigInt lead_num = 1, const_num = 1, den_lcm = 1;
    for (int k = 0; k <= f.degree(); ++k) {
        if (!f.coeff(k).is_rational()) return {};
        den_lcm = boost::multiprecision::lcm(den_lcm,
                                             boost::multiprecision::denominator(f.coeff(k).rational_part()));
    }
    auto int_coeff = [&](int k) {
        Rational c = f.coeff(k).rational_part() * Rational(den_lcm);
        return boost::multiprecision::numerator(c);
    };
    const_num = int_coeff(0);
    lead_num = int_coeff(f.degree());
    if (const_num == 0) return {Rational(0)};
    auto divisors = [](BigInt n) {
        n = boost::multiprecision::abs(n);
        std::vector<BigInt> out;
        if (n > 1000000000) return out; // give up on huge constants
        for (BigInt d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                out.push_back(d);
                out.push_back(n / d);
            }
        }
        return out;
    };
    std::vector<Rational> cands{Rational(0)};
    for (const auto& pnum : divisors(const_num))
        for (const auto& pden : divisors(lead_num)) {
            cands.push_back(Rational(pnum, pden));
            cands.push_back(Rational(-pnum, pden));
        }
    return cands;
}

static std::vector<FieldElement> quartic_roots(const UniPoly& f, bool& complete);

static std::vector<FieldElement> cubic_roots(const UniPoly& f, bool& complete) {
    const TowerPtr& t = f.tower();
    for (const auto& cand : rational_root_candidates(f)) {
        FieldElement r(t, cand);
        if (f.eval(r).is_zero()) {
            UniPoly lin(t, {-r, FieldElement::one(t)});
            UniPoly q = f.divrem(lin).first;
            auto rest = quadratic_roots(q.coeff(1), q.coeff(0), complete);
            rest.push_back(r);
            return rest;
        }
    }
    complete = false;
    return {};
}

static std::vector<FieldElement> biquadratic_roots(const FieldElement& p, const FieldElement& q,
                                                   bool& complete) {
    // t^4 + p t^2 + q, squarefree
    const TowerPtr& t = p.tower();
    std::vector<FieldElement> roots;
    bool tc = true;
    auto ts = quadratic_roots(p, q, tc); // roots of T^2 + pT + q, T = t^2
    if (tc) {
        for (const auto& T : ts) {
            auto s = sqrt_in_tower(T);
            if (s) {
                roots.push_back(*s);
                roots.push_back(-*s);
            } else {
                complete = false;
            }
        }
        return roots;
    }
    // (t^2 + a t + b)(t^2 - a t + b) with b^2 = q, a^2 = 2b - p
    auto bq = sqrt_in_tower(q);
    if (bq) {
        for (const FieldElement& b : {*bq, -*bq}) {
            auto a = sqrt_in_tower(b * Rational(2) - p);
            if (!a) continue;
            bool c1 = true, c2 = true;
            auto r1 = quadratic_roots(*a, b, c1);
            auto r2 = quadratic_roots(-*a, b, c2);
            if (!c1 || !c2) complete = false;
            r1.insert(r1.end(), r2.begin(), r2.end());
            return r1;
        }
    }
    complete = false;
    return {};
}

static std::vector<FieldElement> quartic_roots(const UniPoly& f, bool& complete) {
    const TowerPtr& t = f.tower();
    // linear peel via rational candidates first
    for (const auto& cand : rational_root_candidates(f)) {
        FieldElement r(t, cand);
        if (f.eval(r).is_zero()) {
            UniPoly lin(t, {-r, FieldElement::one(t)});
            auto rest = cubic_roots(f.divrem(lin).first, complete);
            rest.push_back(r);
            return rest;
        }
    }
    FieldElement p3 = f.coeff(3);
    const Rational quarter(1, 4);
    FieldElement shift = p3 * quarter; // t = s - p3/4
    // depress
    UniPoly s_poly(t, {-shift, FieldElement::one(t)});
    // f(s - shift): expand via composition
    UniPoly comp = UniPoly::constant(FieldElement::zero(t));
    {
        UniPoly acc(t, {FieldElement::one(t)});
        for (int k = 0; k <= f.degree(); ++k) {
            comp = comp + acc * f.coeff(k);
            acc = acc * s_poly;
        }
    }
    FieldElement P = comp.coeff(2), Q = comp.coeff(1), R = comp.coeff(0);
    std::vector<FieldElement> roots;
    if (Q.is_zero()) {
        roots = biquadratic_roots(P, R, complete);
    } else {
        // resolvent for (s^2+as+b)(s^2-as+d): y = a^2 satisfies
        // y^3 + 2P y^2 + (P^2 - 4R) y - Q^2 = 0
        UniPoly resolvent(t, {-(Q * Q), P * P - R * Rational(4), P * Rational(2),
                              FieldElement::one(t)});
        bool found = false;
        for (const auto& cand : rational_root_candidates(resolvent)) {
            if (cand == 0) continue;
            FieldElement y(t, cand);
            if (!resolvent.eval(y).is_zero()) continue;
            auto a = sqrt_in_tower(y);
            if (!a) continue;
            FieldElement qa = Q / *a;
            const Rational half(1, 2);
            FieldElement b = (P + y - qa) * half;
            FieldElement d = (P + y + qa) * half;
            bool c1 = true, c2 = true;
            auto r1 = quadratic_roots(*a, b, c1);
            auto r2 = quadratic_roots(-*a, d, c2);
            if (!c1 || !c2) complete = false;
            roots = r1;
            roots.insert(roots.end(), r2.begin(), r2.end());
            found = true;
            break;
        }
        if (!found) complete = false;
    }
    for (auto& r : roots) r = r - shift;
    return roots;
}

static std::vector<FieldElement> squarefree_roots(const UniPoly& f, bool& complete) {
    switch (f.degree()) {
        case 0: return {};
        case 1: return {-f.coeff(0)};
        case 2: return quadratic_roots(f.coeff(1), f.coeff(0), complete);
        case 3: return cubic_roots(f, complete);
        case 4: return quartic_roots(f, complete);
        default: throw DegenerateInput("structured roots limited to degree <= 4");
    }
}

StructuredRoots roots_structured(const UniPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("roots of 0");
    if (p.degree() > 4) throw DegenerateInput("structured roots limited to degree <= 4");
    StructuredRoots out;
    out.complete = true;
    for (const auto& [f, m] : squarefree_decomposition(p)) {
        auto roots = squarefree_roots(f.monic(), out.complete);
        for (const auto& r : roots) out.roots.emplace_back(r, m);
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// --------------------------------------------------------------- resultants

FieldElement resultant(const UniPoly& f, const UniPoly& g) {
    if (f.degree() < 1 || g.degree() < 1)
        throw DegenerateInput("resultant needs positive degrees");
    const TowerPtr& t = f.tower();
    int m = f.degree(), n = g.degree();
    int N = m + n;
    std::vector<std::vector<FieldElement>> s(N, std::vector<FieldElement>(N, FieldElement::zero(t)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s[i][i + (m - k)] = f.coeff(k);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) s[n + i][i + (n - k)] = g.coeff(k);
    // exact Gaussian elimination over the field
    FieldElement det = FieldElement::one(t);
    for (int col = 0; col < N; ++col) {
        int pivot = -1;
        for (int r = col; r < N; ++r)
            if (!s[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) return FieldElement::zero(t);
        if (pivot != col) {
            std::swap(s[pivot], s[col]);
            det = -det;
        }
        det = det * s[col][col];
        FieldElement inv = s[col][col].inverse();
        for (int r = col + 1; r < N; ++r) {
            if (s[r][col].is_zero()) continue;
            FieldElement fac = s[r][col] * inv;
            for (int c = col; c < N; ++c) s[r][c] = s[r][c] - fac * s[col][c];
        }
    }
    return det;
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, Var v) {
    int m = f.degree_in(v), n = g.degree_in(v);
    if (m < 1 || n < 1) throw DegenerateInput("resultant needs positive degrees in the variable");
    const TowerPtr& t = f.tower();
    auto fc = f.coefficients_in(v);
    auto gc = g.coefficients_in(v);
    int N = m + n;
    MultiPoly zero(t);
    std::vector<std::vector<MultiPoly>> s(N, std::vector<MultiPoly>(N, zero));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s[i][i + (m - k)] = fc[k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) s[n + i][i + (n - k)] = gc[k];

    // Bareiss fraction-free elimination over the polynomial ring; every
    // division below is exact by the minor identities.
    MultiPoly prev = MultiPoly::constant(t, Rational(1));
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        int pivot = -1;
        for (int r = k; r < N; ++r)
            if (!s[r][k].is_zero()) { pivot = r; break; }
        if (pivot < 0) return zero;
        if (pivot != k) {
            std::swap(s[pivot], s[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                MultiPoly num = s[k][k] * s[i][j] - s[i][k] * s[k][j];
                auto q = num.exact_divide(prev);
                if (!q) throw KernelError("Bareiss division not exact");
                s[i][j] = *q;
            }
            s[i][k] = zero;
        }
        prev = s[k][k];
    }
    MultiPoly det = s[N - 1][N - 1];
    return sign < 0 ? -det : det;
}

// --------------------------------------------------------------- restriction

ProjPoint LineSection::point_at(const FieldElement& s) const {
    return ProjPoint(A[0] * s + B[0], A[1] * s + B[1], A[2] * s + B[2]);
}

LineSection restrict_to_line(const MultiPoly& p, const ProjLine& line) {
    if (!p.is_homogeneous()) throw NotHomogeneous("line restriction needs a form");
    if (p.is_zero()) throw ZeroPolynomial("restriction of the zero form");
    const TowerPtr& t = p.tower();
    ProjLine l = line.tower()->same_as(*t) ? line : line.lift_to(t);

    // pivot coordinate: largest embedded coefficient (deterministic)
    int k = 0;
    double best = -1;
    for (int i = 0; i < 3; ++i) {
        double m = std::abs(l[i].embed());
        if (m > best + 1e-15) {
            best = m;
            k = i;
        }
    }
    int i = (k == 0) ? 1 : 0;
    int j = (k == 2) ? 1 : 2;
    FieldElement zero = FieldElement::zero(t);
    Triple A{zero, zero, zero}, B{zero, zero, zero};
    A[i] = l[k];
    A[k] = -l[i];
    B[j] = l[k];
    B[k] = -l[j];

    int d = p.degree();
    // binary forms in (s, t) as dense coefficient vectors indexed by s-power
    using Bin = std::vector<FieldElement>;
    auto bin_mul = [&](const Bin& a, const Bin& b) {
        Bin out(a.size() + b.size() - 1, zero);
        for (std::size_t u = 0; u < a.size(); ++u)
            for (std::size_t w = 0; w < b.size(); ++w) out[u + w] += a[u] * b[w];
        return out;
    };
    std::array<std::vector<Bin>, 3> pows;
    for (int c = 0; c < 3; ++c) {
        pows[c].push_back(Bin{FieldElement::one(t)});
        Bin lin{B[c], A[c]}; // t-coefficient first (s-power index 0 is the t part)
        for (int e = 1; e <= d; ++e) pows[c].push_back(bin_mul(pows[c].back(), lin));
    }
    Bin acc(std::size_t(d) + 1, zero);
    for (const auto& [e, c] : p.terms()) {
        Bin termv = pows[0][e.e[0]];
        termv = bin_mul(termv, pows[1][e.e[1]]);
        termv = bin_mul(termv, pows[2][e.e[2]]);
        for (std::size_t u = 0; u < termv.size(); ++u) acc[u] += termv[u] * c;
    }

    LineSection out{UniPoly(t, acc), d, A, B};
    return out;
}

MultiPoly conic_to_poly(const Conic& c) {
    const TowerPtr& t = c.tower();
    const auto& a = c.coeffs();
    MultiPoly p(t);
    p.add_term({{2, 0, 0}}, a[0]);
    p.add_term({{1, 1, 0}}, a[1]);
    p.add_term({{1, 0, 1}}, a[2]);
    p.add_term({{0, 2, 0}}, a[3]);
    p.add_term({{0, 1, 1}}, a[4]);
    p.add_term({{0, 0, 2}}, a[5]);
    return p;
}

Conic poly_to_conic(const MultiPoly& p) {
    if (p.is_zero() || !p.is_homogeneous() || p.degree() != 2)
        throw DegenerateInput("not a conic form");
    return Conic({p.coeff({{2, 0, 0}}), p.coeff({{1, 1, 0}}), p.coeff({{1, 0, 1}}),
                  p.coeff({{0, 2, 0}}), p.coeff({{0, 1, 1}}), p.coeff({{0, 0, 2}})});
}

MultiPoly line_to_poly(const ProjLine& l) {
    MultiPoly p(l.tower());
    p.add_term({{1, 0, 0}}, l[0]);
    p.add_term({{0, 1, 0}}, l[1]);
    p.add_term({{0, 0, 1}}, l[2]);
    return p;
}

FieldElement change_determinant(const LinearChange& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

LinearChange seeded_coordinate_change(const TowerPtr& t, std::uint64_t seed) {
    std::uint64_t state = seed ? seed : 1;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return int((state >> 33) % 7) - 3;
    };
    FieldElement z = FieldElement::zero(t);
    while (true) {
        LinearChange m{{{z, z, z}, {z, z, z}, {z, z, z}}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = FieldElement(t, Rational(next()));
        if (!change_determinant(m).is_zero()) return m;
    }
}

Triple apply_change(const LinearChange& m, const Triple& p) {
    return Triple{m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2],
                  m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
                  m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2]};
}

} // namespace quartica
