#include "quartica/tower.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quartica {

namespace {

bool all_zero(const Rational* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != 0) return false;
    return true;
}

std::string basis_monomial(const TowerField& t, std::size_t idx) {
    std::string s;
    for (std::size_t k = 0; k < t.levels(); ++k) {
        if (idx & (std::size_t(1) << k)) {
            if (!s.empty()) s += "*";
            s += t.level(k).name;
        }
    }
    return s;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

} // namespace

// ---------------------------------------------------------------- TowerField

TowerPtr TowerField::rationals() {
    auto t = std::make_shared<TowerField>();
    t->spec_ = "Q()";
    return t;
}

int TowerField::level_of(const std::string& name) const {
    for (std::size_t k = 0; k < levels_.size(); ++k)
        if (levels_[k].name == name) return int(k);
    return -1;
}

bool TowerField::same_as(const TowerField& o) const {
    if (this == &o) return true;
    return spec_ == o.spec_;
}

void TowerField::radicand_mul(std::size_t lv, const Rational* a, Rational* out,
                              Rational* scratch) const {
    const Level& L = levels_[lv];
    std::size_t h = std::size_t(1) << lv;
    if (L.scalar_radicand) {
        const Rational& s = L.radicand[0];
        for (std::size_t i = 0; i < h; ++i) out[i] = a[i] * s;
    } else {
        mul_span(lv, a, L.radicand.data(), out, scratch);
    }
}

void TowerField::mul_span(std::size_t nlv, const Rational* a, const Rational* b,
                          Rational* out, Rational* scratch) const {
    if (nlv == 0) {
        out[0] = a[0] * b[0];
        return;
    }
    std::size_t h = std::size_t(1) << (nlv - 1);
    Rational* t1 = scratch;          // h
    Rational* t2 = scratch + h;      // h
    Rational* rest = scratch + 2 * h;

    // out_hi = a_lo*b_hi + a_hi*b_lo
    mul_span(nlv - 1, a, b + h, out + h, rest);
    mul_span(nlv - 1, a + h, b, t1, rest);
    for (std::size_t i = 0; i < h; ++i) out[h + i] += t1[i];

    // out_lo = a_lo*b_lo + r * (a_hi*b_hi)
    mul_span(nlv - 1, a, b, out, rest);
    mul_span(nlv - 1, a + h, b + h, t1, rest);
    radicand_mul(nlv - 1, t1, t2, rest);
    for (std::size_t i = 0; i < h; ++i) out[i] += t2[i];
}

void TowerField::inv_span(std::size_t nlv, const Rational* a, Rational* out) const {
    if (nlv == 0) {
        if (a[0] == 0) throw DivisionByZero("in Q");
        out[0] = Rational(1) / a[0];
        return;
    }
    std::size_t h = std::size_t(1) << (nlv - 1);
    std::vector<Rational> scratch(4 * h), norm(h), tmp(h), tmp2(h), inv_norm(h);
    // (x + y g)^{-1} = (x - y g) / (x^2 - r y^2), recursing into the subtower
    mul_span(nlv - 1, a, a, norm.data(), scratch.data());
    mul_span(nlv - 1, a + h, a + h, tmp.data(), scratch.data());
    radicand_mul(nlv - 1, tmp.data(), tmp2.data(), scratch.data());
    for (std::size_t i = 0; i < h; ++i) norm[i] -= tmp2[i];
    if (all_zero(norm.data(), h)) throw DivisionByZero("zero norm");
    inv_span(nlv - 1, norm.data(), inv_norm.data());
    mul_span(nlv - 1, a, inv_norm.data(), out, scratch.data());
    mul_span(nlv - 1, a + h, inv_norm.data(), out + h, scratch.data());
    for (std::size_t i = 0; i < h; ++i) out[h + i] = -out[h + i];
}

bool TowerField::sqrt_span(std::size_t nlv, const Rational* a, Rational* out) const {
    if (nlv == 0) {
        auto r = rational_sqrt(a[0]);
        if (!r) return false;
        out[0] = *r;
        return true;
    }
    std::size_t h = std::size_t(1) << (nlv - 1);
    const Rational* x = a;
    const Rational* y = a + h;
    std::vector<Rational> scratch(4 * h);

    if (all_zero(y, h)) {
        // a lies in the subtower: either sqrt(x) there, or sqrt(x/r)*g
        std::fill(out + h, out + 2 * h, Rational(0));
        if (sqrt_span(nlv - 1, x, out)) return true;
        std::vector<Rational> inv_r(h), x_over_r(h);
        inv_span(nlv - 1, levels_[nlv - 1].radicand.data(), inv_r.data());
        mul_span(nlv - 1, x, inv_r.data(), x_over_r.data(), scratch.data());
        std::fill(out, out + h, Rational(0));
        if (sqrt_span(nlv - 1, x_over_r.data(), out + h)) return true;
        return false;
    }

    // b = u + v g with u^2 + r v^2 = x and 2uv = y; u^2 is a root of
    // T^2 - x T + r (y/2)^2, so u^2 = (x +- n)/2 with n^2 = x^2 - r y^2.
    std::vector<Rational> n2(h), tmp(h), tmp2(h), n(h);
    mul_span(nlv - 1, x, x, n2.data(), scratch.data());
    mul_span(nlv - 1, y, y, tmp.data(), scratch.data());
    radicand_mul(nlv - 1, tmp.data(), tmp2.data(), scratch.data());
    for (std::size_t i = 0; i < h; ++i) n2[i] -= tmp2[i];
    if (!sqrt_span(nlv - 1, n2.data(), n.data())) return false;

    for (int branch = 0; branch < 2; ++branch) {
        std::vector<Rational> cand(h), u(h);
        for (std::size_t i = 0; i < h; ++i) {
            if (branch == 0)
                cand[i] = (x[i] + n[i]) / 2;
            else
                cand[i] = (x[i] - n[i]) / 2;
        }
        if (all_zero(cand.data(), h)) continue;
        if (!sqrt_span(nlv - 1, cand.data(), u.data())) continue;
        std::vector<Rational> two_u(h), inv2u(h);
        for (std::size_t i = 0; i < h; ++i) two_u[i] = 2 * u[i];
        inv_span(nlv - 1, two_u.data(), inv2u.data());
        std::copy(u.begin(), u.end(), out);
        mul_span(nlv - 1, y, inv2u.data(), out + h, scratch.data());
        return true;
    }
    return false;
}

std::complex<double> TowerField::embed_span(std::size_t nlv, const Rational* a) const {
    if (nlv == 0) return {to_double(a[0]), 0.0};
    std::size_t h = std::size_t(1) << (nlv - 1);
    return embed_span(nlv - 1, a) + embed_span(nlv - 1, a + h) * levels_[nlv - 1].gen_embed;
}

TowerPtr extend_tower(const TowerPtr& base, const std::string& name,
                      const FieldElement& radicand) {
    if (!radicand.tower()->same_as(*base))
        throw TowerMismatch("radicand must live in the base tower");
    if (radicand.is_zero())
        throw MalformedSpec("zero radicand for generator '" + name + "'");
    if (base->level_of(name) >= 0)
        throw MalformedSpec("generator name '" + name + "' reused");
    if (sqrt_in_tower(radicand))
        throw DegenerateExtension("radicand " + radicand.str() +
                                  " is already a square below '" + name + "'");

    auto t = std::make_shared<TowerField>(*base);
    TowerField::Level lv;
    lv.name = name;
    lv.radicand = radicand.coords();
    lv.scalar_radicand = radicand.is_rational();
    lv.gen_embed = std::sqrt(radicand.embed());
    // embedding invariant: the chosen generator image squares to the radicand image
    std::complex<double> r = radicand.embed();
    if (std::abs(lv.gen_embed * lv.gen_embed - r) > 1e-9 * (1.0 + std::abs(r)))
        throw MalformedSpec("embedding drift for generator '" + name + "'");
    t->levels_.push_back(std::move(lv));

    std::string spec = base->levels() == 0 ? "Q(" : base->spec_string().substr(0, base->spec_string().size() - 1);
    if (base->levels() > 0) spec += ",";
    spec += name + ":" + radicand.str() + ")";
    t->spec_ = spec;
    return t;
}

// -------------------------------------------------------------- FieldElement

FieldElement::FieldElement(TowerPtr t, Rational r) : tower_(std::move(t)), c_(tower_->dim()) {
    c_[0] = std::move(r);
}

FieldElement::FieldElement(TowerPtr t, std::vector<Rational> coords)
    : tower_(std::move(t)), c_(std::move(coords)) {
    if (c_.size() != tower_->dim())
        throw MalformedSpec("coordinate vector length != tower dimension");
}

FieldElement FieldElement::generator(const TowerPtr& t, std::size_t level) {
    if (level >= t->levels()) throw MalformedSpec("no such tower level");
    std::vector<Rational> c(t->dim());
    c[std::size_t(1) << level] = 1;
    return FieldElement(t, std::move(c));
}

FieldElement FieldElement::generator(const TowerPtr& t, const std::string& name) {
    int lv = t->level_of(name);
    if (lv < 0) throw MalformedSpec("no generator named '" + name + "'");
    return generator(t, std::size_t(lv));
}

void FieldElement::require_same_tower(const FieldElement& o) const {
    if (!tower_->same_as(*o.tower_))
        throw TowerMismatch(tower_->spec_string() + " vs " + o.tower_->spec_string());
}

bool FieldElement::is_zero() const { return all_zero(c_.data(), c_.size()); }

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_tower(o);
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] + o.c_[i];
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_tower(o);
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] - o.c_[i];
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::operator-() const {
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = -c_[i];
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_tower(o);
    std::vector<Rational> out(c_.size());
    std::vector<Rational> scratch(2 * c_.size());
    tower_->mul_span(tower_->levels(), c_.data(), o.c_.data(), out.data(), scratch.data());
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::operator*(const Rational& r) const {
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * r;
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::operator/(const Rational& r) const {
    if (r == 0) throw DivisionByZero("rational divisor");
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / r;
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero(str());
    std::vector<Rational> out(c_.size());
    tower_->inv_span(tower_->levels(), c_.data(), out.data());
    return FieldElement(tower_, std::move(out));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement acc = one(tower_);
    FieldElement base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_tower(o);
    return c_ == o.c_;
}

bool FieldElement::operator<(const FieldElement& o) const {
    require_same_tower(o);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

std::complex<double> FieldElement::embed() const {
    return tower_->embed_span(tower_->levels(), c_.data());
}

std::string FieldElement::str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rational c = c_[i];
        bool neg = c < 0;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (neg) c = -c;
        std::string mono = basis_monomial(*tower_, i);
        if (mono.empty()) {
            s += rational_str(c);
        } else if (c == 1) {
            s += mono;
        } else {
            s += rational_str(c) + "*" + mono;
        }
    }
    return s.empty() ? "0" : s;
}

FieldElement FieldElement::lift_to(const TowerPtr& super) const {
    if (super->same_as(*tower_)) return FieldElement(super, c_);
    // match this tower's levels as a subsequence of the supertower's levels
    std::vector<std::size_t> pos(tower_->levels());
    std::size_t j = 0;
    for (std::size_t k = 0; k < tower_->levels(); ++k) {
        while (j < super->levels() && super->level(j).name != tower_->level(k).name) ++j;
        if (j == super->levels())
            throw TowerMismatch("cannot lift " + tower_->spec_string() + " into " + super->spec_string());
        pos[k] = j++;
    }
    // verify the matched radicands agree after scattering through the map so far
    for (std::size_t k = 0; k < tower_->levels(); ++k) {
        const auto& sub_rad = tower_->level(k).radicand;
        const auto& sup_rad = super->level(pos[k]).radicand;
        std::vector<Rational> lifted(sup_rad.size());
        for (std::size_t i = 0; i < sub_rad.size(); ++i) {
            std::size_t target = 0;
            for (std::size_t m = 0; m < k; ++m)
                if (i & (std::size_t(1) << m)) target |= std::size_t(1) << pos[m];
            lifted[target] = sub_rad[i];
        }
        if (lifted != sup_rad)
            throw TowerMismatch("generator '" + tower_->level(k).name +
                                "' has a different radicand in " + super->spec_string());
    }
    std::vector<Rational> out(super->dim());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::size_t target = 0;
        for (std::size_t m = 0; m < tower_->levels(); ++m)
            if (i & (std::size_t(1) << m)) target |= std::size_t(1) << pos[m];
        out[target] = c_[i];
    }
    return FieldElement(super, std::move(out));
}

std::optional<FieldElement> sqrt_in_tower(const FieldElement& a) {
    const TowerPtr& t = a.tower();
    if (a.is_zero()) return FieldElement::zero(t);
    std::vector<Rational> out(t->dim());
    if (!t->sqrt_span(t->levels(), a.coords().data(), out.data())) return std::nullopt;
    FieldElement b(t, std::move(out));
    // deterministic branch: non-negative real part, ties toward non-negative imag
    std::complex<double> e = b.embed();
    double tol = 1e-12 * (1.0 + std::abs(e));
    if (e.real() < -tol || (std::abs(e.real()) <= tol && e.imag() < 0)) b = -b;
    if (b * b != a) throw KernelError("sqrt verification failed for " + a.str());
    return b;
}

} // namespace quartica
