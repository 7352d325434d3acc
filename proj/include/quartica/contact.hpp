#pragma once

// Local analysis of plane curves: exact branch expansions at smooth points,
// intersection multiplicities by series composition, maximal-tangency-line
// verification, the Hessian/flex scheme, osculating conics, sextactic
// classification, and the search for conics osculating a curve at two points.

#include "quartica/multipoly.hpp"

#include <optional>

namespace quartica {

class PlaneCurve {
public:
    explicit PlaneCurve(MultiPoly form);

    const MultiPoly& form() const { return form_; }
    const TowerPtr& tower() const { return form_.tower(); }
    int degree() const { return form_.degree(); }

    bool contains(const ProjPoint& p) const { return form_.eval(p).is_zero(); }
    std::array<FieldElement, 3> gradient_at(const Triple& p) const;
    bool smooth_at(const ProjPoint& p) const;
    PlaneCurve lift_to(const TowerPtr& t) const { return PlaneCurve(form_.lift_to(t)); }

private:
    MultiPoly form_;
};

// Exact power-series branch y(x) = c1 x + c2 x^2 + ... of a curve at a smooth
// point, in a deterministically chosen affine chart (solve for the variable
// with the largest embedded partial derivative, set the largest remaining
// coordinate of the point to 1, expand in the third).
class BranchSeries {
public:
    BranchSeries(const PlaneCurve& curve, const ProjPoint& center, int order);

    const ProjPoint& center() const { return center_; }
    int order() const { return int(coeffs_.size()); }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    int chart_var() const { return chart_var_; }
    int solve_var() const { return solve_var_; }
    int param_var() const { return param_var_; }

    // g evaluated along the branch, truncated mod s^{trunc+1} (trunc <= order)
    UniPoly compose(const MultiPoly& g, int trunc) const;

private:
    ProjPoint center_;
    int chart_var_, solve_var_, param_var_;
    FieldElement p_param_, p_solve_;
    std::vector<FieldElement> coeffs_; // c_1 .. c_n
    TowerPtr tower_;
};

struct ContactReport {
    ProjPoint point;
    int order = 0;
    bool exact = true; // false: order is only certified as a lower bound
    UniPoly witness;
};

// Local intersection multiplicity I_P(C, D) at a smooth point of C, by
// composing D with the branch of C and reading the vanishing order.  The
// truncation starts at 2*deg(C)+2 and doubles until the order resolves; an
// order past deg(C)*deg(D) certifies a shared component through P and is
// reported as a lower bound.
ContactReport contact_order(const PlaneCurve& c, const MultiPoly& d, const ProjPoint& p,
                            int cap = -1);
ContactReport contact_order(const PlaneCurve& c, const ProjLine& d, const ProjPoint& p,
                            int cap = -1);
ContactReport contact_order(const PlaneCurve& c, const Conic& d, const ProjPoint& p,
                            int cap = -1);

struct MtlResult {
    bool is_mtl = false;
    std::optional<ProjPoint> point; // the single tangency point when is_mtl
};
// True iff the line meets the curve in exactly one point, necessarily with
// full multiplicity deg(C): the restriction must be a scalar times the
// deg(C)-th power of a linear form.
MtlResult mtl_verify(const PlaneCurve& c, const ProjLine& line);

PlaneCurve hessian(const PlaneCurve& c); // degree 3(d-2); requires d >= 3

struct FlexScheme {
    bool complete = false;
    std::vector<std::pair<ProjPoint, int>> points; // (point, local multiplicity)
    long total = 0;                                // = 3d(d-2) when complete
    std::vector<int> pattern;                      // resultant fallback, multiplicities desc
};
// Intersection of the curve with its Hessian.  Extraction succeeds when the
// Hessian is a monomial times a constant (the coordinate-line case) or when
// candidate points are supplied; completeness is certified by the sum of
// local multiplicities reaching 3d(d-2).
FlexScheme flex_scheme(const PlaneCurve& c);
FlexScheme flex_scheme(const PlaneCurve& c, const std::vector<ProjPoint>& candidates);

// rows k = 0..rows-1 of the condition "conic composed with the branch of C at
// P vanishes to order k", one column per conic coefficient (xx,xy,xz,yy,yz,zz)
std::vector<std::vector<FieldElement>> conic_jet_rows(const PlaneCurve& c, const ProjPoint& p,
                                                      int rows);

struct OsculatingConic {
    Conic conic;
    int order;
};
// The conic with contact >= 5 at P (generically unique).
OsculatingConic osculating_conic(const PlaneCurve& c, const ProjPoint& p);

enum class SextacticClass { NotSextactic, Improper, Proper };
struct SextacticReport {
    SextacticClass cls = SextacticClass::NotSextactic;
    std::optional<Conic> conic; // a contact->=6 conic; reduced iff Proper
    int order = 0;
};
// P is sextactic iff some conic meets the curve with multiplicity >= 6 at P;
// proper iff such a conic exists with Gram rank >= 2 (not a double line).
SextacticReport sextactic_classify(const PlaneCurve& c, const ProjPoint& p);

struct BiosculatingConic {
    Conic conic;
    ProjPoint p, q;
    int order_p = 0, order_q = 0;
};
// All reduced conics with contact >= 4 at two of the given points: 4 jet
// conditions at each anchor give an 8x6 system whose kernel, when
// 1-dimensional, is the candidate conic; contacts are re-verified by series
// composition before a conic is emitted.
std::vector<BiosculatingConic> biosculating_conics(const PlaneCurve& c,
                                                   const std::vector<ProjPoint>& pts);

} // namespace quartica
