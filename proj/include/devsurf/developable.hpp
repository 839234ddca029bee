#pragma once

#include "devsurf/curves.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace devsurf {

inline constexpr double kDefaultTolerance = 1e-9;

/// Ruled patch b(t,v) = (1-v) c(t) + v d(t) between two rational Bézier
/// directrices. Construction elevates the lower-degree directrix so both
/// share one degree.
template <Scalar S>
class RuledPatch {
   public:
    RuledPatch(RationalBezierCurve<S> c, RationalBezierCurve<S> d);

    const RationalBezierCurve<S>& directrix_c() const { return c_; }
    const RationalBezierCurve<S>& directrix_d() const { return d_; }
    int degree() const { return c_.degree(); }

   private:
    RationalBezierCurve<S> c_;
    RationalBezierCurve<S> d_;
};

template <Scalar S>
struct PatchSpan {
    S start;
    S end;
    RuledPatch<S> patch;
};

/// Ruled patch between NURBS directrices of one degree. Knot vectors are
/// merged by mutual knot insertion on construction.
template <Scalar S>
class NurbsRuledPatch {
   public:
    NurbsRuledPatch(NurbsCurve<S> c, NurbsCurve<S> d);

    const NurbsCurve<S>& directrix_c() const { return c_; }
    const NurbsCurve<S>& directrix_d() const { return d_; }

    /// One Bézier ruled patch per nonempty knot span.
    std::vector<PatchSpan<S>> spans() const;

   private:
    NurbsCurve<S> c_;
    NurbsCurve<S> d_;
};

enum class SurfaceKind { Planar, Cylindrical, Conical, TangentDevelopable, NonDevelopable, DegenerateRuling };

std::string_view to_string(SurfaceKind kind);
std::optional<SurfaceKind> surface_kind_from_string(std::string_view name);

template <Scalar S>
struct Classification {
    SurfaceKind kind;
    std::optional<Vec3<S>> apex;  // set for Conical
};

/// Functions with D'(t) = lambda(t) C'(t) + mu(t) C(t) + nu(t) D(t).
template <Scalar S>
struct CoefficientTriple {
    BernsteinPoly<S> lambda;
    BernsteinPoly<S> mu;
    BernsteinPoly<S> nu;
};

template <Scalar S>
struct SpanReport {
    S start;
    S end;
    BernsteinPoly<S> defect;
    bool verdict;
    double max_normalized_coeff;
    std::optional<Classification<S>> classification;
};

template <Scalar S>
struct DevelopabilityReport {
    std::vector<SpanReport<S>> spans;
    bool verdict = false;
    double max_normalized_coeff = 0.0;
    /// Unset when not computed, or when developable spans disagree (see spans).
    std::optional<Classification<S>> classification;
    std::optional<CoefficientTriple<S>> coefficients;
};

/// Homogeneous defect W(t) = det[C, D, C', D'] of degree 4n-2.
template <Scalar S>
BernsteinPoly<S> defect_polynomial(const RuledPatch<S>& patch);

/// det[d - c, c', d'] of degree 3n-2; polynomial (unit-weight) directrices only.
template <Scalar S>
BernsteinPoly<S> affine_defect(const RuledPatch<S>& patch);

/// Normalization for the defect zero test: s^2 (n s)^2 with s the largest
/// homogeneous control coordinate.
template <Scalar S>
S defect_scale(const RuledPatch<S>& patch);

/// Verdict and defect only.
template <Scalar S>
DevelopabilityReport<S> is_developable(const RuledPatch<S>& patch, double tol = kDefaultTolerance);

template <Scalar S>
Classification<S> classify(const RuledPatch<S>& patch, double tol = kDefaultTolerance);

/// Verdict, classification and, where the generic solve applies, the
/// coefficient triple.
template <Scalar S>
DevelopabilityReport<S> check(const RuledPatch<S>& patch, double tol = kDefaultTolerance);

template <Scalar S>
DevelopabilityReport<S> check_nurbs(const NurbsRuledPatch<S>& patch, double tol = kDefaultTolerance);

template <Scalar S>
HomogeneousCurve<S> coefficient_residual(const RuledPatch<S>& patch, const CoefficientTriple<S>& triple);

template <Scalar S>
CoefficientTriple<S> recover_coefficients(const RuledPatch<S>& patch, double tol = kDefaultTolerance);

/// Solves D' = lambda C' + mu C + nu D with D(0) = d0 for a polynomial D.
template <Scalar S>
RationalBezierCurve<S> construct_directrix(const RationalBezierCurve<S>& base, const BernsteinPoly<S>& lambda,
                                           const BernsteinPoly<S>& mu, const BernsteinPoly<S>& nu,
                                           const Vec4<S>& d0, double tol = kDefaultTolerance);

template <Scalar S>
struct RegressionSample {
    S t;
    Vec3<S> point;  // unset (zero) when singular
    bool singular;
};

/// Samples r(t) = c(t) + u(t) e(t), u = -<c' x e, e' x e> / |e' x e|^2, at
/// t_i = i / (sample_count - 1).
template <Scalar S>
std::vector<RegressionSample<S>> edge_of_regression(const RuledPatch<S>& patch, int sample_count,
                                                    double tol = kDefaultTolerance);

template <Scalar To, Scalar From>
RuledPatch<To> convert(const RuledPatch<From>& p) {
    return RuledPatch<To>(convert<To>(p.directrix_c()), convert<To>(p.directrix_d()));
}

}  // namespace devsurf
