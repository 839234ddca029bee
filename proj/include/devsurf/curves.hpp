#pragma once

#include "devsurf/bernstein.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace devsurf {

/// Perspective division of a homogeneous point (w, wx, wy, wz).
template <Scalar S>
Vec3<S> project(const Vec4<S>& h) {
    if (h(0) == 0) throw ZeroWeightError("homogeneous point has zero weight");
    return h.template tail<3>() / h(0);
}

template <Scalar S>
Vec4<S> lift(const Vec3<S>& p, const S& w) {
    Vec4<S> h;
    h << w, w * p;
    return h;
}

namespace detail {

template <Scalar S>
void check_finite(const S& x, const char* what) {
    if constexpr (!is_exact_v<S>) {
        if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
    }
}

}  // namespace detail

/// Rational Bézier curve. Weights are stored apart from the affine control
/// points; the homogeneous form is computed on demand.
template <Scalar S>
class RationalBezierCurve {
   public:
    using Points = Eigen::Matrix<S, 3, Eigen::Dynamic>;
    using Weights = Eigen::Matrix<S, 1, Eigen::Dynamic>;

    explicit RationalBezierCurve(Points points)
        : RationalBezierCurve(points, Weights::Ones(points.cols())) {}

    RationalBezierCurve(Points points, Weights weights)
        : points_(std::move(points)), weights_(std::move(weights)) {
        if (points_.cols() == 0) throw DegreeError("curve needs at least one control point");
        if (points_.cols() != weights_.cols()) throw DegreeError("weights and points differ in length");
        for (Eigen::Index i = 0; i < weights_.cols(); ++i) {
            detail::check_finite(weights_(i), "weight");
            if (weights_(i) == 0) throw ZeroWeightError("control weights must be nonzero");
            for (int k = 0; k < 3; ++k) detail::check_finite(points_(k, i), "control point coordinate");
        }
    }

    /// Inverse of homogeneous(); every weight coefficient must be nonzero.
    static RationalBezierCurve from_homogeneous(const HomogeneousCurve<S>& h) {
        const auto& c = h.controls();
        Points pts(3, c.cols());
        Weights w = c.row(0);
        for (Eigen::Index i = 0; i < c.cols(); ++i) {
            if (w(i) == 0) throw ZeroWeightError("homogeneous control point at infinity");
            pts.col(i) = c.col(i).template tail<3>() / w(i);
        }
        return RationalBezierCurve(std::move(pts), std::move(w));
    }

    int degree() const { return static_cast<int>(points_.cols()) - 1; }
    const Points& points() const { return points_; }
    const Weights& weights() const { return weights_; }
    Vec3<S> point(int i) const { return points_.col(i); }

    /// Strictly positive weights: the curve lies in the hull of its points.
    bool convex_hull_safe() const { return (weights_.array() > S(0)).all(); }
    bool has_unit_weights() const { return (weights_.array() == S(1)).all(); }

    friend bool operator==(const RationalBezierCurve& a, const RationalBezierCurve& b) {
        return a.points_.cols() == b.points_.cols() && (a.points_.array() == b.points_.array()).all() &&
               (a.weights_.array() == b.weights_.array()).all();
    }

   private:
    Points points_;
    Weights weights_;
};

template <Scalar S>
HomogeneousCurve<S> homogeneous(const RationalBezierCurve<S>& curve) {
    typename HomogeneousCurve<S>::Controls c(4, curve.degree() + 1);
    for (int i = 0; i <= curve.degree(); ++i) c.col(i) = lift<S>(curve.point(i), curve.weights()(i));
    return HomogeneousCurve<S>(std::move(c));
}

template <Scalar S>
Vec3<S> eval_point(const RationalBezierCurve<S>& curve, const S& t) {
    return project<S>(evaluate(homogeneous(curve), t));
}

/// Polar form of the homogeneous curve; takes exactly `degree` arguments,
/// which may lie outside [0,1].
template <Scalar S>
Vec4<S> blossom(const RationalBezierCurve<S>& curve, std::span<const S> args) {
    const int n = curve.degree();
    if (static_cast<int>(args.size()) != n) throw DegreeError("blossom needs one argument per degree");
    auto w = homogeneous(curve).controls();
    for (int k = 0; k < n; ++k) {
        const S u = args[k];
        const S s = S(1) - u;
        for (int i = 0; i + k < n; ++i) w.col(i) = s * w.col(i) + u * w.col(i + 1);
    }
    return w.col(0);
}

template <Scalar S>
RationalBezierCurve<S> elevate_degree(const RationalBezierCurve<S>& curve, int target) {
    if (target < curve.degree()) throw DegreeError("target degree below curve degree");
    if (target == curve.degree()) return curve;
    return RationalBezierCurve<S>::from_homogeneous(elevate(homogeneous(curve), target));
}

template <Scalar S>
std::pair<RationalBezierCurve<S>, RationalBezierCurve<S>> subdivide(const RationalBezierCurve<S>& curve,
                                                                    const S& t0) {
    if (!(t0 > 0 && t0 < 1)) throw DomainError("subdivision parameter must lie in (0,1)");
    auto [l, r] = detail::split<S, 4>(homogeneous(curve).controls(), t0);
    return {RationalBezierCurve<S>::from_homogeneous(HomogeneousCurve<S>(l)),
            RationalBezierCurve<S>::from_homogeneous(HomogeneousCurve<S>(r))};
}

/// Same point set traversed with t -> 1 - t.
template <Scalar S>
RationalBezierCurve<S> reversed(const RationalBezierCurve<S>& curve) {
    return RationalBezierCurve<S>(curve.points().rowwise().reverse(), curve.weights().reverse());
}

template <Scalar To, Scalar From>
RationalBezierCurve<To> convert(const RationalBezierCurve<From>& c) {
    const auto cv = [](const From& x) {
        if constexpr (std::is_same_v<To, double>) {
            return to_double(x);
        } else {
            return To(x);
        }
    };
    return RationalBezierCurve<To>(c.points().unaryExpr(cv), c.weights().unaryExpr(cv));
}

/// Bézier piece of a NURBS curve together with its parameter interval.
template <Scalar S>
struct BezierSegment {
    S start;
    S end;
    RationalBezierCurve<S> curve;
};

/// Clamped rational B-spline curve.
template <Scalar S>
class NurbsCurve {
   public:
    using Points = typename RationalBezierCurve<S>::Points;
    using Weights = typename RationalBezierCurve<S>::Weights;

    NurbsCurve(int degree, std::vector<S> knots, Points points)
        : NurbsCurve(degree, std::move(knots), points, Weights::Ones(points.cols())) {}

    NurbsCurve(int degree, std::vector<S> knots, Points points, Weights weights)
        : degree_(degree), knots_(std::move(knots)), points_(std::move(points)), weights_(std::move(weights)) {
        validate();
    }

    static NurbsCurve from_bezier(const RationalBezierCurve<S>& c, const S& a = S(0), const S& b = S(1)) {
        const int p = c.degree();
        std::vector<S> knots(p + 1, a);
        knots.insert(knots.end(), p + 1, b);
        return NurbsCurve(p, std::move(knots), c.points(), c.weights());
    }

    int degree() const { return degree_; }
    const std::vector<S>& knots() const { return knots_; }
    const Points& points() const { return points_; }
    const Weights& weights() const { return weights_; }
    int control_count() const { return static_cast<int>(points_.cols()); }

    S domain_start() const { return knots_.front(); }
    S domain_end() const { return knots_.back(); }

    /// Knot equality threshold: exact in exact mode, 1e-12 of the range otherwise.
    S knot_tolerance() const {
        if constexpr (is_exact_v<S>) {
            return S(0);
        } else {
            return 1e-12 * (domain_end() - domain_start());
        }
    }
    bool same_knot(const S& a, const S& b) const { return abs_value(S(a - b)) <= knot_tolerance(); }

    int multiplicity(const S& u) const {
        int m = 0;
        for (const S& k : knots_) m += same_knot(k, u) ? 1 : 0;
        return m;
    }

    /// Distinct knot values, domain ends included.
    std::vector<S> breakpoints() const {
        std::vector<S> b;
        for (const S& k : knots_) {
            if (b.empty() || !same_knot(b.back(), k)) b.push_back(k);
        }
        return b;
    }

    HomogeneousCurve<S> homogeneous_controls() const {
        typename HomogeneousCurve<S>::Controls c(4, points_.cols());
        for (Eigen::Index i = 0; i < points_.cols(); ++i) c.col(i) = lift<S>(points_.col(i), weights_(i));
        return HomogeneousCurve<S>(std::move(c));
    }

    friend bool operator==(const NurbsCurve& a, const NurbsCurve& b) {
        return a.degree_ == b.degree_ && a.knots_ == b.knots_ && a.points_.cols() == b.points_.cols() &&
               (a.points_.array() == b.points_.array()).all() && (a.weights_.array() == b.weights_.array()).all();
    }

   private:
    void validate() const {
        const int p = degree_;
        if (p < 1) throw DegreeError("NURBS degree must be at least 1");
        if (points_.cols() != weights_.cols()) throw DegreeError("weights and points differ in length");
        if (static_cast<Eigen::Index>(knots_.size()) != points_.cols() + p + 1) {
            throw KnotError("knot count must equal control count + degree + 1");
        }
        for (const S& k : knots_) detail::check_finite(k, "knot");
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            if (knots_[i] < knots_[i - 1]) throw KnotError("knot vector must be nondecreasing");
        }
        if (!(domain_start() < domain_end())) throw KnotError("knot vector spans an empty domain");
        for (int i = 0; i <= p; ++i) {
            if (!(knots_[i] == knots_.front()) || !(knots_[knots_.size() - 1 - i] == knots_.back())) {
                throw KnotError("knot vector must be clamped");
            }
        }
        for (const S& b : breakpoints()) {
            if (same_knot(b, domain_start()) || same_knot(b, domain_end())) continue;
            if (multiplicity(b) > p) throw KnotError("interior knot multiplicity exceeds degree");
        }
        for (Eigen::Index i = 0; i < weights_.cols(); ++i) {
            detail::check_finite(weights_(i), "weight");
            if (weights_(i) == 0) throw ZeroWeightError("control weights must be nonzero");
            for (int k = 0; k < 3; ++k) detail::check_finite(points_(k, i), "control point coordinate");
        }
    }

    int degree_;
    std::vector<S> knots_;
    Points points_;
    Weights weights_;
};

namespace detail {

// Index k of the nonempty span [u_k, u_{k+1}) containing t; the domain end
// maps to the last nonempty span.
template <Scalar S>
int find_span(const NurbsCurve<S>& c, const S& t) {
    const auto& u = c.knots();
    const int p = c.degree();
    const int last = c.control_count() - 1;
    if (t >= u[last + 1]) {
        int k = last;
        while (k > p && u[k] == u[k + 1]) --k;
        return k;
    }
    int k = p;
    while (k < last && u[k + 1] <= t) ++k;
    return k;
}

template <Scalar S>
NurbsCurve<S> from_homogeneous(int degree, std::vector<S> knots, const detail::Controls<S, 4>& h) {
    auto bez = RationalBezierCurve<S>::from_homogeneous(HomogeneousCurve<S>(h));
    return NurbsCurve<S>(degree, std::move(knots), bez.points(), bez.weights());
}

}  // namespace detail

/// Homogeneous de Boor evaluation followed by perspective division.
template <Scalar S>
Vec3<S> nurbs_eval(const NurbsCurve<S>& curve, const S& t) {
    if (t < curve.domain_start() || t > curve.domain_end()) throw DomainError("parameter outside knot range");
    const int p = curve.degree();
    const auto& u = curve.knots();
    const int k = detail::find_span(curve, t);
    const auto h = curve.homogeneous_controls().controls();
    std::vector<Vec4<S>> d(p + 1);
    for (int j = 0; j <= p; ++j) d[j] = h.col(j + k - p);
    for (int r = 1; r <= p; ++r) {
        for (int j = p; j >= r; --j) {
            const S alpha = (t - u[j + k - p]) / (u[j + 1 + k - r] - u[j + k - p]);
            d[j] = (S(1) - alpha) * d[j - 1] + alpha * d[j];
        }
    }
    return project<S>(d[p]);
}

/// Boehm insertion of `u`, repeated `multiplicity` times.
template <Scalar S>
NurbsCurve<S> insert_knot(const NurbsCurve<S>& curve, S u, int multiplicity = 1) {
    if (multiplicity < 0) throw KnotError("negative insertion multiplicity");
    if (!(u > curve.domain_start() && u < curve.domain_end()) || curve.same_knot(u, curve.domain_start()) ||
        curve.same_knot(u, curve.domain_end())) {
        throw KnotError("inserted knot must lie strictly inside the domain");
    }
    const int p = curve.degree();
    for (const S& k : curve.knots()) {
        if (curve.same_knot(k, u)) {
            u = k;
            break;
        }
    }
    if (curve.multiplicity(u) + multiplicity > p) throw KnotError("knot multiplicity would exceed degree");

    std::vector<S> knots = curve.knots();
    auto h = curve.homogeneous_controls().controls();
    for (int r = 0; r < multiplicity; ++r) {
        int s = 0;
        for (const S& k : knots) s += (k == u) ? 1 : 0;
        int k = p;
        while (knots[k + 1] <= u) ++k;
        const Eigen::Index n = h.cols();
        detail::Controls<S, 4> q(4, n + 1);
        for (int i = 0; i <= k - p; ++i) q.col(i) = h.col(i);
        for (int i = k - p + 1; i <= k - s; ++i) {
            const S alpha = (u - knots[i]) / (knots[i + p] - knots[i]);
            q.col(i) = alpha * h.col(i) + (S(1) - alpha) * h.col(i - 1);
        }
        for (Eigen::Index i = k - s + 1; i <= n; ++i) q.col(i) = h.col(i - 1);
        knots.insert(knots.begin() + k + 1, u);
        h = std::move(q);
    }
    return detail::from_homogeneous<S>(p, std::move(knots), h);
}

/// Splits the curve into its polynomial pieces; each piece is reparametrized
/// from its knot span onto [0,1].
template <Scalar S>
std::vector<BezierSegment<S>> to_bezier_segments(const NurbsCurve<S>& curve) {
    const int p = curve.degree();
    NurbsCurve<S> refined = curve;
    const auto breaks = curve.breakpoints();
    for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
        const int missing = p - refined.multiplicity(breaks[i]);
        if (missing > 0) refined = insert_knot(refined, breaks[i], missing);
    }
    std::vector<BezierSegment<S>> segments;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const Eigen::Index first = static_cast<Eigen::Index>(j) * p;
        segments.push_back({breaks[j], breaks[j + 1],
                            RationalBezierCurve<S>(refined.points().middleCols(first, p + 1),
                                                   refined.weights().middleCols(first, p + 1))});
    }
    return segments;
}

template <Scalar To, Scalar From>
NurbsCurve<To> convert(const NurbsCurve<From>& c) {
    const auto cv = [](const From& x) {
        if constexpr (std::is_same_v<To, double>) {
            return to_double(x);
        } else {
            return To(x);
        }
    };
    std::vector<To> knots;
    for (const From& k : c.knots()) knots.push_back(cv(k));
    return NurbsCurve<To>(c.degree(), std::move(knots), c.points().unaryExpr(cv), c.weights().unaryExpr(cv));
}

}  // namespace devsurf
