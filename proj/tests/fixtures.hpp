#pragma once

#include "devsurf/developable.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <random>

namespace devsurf::testing {

template <Scalar S>
S q(long num, long den = 1) {
    return S(num) / S(den);
}

template <Scalar S>
typename RationalBezierCurve<S>::Points pts(std::initializer_list<std::array<S, 3>> list) {
    typename RationalBezierCurve<S>::Points p(3, static_cast<Eigen::Index>(list.size()));
    Eigen::Index i = 0;
    for (const auto& a : list) p.col(i++) << a[0], a[1], a[2];
    return p;
}

template <Scalar S>
typename RationalBezierCurve<S>::Weights wts(std::initializer_list<S> list) {
    typename RationalBezierCurve<S>::Weights w(static_cast<Eigen::Index>(list.size()));
    Eigen::Index i = 0;
    for (const auto& a : list) w(i++) = a;
    return w;
}

/// cos(pi/4) in float mode; the rational 7071/10000 in exact mode.
template <Scalar S>
S half_sqrt2() {
    if constexpr (is_exact_v<S>) {
        return q<S>(7071, 10000);
    } else {
        return std::sqrt(2.0) / 2.0;
    }
}

template <Scalar S>
RationalBezierCurve<S> quarter_circle(const S& z = S(0)) {
    return RationalBezierCurve<S>(pts<S>({{S(1), S(0), z}, {S(1), S(1), z}, {S(0), S(1), z}}),
                                  wts<S>({S(1), half_sqrt2<S>(), S(1)}));
}

template <Scalar S>
RationalBezierCurve<S> line_segment() {
    return RationalBezierCurve<S>(pts<S>({{S(0), S(0), S(0)}, {S(1), S(0), S(0)}}));
}

template <Scalar S>
RuledPatch<S> cylinder() {
    return RuledPatch<S>(quarter_circle<S>(), quarter_circle<S>(S(1)));
}

template <Scalar S>
RuledPatch<S> cone() {
    const S w = half_sqrt2<S>();
    return RuledPatch<S>(quarter_circle<S>(),
                         RationalBezierCurve<S>(pts<S>({{S(0), S(0), S(1)}, {S(0), S(0), S(1)}, {S(0), S(0), S(1)}}),
                                                wts<S>({S(1), w, S(1)})));
}

template <Scalar S>
RuledPatch<S> skew_lines() {
    return RuledPatch<S>(line_segment<S>(), RationalBezierCurve<S>(pts<S>({{S(0), S(0), S(1)}, {S(0), S(1), S(1)}})));
}

template <Scalar S>
RuledPatch<S> planar_strip() {
    return RuledPatch<S>(RationalBezierCurve<S>(pts<S>({{S(0), S(0), S(0)}, {S(1), q<S>(1, 2), S(0)}, {S(2), S(0), S(0)}})),
                         RationalBezierCurve<S>(pts<S>({{S(0), S(1), S(0)}, {S(1), q<S>(3, 2), S(0)}, {S(2), S(1), S(0)}})));
}

/// (t, t^2, t^3) as a cubic Bézier curve.
template <Scalar S>
RationalBezierCurve<S> twisted_cubic() {
    return RationalBezierCurve<S>(
        pts<S>({{S(0), S(0), S(0)}, {q<S>(1, 3), S(0), S(0)}, {q<S>(2, 3), q<S>(1, 3), S(0)}, {S(1), S(1), S(1)}}));
}

/// Control points of r + s r' for a polynomial curve r, via the hodograph.
template <Scalar S>
RationalBezierCurve<S> tangent_offset(const RationalBezierCurve<S>& r, const S& s) {
    const VectorPoly<S, 3> p(r.points());
    const auto dp = elevate(derivative(p), r.degree());
    return RationalBezierCurve<S>(typename RationalBezierCurve<S>::Points(p.controls() + s * dp.controls()));
}

/// c = twisted cubic, d = c + c'/3: the directrix c is the edge of regression.
template <Scalar S>
RuledPatch<S> tangent_developable() {
    const auto c = twisted_cubic<S>();
    return RuledPatch<S>(c, tangent_offset(c, q<S>(1, 3)));
}

/// Both directrices offset along the tangents of the twisted cubic:
/// c = r + r'/4, d = r + r'/2. Regular on the whole patch.
template <Scalar S>
RuledPatch<S> offset_tangent_developable() {
    const auto r = twisted_cubic<S>();
    return RuledPatch<S>(tangent_offset(r, q<S>(1, 4)), tangent_offset(r, q<S>(1, 2)));
}

/// Quadratic NURBS half circle on knots (0,0,0,1/2,1/2,1,1,1) at height z.
template <Scalar S>
NurbsCurve<S> nurbs_half_circle(const S& z = S(0)) {
    const S w = half_sqrt2<S>();
    std::vector<S> knots{S(0), S(0), S(0), q<S>(1, 2), q<S>(1, 2), S(1), S(1), S(1)};
    return NurbsCurve<S>(2, knots,
                         pts<S>({{S(1), S(0), z}, {S(1), S(1), z}, {S(0), S(1), z}, {S(-1), S(1), z}, {S(-1), S(0), z}}),
                         wts<S>({S(1), w, S(1), w, S(1)}));
}

inline RationalBezierCurve<double> random_curve(std::mt19937_64& rng, int degree, bool rational,
                                                double wlo = 0.5, double whi = 2.0) {
    std::uniform_real_distribution<double> coord(-1.0, 1.0), weight(wlo, whi);
    RationalBezierCurve<double>::Points p(3, degree + 1);
    RationalBezierCurve<double>::Weights w(degree + 1);
    for (int i = 0; i <= degree; ++i) {
        p.col(i) << coord(rng), coord(rng), coord(rng);
        w(i) = rational ? weight(rng) : 1.0;
    }
    return RationalBezierCurve<double>(p, w);
}

/// Random small-integer polynomial curve in exact arithmetic.
inline RationalBezierCurve<Rational> random_exact_curve(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<int> coord(-9, 9);
    RationalBezierCurve<Rational>::Points p(3, degree + 1);
    for (int i = 0; i <= degree; ++i) p.col(i) << Rational(coord(rng), 3), Rational(coord(rng), 2), Rational(coord(rng));
    return RationalBezierCurve<Rational>(p);
}

inline BernsteinPoly<double> random_poly(std::mt19937_64& rng, int degree, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    BernsteinPoly<double>::Coeffs c(degree + 1);
    for (int i = 0; i <= degree; ++i) c(i) = dist(rng);
    return BernsteinPoly<double>(c);
}

}  // namespace devsurf::testing
