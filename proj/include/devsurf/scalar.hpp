#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>

namespace devsurf {

/// Arbitrary-precision rational. Expression templates are disabled so that
/// the type composes with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static double to_double(double x) { return x; }
    static double from_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    // Every finite double is a dyadic rational, so this is lossless.
    static Rational from_double(double x) { return Rational(x); }
};

template <class S>
concept Scalar = requires {
    { ScalarTraits<S>::exact } -> std::convertible_to<bool>;
};

template <Scalar S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

template <class S>
using Vec3 = Eigen::Matrix<S, 3, 1>;
template <class S>
using Vec4 = Eigen::Matrix<S, 4, 1>;

template <Scalar S>
double to_double(const S& x) {
    return ScalarTraits<S>::to_double(x);
}

template <Scalar S>
S from_double(double x) {
    return ScalarTraits<S>::from_double(x);
}

template <Scalar S>
S abs_value(const S& x) {
    return x < 0 ? S(-x) : x;
}

template <Scalar S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
    return Vec3<S>(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
                   a(0) * b(1) - a(1) * b(0));
}

template <Scalar S, int Rows, int Cols>
Eigen::Matrix<double, Rows, Cols> to_double(const Eigen::Matrix<S, Rows, Cols>& m) {
    return m.unaryExpr([](const S& x) { return to_double(x); });
}

/// Exact binomial coefficient C(n, k) in the requested scalar type.
template <Scalar S>
S binomial(int n, int k) {
    if (k < 0 || k > n) return S(0);
    k = std::min(k, n - k);
    S r(1);
    for (int i = 1; i <= k; ++i) {
        r = r * S(n - k + i) / S(i);
    }
    return r;
}

}  // namespace devsurf
