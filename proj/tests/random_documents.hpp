#pragma once

#include "devsurf/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace devsurf::testing {

inline bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

template <class M>
bool bitwise_equal(const M& a, const M& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!same_bits(a.data()[i], b.data()[i])) return false;
    return true;
}

inline bool bitwise_equal(const CurveDocument<double>& a, const CurveDocument<double>& b) {
    if (a.index() != b.index()) return false;
    if (const auto* x = std::get_if<RationalBezierCurve<double>>(&a)) {
        const auto& y = std::get<RationalBezierCurve<double>>(b);
        return bitwise_equal(x->points(), y.points()) && bitwise_equal(x->weights(), y.weights());
    }
    const auto& x = std::get<NurbsCurve<double>>(a);
    const auto& y = std::get<NurbsCurve<double>>(b);
    if (x.knots().size() != y.knots().size()) return false;
    for (std::size_t i = 0; i < x.knots().size(); ++i)
        if (!same_bits(x.knots()[i], y.knots()[i])) return false;
    return x.degree() == y.degree() && bitwise_equal(x.points(), y.points()) && bitwise_equal(x.weights(), y.weights());
}

// awkward doubles: wide exponents, subnormal-adjacent, signed zero
inline double wild(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> ex(-300, 300);
    switch (kind(rng)) {
        case 0: return 0.0;
        case 1: return -0.0;
        case 2: return std::ldexp(u(rng), ex(rng));
        default: return u(rng) * 10;
    }
}

template <Scalar S>
S random_scalar(std::mt19937_64& rng) {
    if constexpr (is_exact_v<S>) {
        std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 999999);
        Rational r(num(rng), den(rng));
        if (rng() % 5 == 0) r *= Rational(boost::multiprecision::mpz_int(1) << 90);
        return r;
    } else {
        return wild(rng);
    }
}

template <Scalar S>
S random_weight(std::mt19937_64& rng) {
    S w = random_scalar<S>(rng);
    while (w == 0) w = random_scalar<S>(rng);
    return w;
}

template <Scalar S>
CurveDocument<S> random_curve_doc(std::mt19937_64& rng) {
    const int p = 1 + static_cast<int>(rng() % 4);
    if (rng() % 2 == 0) {
        typename RationalBezierCurve<S>::Points pts(3, p + 1);
        typename RationalBezierCurve<S>::Weights w(p + 1);
        for (int j = 0; j <= p; ++j) {
            for (int i = 0; i < 3; ++i) pts(i, j) = random_scalar<S>(rng);
            w(j) = random_weight<S>(rng);
        }
        return RationalBezierCurve<S>(pts, w);
    }
    const int interior = static_cast<int>(rng() % 4);
    std::vector<S> inner;
    for (int k = 0; k < interior; ++k) {
        S a = abs_value(random_scalar<S>(rng));
        inner.push_back(a / (a + S(1)));
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    std::erase_if(inner, [](const S& x) { return x <= S(0) || x >= S(1); });
    std::vector<S> knots(p + 1, S(0));
    knots.insert(knots.end(), inner.begin(), inner.end());
    knots.insert(knots.end(), p + 1, S(1));
    const int count = static_cast<int>(knots.size()) - p - 1;
    typename NurbsCurve<S>::Points pts(3, count);
    typename NurbsCurve<S>::Weights w(count);
    for (int j = 0; j < count; ++j) {
        for (int i = 0; i < 3; ++i) pts(i, j) = random_scalar<S>(rng);
        w(j) = random_weight<S>(rng);
    }
    return NurbsCurve<S>(p, knots, pts, w);
}

}  // namespace devsurf::testing
