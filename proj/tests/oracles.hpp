#pragma once

// Reference computations that share no code path with the library routines
// they check.

#include "devsurf/developable.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace devsurf::oracle {

inline double choose(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Monomial coefficients a_0..a_n of a Bernstein polynomial.
inline std::vector<double> to_power(const std::vector<double>& b) {
    const int n = static_cast<int>(b.size()) - 1;
    std::vector<double> a(b.size(), 0.0);
    for (int i = 0; i <= n; ++i) {
        // b_i C(n,i) t^i (1-t)^(n-i) = b_i C(n,i) sum_j C(n-i,j) (-1)^j t^(i+j)
        for (int j = 0; j <= n - i; ++j) a[i + j] += b[i] * choose(n, i) * choose(n - i, j) * ((j % 2) ? -1.0 : 1.0);
    }
    return a;
}

/// Bernstein coefficients at degree n of a power-basis polynomial.
inline std::vector<double> to_bernstein(const std::vector<double>& a, int n) {
    std::vector<double> b(n + 1, 0.0);
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= k && i < static_cast<int>(a.size()); ++i) b[k] += choose(k, i) / choose(n, i) * a[i];
    return b;
}

inline std::vector<double> power_product(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline double horner(const std::vector<double>& a, double t) {
    double r = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * t + *it;
    return r;
}

/// Direct sum of b_i B_i^n(t) with explicit powers.
inline double bernstein_sum(const std::vector<double>& b, double t) {
    const int n = static_cast<int>(b.size()) - 1;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += b[i] * choose(n, i) * std::pow(t, i) * std::pow(1.0 - t, n - i);
    return s;
}

/// Homogeneous point and derivative by explicit Bernstein sums.
inline Eigen::Vector4d homogeneous_at(const RationalBezierCurve<double>& c, double t, bool derivative = false) {
    const int n = c.degree();
    Eigen::Vector4d r = Eigen::Vector4d::Zero();
    for (int i = 0; i <= n; ++i) {
        double basis;
        if (!derivative) {
            basis = choose(n, i) * std::pow(t, i) * std::pow(1.0 - t, n - i);
        } else {
            const double a = i > 0 ? i * std::pow(t, i - 1) * std::pow(1.0 - t, n - i) : 0.0;
            const double b = i < n ? (n - i) * std::pow(t, i) * std::pow(1.0 - t, n - i - 1) : 0.0;
            basis = choose(n, i) * (a - b);
        }
        const double w = c.weights()(i);
        r += basis * Eigen::Vector4d(w, w * c.points()(0, i), w * c.points()(1, i), w * c.points()(2, i));
    }
    return r;
}

/// det[C(t), D(t), C'(t), D'(t)] from a dense 4x4 determinant.
inline double det4_at(const RuledPatch<double>& p, double t) {
    Eigen::Matrix4d m;
    m.col(0) = homogeneous_at(p.directrix_c(), t);
    m.col(1) = homogeneous_at(p.directrix_d(), t);
    m.col(2) = homogeneous_at(p.directrix_c(), t, true);
    m.col(3) = homogeneous_at(p.directrix_d(), t, true);
    return m.determinant();
}

inline Eigen::Vector3d point_at(const RationalBezierCurve<double>& c, double t) {
    const Eigen::Vector4d h = homogeneous_at(c, t);
    return h.tail<3>() / h(0);
}

/// Closest point to a set of lines in the least-squares sense (unit directions).
inline Eigen::Vector3d lines_meeting_point(const std::vector<Eigen::Vector3d>& points,
                                           const std::vector<Eigen::Vector3d>& dirs) {
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Eigen::Vector3d u = dirs[i].normalized();
        const Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - u * u.transpose();
        a += proj;
        b += proj * points[i];
    }
    return a.ldlt().solve(b);
}

/// Composite Gauss-Legendre (5 points) on n equal panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
    static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                0.2369268850561891};
    const double hstep = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double m = a + (p + 0.5) * hstep;
        for (int k = 0; k < 5; ++k) s += w[k] * f(m + 0.5 * hstep * x[k]) * 0.5 * hstep;
    }
    return s;
}

}  // namespace devsurf::oracle
