#pragma once

#include "devsurf/errors.hpp"
#include "devsurf/scalar.hpp"

#include <array>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

namespace devsurf {

namespace detail {

// Bernstein control data: one column per coefficient, one row per component.
template <class S, int R>
using Controls = Eigen::Matrix<S, R, Eigen::Dynamic>;

template <class S, int R>
Eigen::Matrix<S, R, 1> casteljau(const Controls<S, R>& c, const S& t) {
    Controls<S, R> w = c;
    const S s = S(1) - t;
    for (Eigen::Index k = w.cols() - 1; k > 0; --k) {
        for (Eigen::Index i = 0; i < k; ++i) {
            w.col(i) = s * w.col(i) + t * w.col(i + 1);
        }
    }
    return w.col(0);
}

template <class S, int R>
Controls<S, R> hodograph(const Controls<S, R>& c) {
    const Eigen::Index n = c.cols() - 1;
    if (n == 0) return Controls<S, R>::Zero(c.rows(), 1);
    Controls<S, R> d(c.rows(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d.col(i) = S(static_cast<int>(n)) * (c.col(i + 1) - c.col(i));
    }
    return d;
}

// Closed-form Bernstein product of a scalar polynomial with each row of `b`.
template <class S, int R>
Controls<S, R> product(const Eigen::Matrix<S, 1, Eigen::Dynamic>& a, const Controls<S, R>& b) {
    const int m = static_cast<int>(a.cols()) - 1;
    const int n = static_cast<int>(b.cols()) - 1;
    std::vector<S> bm(m + 1), bn(n + 1), bmn(m + n + 1);
    for (int i = 0; i <= m; ++i) bm[i] = binomial<S>(m, i);
    for (int i = 0; i <= n; ++i) bn[i] = binomial<S>(n, i);
    for (int i = 0; i <= m + n; ++i) bmn[i] = binomial<S>(m + n, i);

    Controls<S, R> c = Controls<S, R>::Zero(b.rows(), m + n + 1);
    for (int k = 0; k <= m + n; ++k) {
        for (int i = std::max(0, k - n); i <= std::min(m, k); ++i) {
            const S w = bm[i] * bn[k - i] / bmn[k];
            c.col(k) += (w * a(i)) * b.col(k - i);
        }
    }
    return c;
}

template <class S, int R>
Controls<S, R> elevate(const Controls<S, R>& c, int target) {
    const int n = static_cast<int>(c.cols()) - 1;
    if (target < n) throw DegreeError("cannot elevate to a lower degree");
    if (target == n) return c;
    return product<S, R>(Eigen::Matrix<S, 1, Eigen::Dynamic>::Ones(target - n + 1), c);
}

template <class S, int R>
std::pair<Controls<S, R>, Controls<S, R>> split(const Controls<S, R>& c, const S& t) {
    const Eigen::Index n = c.cols() - 1;
    Controls<S, R> w = c;
    Controls<S, R> left(c.rows(), n + 1), right(c.rows(), n + 1);
    const S s = S(1) - t;
    left.col(0) = w.col(0);
    right.col(n) = w.col(n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        for (Eigen::Index i = 0; i + k <= n; ++i) {
            w.col(i) = s * w.col(i) + t * w.col(i + 1);
        }
        left.col(k) = w.col(0);
        right.col(n - k) = w.col(n - k);
    }
    return {left, right};
}

template <class S, int R>
S max_abs(const Controls<S, R>& c) {
    S m(0);
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
        for (Eigen::Index i = 0; i < c.rows(); ++i) {
            const S a = abs_value(c(i, j));
            if (a > m) m = a;
        }
    }
    return m;
}

}  // namespace detail

/// Scalar polynomial in the Bernstein basis of [0,1].
template <Scalar S>
class BernsteinPoly {
   public:
    using Coeffs = Eigen::Matrix<S, 1, Eigen::Dynamic>;

    BernsteinPoly() : coeffs_(Coeffs::Zero(1)) {}
    explicit BernsteinPoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() == 0) throw DegreeError("Bernstein polynomial needs at least one coefficient");
    }
    BernsteinPoly(std::initializer_list<S> coeffs) : BernsteinPoly(to_row(coeffs)) {}

    static BernsteinPoly constant(const S& value, int degree = 0) {
        return BernsteinPoly(Coeffs::Constant(degree + 1, value));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Coeffs& coeffs() const { return coeffs_; }
    const S& operator[](int i) const { return coeffs_(i); }

    friend bool operator==(const BernsteinPoly& a, const BernsteinPoly& b) {
        return a.coeffs_.size() == b.coeffs_.size() && (a.coeffs_.array() == b.coeffs_.array()).all();
    }

   private:
    static Coeffs to_row(std::initializer_list<S> c) {
        Coeffs r(static_cast<Eigen::Index>(c.size()));
        Eigen::Index i = 0;
        for (const S& x : c) r(i++) = x;
        return r;
    }

    Coeffs coeffs_;
};

template <Scalar S>
struct Extrapolated {
    S value;
    bool extrapolated;
};

/// de Casteljau evaluation. Throws DomainError outside [0,1].
template <Scalar S>
S evaluate(const BernsteinPoly<S>& p, const S& t) {
    if (t < 0 || t > 1) throw DomainError("Bernstein evaluation parameter outside [0,1]");
    return detail::casteljau<S, 1>(p.coeffs(), t)(0);
}

/// Non-strict evaluation: the same recursion extrapolates outside [0,1].
template <Scalar S>
Extrapolated<S> evaluate_extrapolating(const BernsteinPoly<S>& p, const S& t) {
    return {detail::casteljau<S, 1>(p.coeffs(), t)(0), t < 0 || t > 1};
}

template <Scalar S>
BernsteinPoly<S> derivative(const BernsteinPoly<S>& p) {
    return BernsteinPoly<S>(detail::hodograph<S, 1>(p.coeffs()));
}

template <Scalar S>
BernsteinPoly<S> elevate(const BernsteinPoly<S>& p, int target_degree) {
    return BernsteinPoly<S>(detail::elevate<S, 1>(p.coeffs(), target_degree));
}

template <Scalar S>
BernsteinPoly<S> multiply(const BernsteinPoly<S>& p, const BernsteinPoly<S>& q) {
    return BernsteinPoly<S>(detail::product<S, 1>(p.coeffs(), q.coeffs()));
}

template <Scalar S>
BernsteinPoly<S> linear_combine(const S& alpha, const BernsteinPoly<S>& p, const S& beta,
                                const BernsteinPoly<S>& q) {
    const int m = std::max(p.degree(), q.degree());
    return BernsteinPoly<S>(alpha * elevate(p, m).coeffs() + beta * elevate(q, m).coeffs());
}

template <Scalar S>
BernsteinPoly<S> operator*(const BernsteinPoly<S>& p, const BernsteinPoly<S>& q) {
    return multiply(p, q);
}
template <Scalar S>
BernsteinPoly<S> operator+(const BernsteinPoly<S>& p, const BernsteinPoly<S>& q) {
    return linear_combine(S(1), p, S(1), q);
}
template <Scalar S>
BernsteinPoly<S> operator-(const BernsteinPoly<S>& p, const BernsteinPoly<S>& q) {
    return linear_combine(S(1), p, S(-1), q);
}
template <Scalar S>
BernsteinPoly<S> operator*(const S& a, const BernsteinPoly<S>& p) {
    return BernsteinPoly<S>(a * p.coeffs());
}

template <Scalar S>
S max_abs_coeff(const BernsteinPoly<S>& p) {
    return detail::max_abs<S, 1>(p.coeffs());
}

struct ZeroTest {
    bool zero;
    double max_normalized_coeff;
    explicit operator bool() const { return zero; }
};

/// Identical-vanishing test on Bernstein coefficients, normalized by `scale`.
/// In exact mode `tol` is ignored and only exact zeros pass.
template <Scalar S>
ZeroTest is_zero_coeffs(const S& max_abs, double tol, const S& scale) {
    if (!(scale > 0)) throw DomainError("zero test needs a positive scale");
    const double normalized = to_double(S(max_abs / scale));
    if constexpr (is_exact_v<S>) {
        return {max_abs == 0, normalized};
    } else {
        return {max_abs <= tol * scale, normalized};
    }
}

template <Scalar S>
ZeroTest is_zero(const BernsteinPoly<S>& p, double tol, const S& scale) {
    return is_zero_coeffs(max_abs_coeff(p), tol, scale);
}

/// Polynomial with values in S^Dim; all components share one degree.
template <Scalar S, int Dim>
class VectorPoly {
   public:
    using Controls = detail::Controls<S, Dim>;
    using Vector = Eigen::Matrix<S, Dim, 1>;

    VectorPoly() : controls_(Controls::Zero(Dim, 1)) {}
    explicit VectorPoly(Controls controls) : controls_(std::move(controls)) {
        if (controls_.cols() == 0) throw DegreeError("vector polynomial needs at least one control vector");
    }

    static VectorPoly from_components(const std::array<BernsteinPoly<S>, Dim>& parts) {
        int m = 0;
        for (const auto& p : parts) m = std::max(m, p.degree());
        Controls c(Dim, m + 1);
        for (int i = 0; i < Dim; ++i) c.row(i) = elevate(parts[i], m).coeffs();
        return VectorPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(controls_.cols()) - 1; }
    const Controls& controls() const { return controls_; }
    Vector control(int i) const { return controls_.col(i); }
    BernsteinPoly<S> component(int i) const { return BernsteinPoly<S>(controls_.row(i)); }

    friend bool operator==(const VectorPoly& a, const VectorPoly& b) {
        return a.controls_.cols() == b.controls_.cols() && (a.controls_.array() == b.controls_.array()).all();
    }

   private:
    Controls controls_;
};

/// Homogeneous curve (w, w x, w y, w z) in Bernstein form.
template <Scalar S>
using HomogeneousCurve = VectorPoly<S, 4>;

template <Scalar S, int Dim>
typename VectorPoly<S, Dim>::Vector evaluate(const VectorPoly<S, Dim>& p, const S& t) {
    if (t < 0 || t > 1) throw DomainError("Bernstein evaluation parameter outside [0,1]");
    return detail::casteljau<S, Dim>(p.controls(), t);
}

template <Scalar S, int Dim>
VectorPoly<S, Dim> derivative(const VectorPoly<S, Dim>& p) {
    return VectorPoly<S, Dim>(detail::hodograph<S, Dim>(p.controls()));
}

template <Scalar S, int Dim>
VectorPoly<S, Dim> elevate(const VectorPoly<S, Dim>& p, int target_degree) {
    return VectorPoly<S, Dim>(detail::elevate<S, Dim>(p.controls(), target_degree));
}

template <Scalar S, int Dim>
VectorPoly<S, Dim> multiply(const BernsteinPoly<S>& a, const VectorPoly<S, Dim>& p) {
    return VectorPoly<S, Dim>(detail::product<S, Dim>(a.coeffs(), p.controls()));
}

template <Scalar S, int Dim>
VectorPoly<S, Dim> linear_combine(const S& alpha, const VectorPoly<S, Dim>& p, const S& beta,
                                  const VectorPoly<S, Dim>& q) {
    const int m = std::max(p.degree(), q.degree());
    return VectorPoly<S, Dim>(alpha * elevate(p, m).controls() + beta * elevate(q, m).controls());
}

template <Scalar S, int Dim>
VectorPoly<S, Dim> operator+(const VectorPoly<S, Dim>& p, const VectorPoly<S, Dim>& q) {
    return linear_combine(S(1), p, S(1), q);
}
template <Scalar S, int Dim>
VectorPoly<S, Dim> operator-(const VectorPoly<S, Dim>& p, const VectorPoly<S, Dim>& q) {
    return linear_combine(S(1), p, S(-1), q);
}

template <Scalar S>
VectorPoly<S, 3> cross(const VectorPoly<S, 3>& a, const VectorPoly<S, 3>& b) {
    const auto c = [&](int i, int j) { return a.component(i) * b.component(j) - a.component(j) * b.component(i); };
    return VectorPoly<S, 3>::from_components({c(1, 2), c(2, 0), c(0, 1)});
}

template <Scalar S, int Dim>
S max_abs_coeff(const VectorPoly<S, Dim>& p) {
    return detail::max_abs<S, Dim>(p.controls());
}

template <Scalar S, int Dim>
ZeroTest is_zero(const VectorPoly<S, Dim>& p, double tol, const S& scale) {
    return is_zero_coeffs(max_abs_coeff(p), tol, scale);
}

/// Reinterprets a polynomial in another scalar backend.
template <Scalar To, Scalar From>
BernsteinPoly<To> convert(const BernsteinPoly<From>& p) {
    typename BernsteinPoly<To>::Coeffs c(p.coeffs().size());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if constexpr (std::is_same_v<To, double>) {
            c(i) = to_double(p.coeffs()(i));
        } else {
            c(i) = To(p.coeffs()(i));
        }
    }
    return BernsteinPoly<To>(std::move(c));
}

}  // namespace devsurf
