#include "devsurf/developable.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace devsurf {

namespace {

template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <Scalar S>
S max_homogeneous_coeff(const RuledPatch<S>& patch) {
    return std::max(max_abs_coeff(homogeneous(patch.directrix_c())), max_abs_coeff(homogeneous(patch.directrix_d())));
}

// Largest absolute affine control coordinate of both directrices, at least 1
// when the data is all zero.
template <Scalar S>
S length_scale(const RuledPatch<S>& patch) {
    S m = std::max(detail::max_abs<S, 3>(patch.directrix_c().points()),
                   detail::max_abs<S, 3>(patch.directrix_d().points()));
    return m > 0 ? m : S(1);
}

template <Scalar S, int Dim>
BernsteinPoly<S> minor2(const VectorPoly<S, Dim>& x, const VectorPoly<S, Dim>& y, int i, int j) {
    return x.component(i) * y.component(j) - x.component(j) * y.component(i);
}

// Numerator of the affine ruling direction: w_c D_xyz - w_d C_xyz.
template <Scalar S>
VectorPoly<S, 3> ruling_numerator(const HomogeneousCurve<S>& C, const HomogeneousCurve<S>& D) {
    std::array<BernsteinPoly<S>, 3> parts;
    for (int k = 0; k < 3; ++k) parts[k] = C.component(0) * D.component(k + 1) - D.component(0) * C.component(k + 1);
    return VectorPoly<S, 3>::from_components(parts);
}

template <Scalar S>
VectorX<S> least_squares(const MatrixX<S>& a, const VectorX<S>& b) {
    if constexpr (is_exact_v<S>) {
        const MatrixX<S> ata = a.transpose() * a;
        const VectorX<S> atb = a.transpose() * b;
        return ata.fullPivLu().solve(atb);
    } else {
        return a.colPivHouseholderQr().solve(b);
    }
}

template <Scalar S>
std::vector<S> chebyshev_nodes(int count) {
    std::vector<S> nodes(count);
    for (int k = 0; k < count; ++k) {
        const double x = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count));
        nodes[k] = from_double<S>(0.5 * (1.0 - x));
    }
    return nodes;
}

template <Scalar S>
S bernstein_basis(int degree, int i, const S& t) {
    S v = binomial<S>(degree, i);
    for (int k = 0; k < i; ++k) v *= t;
    for (int k = 0; k < degree - i; ++k) v *= S(1) - t;
    return v;
}

template <Scalar S>
bool coplanar_controls(const RuledPatch<S>& patch, double tol) {
    const auto& pc = patch.directrix_c().points();
    const auto& pd = patch.directrix_d().points();
    const Eigen::Index count = pc.cols() + pd.cols();
    Eigen::Matrix<S, 3, Eigen::Dynamic> diff(3, count);
    const Vec3<S> origin = pc.col(0);
    for (Eigen::Index i = 0; i < pc.cols(); ++i) diff.col(i) = pc.col(i) - origin;
    for (Eigen::Index i = 0; i < pd.cols(); ++i) diff.col(pc.cols() + i) = pd.col(i) - origin;
    if constexpr (is_exact_v<S>) {
        return diff.fullPivLu().rank() <= 2;
    } else {
        Eigen::JacobiSVD<Eigen::Matrix<double, 3, Eigen::Dynamic>> svd(diff);
        const auto& sv = svd.singularValues();
        if (sv.size() < 3) return true;
        return sv(2) <= tol * std::max(sv(0), 1e-300);
    }
}

// Least-squares meeting point of sampled rulings, weighted by |e|^2 so the
// normal equations stay rational.
template <Scalar S>
std::optional<Vec3<S>> common_apex(const RuledPatch<S>& patch, double tol) {
    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    const int count = std::max(3, patch.degree() + 1);
    Eigen::Matrix<S, 3, 3> a = Eigen::Matrix<S, 3, 3>::Zero();
    Vec3<S> b = Vec3<S>::Zero();
    std::vector<std::pair<Vec3<S>, Vec3<S>>> lines;
    for (int k = 0; k < count; ++k) {
        const S t = S(2 * k + 1) / S(2 * count);
        const Vec3<S> p = project<S>(evaluate(C, t));
        const Vec3<S> e = project<S>(evaluate(D, t)) - p;
        const S ee = e.dot(e);
        const Eigen::Matrix<S, 3, 3> proj = ee * Eigen::Matrix<S, 3, 3>::Identity() - e * e.transpose();
        a += proj;
        b += proj * p;
        lines.emplace_back(p, e);
    }
    Vec3<S> apex;
    if constexpr (is_exact_v<S>) {
        auto lu = a.fullPivLu();
        if (lu.rank() < 3) return std::nullopt;
        apex = lu.solve(b);
    } else {
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(a);
        const auto& sv = svd.singularValues();
        if (sv(2) <= 1e-12 * sv(0)) return std::nullopt;
        apex = a.fullPivLu().solve(b);
    }

    S residual2(0);
    for (const auto& [p, e] : lines) {
        const Vec3<S> w = cross<S>(Vec3<S>(apex - p), e);
        residual2 += w.dot(w) / e.dot(e);
    }
    const S scale = length_scale(patch);
    if constexpr (is_exact_v<S>) {
        if (residual2 != 0) return std::nullopt;
    } else {
        if (std::sqrt(residual2) >= tol * scale) return std::nullopt;
    }

    // Every ruling passes through the apex iff C, D and the lifted apex are
    // dependent: all 3x3 minors of [C, D, A] vanish identically.
    const Vec4<S> lifted = lift<S>(apex, S(1));
    std::array<std::array<BernsteinPoly<S>, 4>, 4> m2;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m2[i][j] = minor2(C, D, i, j);
    S worst(0);
    const std::array<std::array<int, 3>, 4> rows = {{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
    for (const auto& r : rows) {
        const BernsteinPoly<S> m = linear_combine(lifted(r[0]), m2[r[1]][r[2]], S(-lifted(r[1])), m2[r[0]][r[2]]) +
                                   lifted(r[2]) * m2[r[0]][r[1]];
        worst = std::max(worst, max_abs_coeff(m));
    }
    const S hs = max_homogeneous_coeff(patch);
    const S lifted_max = std::max(S(1), detail::max_abs<S, 4>(lifted));
    if (!is_zero_coeffs(worst, tol, S(hs * hs * lifted_max))) return std::nullopt;
    return apex;
}

template <Scalar S>
S defect_scale_guarded(const RuledPatch<S>& patch) {
    const S s = defect_scale(patch);
    return s > 0 ? s : S(1);
}

}  // namespace

std::string_view to_string(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::Planar: return "Planar";
        case SurfaceKind::Cylindrical: return "Cylindrical";
        case SurfaceKind::Conical: return "Conical";
        case SurfaceKind::TangentDevelopable: return "TangentDevelopable";
        case SurfaceKind::NonDevelopable: return "NonDevelopable";
        case SurfaceKind::DegenerateRuling: return "DegenerateRuling";
    }
    return "NonDevelopable";
}

std::optional<SurfaceKind> surface_kind_from_string(std::string_view name) {
    for (auto k : {SurfaceKind::Planar, SurfaceKind::Cylindrical, SurfaceKind::Conical,
                   SurfaceKind::TangentDevelopable, SurfaceKind::NonDevelopable, SurfaceKind::DegenerateRuling}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

template <Scalar S>
RuledPatch<S>::RuledPatch(RationalBezierCurve<S> c, RationalBezierCurve<S> d) : c_(std::move(c)), d_(std::move(d)) {
    const int n = std::max(c_.degree(), d_.degree());
    c_ = elevate_degree(c_, n);
    d_ = elevate_degree(d_, n);
}

template <Scalar S>
NurbsRuledPatch<S>::NurbsRuledPatch(NurbsCurve<S> c, NurbsCurve<S> d) : c_(std::move(c)), d_(std::move(d)) {
    if (c_.degree() != d_.degree()) throw DegreeError("NURBS directrices must share one degree");
    if (!c_.same_knot(c_.domain_start(), d_.domain_start()) || !c_.same_knot(c_.domain_end(), d_.domain_end())) {
        throw KnotMergeError("NURBS directrices have different parameter domains");
    }
    const auto merge_into = [](NurbsCurve<S>& target, const NurbsCurve<S>& source) {
        for (const S& b : source.breakpoints()) {
            if (target.same_knot(b, target.domain_start()) || target.same_knot(b, target.domain_end())) continue;
            const int missing = source.multiplicity(b) - target.multiplicity(b);
            if (missing > 0) target = insert_knot(target, b, missing);
        }
    };
    merge_into(c_, d_);
    merge_into(d_, c_);
}

template <Scalar S>
std::vector<PatchSpan<S>> NurbsRuledPatch<S>::spans() const {
    auto sc = to_bezier_segments(c_);
    auto sd = to_bezier_segments(d_);
    if (sc.size() != sd.size()) throw KnotMergeError("merged knot vectors disagree");
    std::vector<PatchSpan<S>> out;
    for (std::size_t i = 0; i < sc.size(); ++i) {
        out.push_back({sc[i].start, sc[i].end, RuledPatch<S>(sc[i].curve, sd[i].curve)});
    }
    return out;
}

template <Scalar S>
BernsteinPoly<S> defect_polynomial(const RuledPatch<S>& patch) {
    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    const auto dC = derivative(C);
    const auto dD = derivative(D);
    // Laplace expansion along the column pair (C, D).
    static constexpr std::array<std::array<int, 4>, 6> pairs = {
        {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}}};
    BernsteinPoly<S> w = BernsteinPoly<S>::constant(S(0), 4 * patch.degree() - 2 > 0 ? 4 * patch.degree() - 2 : 0);
    for (const auto& [i, j, k, l] : pairs) {
        const S sign = ((i + j + 1) % 2 == 0) ? S(1) : S(-1);
        w = linear_combine(S(1), w, sign, minor2(C, D, i, j) * minor2(dC, dD, k, l));
    }
    return w;
}

template <Scalar S>
BernsteinPoly<S> affine_defect(const RuledPatch<S>& patch) {
    const auto& c = patch.directrix_c();
    const auto& d = patch.directrix_d();
    if (!c.has_unit_weights() || !d.has_unit_weights()) {
        throw DomainError("affine defect requires unit weights; use the homogeneous defect");
    }
    const VectorPoly<S, 3> pc(c.points());
    const VectorPoly<S, 3> pd(d.points());
    const auto e = pd - pc;
    const auto dc = derivative(pc);
    const auto dd = derivative(pd);
    // det[e; c'; d'] = e . (c' x d')
    const auto x = cross(dc, dd);
    BernsteinPoly<S> r = e.component(0) * x.component(0);
    r = r + e.component(1) * x.component(1);
    r = r + e.component(2) * x.component(2);
    return r;
}

template <Scalar S>
S defect_scale(const RuledPatch<S>& patch) {
    const S s = max_homogeneous_coeff(patch);
    const S ns = S(std::max(patch.degree(), 1)) * s;
    return s * s * ns * ns;
}

template <Scalar S>
DevelopabilityReport<S> is_developable(const RuledPatch<S>& patch, double tol) {
    auto w = defect_polynomial(patch);
    const ZeroTest z = is_zero(w, tol, defect_scale_guarded(patch));
    DevelopabilityReport<S> report;
    report.spans.push_back({S(0), S(1), std::move(w), z.zero, z.max_normalized_coeff, std::nullopt});
    report.verdict = z.zero;
    report.max_normalized_coeff = z.max_normalized_coeff;
    if (!z.zero) {
        report.classification = Classification<S>{SurfaceKind::NonDevelopable, std::nullopt};
        report.spans.back().classification = report.classification;
    }
    return report;
}

template <Scalar S>
Classification<S> classify(const RuledPatch<S>& patch, double tol) {
    if (!is_developable(patch, tol).verdict) return {SurfaceKind::NonDevelopable, std::nullopt};

    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    const S s = max_homogeneous_coeff(patch);
    const auto e = ruling_numerator(C, D);
    if (is_zero(e, tol, S(s > 0 ? s * s : S(1)))) return {SurfaceKind::DegenerateRuling, std::nullopt};

    if (coplanar_controls(patch, tol)) return {SurfaceKind::Planar, std::nullopt};

    // Constant ruling direction: e x e' vanishes identically.
    const S em = max_abs_coeff(e);
    const auto exe = cross(e, derivative(e));
    if (is_zero(exe, tol, S(em * em * S(std::max(2 * patch.degree(), 1))))) {
        return {SurfaceKind::Cylindrical, std::nullopt};
    }

    if (auto apex = common_apex(patch, tol)) return {SurfaceKind::Conical, apex};

    return {SurfaceKind::TangentDevelopable, std::nullopt};
}

template <Scalar S>
DevelopabilityReport<S> check(const RuledPatch<S>& patch, double tol) {
    DevelopabilityReport<S> report = is_developable(patch, tol);
    if (!report.verdict) return report;
    report.classification = classify(patch, tol);
    report.spans.back().classification = report.classification;
    const auto kind = report.classification->kind;
    if (kind != SurfaceKind::DegenerateRuling) {
        try {
            report.coefficients = recover_coefficients(patch, tol);
        } catch (const DegenerateDependence&) {
        } catch (const VerificationFailed&) {
        }
    }
    return report;
}

template <Scalar S>
DevelopabilityReport<S> check_nurbs(const NurbsRuledPatch<S>& patch, double tol) {
    DevelopabilityReport<S> report;
    report.verdict = true;
    bool consistent = true;
    std::optional<Classification<S>> unified;
    for (const auto& span : patch.spans()) {
        auto w = defect_polynomial(span.patch);
        const ZeroTest z = is_zero(w, tol, defect_scale_guarded(span.patch));
        const Classification<S> cls = z.zero ? classify(span.patch, tol)
                                             : Classification<S>{SurfaceKind::NonDevelopable, std::nullopt};
        report.spans.push_back({span.start, span.end, std::move(w), z.zero, z.max_normalized_coeff, cls});
        report.verdict = report.verdict && z.zero;
        report.max_normalized_coeff = std::max(report.max_normalized_coeff, z.max_normalized_coeff);
        if (!unified) {
            unified = cls;
        } else if (unified->kind != cls.kind) {
            consistent = false;
        } else if (cls.apex && unified->apex) {
            const S diff = detail::max_abs<S, 3>(Vec3<S>(*cls.apex - *unified->apex));
            if constexpr (is_exact_v<S>) {
                consistent = consistent && diff == 0;
            } else {
                consistent = consistent && diff <= tol * length_scale(span.patch);
            }
        }
    }
    if (!report.verdict) {
        report.classification = Classification<S>{SurfaceKind::NonDevelopable, std::nullopt};
    } else if (consistent) {
        report.classification = unified;
    }
    return report;
}

template <Scalar S>
HomogeneousCurve<S> coefficient_residual(const RuledPatch<S>& patch, const CoefficientTriple<S>& triple) {
    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    return derivative(D) - multiply(triple.lambda, derivative(C)) - multiply(triple.mu, C) - multiply(triple.nu, D);
}

template <Scalar S>
CoefficientTriple<S> recover_coefficients(const RuledPatch<S>& patch, double tol) {
    const int n = patch.degree();
    if (n < 1) throw DegenerateDependence("constant directrices have no tangent");
    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    const auto dC = derivative(C);
    const auto dD = derivative(D);
    // a directrix collapsed to a point (D' parallel to D) leaves the relation
    // underdetermined even where the pointwise system has full rank
    const auto collapsed = [&](const HomogeneousCurve<S>& X, const HomogeneousCurve<S>& dX) {
        const S scale = max_abs_coeff(X) * max_abs_coeff(dX);
        if (scale == 0) return true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const auto m = multiply(X.component(i), dX.component(j)) - multiply(X.component(j), dX.component(i));
                if (!is_zero(m, tol, scale).zero) return false;
            }
        return true;
    };
    if (collapsed(C, dC) || collapsed(D, dD)) throw DegenerateDependence("a directrix degenerates to a point");

    const auto pointwise = [&](const std::vector<S>& nodes) {
        MatrixX<S> values(3, static_cast<Eigen::Index>(nodes.size()));
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            MatrixX<S> a(4, 3);
            a.col(0) = evaluate(dC, nodes[j]);
            a.col(1) = evaluate(C, nodes[j]);
            a.col(2) = evaluate(D, nodes[j]);
            const VectorX<S> b = evaluate(dD, nodes[j]);
            if constexpr (is_exact_v<S>) {
                if (a.fullPivLu().rank() < 3) throw DegenerateDependence("C, C' and D are dependent at a sample node");
            } else {
                Eigen::MatrixXd normalized = a;
                for (int k = 0; k < 3; ++k) {
                    const double len = normalized.col(k).norm();
                    if (len == 0.0) throw DegenerateDependence("C, C' and D are dependent at a sample node");
                    normalized.col(k) /= len;
                }
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(normalized);
                const auto& sv = svd.singularValues();
                if (sv(2) <= 1e-8 * sv(0)) throw DegenerateDependence("C, C' and D are dependent at a sample node");
            }
            values.col(static_cast<Eigen::Index>(j)) = least_squares<S>(a, b);
        }
        return values;
    };

    const auto residual_test = [&](const CoefficientTriple<S>& tr) {
        S scale = max_abs_coeff(dD);
        scale = std::max(scale, S(max_abs_coeff(tr.lambda) * max_abs_coeff(dC)));
        scale = std::max(scale, S(max_abs_coeff(tr.mu) * max_abs_coeff(C)));
        scale = std::max(scale, S(max_abs_coeff(tr.nu) * max_abs_coeff(D)));
        return is_zero(coefficient_residual(patch, tr), tol, scale > 0 ? scale : S(1));
    };

    const int cap = 2 * n - 1;
    int node_count = 0;
    std::vector<S> nodes;
    MatrixX<S> samples;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= cap + 2; ++k) {
        const int wanted = std::max(2 * n + 1, k + 2);
        if (wanted != node_count) {
            node_count = wanted;
            nodes = chebyshev_nodes<S>(node_count);
            samples = pointwise(nodes);
        }
        MatrixX<S> basis(node_count, k + 1);
        for (int j = 0; j < node_count; ++j)
            for (int i = 0; i <= k; ++i) basis(j, i) = bernstein_basis<S>(k, i, nodes[j]);
        std::array<BernsteinPoly<S>, 3> fit;
        for (int r = 0; r < 3; ++r) {
            const VectorX<S> y = samples.row(r).transpose();
            fit[r] = BernsteinPoly<S>(typename BernsteinPoly<S>::Coeffs(least_squares<S>(basis, y).transpose()));
        }
        CoefficientTriple<S> triple{fit[0], fit[1], fit[2]};
        const ZeroTest z = residual_test(triple);
        if (z.zero) return triple;
        best = std::min(best, z.max_normalized_coeff);
    }
    throw VerificationFailed("coefficient functions do not reproduce D'", best);
}

template <Scalar S>
RationalBezierCurve<S> construct_directrix(const RationalBezierCurve<S>& base, const BernsteinPoly<S>& lambda,
                                           const BernsteinPoly<S>& mu, const BernsteinPoly<S>& nu, const Vec4<S>& d0,
                                           double tol) {
    if (d0(0) == 0) throw InvalidInitialPoint("initial homogeneous point has zero weight");
    const int n = base.degree();
    const int m = std::max({lambda.degree() + n - 1, mu.degree() + n, nu.degree() + n}) + 1;
    const auto C = homogeneous(base);
    const auto f = multiply(lambda, derivative(C)) + multiply(mu, C);
    const int r = std::max({m - 1, f.degree(), nu.degree() + m});

    // Column j: image of the basis polynomial B_j^m under D -> D' - nu D.
    MatrixX<S> op = MatrixX<S>::Zero(r + 2, m + 1);
    for (int j = 0; j <= m; ++j) {
        typename BernsteinPoly<S>::Coeffs unit = BernsteinPoly<S>::Coeffs::Zero(m + 1);
        unit(j) = S(1);
        const BernsteinPoly<S> basis(unit);
        const auto image = linear_combine(S(1), elevate(derivative(basis), r), S(-1), elevate(nu * basis, r));
        op.col(j).head(r + 1) = image.coeffs().transpose();
    }
    op(r + 1, 0) = S(1);

    const auto fr = elevate(f, r).controls();
    const S scale = std::max({max_abs_coeff(f), detail::max_abs<S, 4>(d0), S(1e-300)});
    detail::Controls<S, 4> dctrl(4, m + 1);
    double worst = 0.0;
    bool consistent = true;
    for (int k = 0; k < 4; ++k) {
        VectorX<S> rhs(r + 2);
        rhs.head(r + 1) = fr.row(k).transpose();
        rhs(r + 1) = d0(k);
        const VectorX<S> x = least_squares<S>(op, rhs);
        const VectorX<S> res = op * x - rhs;
        const S res_max = detail::max_abs<S, Eigen::Dynamic>(detail::Controls<S, Eigen::Dynamic>(res));
        worst = std::max(worst, to_double(S(res_max / scale)));
        if constexpr (is_exact_v<S>) {
            consistent = consistent && res_max == 0;
        } else {
            consistent = consistent && res_max <= tol * scale;
        }
        dctrl.row(k) = x.transpose();
    }
    if (!consistent) throw NoPolynomialSolution("no polynomial directrix satisfies the relation", worst);

    auto d = RationalBezierCurve<S>::from_homogeneous(HomogeneousCurve<S>(dctrl));
    const auto report = is_developable(RuledPatch<S>(base, d), tol);
    if (!report.verdict) {
        throw VerificationFailed("constructed patch failed the developability check", report.max_normalized_coeff);
    }
    return d;
}

template <Scalar S>
std::vector<RegressionSample<S>> edge_of_regression(const RuledPatch<S>& patch, int sample_count, double tol) {
    if (sample_count < 2) throw DomainError("edge of regression needs at least two samples");
    if (!is_developable(patch, tol).verdict) throw NotDevelopable("edge of regression needs a developable patch");
    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    const auto dC = derivative(C);
    const auto dD = derivative(D);
    const S len = length_scale(patch);
    const S threshold = S(tol) * len * len * S(std::max(patch.degree(), 1));

    const auto affine = [](const Vec4<S>& h, const Vec4<S>& dh) {
        const Vec3<S> p = project<S>(h);
        const Vec3<S> dp = (dh.template tail<3>() - dh(0) * p) / h(0);
        return std::pair{p, dp};
    };

    std::vector<RegressionSample<S>> out;
    bool any_regular = false;
    for (int i = 0; i < sample_count; ++i) {
        const S t = S(i) / S(sample_count - 1);
        const auto [c, dc] = affine(evaluate(C, t), evaluate(dC, t));
        const auto [d, dd] = affine(evaluate(D, t), evaluate(dD, t));
        const Vec3<S> e = d - c;
        const Vec3<S> de = dd - dc;
        const Vec3<S> g = cross<S>(de, e);
        const S gg = g.dot(g);
        bool singular;
        if constexpr (is_exact_v<S>) {
            singular = gg == 0;
        } else {
            singular = gg <= threshold * threshold;
        }
        if (singular) {
            out.push_back({t, Vec3<S>::Zero(), true});
            continue;
        }
        any_regular = true;
        const S u = -cross<S>(dc, e).dot(g) / gg;
        out.push_back({t, Vec3<S>(c + u * e), false});
    }
    if (!any_regular) throw CylindricalPatch("rulings are parallel everywhere; the edge lies at infinity");
    return out;
}

#define DEVSURF_INSTANTIATE(S)                                                                                       \
    template class RuledPatch<S>;                                                                                    \
    template class NurbsRuledPatch<S>;                                                                               \
    template BernsteinPoly<S> defect_polynomial(const RuledPatch<S>&);                                               \
    template BernsteinPoly<S> affine_defect(const RuledPatch<S>&);                                                   \
    template S defect_scale(const RuledPatch<S>&);                                                                   \
    template DevelopabilityReport<S> is_developable(const RuledPatch<S>&, double);                                   \
    template Classification<S> classify(const RuledPatch<S>&, double);                                               \
    template DevelopabilityReport<S> check(const RuledPatch<S>&, double);                                            \
    template DevelopabilityReport<S> check_nurbs(const NurbsRuledPatch<S>&, double);                                 \
    template HomogeneousCurve<S> coefficient_residual(const RuledPatch<S>&, const CoefficientTriple<S>&);            \
    template CoefficientTriple<S> recover_coefficients(const RuledPatch<S>&, double);                                \
    template RationalBezierCurve<S> construct_directrix(const RationalBezierCurve<S>&, const BernsteinPoly<S>&,      \
                                                        const BernsteinPoly<S>&, const BernsteinPoly<S>&,            \
                                                        const Vec4<S>&, double);                                     \
    template std::vector<RegressionSample<S>> edge_of_regression(const RuledPatch<S>&, int, double);

DEVSURF_INSTANTIATE(double)
DEVSURF_INSTANTIATE(Rational)

#undef DEVSURF_INSTANTIATE

}  // namespace devsurf
