#include "devsurf/surface.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

namespace devsurf {

namespace {

using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::Vector4d;

double length_scale(const RuledPatch<double>& patch) {
    const double m = std::max(patch.directrix_c().points().cwiseAbs().maxCoeff(),
                              patch.directrix_d().points().cwiseAbs().maxCoeff());
    return m > 0 ? m : 1.0;
}

struct CurveJet {
    Vector4d h, dh, ddh;
};

CurveJet jet(const HomogeneousCurve<double>& h, const HomogeneousCurve<double>& dh,
             const HomogeneousCurve<double>& ddh, double t) {
    return {evaluate(h, t), evaluate(dh, t), evaluate(ddh, t)};
}

double cross2(const Vector2d& a, const Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// Third vertex of a triangle with base a-b and side lengths ra (from a) and
// rb (from b), on the side given by `side` (+1 left of a->b, -1 right).
Vector2d place_vertex(const Vector2d& a, const Vector2d& b, double ra, double rb, double side) {
    const double base = (b - a).norm();
    if (base == 0.0) return a + Vector2d(0.0, ra);
    if (ra == 0.0) return a;
    if (rb == 0.0) return b;
    const Vector2d u = (b - a) / base;
    const Vector2d perp(-u.y(), u.x());
    const double along = (ra * ra - rb * rb + base * base) / (2.0 * base);
    const double h2 = std::max(0.0, ra * ra - along * along);
    return a + along * u + side * std::sqrt(h2) * perp;
}

bool segments_cross(const Vector2d& p0, const Vector2d& p1, const Vector2d& q0, const Vector2d& q1, double eps) {
    const double d1 = cross2(p1 - p0, q0 - p0);
    const double d2 = cross2(p1 - p0, q1 - p0);
    const double d3 = cross2(q1 - q0, p0 - q0);
    const double d4 = cross2(q1 - q0, p1 - q0);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

SurfacePartials evaluate_surface(const RuledPatch<double>& patch, double t, double v) {
    if (t < 0.0 || t > 1.0 || v < 0.0 || v > 1.0) throw DomainError("surface parameters outside [0,1]^2");
    const auto C = homogeneous(patch.directrix_c());
    const auto D = homogeneous(patch.directrix_d());
    const auto dC = derivative(C);
    const auto dD = derivative(D);
    const CurveJet jc = jet(C, dC, derivative(dC), t);
    const CurveJet jd = jet(D, dD, derivative(dD), t);

    const Vector4d B = (1.0 - v) * jc.h + v * jd.h;
    const Vector4d Bt = (1.0 - v) * jc.dh + v * jd.dh;
    const Vector4d Btt = (1.0 - v) * jc.ddh + v * jd.ddh;
    const Vector4d Bv = jd.h - jc.h;
    const Vector4d Btv = jd.dh - jc.dh;

    const double w = B(0);
    if (w == 0.0) throw ZeroWeightError("surface denominator vanishes");
    SurfacePartials p;
    p.point = B.tail<3>() / w;
    p.t = (Bt.tail<3>() - Bt(0) * p.point) / w;
    p.v = (Bv.tail<3>() - Bv(0) * p.point) / w;
    p.tt = (Btt.tail<3>() - 2.0 * Bt(0) * p.t - Btt(0) * p.point) / w;
    p.tv = (Btv.tail<3>() - Bt(0) * p.v - Bv(0) * p.t - Btv(0) * p.point) / w;
    p.vv = (-2.0 * Bv(0) * p.v) / w;
    return p;
}

Eigen::Vector3d unit_normal(const RuledPatch<double>& patch, double t, double v, double tol) {
    const SurfacePartials p = evaluate_surface(patch, t, v);
    const Vector3d n = p.t.cross(p.v);
    const double s = length_scale(patch);
    if (n.squaredNorm() < tol * s * s * s * s) throw SingularPoint("surface normal undefined");
    return n.normalized();
}

double gaussian_curvature(const RuledPatch<double>& patch, double t, double v, double tol) {
    const SurfacePartials p = evaluate_surface(patch, t, v);
    // EG - F^2 == |b_t x b_v|^2; the cross product form loses less precision.
    const Vector3d cr = p.t.cross(p.v);
    const double det = cr.squaredNorm();
    const double s = length_scale(patch);
    if (det < tol * s * s * s * s) throw SingularPoint("first fundamental form is singular");
    const Vector3d n = cr / std::sqrt(det);
    const double L = p.tt.dot(n);
    const double M = p.tv.dot(n);
    const double N = p.vv.dot(n);
    return (L * N - M * M) / det;
}

Tessellation tessellate(const RuledPatch<double>& patch, int nt, int nv, double tol) {
    if (nt < 2 || nv < 2) throw DomainError("tessellation needs nt >= 2 and nv >= 2");
    Tessellation out;
    auto& g = out.grid;
    g.nt = nt;
    g.nv = nv;
    const std::size_t count = static_cast<std::size_t>(nt) * static_cast<std::size_t>(nv);
    g.points.resize(count);
    g.normals.resize(count);
    g.curvature.resize(count);
    g.regular.resize(count);
    for (int i = 0; i < nt; ++i) {
        const double t = static_cast<double>(i) / (nt - 1);
        for (int j = 0; j < nv; ++j) {
            const double v = static_cast<double>(j) / (nv - 1);
            const std::size_t k = static_cast<std::size_t>(i * nv + j);
            g.points[k] = evaluate_surface(patch, t, v).point;
            try {
                g.normals[k] = unit_normal(patch, t, v, tol);
                g.curvature[k] = gaussian_curvature(patch, t, v, tol);
                g.regular[k] = true;
            } catch (const SingularPoint&) {
                g.normals[k] = Vector3d::Zero();
                g.curvature[k] = std::numeric_limits<double>::quiet_NaN();
                g.regular[k] = false;
            }
        }
    }
    out.mesh.vertices = g.points;
    for (int i = 0; i + 1 < nt; ++i) {
        for (int j = 0; j + 1 < nv; ++j) {
            const int a = i * nv + j, b = (i + 1) * nv + j, c = (i + 1) * nv + j + 1, d = i * nv + j + 1;
            const double ac = (g.points[a] - g.points[c]).squaredNorm();
            const double bd = (g.points[b] - g.points[d]).squaredNorm();
            if (ac <= bd) {
                out.mesh.triangles.push_back({a, b, c});
                out.mesh.triangles.push_back({a, c, d});
            } else {
                out.mesh.triangles.push_back({a, b, d});
                out.mesh.triangles.push_back({b, c, d});
            }
        }
    }
    return out;
}

void append_mesh(TriangleMesh& into, const TriangleMesh& other) {
    const int offset = static_cast<int>(into.vertices.size());
    into.vertices.insert(into.vertices.end(), other.vertices.begin(), other.vertices.end());
    for (const auto& tri : other.triangles) into.triangles.push_back({tri[0] + offset, tri[1] + offset, tri[2] + offset});
}

double mesh_area(const TriangleMesh& mesh) {
    std::vector<double> areas;
    areas.reserve(mesh.triangles.size());
    for (const auto& [a, b, c] : mesh.triangles) {
        const auto& pa = mesh.vertices[a];
        areas.push_back(0.5 * (mesh.vertices[b] - pa).cross(mesh.vertices[c] - pa).norm());
    }
    return pairwise_sum(areas);
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        out << buf;
    }
    for (const auto& [a, b, c] : mesh.triangles) out << "f " << a + 1 << ' ' << b + 1 << ' ' << c + 1 << '\n';
}

double FlatPattern::area() const {
    std::vector<double> areas;
    for (std::size_t i = 0; i + 1 < rulings.size(); ++i) {
        const auto& r0 = rulings[i];
        const auto& r1 = rulings[i + 1];
        areas.push_back(0.5 * std::abs(cross2(r0.d - r0.c, r1.c - r0.c)));
        areas.push_back(0.5 * std::abs(cross2(r1.c - r0.d, r1.d - r0.d)));
    }
    return pairwise_sum(areas);
}

FlatPattern develop_strip(std::span<const double> params, std::span<const Eigen::Vector3d> c,
                          std::span<const Eigen::Vector3d> d) {
    if (params.size() != c.size() || c.size() != d.size()) throw DomainError("station arrays differ in length");
    if (c.size() < 2) throw DomainError("development needs at least two stations");
    FlatPattern pattern;
    pattern.rulings.push_back({params[0], Vector2d::Zero(), Vector2d(0.0, (d[0] - c[0]).norm())});
    double scale = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) scale = std::max({scale, c[i].cwiseAbs().maxCoeff(), d[i].cwiseAbs().maxCoeff()});
    const double eps = 1e-14 * std::max(scale * scale, 1e-300);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const FlatRuling& prev = pattern.rulings.back();
        const Vector2d c1 = place_vertex(prev.c, prev.d, (c[i + 1] - c[i]).norm(), (c[i + 1] - d[i]).norm(), -1.0);
        // the fold of the second triangle follows the 3D diagonal c_i d_i+1
        const double ra = (d[i + 1] - d[i]).norm(), rb = (d[i + 1] - c[i + 1]).norm();
        const double diagonal = (d[i + 1] - c[i]).norm();
        const Vector2d up = place_vertex(prev.d, c1, ra, rb, 1.0);
        const Vector2d down = place_vertex(prev.d, c1, ra, rb, -1.0);
        const Vector2d d1 = std::abs((down - prev.c).norm() - diagonal) < std::abs((up - prev.c).norm() - diagonal)
                                ? down
                                : up;
        if (segments_cross(prev.c, prev.d, c1, d1, eps)) {
            throw DegenerateTriangle("consecutive rulings intersect inside the strip", params[i + 1]);
        }
        pattern.rulings.push_back({params[i + 1], c1, d1});
    }
    return pattern;
}

FlatPattern unroll(const RuledPatch<double>& patch, int nt, double tol) {
    if (nt < 2) throw DomainError("unroll needs nt >= 2");
    if (!is_developable(patch, tol).verdict) throw NotDevelopable("refusing to unroll a non-developable patch");
    std::vector<double> ts(nt);
    std::vector<Vector3d> cs(nt), ds(nt);
    for (int i = 0; i < nt; ++i) {
        ts[i] = static_cast<double>(i) / (nt - 1);
        cs[i] = eval_point(patch.directrix_c(), ts[i]);
        ds[i] = eval_point(patch.directrix_d(), ts[i]);
    }
    return develop_strip(ts, cs, ds);
}

void write_svg(std::ostream& out, const FlatPattern& pattern) {
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    for (const auto& r : pattern.rulings) {
        for (const Vector2d& p : {r.c, r.d}) {
            xmin = std::min(xmin, p.x());
            xmax = std::max(xmax, p.x());
            ymin = std::min(ymin, p.y());
            ymax = std::max(ymax, p.y());
        }
    }
    const double margin = 0.02 * std::max({xmax - xmin, ymax - ymin, 1e-9});
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.17g %.17g %.17g %.17g\">\n",
                  xmin - margin, -(ymax + margin), xmax - xmin + 2 * margin, ymax - ymin + 2 * margin);
    out << buf;
    out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\""
        << 0.002 * std::max(xmax - xmin, ymax - ymin) << "\">\n";
    const auto polyline = [&](bool upper) {
        out << "<polyline points=\"";
        for (std::size_t i = 0; i < pattern.rulings.size(); ++i) {
            const Vector2d& p = upper ? pattern.rulings[i].d : pattern.rulings[i].c;
            std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", i ? " " : "", p.x(), p.y());
            out << buf;
        }
        out << "\"/>\n";
    };
    polyline(false);
    polyline(true);
    for (const auto& r : pattern.rulings) {
        std::snprintf(buf, sizeof buf, "<line x1=\"%.17g\" y1=\"%.17g\" x2=\"%.17g\" y2=\"%.17g\"/>\n", r.c.x(),
                      r.c.y(), r.d.x(), r.d.y());
        out << buf;
    }
    out << "</g>\n</svg>\n";
}

double arc_length(const RationalBezierCurve<double>& curve, double t0, double t1, double rel_tol) {
    if (t0 > t1) throw DomainError("arc length needs t0 <= t1");
    if (t0 < 0.0 || t1 > 1.0) throw DomainError("arc length interval outside [0,1]");
    if (t0 == t1) return 0.0;
    const auto h = homogeneous(curve);
    const auto dh = derivative(h);
    const auto speed = [&](double t) {
        const Vector4d p = evaluate(h, t);
        const Vector4d dp = evaluate(dh, t);
        const Vector3d x = p.tail<3>() / p(0);
        return ((dp.tail<3>() - dp(0) * x) / p(0)).norm();
    };

    std::function<double(double, double, double, double, double, double, double, int)> refine;
    refine = [&](double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = speed(lm), frm = speed(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
    };

    // Coarse composite estimate sets the absolute target.
    constexpr int panels = 16;
    double estimate = 0.0;
    std::vector<double> knots(panels + 1), values(panels + 1), mids(panels);
    for (int i = 0; i <= panels; ++i) {
        knots[i] = t0 + (t1 - t0) * i / panels;
        values[i] = speed(knots[i]);
    }
    for (int i = 0; i < panels; ++i) {
        mids[i] = speed(0.5 * (knots[i] + knots[i + 1]));
        estimate += (knots[i + 1] - knots[i]) / 6.0 * (values[i] + 4.0 * mids[i] + values[i + 1]);
    }
    const double eps = rel_tol * std::max(std::abs(estimate), 1e-300) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double whole = (knots[i + 1] - knots[i]) / 6.0 * (values[i] + 4.0 * mids[i] + values[i + 1]);
        total += refine(knots[i], knots[i + 1], values[i], mids[i], values[i + 1], whole, eps, 50);
    }
    return total;
}

}  // namespace devsurf
