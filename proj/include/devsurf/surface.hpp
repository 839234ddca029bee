#pragma once

#include "devsurf/developable.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

namespace devsurf {

/// Point and exact partials of b(t,v), from the quotient rule applied to the
/// homogeneous form (1-v) C(t) + v D(t).
struct SurfacePartials {
    Eigen::Vector3d point;
    Eigen::Vector3d t;
    Eigen::Vector3d v;
    Eigen::Vector3d tt;
    Eigen::Vector3d tv;
    Eigen::Vector3d vv;
};

SurfacePartials evaluate_surface(const RuledPatch<double>& patch, double t, double v);

/// Unit normal b_t x b_v; throws SingularPoint where it degenerates.
Eigen::Vector3d unit_normal(const RuledPatch<double>& patch, double t, double v, double tol = kDefaultTolerance);

/// K = (LN - M^2) / (EG - F^2). Throws SingularPoint when EG - F^2 < tol scale^4.
double gaussian_curvature(const RuledPatch<double>& patch, double t, double v, double tol = kDefaultTolerance);

struct SurfaceSampleGrid {
    int nt = 0;
    int nv = 0;
    std::vector<Eigen::Vector3d> points;   // index i * nv + j
    std::vector<Eigen::Vector3d> normals;  // zero where singular
    std::vector<double> curvature;         // NaN where singular
    std::vector<bool> regular;

    const Eigen::Vector3d& point(int i, int j) const { return points[static_cast<std::size_t>(i * nv + j)]; }
};

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> triangles;  // 0-based
};

struct Tessellation {
    SurfaceSampleGrid grid;
    TriangleMesh mesh;
};

/// Regular (t_i, v_j) grid, i/(nt-1) by j/(nv-1); quads split along the
/// shorter diagonal.
Tessellation tessellate(const RuledPatch<double>& patch, int nt, int nv, double tol = kDefaultTolerance);

void append_mesh(TriangleMesh& into, const TriangleMesh& other);
double mesh_area(const TriangleMesh& mesh);

/// ASCII OBJ: `v x y z` lines, then 1-based `f i j k` lines, 17 significant digits.
void write_obj(std::ostream& out, const TriangleMesh& mesh);

struct FlatRuling {
    double t;
    Eigen::Vector2d c;
    Eigen::Vector2d d;
};

/// Plane development of a ruled strip as a sequence of flattened rulings.
struct FlatPattern {
    std::vector<FlatRuling> rulings;
    double area() const;
};

/// Lays out the triangles (c_i, d_i, c_i+1) and (d_i, c_i+1, d_i+1) in the
/// plane from their edge lengths. Ruling 0 lies on the positive y-axis.
FlatPattern develop_strip(std::span<const double> params, std::span<const Eigen::Vector3d> c,
                          std::span<const Eigen::Vector3d> d);

/// Unrolls a developable patch sampled at nt stations t_i = i/(nt-1).
FlatPattern unroll(const RuledPatch<double>& patch, int nt, double tol = kDefaultTolerance);

/// SVG polyline drawing of a pattern, model units, y axis pointing up.
void write_svg(std::ostream& out, const FlatPattern& pattern);

/// Adaptive Simpson quadrature of |c'(t)| over [t0, t1].
double arc_length(const RationalBezierCurve<double>& curve, double t0, double t1, double rel_tol = 1e-10);

}  // namespace devsurf
