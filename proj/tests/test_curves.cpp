#include "devsurf/curves.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace devsurf;
using namespace devsurf::testing;

TEST_CASE("eval_point: segment, quarter circle, endpoints") {
    const auto seg = line_segment<double>();
    CHECK((eval_point(seg, 0.5) - Eigen::Vector3d(0.5, 0, 0)).norm() == 0.0);

    const auto qc = quarter_circle<double>();
    const double r = std::sqrt(2.0) / 2.0;
    CHECK((eval_point(qc, 0.5) - Eigen::Vector3d(r, r, 0)).norm() < 1e-15);
    for (int k = 0; k < 50; ++k) {
        const Eigen::Vector3d p = eval_point(qc, k / 49.0);
        CHECK(std::abs(p.head<2>().squaredNorm() - 1.0) < 1e-14);
    }

    const auto qe = quarter_circle<Rational>();
    CHECK(eval_point(qe, Rational(0)) == qe.point(0));
    CHECK(eval_point(qe, Rational(1)) == qe.point(2));
}

TEST_CASE("eval_point: vanishing denominator") {
    const RationalBezierCurve<double> c(pts<double>({{0, 0, 0}, {1, 0, 0}}), wts<double>({1.0, -1.0}));
    CHECK_THROWS_AS(eval_point(c, 0.5), ZeroWeightError);
    CHECK_FALSE(c.convex_hull_safe());
    CHECK(quarter_circle<double>().convex_hull_safe());
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(RationalBezierCurve<double>(pts<double>({{0, 0, 0}, {1, 0, 0}}), wts<double>({1.0})), DegreeError);
    CHECK_THROWS_AS(RationalBezierCurve<double>(pts<double>({{0, 0, 0}, {1, 0, 0}}), wts<double>({1.0, 0.0})),
                    ZeroWeightError);
    CHECK_THROWS_AS(RationalBezierCurve<double>(pts<double>({{0, std::nan(""), 0}})), DomainError);
}

TEST_CASE("homogeneous lift and derivative") {
    const auto h = homogeneous(line_segment<Rational>());
    Eigen::Matrix<Rational, 4, 2> expected;
    expected << 1, 1, 0, 1, 0, 0, 0, 0;
    CHECK(h.controls() == expected);
    const auto dh = derivative(h);
    CHECK(dh.degree() == 0);
    CHECK(dh.control(0) == Vec4<Rational>(0, 1, 0, 0));
    const HomogeneousCurve<Rational> constant(Eigen::Matrix<Rational, 4, 1>(2, 1, 1, 1));
    CHECK(derivative(constant).control(0) == Vec4<Rational>::Zero());

    // round trip through homogeneous form
    const auto qc = quarter_circle<Rational>();
    CHECK(RationalBezierCurve<Rational>::from_homogeneous(homogeneous(qc)) == qc);
}

TEST_CASE("blossom: corners, diagonal, symmetry, multi-affinity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 1.5), unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_curve(rng, 3, true);
        const auto h = homogeneous(c);
        const std::vector<double> a000{0, 0, 0}, a001{0, 0, 1};
        CHECK((blossom<double>(c, a000) - h.control(0)).norm() == 0.0);
        CHECK((blossom<double>(c, a001) - h.control(1)).norm() < 1e-15);

        const double t = unit(rng);
        const std::vector<double> diag{t, t, t};
        CHECK((blossom<double>(c, diag) - oracle::homogeneous_at(c, t)).norm() < 1e-12);

        std::vector<double> args{u(rng), u(rng), u(rng)};
        const Vec4<double> ref = blossom<double>(c, args);
        for (int k = 0; k < 10; ++k) {
            std::shuffle(args.begin(), args.end(), rng);
            CHECK((blossom<double>(c, args) - ref).norm() < 1e-12);
        }

        const double alpha = u(rng), x = u(rng), y = u(rng);
        std::vector<double> mixed{args[0], alpha * x + (1 - alpha) * y, args[2]};
        std::vector<double> ax{args[0], x, args[2]}, ay{args[0], y, args[2]};
        CHECK((blossom<double>(c, mixed) - (alpha * blossom<double>(c, ax) + (1 - alpha) * blossom<double>(c, ay)))
                  .norm() < 1e-12);
    }
    const std::vector<double> too_few{0.5};
    CHECK_THROWS_AS(blossom<double>(random_curve(rng, 3, true), too_few), DegreeError);
}

TEST_CASE("elevate_degree") {
    const auto qc = quarter_circle<double>();
    const auto q3 = elevate_degree(qc, 3);
    CHECK(q3.degree() == 3);
    for (int k = 0; k < 20; ++k) CHECK((eval_point(q3, k / 19.0) - eval_point(qc, k / 19.0)).norm() < 1e-13);
    CHECK(elevate_degree(qc, 2) == qc);
    const auto seg2 = elevate_degree(line_segment<Rational>(), 2);
    CHECK(seg2.point(1) == Vec3<Rational>(Rational(1, 2), 0, 0));
    CHECK((seg2.weights().array() == Rational(1)).all());
    CHECK_THROWS_AS(elevate_degree(qc, 1), DegreeError);
}

TEST_CASE("subdivide") {
    const auto [l, r] = subdivide(line_segment<Rational>(), Rational(1, 2));
    CHECK(l.point(1) == Vec3<Rational>(Rational(1, 2), 0, 0));
    CHECK(r.point(0) == l.point(1));

    const auto [a, b] = subdivide(quarter_circle<double>(), 0.5);
    CHECK((a.point(a.degree()) - b.point(0)).norm() == 0.0);
    for (int k = 0; k <= 20; ++k) {
        CHECK(std::abs(eval_point(a, k / 20.0).head<2>().squaredNorm() - 1.0) < 1e-14);
        CHECK(std::abs(eval_point(b, k / 20.0).head<2>().squaredNorm() - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(subdivide(quarter_circle<double>(), 0.0), DomainError);
    CHECK_THROWS_AS(subdivide(quarter_circle<double>(), 1.0), DomainError);
}

TEST_CASE("evaluation invariance of elevation and subdivision over random curves") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0), split(0.1, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_curve(rng, 1 + trial % 5, true);
        const auto e = elevate_degree(c, c.degree() + 2);
        const double s = split(rng);
        const auto [l, r] = subdivide(c, s);
        for (int k = 0; k < 20; ++k) {
            const double t = unit(rng);
            const Eigen::Vector3d p = eval_point(c, t);
            CHECK((eval_point(e, t) - p).norm() < 1e-12);
            const Eigen::Vector3d q = t <= s ? eval_point(l, t / s) : eval_point(r, (t - s) / (1 - s));
            CHECK((q - p).norm() < 1e-12);
        }
    }
}

TEST_CASE("exact elevation and subdivision are exactly invariant") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_exact_curve(rng, 3);
        const auto e = elevate_degree(c, 5);
        const auto [l, r] = subdivide(c, Rational(1, 3));
        for (int k = 0; k <= 6; ++k) {
            const Rational t(k, 6);
            CHECK(eval_point(e, t) == eval_point(c, t));
            if (t <= Rational(1, 3)) CHECK(eval_point(l, Rational(t * 3)) == eval_point(c, t));
        }
        CHECK(eval_point(r, Rational(1, 2)) == eval_point(c, Rational(2, 3)));
    }
}

TEST_CASE("unit weights reduce to polynomial Bernstein evaluation") {
    std::mt19937_64 rng(8);
    const auto c = random_curve(rng, 4, false);
    const VectorPoly<double, 3> poly(c.points());
    for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK((eval_point(c, t) - evaluate(poly, t)).norm() < 1e-15);
}

TEST_CASE("NURBS: validation") {
    using P = RationalBezierCurve<double>::Points;
    const P p = pts<double>({{0, 0, 0}, {1, 0, 0}, {2, 1, 0}});
    CHECK_THROWS_AS(NurbsCurve<double>(2, {0, 0, 0, 1, 1}, p), KnotError);
    CHECK_THROWS_AS(NurbsCurve<double>(1, {0, 0, 0.7, 0.5, 1}, p), KnotError);
    CHECK_THROWS_AS(NurbsCurve<double>(1, {0, 0.1, 0.5, 1, 1}, p), KnotError);
    CHECK_THROWS_AS(NurbsCurve<double>(2, {1, 1, 1, 1, 1, 1}, p), KnotError);
    CHECK_NOTHROW(NurbsCurve<double>(1, {0, 0, 0.5, 1, 1}, p));
}

TEST_CASE("NURBS: single span equals Bézier, unit weights equal polynomial B-spline") {
    std::mt19937_64 rng(17);
    const auto c = random_curve(rng, 3, true);
    const auto n = NurbsCurve<double>::from_bezier(c);
    for (int k = 0; k <= 10; ++k) CHECK((nurbs_eval(n, k / 10.0) - eval_point(c, k / 10.0)).norm() < 1e-14);

    // uniform quadratic B-spline on knots 0,0,0,1,2,2,2 against Cox-de Boor basis
    const auto p = pts<double>({{0, 0, 0}, {1, 2, 0}, {3, -1, 1}, {4, 0, 2}});
    const NurbsCurve<double> b(2, {0, 0, 0, 1, 2, 2, 2}, p);
    const std::vector<double> u{0, 0, 0, 1, 2, 2, 2};
    const auto basis = [&](int i, double t) {
        std::function<double(int, int)> N = [&](int j, int d) -> double {
            if (d == 0) return (u[j] <= t && t < u[j + 1]) || (t == 2.0 && u[j] < u[j + 1] && u[j + 1] == 2.0) ? 1.0 : 0.0;
            double r = 0.0;
            if (u[j + d] > u[j]) r += (t - u[j]) / (u[j + d] - u[j]) * N(j, d - 1);
            if (u[j + d + 1] > u[j + 1]) r += (u[j + d + 1] - t) / (u[j + d + 1] - u[j + 1]) * N(j + 1, d - 1);
            return r;
        };
        return N(i, 2);
    };
    for (int k = 0; k <= 20; ++k) {
        const double t = 2.0 * k / 20.0;
        Eigen::Vector3d ref = Eigen::Vector3d::Zero();
        for (int i = 0; i < 4; ++i) ref += basis(i, t) * p.col(i);
        CHECK((nurbs_eval(b, t) - ref).norm() < 1e-14);
    }
    CHECK_THROWS_AS(nurbs_eval(b, 2.5), DomainError);
}

TEST_CASE("NURBS: knot insertion") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto bez = random_curve(rng, 3, true);
        auto n = insert_knot(NurbsCurve<double>::from_bezier(bez), 0.4, 1);
        const double u = 0.05 + 0.9 * unit(rng);
        const auto m = insert_knot(n, u, 1);
        CHECK(m.control_count() == n.control_count() + 1);
        for (int k = 0; k < 20; ++k) {
            const double t = unit(rng);
            CHECK((nurbs_eval(m, t) - nurbs_eval(n, t)).norm() < 1e-12);
        }
    }
    const auto circle = nurbs_half_circle<double>();
    CHECK(circle.multiplicity(0.5) == 2);
    const auto c1 = insert_knot(circle, 0.25, 2);
    CHECK(c1.control_count() == circle.control_count() + 2);
    CHECK(c1.multiplicity(0.25) == 2);
    const auto s1 = insert_knot(NurbsCurve<double>::from_bezier(random_curve(rng, 3, true)), 0.5, 1);
    CHECK(insert_knot(s1, 0.5, 1).multiplicity(0.5) == 2);
    CHECK_THROWS_AS(insert_knot(circle, 0.5, 1), KnotError);
    CHECK_THROWS_AS(insert_knot(circle, 0.0, 1), KnotError);
    CHECK_THROWS_AS(insert_knot(circle, 1.0, 1), KnotError);

    // exact insertion is exactly invariant
    const auto ce = nurbs_half_circle<Rational>();
    const auto ie = insert_knot(ce, Rational(1, 3), 1);
    for (int k = 0; k <= 12; ++k) CHECK(nurbs_eval(ie, Rational(k, 12)) == nurbs_eval(ce, Rational(k, 12)));
}

TEST_CASE("NURBS: Bézier extraction") {
    const auto single = NurbsCurve<double>::from_bezier(quarter_circle<double>());
    const auto segs1 = to_bezier_segments(single);
    REQUIRE(segs1.size() == 1);
    CHECK(segs1[0].curve == quarter_circle<double>());

    const auto circle = nurbs_half_circle<double>();
    const auto segs = to_bezier_segments(circle);
    REQUIRE(segs.size() == 2);
    for (const auto& s : segs) {
        for (int k = 0; k < 10; ++k) {
            const double local = k / 9.0;
            const double t = s.start + local * (s.end - s.start);
            CHECK((eval_point(s.curve, local) - nurbs_eval(circle, t)).norm() < 1e-12);
        }
    }

    // cubic with three distinct interior knots of mixed multiplicity
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> coord(-1, 1);
    RationalBezierCurve<double>::Points p(3, 8);
    for (int i = 0; i < 8; ++i) p.col(i) << coord(rng), coord(rng), coord(rng);
    RationalBezierCurve<double>::Weights w(8);
    for (int i = 0; i < 8; ++i) w(i) = 0.6 + 0.1 * i;
    const NurbsCurve<double> cubic(3, {0, 0, 0, 0, 0.2, 0.5, 0.5, 0.7, 1, 1, 1, 1}, p, w);
    const auto cs = to_bezier_segments(cubic);
    CHECK(cs.size() == 4);
    for (const auto& s : cs) {
        for (int k = 0; k < 10; ++k) {
            const double local = k / 9.0;
            CHECK((eval_point(s.curve, local) - nurbs_eval(cubic, s.start + local * (s.end - s.start))).norm() < 1e-12);
        }
    }
}
