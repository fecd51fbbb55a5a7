#include <random>

#include "doctest.h"
#include "splash/conformal.hpp"

using namespace splash;

namespace {

// Central finite-difference Jacobian of P around z = P^{-1}(zt).
Mat2 fd_jacobian(const Vec2& zt, const BranchCut& cut, double h) {
    const Vec2 z = map_inverse(zt);
    const Vec2 fx1 = map_forward({z.x + h, z.y}, cut);
    const Vec2 fx0 = map_forward({z.x - h, z.y}, cut);
    const Vec2 fy1 = map_forward({z.x, z.y + h}, cut);
    const Vec2 fy0 = map_forward({z.x, z.y - h}, cut);
    return {(fx1.x - fx0.x) / (2 * h), (fy1.x - fy0.x) / (2 * h),
            (fx1.y - fx0.y) / (2 * h), (fy1.y - fy0.y) / (2 * h)};
}

}  // namespace

TEST_CASE("map_forward principal values and round trips") {
    // Cut along the negative axis, arguments taken in (-pi, pi): principal sqrt.
    const BranchCut cut = BranchCut::ray(-kPi);
    const Vec2 one = map_forward({1.0, 0.0}, cut);
    CHECK(one.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one.y == doctest::Approx(0.0).epsilon(1e-14));

    // sqrt(-1) with the cut moved to the lower axis gives +i.
    const BranchCut cut_pos = BranchCut::ray(-kPi / 2);
    const Vec2 mi = map_forward({-1.0, 0.0}, cut_pos);
    CHECK(mi.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mi.y == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        Vec2 z{U(rng), U(rng)};
        const BranchCut c = BranchCut::ray(0.0);
        if (c.distance_to(z) < 1e-6) continue;
        const Vec2 back = map_inverse(map_forward(z, c));
        CHECK((back - z).norm() < 1e-12 * std::max(1.0, z.norm()));
    }
}

TEST_CASE("map_forward rejects points on the cut") {
    const BranchCut cut = BranchCut::ray(0.0);
    CHECK_THROWS_AS(map_forward({2.0, 0.0}, cut), Error);
}

TEST_CASE("map_inverse basics") {
    CHECK(map_inverse({1.0, 0.0}).x == doctest::Approx(1.0));
    const Vec2 i2 = map_inverse({0.0, 1.0});
    CHECK(i2.x == doctest::Approx(-1.0));
    CHECK(i2.y == doctest::Approx(0.0));
    const Vec2 w = map_inverse({1.0, 1.0});
    CHECK(w.x == doctest::Approx(0.0));
    CHECK(w.y == doctest::Approx(2.0));
}

TEST_CASE("frame_at matches the finite-difference Jacobian oracle") {
    const BranchCut cut = BranchCut::ray(0.0);  // image is the upper half plane

    const ConformalFrame f1 = frame_at({1.0, 0.0});
    CHECK(f1.A.a11 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f1.A.a12 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f1.A.a21 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f1.A.a22 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(f1.Q2 == doctest::Approx(0.25).epsilon(1e-14));

    const ConformalFrame fi = frame_at({0.0, 1.0});
    CHECK(fi.A.a11 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fi.A.a12 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fi.A.a21 == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fi.A.a22 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fi.Q2 == doctest::Approx(0.25).epsilon(1e-14));

    CHECK(frame_at({2.0, 0.0}).Q2 == doctest::Approx(1.0 / 16).epsilon(1e-14));

    // O(h^2) agreement with the FD Jacobian, sampled within the branch image.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(0.5, 1.5);
    std::uniform_real_distribution<double> A(0.3, kPi - 0.3);
    for (int i = 0; i < 50; ++i) {
        const double r = U(rng), a = A(rng);
        const Vec2 zt{r * std::cos(a), r * std::sin(a)};
        const Mat2 J1 = fd_jacobian(zt, cut, 2e-4);
        const Mat2 J2 = fd_jacobian(zt, cut, 1e-4);
        const ConformalFrame f = frame_at(zt);
        const double e1 = (J1 - f.A).max_abs();
        const double e2 = (J2 - f.A).max_abs();
        CHECK(e1 < 1e-6);
        CHECK(e2 < 0.35 * e1);  // second order: halving h quarters the error
    }
}

TEST_CASE("frame_at rejects the singular point") {
    CHECK_THROWS_AS(frame_at({0.0, 0.0}), Error);
    CHECK_THROWS_AS(frame_at({1e-11, 0.0}), Error);
}

TEST_CASE("transform_normal") {
    const ConformalFrame f1 = frame_at({1.0, 0.0});
    const Vec2 nt = transform_normal({0.0, 1.0}, f1);
    CHECK(nt.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(nt.y == doctest::Approx(0.5).epsilon(1e-14));

    ConformalFrame synth;
    synth.A = Mat2::identity();
    synth.Q2 = 1.0;
    synth.Ainv = Mat2::identity();
    const Vec2 id = transform_normal({1.0, 0.0}, synth);
    CHECK(id.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(id.y == doctest::Approx(0.0).epsilon(1e-14));

    // Conformality: |n_tilde|^2 = Q^2 |n|^2.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        Vec2 zt{U(rng), U(rng)};
        if (zt.norm() < 0.2) continue;
        Vec2 n{U(rng), U(rng)};
        if (n.norm() < 1e-3) continue;
        const ConformalFrame f = frame_at(zt);
        const Vec2 nt2 = transform_normal(n, f);
        CHECK(nt2.norm2() == doctest::Approx(f.Q2 * n.norm2()).epsilon(1e-12));
    }
}

TEST_CASE("conformal identities on the annulus") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> R(0.1, 10.0);
    std::uniform_real_distribution<double> A(0.02, kPi - 0.02);
    std::vector<Vec2> pts;
    pts.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
        const double r = R(rng), a = A(rng);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    const BranchCut cut = BranchCut::ray(0.0);
    const IdentityReport rep = check_identities(pts, cut);
    CHECK(rep.max_aat < 1e-12);
    CHECK(rep.max_adjugate < 1e-12);
    CHECK(rep.max_roundtrip < 1e-12);

    // Exactness at a single rational point (principal cut keeps z=1 off it).
    const IdentityReport one = check_identities({{1.0, 0.0}}, BranchCut::ray(-kPi));
    CHECK(one.max_aat < 1e-15);
    CHECK(one.max_adjugate < 1e-15);
    CHECK(one.max_roundtrip < 1e-15);

    // Detector sensitivity: perturb one frame entry by 1e-3.
    ConformalFrame f = frame_at({1.3, 0.7});
    f.A.a11 += 1e-3;
    const FrameDeviation d = frame_deviation(f);
    CHECK(d.aat > 2e-4);
    CHECK(d.aat < 5e-3);
}

TEST_CASE("general polyline cut keeps branch continuity off the cut") {
    BranchCut cut;
    cut.polyline = {{0.0, 0.0}, {2.0, 0.5}, {5.0, -0.5}, {100.0, 0.0}};
    cut.anchor = {-1.0, 0.0};
    cut.anchor_sign = +1;
    // Walk almost all the way around the unit circle without crossing the cut
    // (the cut meets the circle near angle 0.242); values must vary smoothly.
    const double a0 = 0.35;
    Vec2 prev = map_forward({std::cos(a0), std::sin(a0)}, cut);
    const int n = 400;
    for (int i = 1; i <= n; ++i) {
        const double a = a0 + (kTwoPi - 0.2) * i / n;
        const Vec2 z{std::cos(a), std::sin(a)};
        const Vec2 w = map_forward(z, cut);
        CHECK((w - prev).norm() < 0.1);
        CHECK((map_inverse(w) - z).norm() < 1e-12);
        prev = w;
    }
}
