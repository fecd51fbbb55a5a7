#include <cstdio>
#include <random>

#include "doctest.h"
#include "splash/curve.hpp"

using namespace splash;

namespace {

ClosedCurve circle(int n, double radius = 1.0, Vec2 center = {0.0, 0.0}) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double a = kTwoPi * i / n;
        pts[i] = {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
    }
    return ClosedCurve(std::move(pts));
}

ClosedCurve ellipse(int n, double a, double b) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        pts[i] = {a * std::cos(t), b * std::sin(t)};
    }
    return ClosedCurve(std::move(pts));
}

// Two unit circles tangent at the origin traversed as one C^1 closed curve:
// upper loop for alpha in [0,pi), mirrored lower loop for alpha in [pi,2pi).
// Exact self-touch z(0) = z(pi) = (0,0) with tangent (2,0) at both visits.
ClosedCurve touching_lobes(int n) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double a = kTwoPi * i / n;
        if (a < kPi) {
            pts[i] = {std::sin(2 * a), 1.0 - std::cos(2 * a)};
        } else {
            pts[i] = {std::sin(2 * a), std::cos(2 * a) - 1.0};
        }
    }
    return ClosedCurve(std::move(pts));
}

double brute_chord_arc(const ClosedCurve& c) {
    double best = 1e300;
    for (int i = 0; i < c.size(); ++i) {
        for (int j = i + 1; j < c.size(); ++j) {
            double da = std::abs(c.alpha(i) - c.alpha(j));
            da = std::min(da, c.period() - da);
            best = std::min(best, (c[i] - c[j]).norm() / da);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("chord-arc of the unit circle is 2/pi") {
    const ClosedCurve c = circle(1024);
    const double ca = chord_arc_constant(c);
    CHECK(ca == doctest::Approx(2.0 / kPi).epsilon(1e-3));
    CHECK(ca == doctest::Approx(brute_chord_arc(c)).epsilon(1e-15));
}

TEST_CASE("chord-arc is invariant under rigid motions") {
    const ClosedCurve e = ellipse(256, 2.0, 1.0);
    const double ca0 = chord_arc_constant(e);
    const double th = 0.83;
    std::vector<Vec2> moved(e.size());
    for (int i = 0; i < e.size(); ++i) {
        const Vec2 p = e[i];
        moved[i] = {std::cos(th) * p.x - std::sin(th) * p.y + 3.7,
                    std::sin(th) * p.x + std::cos(th) * p.y - 1.2};
    }
    const double ca1 = chord_arc_constant(ClosedCurve(std::move(moved)));
    CHECK(ca1 == doctest::Approx(ca0).epsilon(1e-12));
}

TEST_CASE("figure-eight touch has vanishing chord-arc constant") {
    const ClosedCurve c = touching_lobes(512);
    CHECK(chord_arc_constant(c) < 1e-2);
}

TEST_CASE("classify_splash") {
    for (int n : {64, 128, 256, 1024}) {
        const SplashVerdict v = classify_splash(circle(n), 1e-3);
        CHECK(v.status == SplashStatus::RegularChordArc);
        if (n == 1024) CHECK(v.chord_arc_constant == doctest::Approx(2.0 / kPi).epsilon(1e-3));
    }

    const SplashVerdict touch = classify_splash(touching_lobes(1024), 2e-2);
    CHECK(touch.status == SplashStatus::SplashCurve);
    CHECK(touch.touch_pairs.size() == 1);

    // A cusp at the touch point (tangent -> 0 there) is degenerate, not a splash.
    const int n = 1024;
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        const double sn = std::sin(t);
        const double r = 2.0 * std::abs(sn * sn * sn);  // cubic pinch at t = 0, pi
        pts[i] = {r * std::cos(t) + 1e-9 * std::cos(3 * t), r * std::sin(t)};
    }
    const SplashVerdict cusp = classify_splash(ClosedCurve(pts), 2e-2);
    CHECK(cusp.status == SplashStatus::Degenerate);
}

TEST_CASE("geometry of circles and ellipses") {
    for (double R : {1.0, 2.5}) {
        const CurveGeometry g = geometry(circle(256, R));
        for (int i = 0; i < 256; i += 17) {
            CHECK(g.curvature[i] == doctest::Approx(1.0 / R).epsilon(1e-6));
            const Vec2 expected_n{std::cos(kTwoPi * i / 256), std::sin(kTwoPi * i / 256)};
            CHECK(g.normal[i].dot(expected_n) == doctest::Approx(1.0).epsilon(1e-8));
        }
        CHECK(g.length == doctest::Approx(kTwoPi * R).epsilon(1e-10));
    }

    // Ellipse (a,b) = (2,1): the max curvature a/b^2 = 2 sits at (2,0) and the
    // flattest point b/a^2 = 1/4 at (0,1).
    const CurveGeometry ge = geometry(ellipse(512, 2.0, 1.0));
    CHECK(ge.curvature[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(ge.curvature[128] == doctest::Approx(0.25).epsilon(1e-8));
}

namespace {
double poisson_kernel_curvature_error(int n) {
    // r = 1/(1.25 - cos t): geometrically decaying Fourier tail, so the
    // spectral error halves per added mode instead of hitting roundoff at once.
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        const double r = 1.0 / (1.25 - std::cos(t));
        pts[i] = {r * std::cos(t), r * std::sin(t)};
    }
    const CurveGeometry g = geometry(ClosedCurve(std::move(pts)));
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        const double r = 1.0 / (1.25 - std::cos(t));
        const double rp = -std::sin(t) * r * r;
        const double rpp = -std::cos(t) * r * r - 2.0 * std::sin(t) * r * rp;
        const double kappa =
            (r * r + 2 * rp * rp - r * rpp) / std::pow(r * r + rp * rp, 1.5);
        err = std::max(err, std::abs(g.curvature[i] - kappa));
    }
    return err;
}
}  // namespace

TEST_CASE("spectral curvature converges at spectral rate") {
    const double e16 = poisson_kernel_curvature_error(16);
    const double e32 = poisson_kernel_curvature_error(32);
    const double e64 = poisson_kernel_curvature_error(64);
    CHECK(e32 < 0.05 * e16);
    CHECK(e64 < 0.05 * e32);
    CHECK(e64 < 1e-6);
}

TEST_CASE("curve file round trip at 17 significant digits") {
    const ClosedCurve c = ellipse(64, 1.9, 0.7);
    const std::string path = "roundtrip_curve.txt";
    write_curve(path, c);
    const ClosedCurve r = read_curve(path);
    REQUIRE(r.size() == c.size());
    CHECK(r.period() == c.period());
    for (int i = 0; i < c.size(); ++i) {
        CHECK(r[i].x == c[i].x);
        CHECK(r[i].y == c[i].y);
    }
    std::remove(path.c_str());
}

TEST_CASE("tubular chart evaluation") {
    const ClosedCurve c = circle(128);
    const TubularChart chart = make_chart(c, +1, 0.8);
    CHECK(chart.lambda0 == doctest::Approx(0.8).epsilon(1e-6));

    auto [p0, j0] = chart.eval(0.3, 0.0);
    CHECK(j0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p0.norm() == doctest::Approx(1.0).epsilon(1e-10));

    auto [p1, j1] = chart.eval(1.1, 0.1);
    CHECK(p1.norm() == doctest::Approx(1.1).epsilon(1e-10));
    CHECK(j1 == doctest::Approx(1.1).epsilon(1e-10));

    CHECK_THROWS_AS(chart.eval(0.0, 0.99), Error);

    // Inversion recovers chart coordinates.
    double s = 0, lam = 0;
    const Vec2 probe{0.95 * std::cos(2.0), 0.95 * std::sin(2.0)};
    REQUIRE(chart.invert(probe, -1.0, &s, &lam));
    CHECK(lam == doctest::Approx(-0.05).epsilon(1e-8));
    CHECK(std::fmod(s, chart.length()) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("arclength resampling equalizes speed") {
    const ClosedCurve e = ellipse(256, 2.0, 1.0);
    const ClosedCurve r = e.resample_arclength(256);
    const CurveGeometry g = geometry(r);
    double lo = 1e300, hi = 0.0;
    for (double s : g.speed) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK((hi - lo) / hi < 1e-8);
    CHECK(g.length == doctest::Approx(geometry(e).length).epsilon(1e-8));
}
