#include <random>

#include "doctest.h"
#include "splash/curve.hpp"

using namespace splash;

namespace {

ClosedCurve circleish(int n, double radius = 1.0, Vec2 center = {0.0, 0.0}) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double a = kTwoPi * i / n;
        pts[i] = {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
    }
    return ClosedCurve(std::move(pts));
}

// Limacon r = 1 + 2 cos(theta): one inner loop, a single transversal crossing
// of the polyline at the pole.
ClosedCurve limacon(int n) {
    std::vector<Vec2> pts(n);
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n + 0.37 * kTwoPi / n;
        const double r = 1.0 + 2.0 * std::cos(t);
        pts[i] = {r * std::cos(t), r * std::sin(t)};
    }
    return ClosedCurve(std::move(pts));
}

// Bowtie path: a quadrilateral traversed so that two opposite edges cross.
// Seven subdivisions per edge keep the central crossing off the vertices.
ClosedCurve bowtie() {
    std::vector<Vec2> pts;
    const Vec2 corners[4] = {{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    for (int e = 0; e < 4; ++e) {
        const Vec2 a = corners[e], b = corners[(e + 1) % 4];
        for (int k = 0; k < 7; ++k) {
            const double t = k / 7.0;
            pts.push_back(a + t * (b - a));
        }
    }
    return ClosedCurve(std::move(pts));
}

// Circle through the antipodal pair (0,1),(0,-1), sampled so the pair lands on
// samples m and n-m and the lower half is the exact mirror of the upper half.
ClosedCurve antipodal_touch_circle(int n, int m) {
    const double theta_t = kTwoPi * m / n;
    const double r = 1.0 / std::sin(theta_t);
    const double cx = -r * std::cos(theta_t);
    std::vector<Vec2> pts(n);
    for (int i = 0; i <= n / 2; ++i) {
        const double t = kTwoPi * i / n;
        pts[i] = {cx + r * std::cos(t), r * std::sin(t)};
    }
    for (int i = 1; i < n / 2; ++i) pts[n - i] = {pts[i].x, -pts[i].y};
    return ClosedCurve(std::move(pts));
}

bool same_crossings(const std::vector<SegmentCrossing>& a,
                    const std::vector<SegmentCrossing>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].seg_a != b[i].seg_a || a[i].seg_b != b[i].seg_b) return false;
        if ((a[i].point - b[i].point).norm() > 1e-12) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("convex curve has no self intersections") {
    const auto xs = self_intersections(circleish(256));
    CHECK(xs.empty());
    CHECK(self_intersections_brute(circleish(256)).empty());
}

TEST_CASE("limacon inner loop yields exactly one crossing") {
    const ClosedCurve c = limacon(512);
    const auto sweep = self_intersections(c);
    const auto brute = self_intersections_brute(c);
    REQUIRE(sweep.size() == 1);
    CHECK(same_crossings(sweep, brute));
    // The crossing sits at the pole of the limacon.
    CHECK(sweep[0].point.norm() < 0.05);
}

TEST_CASE("bowtie has one crossing at the center") {
    const ClosedCurve c = bowtie();
    const auto sweep = self_intersections(c);
    const auto brute = self_intersections_brute(c);
    REQUIRE(same_crossings(sweep, brute));
    REQUIRE(sweep.size() == 1);
    CHECK(sweep[0].point.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sweep[0].point.y == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sweep agrees with the all-pairs oracle on random wavy curves") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 64 + 32 * (trial % 5);
        std::vector<Vec2> pts(n);
        const double a3 = 1.4 * U(rng), a5 = 1.1 * U(rng), ph = kTwoPi * U(rng);
        for (int i = 0; i < n; ++i) {
            const double t = kTwoPi * i / n;
            const double r = 1.0 + a3 * std::cos(3 * t + ph) + a5 * std::sin(5 * t);
            pts[i] = {r * std::cos(t), r * std::sin(t)};
        }
        ClosedCurve c(std::move(pts));
        const auto sweep = self_intersections(c);
        const auto brute = self_intersections_brute(c);
        CHECK(same_crossings(sweep, brute));
    }
}

TEST_CASE("classify_preimage trichotomy") {
    // Case A: a tilde circle strictly inside the right half plane.
    const ClosedCurve a = circleish(256, 0.3, {2.0, 0.0});
    const PreimageCase ca = classify_preimage(a, 1e-6);
    CHECK(ca.kind == PreimageCaseKind::CaseA_Simple);

    // Case B: a circle passing through the antipodal pair (0,1), (0,-1); both
    // square to (-1,0). Touch points sit exactly on samples and the lower half
    // mirrors the upper half bit for bit, so the image polyline meets itself
    // at one point instead of overshooting into a crossing.
    {
        const PreimageCase cb = classify_preimage(antipodal_touch_circle(512, 165), 1e-5);
        CHECK(cb.kind == PreimageCaseKind::CaseB_Touching);
    }

    // Case C: antipodal arcs overlapping on an open set.
    std::vector<Vec2> pts(512);
    for (int i = 0; i < 512; ++i) {
        const double t = kTwoPi * i / 512;
        const double r = std::sqrt(1.25) + 0.08 * std::cos(2.0 * t + 0.9);
        pts[i] = {0.5 + r * std::cos(t), r * std::sin(t)};
    }
    const PreimageCase cc = classify_preimage(ClosedCurve(std::move(pts)), 1e-6);
    CHECK(cc.kind == PreimageCaseKind::CaseC_Crossing);
}

TEST_CASE("preimage of right-half-plane curves is always simple") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> pts(128);
        const double cx = 1.5 + U(rng), r0 = 0.2 + 0.5 * U(rng);
        const double wob = 0.2 * r0 * U(rng);
        bool ok = true;
        for (int i = 0; i < 128; ++i) {
            const double t = kTwoPi * i / 128;
            const double r = r0 + wob * std::cos(4 * t);
            pts[i] = {cx + r * std::cos(t), r * std::sin(t)};
            if (pts[i].x <= 0.05) ok = false;
        }
        if (!ok) continue;
        const PreimageCase pc = classify_preimage(ClosedCurve(std::move(pts)), 1e-7);
        CHECK(pc.kind == PreimageCaseKind::CaseA_Simple);
    }
}

TEST_CASE("antipodal gap detects the touching pair") {
    int i = -1, j = -1;
    const double gap = antipodal_gap(antipodal_touch_circle(512, 165), &i, &j);
    CHECK(gap == 0.0);
    CHECK(std::min(i, j) == 165);
    CHECK(std::max(i, j) == 512 - 165);
}
