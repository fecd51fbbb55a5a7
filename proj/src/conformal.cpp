#include "splash/conformal.hpp"

#include <algorithm>
#include <limits>

namespace splash {

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.norm2();
    if (len2 == 0.0) return (p - a).norm();
    double t = (p - a).dot(ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

// Does the open segment (p,q) cross the segment (a,b)? Touching endpoints are
// counted as a crossing; the callers only use generic paths.
bool segments_cross(const Vec2& p, const Vec2& q, const Vec2& a, const Vec2& b) {
    const auto orient = [](const Vec2& u, const Vec2& v, const Vec2& w) {
        return (v - u).cross(w - u);
    };
    const double d1 = orient(p, q, a);
    const double d2 = orient(p, q, b);
    const double d3 = orient(a, b, p);
    const double d4 = orient(a, b, q);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// sqrt with the cut along the ray at angle `cut_angle`: the argument of z is
// taken in (cut_angle, cut_angle + 2*pi).
Vec2 sqrt_with_ray_cut(const Vec2& z, double cut_angle) {
    const double phi = std::atan2(z.y, z.x);
    double rel = phi - cut_angle;
    rel -= kTwoPi * std::floor(rel / kTwoPi);  // rel in [0, 2*pi)
    const double r = std::sqrt(std::hypot(z.x, z.y));
    const double arg = 0.5 * (cut_angle + rel);
    return {r * std::cos(arg), r * std::sin(arg)};
}

// Principal sqrt (cut on the negative real axis).
Vec2 sqrt_principal(const Vec2& z) {
    const double r = std::hypot(z.x, z.y);
    const double arg = 0.5 * std::atan2(z.y, z.x);
    const double s = std::sqrt(r);
    return {s * std::cos(arg), s * std::sin(arg)};
}

int crossings_with_polyline(const Vec2& from, const Vec2& to,
                            const std::vector<Vec2>& poly) {
    int count = 0;
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        if (segments_cross(from, to, poly[i], poly[i + 1])) ++count;
    }
    return count;
}

}  // namespace

BranchCut BranchCut::ray(double angle_rad, double reach) {
    BranchCut cut;
    cut.polyline = {{0.0, 0.0}, {reach * std::cos(angle_rad), reach * std::sin(angle_rad)}};
    // Anchor opposite the ray; its image lands in the upper relative half.
    cut.anchor = {-std::cos(angle_rad), -std::sin(angle_rad)};
    cut.anchor_sign = +1;
    return cut;
}

bool BranchCut::is_origin_ray(double* angle_out) const {
    if (polyline.size() != 2) return false;
    if (polyline[0].norm() > 1e-14) return false;
    const Vec2 d = polyline[1];
    if (d.norm() == 0.0) return false;
    if (angle_out) *angle_out = std::atan2(d.y, d.x);
    return true;
}

double BranchCut::distance_to(const Vec2& z) const {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < polyline.size(); ++i) {
        best = std::min(best, point_segment_distance(z, polyline[i], polyline[i + 1]));
    }
    return best;
}

Vec2 map_forward(const Vec2& z, const BranchCut& cut, double on_cut_tol) {
    if (cut.distance_to(z) < on_cut_tol) {
        throw Error("PointOnCut", "point lies on the branch cut");
    }
    double cut_angle = 0.0;
    if (cut.is_origin_ray(&cut_angle)) {
        return sqrt_with_ray_cut(z, cut_angle);
    }
    // General polyline cut: sign relative to the principal branch flips when a
    // straight path from the anchor crosses either the cut or the principal
    // cut (negative real axis), since the principal value itself flips there.
    static const std::vector<Vec2> neg_axis = {{0.0, 0.0}, {-1e6, 0.0}};
    const int cut_cross = crossings_with_polyline(cut.anchor, z, cut.polyline);
    const int principal_cross = crossings_with_polyline(cut.anchor, z, neg_axis);
    Vec2 anchor_val = sqrt_principal(cut.anchor);
    double anchor_flip =
        (cut.anchor_sign >= 0) == (anchor_val.y >= 0.0) ? 1.0 : -1.0;
    const double sign = anchor_flip * (((cut_cross + principal_cross) % 2) ? -1.0 : 1.0);
    return sign * sqrt_principal(z);
}

ConformalFrame frame_at(const Vec2& zt) {
    const double r2 = zt.norm2();
    if (r2 < 1e-20) {
        throw Error("SingularPoint", "frame requested at the branch-map singularity");
    }
    // P'(z) = 1/(2 sqrt(z)) so P' o P^{-1} = 1/(2 zt).
    const double p = zt.x / (2.0 * r2);
    const double q = -zt.y / (2.0 * r2);
    ConformalFrame f;
    f.point = zt;
    f.A = Mat2{p, -q, q, p};
    f.Q2 = p * p + q * q;
    f.Ainv = f.A.transpose() * (1.0 / f.Q2);
    return f;
}

void frame_gradient(const Vec2& zt, Mat2 dA[2]) {
    // A corresponds to multiplication by w(zt) = 1/(2 zt); dw/dzt = -1/(2 zt^2).
    const Vec2 z2 = csq(zt);
    const double d2 = z2.norm2();
    if (d2 < 1e-40) {
        throw Error("SingularPoint", "frame gradient at the branch-map singularity");
    }
    const Vec2 dw{-z2.x / (2.0 * d2), z2.y / (2.0 * d2)};  // -1/(2 zt^2)
    // d/dx acts as multiplication by dw, d/dy as multiplication by i*dw.
    const Vec2 dwy = cmul(Vec2{0.0, 1.0}, dw);
    dA[0] = Mat2{dw.x, -dw.y, dw.y, dw.x};
    dA[1] = Mat2{dwy.x, -dwy.y, dwy.y, dwy.x};
}

Vec2 transform_normal(const Vec2& n, const ConformalFrame& frame) {
    const Mat2 J = Mat2::j();
    return (J * (frame.A * (J * n))) * -1.0;
}

FrameDeviation frame_deviation(const ConformalFrame& f) {
    const Mat2 J = Mat2::j();
    FrameDeviation d;
    d.aat = (f.A * f.A.transpose() - Mat2::scaled_identity(f.Q2)).max_abs();
    // Adjugate identity det(A) A^{-1} = -J A^T J with det(A) = Q^2. The
    // equivalent form used in the stress operator is -J A^{-1} J = A^T / Q^2.
    d.adjugate = (f.Ainv * f.Q2 + J * f.A.transpose() * J).max_abs();
    return d;
}

IdentityReport check_identities(const std::vector<Vec2>& samples, const BranchCut& cut) {
    IdentityReport rep;
    for (const Vec2& zt : samples) {
        const ConformalFrame f = frame_at(zt);
        const FrameDeviation d = frame_deviation(f);
        rep.max_aat = std::max(rep.max_aat, d.aat);
        rep.max_adjugate = std::max(rep.max_adjugate, d.adjugate);
        const Vec2 back = map_forward(map_inverse(zt), cut);
        rep.max_roundtrip = std::max(rep.max_roundtrip, (back - zt).norm());
    }
    return rep;
}

}  // namespace splash
