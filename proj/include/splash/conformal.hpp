#pragma once

#include <vector>

#include "splash/core.hpp"

namespace splash {

/// Slit from the branch point of sqrt out to (effective) infinity. The branch
/// of sqrt is the one that is continuous off the slit and maps `anchor` to the
/// half-plane selected by `anchor_sign` (+1: Im >= 0 image at the anchor).
struct BranchCut {
    std::vector<Vec2> polyline;  // starts at the branch point (origin)
    Vec2 anchor{-1.0, 0.0};     // reference point off the cut
    int anchor_sign = +1;        // sign of Im(sqrt) at the anchor

    /// Ray {t*(cos a, sin a) : t >= 0}. Default is the positive real axis.
    static BranchCut ray(double angle_rad = 0.0, double reach = 1e6);

    bool is_origin_ray(double* angle_out) const;
    double distance_to(const Vec2& z) const;
};

struct ConformalFrame {
    Vec2 point;   // location in the tilde plane
    Mat2 A;       // Jacobian of P evaluated at P^{-1}(point)
    double Q2;    // conformal weight |P' o P^{-1}|^2
    Mat2 Ainv;
};

/// Deviations of a frame from the exact conformal relations.
struct FrameDeviation {
    double aat;       // max-norm of A A^T - Q^2 I
    double adjugate;  // max-norm of Q^2 A^{-1} + J A^T J
};

struct IdentityReport {
    double max_aat = 0.0;
    double max_adjugate = 0.0;
    double max_roundtrip = 0.0;  // |P(P^{-1}(z)) - z| over the sampled points
};

/// Branch map P(z) = sqrt(z), branch selected by the cut.
Vec2 map_forward(const Vec2& z, const BranchCut& cut, double on_cut_tol = 1e-12);

/// P^{-1}(zt) = zt^2, entire.
inline Vec2 map_inverse(const Vec2& zt) { return csq(zt); }

/// Conformal frame of P at the tilde point zt (rejects |zt| < 1e-10).
ConformalFrame frame_at(const Vec2& zt);

/// Spatial derivative of the frame matrix: dA[0] = dA/dx, dA[1] = dA/dy.
void frame_gradient(const Vec2& zt, Mat2 dA[2]);

/// n_tilde = -J A J n.
Vec2 transform_normal(const Vec2& n, const ConformalFrame& frame);

FrameDeviation frame_deviation(const ConformalFrame& frame);

/// Max deviation of the two frame identities and of the round trip
/// P(P^{-1}(z)) = z over the sample points.
IdentityReport check_identities(const std::vector<Vec2>& samples, const BranchCut& cut);

}  // namespace splash
