#pragma once

#include <complex>
#include <string>
#include <vector>

#include "splash/core.hpp"

namespace splash {

/// Closed planar curve sampled at uniform parameter values alpha_k = k*period/N.
/// Sample N-1 connects back to sample 0.
class ClosedCurve {
public:
    ClosedCurve() = default;
    ClosedCurve(std::vector<Vec2> samples, double period = kTwoPi);

    int size() const { return static_cast<int>(samples_.size()); }
    double period() const { return period_; }
    double alpha(int i) const { return period_ * i / size(); }
    const Vec2& operator[](int i) const { return samples_[i]; }
    const std::vector<Vec2>& samples() const { return samples_; }

    double diameter() const;
    /// +1 for counterclockwise sample order, -1 for clockwise.
    int orientation() const;
    /// Copy with counterclockwise orientation.
    ClosedCurve oriented_ccw() const;
    /// Copy reparameterized to (normalized) arclength with m samples.
    ClosedCurve resample_arclength(int m) const;
    /// Copy resampled to m points by trigonometric interpolation.
    ClosedCurve resample(int m) const;

private:
    std::vector<Vec2> samples_;
    double period_ = kTwoPi;
};

ClosedCurve read_curve(const std::string& path);
void write_curve(const std::string& path, const ClosedCurve& c);

/// Boundary scalar samples stored in the third column of a curve file.
std::vector<double> read_boundary_samples(const std::string& path);

struct CurveGeometry {
    std::vector<Vec2> tangent;    // unit
    std::vector<Vec2> normal;     // unit, outward
    std::vector<double> curvature;
    std::vector<double> speed;    // |z_alpha|
    double length = 0.0;
    int orientation = +1;
};

/// Per-sample tangent, outward normal and signed curvature. Fourier
/// differentiation when the sample count is a power of two, centered
/// differences otherwise.
CurveGeometry geometry(const ClosedCurve& c);

/// min over sample pairs of |z(a) - z(a')| / dist_per(a, a').
double chord_arc_constant(const ClosedCurve& c);

/// Same minimum with all pairs within `skip` samples (periodically) of the
/// index set `excluded` removed from consideration.
double chord_arc_excluding(const ClosedCurve& c, const std::vector<int>& excluded,
                           int skip);

enum class SplashStatus { RegularChordArc, SplashCurve, Degenerate };

struct SplashVerdict {
    SplashStatus status = SplashStatus::RegularChordArc;
    std::vector<std::pair<double, double>> touch_pairs;  // (alpha, alpha')
    double chord_arc_constant = 0.0;
};

/// Definition-style classification: a splash curve touches itself at exactly
/// one parameter pair, with nonvanishing tangents, and recovers the chord-arc
/// property when either touch neighborhood is removed. `restore_floor` (in
/// units of curve speed L/period) is the chord-arc level that must come back;
/// pass 0 for the default.
SplashVerdict classify_splash(const ClosedCurve& c, double pair_tol,
                              double restore_floor = 0.0);

struct TubularChart {
    ClosedCurve base;                // arclength parameterized, CCW
    CurveGeometry geom;
    double speed = 0.0;              // constant |z_alpha| = L / period
    double lambda0 = 0.0;            // chart half-width
    int sigma = +1;                  // +1: lambda grows outward
    std::vector<std::complex<double>> cx, cy;  // trig series of the base curve

    /// x(s,lambda) = z(s) + sigma*lambda*n(s); jacobian 1 + sigma*lambda*kappa.
    /// `s` is arclength in [0, L).
    std::pair<Vec2, double> eval(double s, double lambda) const;

    /// Nearest-point inversion; seeds Newton at arclength `s_seed` (pass a
    /// negative value for a global nearest-sample seed). Returns false when the
    /// point is outside the chart width.
    bool invert(const Vec2& p, double s_seed, double* s, double* lambda) const;

    double length() const { return geom.length; }
    /// Trigonometric evaluation of the base curve and frame at arclength s.
    Vec2 point_at(double s) const;
    Vec2 tangent_at(double s) const;
    Vec2 normal_at(double s) const;
    double curvature_at(double s) const;
};

/// Builds a chart on the (internally CCW, arclength resampled) curve.
/// `width_fraction` scales the diffeomorphism bound 1/max|kappa|.
TubularChart make_chart(const ClosedCurve& c, int sigma = +1,
                        double width_fraction = 0.8, int resample_to = 0);

// ---- Self-intersection machinery -----------------------------------------

struct SegmentCrossing {
    int seg_a = 0;
    int seg_b = 0;
    Vec2 point;
    double ta = 0.0;  // location within segment a, in (0,1)
    double tb = 0.0;
};

/// All transversal crossings between non-adjacent segments of the closed
/// polyline; plane-sweep, O((N+k) log N).
std::vector<SegmentCrossing> self_intersections(const ClosedCurve& c);

/// Quadratic all-pairs reference used by the verification suite.
std::vector<SegmentCrossing> self_intersections_brute(const ClosedCurve& c);

/// Minimal distance between segments separated by more than `window` indices
/// along the closed polyline (the discrete notion of "non-adjacent arcs").
double min_nonlocal_distance(const ClosedCurve& c, int window, int* seg_a = nullptr,
                             int* seg_b = nullptr);

enum class PreimageCaseKind { CaseA_Simple, CaseB_Touching, CaseC_Crossing };

struct PreimageCase {
    PreimageCaseKind kind = PreimageCaseKind::CaseA_Simple;
    std::vector<std::pair<double, double>> witnesses;  // parameter pairs
    double min_arc_distance = 0.0;
};

/// Figure-style trichotomy of the squared image of a tilde curve: simple /
/// touching / crossing.
PreimageCase classify_preimage(const ClosedCurve& tilde_c, double touch_tol);

/// Distance to the nearest antipodal pair: min over sample pairs of
/// |z(a) + z(a')|. Zero exactly when the squared image touches.
double antipodal_gap(const ClosedCurve& tilde_c, int* i_out = nullptr,
                     int* j_out = nullptr);

}  // namespace splash
