#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "splash/conformal.hpp"
#include "splash/curve.hpp"

namespace splash {

enum class FrameKind { Conformal, Uniform };

struct GridConfig {
    int n_theta = 64;               // angular samples (even)
    int n_r = 24;                   // radial rings; nodes j = 0..n_r, j = n_r on the boundary
    bool auto_center = true;
    Vec2 center{0.0, 0.0};
    double core_radius_frac = 0.6;  // polar-core radius relative to min |z - c|
    double blend_start = 0.15;      // map is exactly polar for r <= blend_start
    FrameKind frame_kind = FrameKind::Conformal;
    double uniform_scale = 1.0;     // A = a*I when frame_kind == Uniform
    Vec2 frame_shift{0.0, 0.0};     // frames evaluated at pos + shift (stability runs)
};

/// Boundary-fitted O-grid on a star-shaped domain: angular rings shrink from
/// the boundary curve to an exactly polar core, so radial stencils couple
/// across the center through the ghost identification u(theta, -r) =
/// u(theta+pi, r). Node (i,j) sits at x(theta_i, r_j), r_j = (j+1/2)*dr,
/// dr = 1/(n_r + 1/2); the ring j = n_r lies on the curve itself.
class DiscreteDomain {
public:
    static DiscreteDomain build(const ClosedCurve& boundary, const GridConfig& cfg);

    int nt = 0;
    int nr = 0;
    double dtheta = 0.0;
    double dr = 0.0;
    GridConfig config;

    int num_nodes() const { return nt * (nr + 1); }
    int node(int i, int j) const { return j * nt + ((i % nt + nt) % nt); }
    bool boundary_ring(int j) const { return j == nr; }
    int boundary_node(int i) const { return node(i, nr); }

    // Per-node geometry.
    std::vector<Vec2> pos;
    std::vector<ConformalFrame> frame;
    std::vector<Mat2> frame_dx;      // dA/dx
    std::vector<Mat2> frame_dy;      // dA/dy
    std::vector<double> weight;      // area quadrature weight
    std::vector<Vec2> grad_theta;    // nabla theta
    std::vector<Vec2> grad_r;        // nabla r
    std::vector<double> lap_tt, lap_tr, lap_rr, lap_t, lap_r;  // Laplacian coefficients
    double min_jacobian = 0.0;

    // Boundary ring data (index i).
    std::vector<Vec2> b_tangent;     // unit, CCW
    std::vector<Vec2> b_normal;      // unit, outward
    std::vector<double> b_kappa;
    std::vector<double> b_weight;    // arclength quadrature weight
    std::vector<Vec2> b_m;           // A^{-1} n per boundary node
    std::vector<double> b_m2;        // |A^{-1} n|^2

    // Collar chart coordinates (valid where collar_in_chart).
    TubularChart chart;
    std::vector<double> collar_s;       // arclength of the boundary foot
    std::vector<double> collar_lambda;  // inward distance to the boundary
    std::vector<char> collar_in_chart;

    ClosedCurve boundary_curve() const { return boundary_; }
    uint64_t checksum() const { return checksum_; }

    // ---- stencils ------------------------------------------------------
    struct Row {
        int idx[6];
        double w[6];
        int n = 0;
        void add(int index, double weight) {
            idx[n] = index;
            w[n] = weight;
            ++n;
        }
    };

    void row_dt(int i, int j, Row& r) const;   // d/dtheta
    void row_dn(int i, int j, Row& r) const;   // d/dr (one-sided on the boundary)
    void row_dtt(int i, int j, Row& r) const;  // d2/dtheta2   (interior only)
    void row_dnn(int i, int j, Row& r) const;  // d2/dr2       (interior only)
    void row_dtn(int i, int j, Row& r) const;  // d2/dtheta dr (interior only)

    /// Cartesian first-derivative rows at any node.
    void row_dx(int i, int j, Row& r) const;
    void row_dy(int i, int j, Row& r) const;
    /// Laplacian row (interior nodes).
    void rows_laplacian(int i, int j, Row out[5]) const;

    // ---- field operators -------------------------------------------------
    /// Gradient of a scalar field (size N) -> (dx, dy) fields.
    void gradient(const Eigen::VectorXd& f, Eigen::VectorXd& fx, Eigen::VectorXd& fy) const;
    /// Laplacian of a scalar field at interior nodes (boundary entries get the
    /// composed first-derivative value).
    Eigen::VectorXd laplacian(const Eigen::VectorXd& f) const;
    /// Jacobian of a vector field [vx; vy] (size 2N): per node d_j v_i.
    void jacobian(const Eigen::VectorXd& v, std::vector<Mat2>& J) const;

    double apply_row(const Row& r, const Eigen::VectorXd& f) const {
        double acc = 0.0;
        for (int k = 0; k < r.n; ++k) acc += r.w[k] * f[r.idx[k]];
        return acc;
    }

    /// Weighted L2 inner product  sum w_i f_i g_i / Q_i^2.
    double weighted_dot(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
    double weighted_norm(const Eigen::VectorXd& f) const;

    /// Locate the grid coordinates of a physical point (Newton on the map);
    /// returns false if the point is outside the grid. Seeds at (i0, j0).
    bool locate(const Vec2& p, double i0, double j0, double* ti, double* tj) const;
    /// Bilinear interpolation of a scalar field at grid coordinates (ti, tj).
    double interp(const Eigen::VectorXd& f, double ti, double tj) const;
    /// Map evaluation at fractional grid coordinates.
    Vec2 map_point(double ti, double tj) const;

private:
    ClosedCurve boundary_{};
    uint64_t checksum_ = 0;
    void map_derivs(double theta, double r, Vec2& x, Vec2& xt, Vec2& xr, Vec2& xtt,
                    Vec2& xtr, Vec2& xrr) const;
    // Boundary trig data for map evaluation.
    std::vector<Vec2> bz_, bzp_, bzpp_;
    std::vector<std::complex<double>> bcx_, bcy_;
    Vec2 center_{0.0, 0.0};
    double rho0_ = 0.0;
    friend struct GridMapProbe;
};

}  // namespace splash
