#include "splash/grid.hpp"

#include <algorithm>
#include <cmath>

#include "splash/fftutil.hpp"

namespace splash {

namespace {

// Degree-9 smoothstep: C^4 with flat ends, S'(t) = 630 t^4 (1-t)^4. The map
// must be C^4 for clean second-order truncation of the mapped stencils.
double smoothstep5(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double t5 = t * t * t * t * t;
    return t5 * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + 70.0 * t))));
}
double smoothstep5_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = t * (1.0 - t);
    return 630.0 * a * a * a * a;
}
double smoothstep5_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = t * (1.0 - t);
    return 2520.0 * a * a * a * (1.0 - 2.0 * t);
}

uint64_t fnv1a(const void* data, size_t len, uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

void DiscreteDomain::map_derivs(double theta, double r, Vec2& x, Vec2& xt, Vec2& xr,
                                Vec2& xtt, Vec2& xtr, Vec2& xrr) const {
    const Vec2 e{std::cos(theta), std::sin(theta)};
    const Vec2 ep{-e.y, e.x};
    const Vec2 epp = -1.0 * e;
    const double period = boundary_.period();
    const Vec2 z{fft::interp_value(bcx_, theta, period), fft::interp_value(bcy_, theta, period)};
    const Vec2 zp{fft::interp_derivative(bcx_, theta, period, 1),
                  fft::interp_derivative(bcy_, theta, period, 1)};
    const Vec2 zpp{fft::interp_derivative(bcx_, theta, period, 2),
                   fft::interp_derivative(bcy_, theta, period, 2)};
    const Vec2 w = z - center_ - rho0_ * e;
    const Vec2 wp = zp - rho0_ * ep;
    const Vec2 wpp = zpp - rho0_ * epp;
    const double a = config.blend_start;
    const double u = (r - a) / (1.0 - a);
    const double beta = smoothstep5(u);
    const double betap = smoothstep5_d1(u) / (1.0 - a);
    const double betapp = smoothstep5_d2(u) / ((1.0 - a) * (1.0 - a));
    x = center_ + r * (rho0_ * e + beta * w);
    xt = r * (rho0_ * ep + beta * wp);
    xr = (rho0_ * e + beta * w) + (r * betap) * w;
    xtt = r * (rho0_ * epp + beta * wpp);
    xtr = (rho0_ * ep + beta * wp) + (r * betap) * wp;
    xrr = (2.0 * betap + r * betapp) * w;
}

DiscreteDomain DiscreteDomain::build(const ClosedCurve& input, const GridConfig& cfg) {
    DiscreteDomain d;
    d.config = cfg;
    d.nt = cfg.n_theta;
    d.nr = cfg.n_r;
    if (d.nt < 8 || d.nt % 2 != 0) throw Error("BadGrid", "n_theta must be even and >= 8");
    if (d.nr < 4) throw Error("BadGrid", "n_r must be >= 4");
    d.dtheta = kTwoPi / d.nt;
    d.dr = 1.0 / (d.nr + 0.5);

    ClosedCurve ccw = input.oriented_ccw();
    d.boundary_ = (ccw.size() == d.nt) ? ccw : ccw.resample(d.nt);

    // Center and polar-core radius.
    Vec2 c{0.0, 0.0};
    for (int i = 0; i < d.nt; ++i) c += d.boundary_[i];
    c = c / d.nt;
    if (!cfg.auto_center) c = cfg.center;
    d.center_ = c;
    double min_dist = 1e300;
    for (int i = 0; i < d.nt; ++i) min_dist = std::min(min_dist, (d.boundary_[i] - c).norm());
    if (min_dist <= 0.0) throw Error("BadGrid", "grid center lies on the boundary");
    d.rho0_ = cfg.core_radius_frac * min_dist;

    // Boundary samples and their parameter derivatives.
    std::vector<double> xs(d.nt), ys(d.nt);
    for (int i = 0; i < d.nt; ++i) {
        xs[i] = d.boundary_[i].x;
        ys[i] = d.boundary_[i].y;
    }
    d.bcx_ = fft::coefficients(xs);
    d.bcy_ = fft::coefficients(ys);
    const auto dx1 = fft::derivative(xs, 1, d.boundary_.period());
    const auto dy1 = fft::derivative(ys, 1, d.boundary_.period());
    const auto dx2 = fft::derivative(xs, 2, d.boundary_.period());
    const auto dy2 = fft::derivative(ys, 2, d.boundary_.period());
    d.bz_.resize(d.nt);
    d.bzp_.resize(d.nt);
    d.bzpp_.resize(d.nt);
    for (int i = 0; i < d.nt; ++i) {
        d.bz_[i] = {xs[i], ys[i]};
        d.bzp_[i] = {dx1[i], dy1[i]};
        d.bzpp_[i] = {dx2[i], dy2[i]};
    }

    const int n = d.num_nodes();
    d.pos.resize(n);
    d.frame.resize(n);
    d.frame_dx.resize(n);
    d.frame_dy.resize(n);
    d.weight.resize(n);
    d.grad_theta.resize(n);
    d.grad_r.resize(n);
    d.lap_tt.resize(n);
    d.lap_tr.resize(n);
    d.lap_rr.resize(n);
    d.lap_t.resize(n);
    d.lap_r.resize(n);
    double min_signed = 1e300, max_signed = -1e300;

    const double a = cfg.blend_start;
    for (int j = 0; j <= d.nr; ++j) {
        const double r = (j + 0.5) * d.dr;
        const double u = (r - a) / (1.0 - a);
        const double beta = smoothstep5(u);
        const double betap = smoothstep5_d1(u) / (1.0 - a);
        const double betapp = smoothstep5_d2(u) / ((1.0 - a) * (1.0 - a));
        for (int i = 0; i < d.nt; ++i) {
            const double theta = i * d.dtheta;
            const Vec2 e{std::cos(theta), std::sin(theta)};
            const Vec2 ep{-e.y, e.x};
            const Vec2 epp = -1.0 * e;
            const Vec2 w = d.bz_[i] - c - d.rho0_ * e;
            const Vec2 wp = d.bzp_[i] - d.rho0_ * ep;
            const Vec2 wpp = d.bzpp_[i] - d.rho0_ * epp;
            const int id = d.node(i, j);
            Vec2 x = c + r * (d.rho0_ * e + beta * w);
            if (j == d.nr) x = d.bz_[i];  // ring n_r is the curve, bit for bit
            const Vec2 xt = r * (d.rho0_ * ep + beta * wp);
            const Vec2 xr = (d.rho0_ * e + beta * w) + (r * betap) * w;
            const Vec2 xtt = r * (d.rho0_ * epp + beta * wpp);
            const Vec2 xtr = (d.rho0_ * ep + beta * wp) + (r * betap) * wp;
            const Vec2 xrr = (2.0 * betap + r * betapp) * w;

            const double jac = xt.cross(xr);
            min_signed = std::min(min_signed, jac);
            max_signed = std::max(max_signed, jac);
            d.pos[id] = x;
            d.grad_theta[id] = Vec2{xr.y, -xr.x} / jac;
            d.grad_r[id] = Vec2{-xt.y, xt.x} / jac;
            const Vec2 gt = d.grad_theta[id];
            const Vec2 gr = d.grad_r[id];
            d.lap_tt[id] = gt.dot(gt);
            d.lap_tr[id] = 2.0 * gt.dot(gr);
            d.lap_rr[id] = gr.dot(gr);
            // Laplacians of the coordinate functions from Delta(x_k) = 0.
            const Vec2 S = d.lap_tt[id] * xtt + d.lap_tr[id] * xtr + d.lap_rr[id] * xrr;
            const Mat2 F{xt.x, xr.x, xt.y, xr.y};
            const Vec2 lap = F.inverse() * (-1.0 * S);
            d.lap_t[id] = lap.x;
            d.lap_r[id] = lap.y;
            d.weight[id] = std::abs(jac) * d.dtheta * d.dr * (j == d.nr ? 0.5 : 1.0);

            const Vec2 fp = x + cfg.frame_shift;
            if (cfg.frame_kind == FrameKind::Conformal) {
                d.frame[id] = frame_at(fp);
                Mat2 dA[2];
                frame_gradient(fp, dA);
                d.frame_dx[id] = dA[0];
                d.frame_dy[id] = dA[1];
            } else {
                ConformalFrame f;
                f.point = fp;
                f.A = Mat2::scaled_identity(cfg.uniform_scale);
                f.Q2 = cfg.uniform_scale * cfg.uniform_scale;
                f.Ainv = Mat2::scaled_identity(1.0 / cfg.uniform_scale);
                d.frame[id] = f;
                d.frame_dx[id] = Mat2{};
                d.frame_dy[id] = Mat2{};
            }
        }
    }
    // (theta, r) is left-handed for a CCW boundary, so the signed Jacobian is
    // uniformly negative on an unfolded grid.
    d.min_jacobian = std::min(std::abs(min_signed), std::abs(max_signed));
    if (((min_signed <= 0.0) != (max_signed <= 0.0)) || d.min_jacobian <= 1e-10) {
        throw Error("GridFolded", "grid map degenerates; move the center or smooth "
                                  "the boundary");
    }

    // Boundary frame: spectral tangent/normal/curvature of the CCW curve.
    const CurveGeometry g = geometry(d.boundary_);
    d.b_tangent = g.tangent;
    d.b_normal = g.normal;
    d.b_kappa = g.curvature;
    d.b_weight.resize(d.nt);
    d.b_m.resize(d.nt);
    d.b_m2.resize(d.nt);
    for (int i = 0; i < d.nt; ++i) {
        d.b_weight[i] = g.speed[i] * d.dtheta;
        const int id = d.boundary_node(i);
        d.b_m[i] = d.frame[id].Ainv * d.b_normal[i];
        d.b_m2[i] = d.b_m[i].norm2();
    }

    // Collar chart for stream lifts and boundary-layer construction.
    d.chart = make_chart(d.boundary_, +1, 0.8);
    d.collar_s.assign(n, 0.0);
    d.collar_lambda.assign(n, 0.0);
    d.collar_in_chart.assign(n, 0);
    std::vector<double> sarc(d.nt + 1, 0.0);
    for (int i = 0; i < d.nt; ++i) sarc[i + 1] = sarc[i] + g.speed[i] * d.dtheta;
    for (int j = d.nr; j >= 0; --j) {
        bool any = false;
        for (int i = 0; i < d.nt; ++i) {
            const int id = d.node(i, j);
            const double dist_est = (d.pos[id] - d.bz_[i]).norm();
            if (dist_est > 1.5 * d.chart.lambda0) continue;
            double s = 0.0, lam = 0.0;
            if (d.chart.invert(d.pos[id], sarc[i], &s, &lam)) {
                d.collar_s[id] = s;
                d.collar_lambda[id] = -lam;  // inward distance is positive
                d.collar_in_chart[id] = 1;
                any = true;
            }
        }
        if (!any) break;
    }

    uint64_t h = 1469598103934665603ull;
    h = fnv1a(d.pos.data(), d.pos.size() * sizeof(Vec2), h);
    h = fnv1a(&d.nt, sizeof(d.nt), h);
    h = fnv1a(&d.nr, sizeof(d.nr), h);
    d.checksum_ = h;
    return d;
}

void DiscreteDomain::row_dt(int i, int j, Row& r) const {
    r.n = 0;
    const double c = 1.0 / (2.0 * dtheta);
    r.add(node(i + 1, j), c);
    r.add(node(i - 1, j), -c);
}

void DiscreteDomain::row_dn(int i, int j, Row& r) const {
    r.n = 0;
    const double c = 1.0 / (2.0 * dr);
    if (j == 0) {
        // ghost across the pole: u(theta, -r0) = u(theta + pi, r0)
        r.add(node(i, 1), c);
        r.add(node(i + nt / 2, 0), -c);
    } else if (j == nr) {
        r.add(node(i, nr), 3.0 * c);
        r.add(node(i, nr - 1), -4.0 * c);
        r.add(node(i, nr - 2), 1.0 * c);
    } else {
        r.add(node(i, j + 1), c);
        r.add(node(i, j - 1), -c);
    }
}

void DiscreteDomain::row_dtt(int i, int j, Row& r) const {
    r.n = 0;
    const double c = 1.0 / (dtheta * dtheta);
    r.add(node(i + 1, j), c);
    r.add(node(i, j), -2.0 * c);
    r.add(node(i - 1, j), c);
}

void DiscreteDomain::row_dnn(int i, int j, Row& r) const {
    r.n = 0;
    const double c = 1.0 / (dr * dr);
    if (j == 0) {
        r.add(node(i, 1), c);
        r.add(node(i, 0), -2.0 * c);
        r.add(node(i + nt / 2, 0), c);
    } else if (j == nr) {
        r.add(node(i, nr), 2.0 * c);
        r.add(node(i, nr - 1), -5.0 * c);
        r.add(node(i, nr - 2), 4.0 * c);
        r.add(node(i, nr - 3), -1.0 * c);
    } else {
        r.add(node(i, j + 1), c);
        r.add(node(i, j), -2.0 * c);
        r.add(node(i, j - 1), c);
    }
}

void DiscreteDomain::row_dtn(int i, int j, Row& r) const {
    r.n = 0;
    const double c = 1.0 / (4.0 * dtheta * dr);
    if (j == 0) {
        r.add(node(i + 1, 1), c);
        r.add(node(i - 1, 1), -c);
        r.add(node(i + 1 + nt / 2, 0), -c);
        r.add(node(i - 1 + nt / 2, 0), c);
    } else if (j == nr) {
        // one-sided in r, centered in theta
        const double cc = 1.0 / (2.0 * dtheta) / (2.0 * dr);
        r.add(node(i + 1, nr), 3.0 * cc);
        r.add(node(i - 1, nr), -3.0 * cc);
        r.add(node(i + 1, nr - 1), -4.0 * cc);
        r.add(node(i - 1, nr - 1), 4.0 * cc);
        r.add(node(i + 1, nr - 2), 1.0 * cc);
        r.add(node(i - 1, nr - 2), -1.0 * cc);
    } else {
        r.add(node(i + 1, j + 1), c);
        r.add(node(i - 1, j + 1), -c);
        r.add(node(i + 1, j - 1), -c);
        r.add(node(i - 1, j - 1), c);
    }
}

void DiscreteDomain::row_dx(int i, int j, Row& r) const {
    Row rt, rn;
    row_dt(i, j, rt);
    row_dn(i, j, rn);
    const int id = node(i, j);
    r.n = 0;
    for (int k = 0; k < rt.n; ++k) r.add(rt.idx[k], rt.w[k] * grad_theta[id].x);
    for (int k = 0; k < rn.n; ++k) r.add(rn.idx[k], rn.w[k] * grad_r[id].x);
}

void DiscreteDomain::row_dy(int i, int j, Row& r) const {
    Row rt, rn;
    row_dt(i, j, rt);
    row_dn(i, j, rn);
    const int id = node(i, j);
    r.n = 0;
    for (int k = 0; k < rt.n; ++k) r.add(rt.idx[k], rt.w[k] * grad_theta[id].y);
    for (int k = 0; k < rn.n; ++k) r.add(rn.idx[k], rn.w[k] * grad_r[id].y);
}

void DiscreteDomain::rows_laplacian(int i, int j, Row out[5]) const {
    const int id = node(i, j);
    row_dtt(i, j, out[0]);
    row_dtn(i, j, out[1]);
    row_dnn(i, j, out[2]);
    row_dt(i, j, out[3]);
    row_dn(i, j, out[4]);
    const double c[5] = {lap_tt[id], lap_tr[id], lap_rr[id], lap_t[id], lap_r[id]};
    for (int k = 0; k < 5; ++k) {
        for (int m = 0; m < out[k].n; ++m) out[k].w[m] *= c[k];
    }
}

void DiscreteDomain::gradient(const Eigen::VectorXd& f, Eigen::VectorXd& fx,
                              Eigen::VectorXd& fy) const {
    fx.resize(num_nodes());
    fy.resize(num_nodes());
    Row rt, rn;
    for (int j = 0; j <= nr; ++j) {
        for (int i = 0; i < nt; ++i) {
            const int id = node(i, j);
            row_dt(i, j, rt);
            row_dn(i, j, rn);
            const double ft = apply_row(rt, f);
            const double fn = apply_row(rn, f);
            fx[id] = grad_theta[id].x * ft + grad_r[id].x * fn;
            fy[id] = grad_theta[id].y * ft + grad_r[id].y * fn;
        }
    }
}

Eigen::VectorXd DiscreteDomain::laplacian(const Eigen::VectorXd& f) const {
    Eigen::VectorXd out(num_nodes());
    Row rows[5];
    for (int j = 0; j <= nr; ++j) {
        for (int i = 0; i < nt; ++i) {
            rows_laplacian(i, j, rows);
            double acc = 0.0;
            for (const auto& r : rows) acc += apply_row(r, f);
            out[node(i, j)] = acc;
        }
    }
    return out;
}

void DiscreteDomain::jacobian(const Eigen::VectorXd& v, std::vector<Mat2>& J) const {
    const int n = num_nodes();
    J.resize(n);
    Row rt, rn;
    for (int j = 0; j <= nr; ++j) {
        for (int i = 0; i < nt; ++i) {
            const int id = node(i, j);
            row_dt(i, j, rt);
            row_dn(i, j, rn);
            double vt[2], vn[2];
            vt[0] = vt[1] = vn[0] = vn[1] = 0.0;
            for (int k = 0; k < rt.n; ++k) {
                vt[0] += rt.w[k] * v[rt.idx[k]];
                vt[1] += rt.w[k] * v[n + rt.idx[k]];
            }
            for (int k = 0; k < rn.n; ++k) {
                vn[0] += rn.w[k] * v[rn.idx[k]];
                vn[1] += rn.w[k] * v[n + rn.idx[k]];
            }
            const Vec2 gt = grad_theta[id], gr = grad_r[id];
            J[id] = Mat2{gt.x * vt[0] + gr.x * vn[0], gt.y * vt[0] + gr.y * vn[0],
                         gt.x * vt[1] + gr.x * vn[1], gt.y * vt[1] + gr.y * vn[1]};
        }
    }
}

double DiscreteDomain::weighted_dot(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
    const int n = num_nodes();
    double acc = 0.0;
    if (f.size() == n) {
        for (int id = 0; id < n; ++id) acc += weight[id] * f[id] * g[id] / frame[id].Q2;
    } else {
        for (int id = 0; id < n; ++id) {
            acc += weight[id] * (f[id] * g[id] + f[n + id] * g[n + id]) / frame[id].Q2;
        }
    }
    return acc;
}

double DiscreteDomain::weighted_norm(const Eigen::VectorXd& f) const {
    return std::sqrt(weighted_dot(f, f));
}

bool DiscreteDomain::locate(const Vec2& p, double i0, double j0, double* ti, double* tj) const {
    double theta = i0 * dtheta;
    double r = (j0 + 0.5) * dr;
    for (int it = 0; it < 50; ++it) {
        Vec2 x, xt, xr, xtt, xtr, xrr;
        map_derivs(theta, r, x, xt, xr, xtt, xtr, xrr);
        const Vec2 res = x - p;
        if (res.norm() < 1e-13 * std::max(1.0, p.norm())) break;
        const double det = xt.cross(xr);
        if (std::abs(det) < 1e-14) return false;
        const double dth = (res.x * xr.y - res.y * xr.x) / det;
        const double drr = (xt.x * res.y - xt.y * res.x) / det;
        theta -= dth;
        r -= drr;
        if (r < 0.05 * dr) r = 0.05 * dr;
        if (r > 1.0 + 2.0 * dr) return false;
    }
    if (r > 1.0 + 1e-9) return false;
    r = std::min(r, 1.0);
    *ti = theta / dtheta;
    *tj = r / dr - 0.5;
    return true;
}

Vec2 DiscreteDomain::map_point(double ti, double tj) const {
    Vec2 x, xt, xr, xtt, xtr, xrr;
    map_derivs(ti * dtheta, (tj + 0.5) * dr, x, xt, xr, xtt, xtr, xrr);
    return x;
}

double DiscreteDomain::interp(const Eigen::VectorXd& f, double ti, double tj) const {
    // Bilinear in (theta, r); below ring 0 the ghost ring across the pole is used.
    double fi = std::floor(ti);
    double ft = ti - fi;
    int i0 = static_cast<int>(fi);
    int j0 = static_cast<int>(std::floor(tj));
    double fr = tj - j0;
    if (j0 >= nr) {
        j0 = nr - 1;
        fr = 1.0;
    }
    const auto value = [&](int i, int j) -> double {
        if (j >= 0) return f[node(i, j)];
        return f[node(i + nt / 2, -1 - j)];  // mirror through the pole
    };
    const double v00 = value(i0, j0), v10 = value(i0 + 1, j0);
    const double v01 = value(i0, j0 + 1), v11 = value(i0 + 1, j0 + 1);
    return (1 - ft) * ((1 - fr) * v00 + fr * v01) + ft * ((1 - fr) * v10 + fr * v11);
}

}  // namespace splash
