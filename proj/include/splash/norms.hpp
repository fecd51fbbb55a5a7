#pragma once

#include <vector>

#include "splash/core.hpp"

namespace splash::norms {

/// Discrete H^s norm of periodic samples on [0, period):
/// (sum_k (1+k^2)^s |c_k|^2 * period)^(1/2) with c_k the Fourier coefficients
/// and k the integer frequency index.
double sobolev_periodic(const std::vector<double>& samples, double s, double period = kTwoPi);

/// Fractional Sobolev norm of a time series on the uniform grid t_j = j*T/(n-1),
/// realized by even reflection to a 2T-periodic signal.
double sobolev_time(const std::vector<double>& series, double s, double T);

/// sup_{t>0} t^(-1/4) |f(t)| over the grid (the t=0 node is skipped).
double linf_quarter(const std::vector<double>& series, double T);

/// Trapezoid L^2-in-time of a per-step quantity.
double l2_time(const std::vector<double>& series, double T);

struct ExponentCheck {
    double s = 0.0;
    int case_id = 0;        // bestiario proof case (2 or 4)
    double q = 0.0, p = 0.0, lambda = 0.0;
    double conjugacy_err = 0.0;  // |1/p + 1/q - 1|
    double side_margin = 0.0;    // s-1 minus the lower bound required of gamma
    bool side_ok = false;
    bool conjugate_ok = false;
};

/// Young-exponent arithmetic from the interpolation lemma, checked exactly.
std::vector<ExponentCheck> bestiario_exponents(double s);

struct ProbeResult {
    std::vector<double> ratios;
    double max_ratio = 0.0;
};

/// ||vw||_{H^0} <= C ||v||_{H^{1/q}} ||w||_{H^{1/p}} on sin(k alpha) families.
ProbeResult probe_product(const std::vector<int>& modes, double p, int grid_n = 1024);

/// || int_0^t v ||_{H^{s+1-eps}} <= C T^eps ||v||_{H^s} for families with v(0)=0.
ProbeResult probe_time_integral(double s, double eps, double T, int grid_n = 512);

}  // namespace splash::norms
