#include "splash/norms.hpp"

#include <cmath>

#include "splash/fftutil.hpp"

namespace splash::norms {

double sobolev_periodic(const std::vector<double>& samples, double s, double period) {
    const auto c = fft::coefficients(samples);
    const int n = static_cast<int>(c.size());
    const double w0 = kTwoPi / period;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double freq = w0 * fft::signed_frequency(k, n);
        acc += std::pow(1.0 + freq * freq, s) * std::norm(c[k]);
    }
    return std::sqrt(acc * period);
}

double sobolev_time(const std::vector<double>& series, double s, double T) {
    const int n = static_cast<int>(series.size());
    if (n < 2) return 0.0;
    // Even reflection to a 2T-periodic signal; half of its squared norm.
    std::vector<double> ext(2 * (n - 1));
    for (int i = 0; i < n - 1; ++i) ext[i] = series[i];
    for (int i = 0; i < n - 1; ++i) ext[n - 1 + i] = series[n - 1 - i];
    const double norm_ext = sobolev_periodic(ext, s, 2.0 * T);
    return norm_ext / std::sqrt(2.0);
}

double linf_quarter(const std::vector<double>& series, double T) {
    const int n = static_cast<int>(series.size());
    double best = 0.0;
    for (int i = 1; i < n; ++i) {
        const double t = T * i / (n - 1);
        best = std::max(best, std::abs(series[i]) / std::pow(t, 0.25));
    }
    return best;
}

double l2_time(const std::vector<double>& series, double T) {
    const int n = static_cast<int>(series.size());
    if (n < 2) return 0.0;
    const double dt = T / (n - 1);
    double acc = 0.5 * (series[0] * series[0] + series[n - 1] * series[n - 1]);
    for (int i = 1; i < n - 1; ++i) acc += series[i] * series[i];
    return std::sqrt(acc * dt);
}

std::vector<ExponentCheck> bestiario_exponents(double s) {
    if (!(s > 2.0 && s < 2.5)) {
        throw Error("OutOfRange", "exponent arithmetic requires 2 < s < 2.5");
    }
    std::vector<ExponentCheck> out;
    {
        ExponentCheck c;
        c.s = s;
        c.case_id = 2;
        c.q = 4.0 / (s + 1.0);
        c.p = 4.0 / (3.0 - s);
        c.lambda = (s + 1.0) * (3.0 - s) / 4.0;
        c.conjugacy_err = std::abs(1.0 / c.p + 1.0 / c.q - 1.0);
        // gamma must satisfy (1-lambda) q < gamma < s-1; feasible iff s > 1.
        const double lower = (1.0 - c.lambda) * c.q;
        c.side_margin = (s - 1.0) - lower;
        c.side_ok = (s > 1.0) && (c.side_margin > 0.0);
        c.conjugate_ok = c.conjugacy_err < 1e-14;
        out.push_back(c);
    }
    {
        ExponentCheck c;
        c.s = s;
        c.case_id = 4;
        c.q = 4.0 / (s - 0.5);
        c.p = 4.0 / (4.5 - s);
        c.lambda = (s + 1.0) * (9.0 - 2.0 * s) / 16.0;
        c.conjugacy_err = std::abs(1.0 / c.p + 1.0 / c.q - 1.0);
        // gamma must satisfy 2 (1-lambda) q < gamma < s-1; feasible iff s > 3/2.
        const double lower = 2.0 * (1.0 - c.lambda) * c.q;
        c.side_margin = (s - 1.0) - lower;
        c.side_ok = (s > 1.5) && (c.side_margin > 0.0);
        c.conjugate_ok = c.conjugacy_err < 1e-14;
        out.push_back(c);
    }
    return out;
}

ProbeResult probe_product(const std::vector<int>& modes, double p, int grid_n) {
    const double q = p / (p - 1.0);
    ProbeResult res;
    for (int k : modes) {
        std::vector<double> v(grid_n), w(grid_n);
        for (int i = 0; i < grid_n; ++i) {
            const double a = kTwoPi * i / grid_n;
            v[i] = std::sin(k * a);
            w[i] = std::sin((k + 1) * a);
        }
        std::vector<double> vw(grid_n);
        for (int i = 0; i < grid_n; ++i) vw[i] = v[i] * w[i];
        const double lhs = sobolev_periodic(vw, 0.0);
        const double rhs = sobolev_periodic(v, 1.0 / q) * sobolev_periodic(w, 1.0 / p);
        res.ratios.push_back(lhs / rhs);
    }
    for (double r : res.ratios) res.max_ratio = std::max(res.max_ratio, r);
    return res;
}

ProbeResult probe_time_integral(double s, double eps, double T, int grid_n) {
    ProbeResult res;
    for (int k = 1; k <= 8; ++k) {
        std::vector<double> v(grid_n), V(grid_n, 0.0);
        const double dt = T / (grid_n - 1);
        for (int i = 0; i < grid_n; ++i) {
            const double t = i * dt;
            v[i] = std::sin(kTwoPi * k * t / T) * t / T;  // v(0) = 0
        }
        for (int i = 1; i < grid_n; ++i) V[i] = V[i - 1] + 0.5 * dt * (v[i - 1] + v[i]);
        const double lhs = sobolev_time(V, s + 1.0 - eps, T);
        const double rhs = std::pow(T, eps) * sobolev_time(v, s, T);
        res.ratios.push_back(lhs / rhs);
    }
    for (double r : res.ratios) res.max_ratio = std::max(res.max_ratio, r);
    return res;
}

}  // namespace splash::norms
