#include "splash/fftutil.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace splash::fft {

namespace {
// FFTW planning is not thread safe; executions on separate arrays are.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

cvec run(const cvec& in, int sign) {
    const int n = static_cast<int>(in.size());
    cvec out(in.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(
            n,
            reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}
}  // namespace

cvec forward(const cvec& in) { return run(in, FFTW_FORWARD); }

cvec inverse(const cvec& in) {
    cvec out = run(in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= scale;
    return out;
}

cvec coefficients(const std::vector<double>& samples) {
    cvec tmp(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) tmp[i] = samples[i];
    cvec f = forward(tmp);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (auto& v : f) v *= scale;
    return f;
}

int signed_frequency(int k, int n) { return (k <= n / 2) ? k : k - n; }

std::vector<double> derivative(const std::vector<double>& samples, int order,
                               double period) {
    const int n = static_cast<int>(samples.size());
    const double w0 = 2.0 * M_PI / period;
    cvec c(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) c[i] = samples[i];
    c = forward(c);
    for (int k = 0; k < n; ++k) {
        int kk = signed_frequency(k, n);
        if (2 * k == n && (order % 2) == 1) kk = 0;  // odd derivative kills Nyquist
        c[k] *= std::pow(std::complex<double>(0.0, w0 * kk), order);
    }
    cvec vals = inverse(c);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = vals[i].real();
    return out;
}

double interp_value(const cvec& coeff, double x, double period) {
    return interp_derivative(coeff, x, period, 0);
}

double interp_derivative(const cvec& coeff, double x, double period, int order) {
    const int n = static_cast<int>(coeff.size());
    const double w0 = 2.0 * M_PI / period;
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
        int kk = signed_frequency(k, n);
        if (2 * k == n) {
            if (order == 0) {
                // Split the Nyquist mode symmetrically: contributes cos only.
                acc += coeff[k] * std::cos(w0 * kk * x);
                continue;
            }
            continue;
        }
        std::complex<double> phase(0.0, w0 * kk);
        acc += coeff[k] * std::pow(phase, order) *
               std::exp(std::complex<double>(0.0, w0 * kk * x));
    }
    return acc.real();
}

std::vector<double> resample(const std::vector<double>& samples, int m) {
    const int n = static_cast<int>(samples.size());
    cvec c = coefficients(samples);
    cvec cm(m, {0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        const int kk = signed_frequency(k, n);
        if (2 * std::abs(kk) > m) continue;
        if (2 * k == n) {
            // Split Nyquist energy between +/- modes of the finer grid.
            if (m > n) {
                cm[(kk + m) % m] += 0.5 * c[k];
                cm[(m - kk) % m] += 0.5 * c[k];
            } else {
                cm[(kk + m) % m] += c[k];
            }
            continue;
        }
        cm[(kk % m + m) % m] += c[k];
    }
    for (auto& v : cm) v *= static_cast<double>(m);
    cvec vals = inverse(cm);
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) out[i] = vals[i].real();
    return out;
}

}  // namespace splash::fft
