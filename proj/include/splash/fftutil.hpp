#pragma once

#include <complex>
#include <vector>

namespace splash::fft {

using cvec = std::vector<std::complex<double>>;

/// Forward DFT, unnormalized: F_k = sum_j f_j exp(-2*pi*i*j*k/N).
cvec forward(const cvec& in);

/// Inverse DFT including the 1/N factor.
cvec inverse(const cvec& in);

/// Coefficients c_k = F_k / N of a real periodic sample set, k = 0..N-1
/// (frequencies k > N/2 alias to k - N).
cvec coefficients(const std::vector<double>& samples);

/// Signed frequency of bin k for length N (k <= N/2 kept, else k - N).
int signed_frequency(int k, int n);

/// Spectral derivative of order `order` of real periodic samples on [0, period).
std::vector<double> derivative(const std::vector<double>& samples, int order,
                               double period);

/// Evaluate the trigonometric interpolant of real samples on [0, period) at x.
double interp_value(const cvec& coeff, double x, double period);

/// Derivative of the trigonometric interpolant at x.
double interp_derivative(const cvec& coeff, double x, double period, int order);

/// Resample real periodic data to m points by trigonometric interpolation.
std::vector<double> resample(const std::vector<double>& samples, int m);

}  // namespace splash::fft
