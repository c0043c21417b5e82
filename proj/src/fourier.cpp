#include "rotorbox/fourier.hpp"

#include <unsupported/Eigen/FFT>

namespace rotorbox {

namespace {

CVec fft_forward(const CVec& in) {
  Eigen::FFT<double> fft;
  CVec src = in;
  CVec dst(in.size());
  fft.fwd(dst, src);
  return dst;
}

CVec fft_inverse(const CVec& in) {
  Eigen::FFT<double> fft;
  CVec src = in;
  CVec dst(in.size());
  fft.inv(dst, src);  // includes the 1/n factor
  return dst;
}

}  // namespace

CVec grid_to_modes(const CVec& grid_samples) {
  const Index n = grid_samples.size();
  CVec out = fft_forward(grid_samples) / std::sqrt(static_cast<double>(n));
  // e^{-i m theta_g} = (-1)^m e^{-2 pi i m g / n}; n is even so (-1)^m = (-1)^k.
  for (Index k = 1; k < n; k += 2) out[k] = -out[k];
  return out;
}

CVec modes_to_grid(const CVec& mode_coeffs) {
  const Index n = mode_coeffs.size();
  CVec tmp = mode_coeffs;
  for (Index k = 1; k < n; k += 2) tmp[k] = -tmp[k];
  return fft_inverse(tmp) * std::sqrt(static_cast<double>(n));
}

CVec dft_unitary(const CVec& samples) {
  return fft_forward(samples) / std::sqrt(static_cast<double>(samples.size()));
}

double momentum_expectation(const CVec& samples, double domain) {
  const Index n = samples.size();
  const CVec modes = dft_unitary(samples);
  double num = 0.0, den = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double w = std::norm(modes[k]);
    num += w * (2.0 * EIGEN_PI / domain) * derivative_mode_weight(k, n);
    den += w;
  }
  return num / den;
}

}  // namespace rotorbox
