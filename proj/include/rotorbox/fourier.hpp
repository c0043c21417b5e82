#pragma once

#include "rotorbox/types.hpp"

namespace rotorbox {

// Uniform periodic grids used throughout:
//   rotor angle  theta_g = -pi + 2*pi*g/G,  g = 0..G-1
//   wall position x_p    = -X  + 2*X *p/P,  p = 0..P-1
// Mode views use standard wavenumber ordering: entry k holds integer mode
// m(k) = k for k < n/2 and k - n otherwise.

inline Index mode_number(Index k, Index n) { return k < n / 2 ? k : k - n; }

// First-derivative mode weight. The unpaired Nyquist mode -n/2 carries no
// partner at +n/2, so odd operators (momentum, angular momentum) take its
// symmetrized weight 0; this keeps them self-adjoint on the grid and makes
// real symmetric packets give exactly zero.
inline double derivative_mode_weight(Index k, Index n) {
  const Index m = mode_number(k, n);
  return 2 * m == -n ? 0.0 : static_cast<double>(m);
}

inline double theta_at(Index g, Index grid_size) {
  return -EIGEN_PI + 2.0 * EIGEN_PI * static_cast<double>(g) / static_cast<double>(grid_size);
}

inline double wall_x_at(Index p, Index grid_size, double extent) {
  return -extent + 2.0 * extent * static_cast<double>(p) / static_cast<double>(grid_size);
}

// Unitary transform to integer-mode coefficients of e^{i m theta} on the
// rotor grid: out[k] = (1/sqrt(G)) sum_g in[g] e^{-i m(k) theta_g}.
// Multiplying grid samples by e^{-i theta} is an exact cyclic shift of this
// view by one mode (m -> m+1 reads from m).
CVec grid_to_modes(const CVec& grid_samples);
CVec modes_to_grid(const CVec& mode_coeffs);

// Plain unitary DFT used for the wall packet (no angular phase convention):
// out[k] = (1/sqrt(P)) sum_p in[p] e^{-2*pi*i*k*p/P}.
CVec dft_unitary(const CVec& samples);

// <f|  -i d/dx |f> / <f|f> on a periodic grid of full length `domain`,
// evaluated in the mode view; `domain` = 2*pi for the rotor, 2*X for the wall.
double momentum_expectation(const CVec& samples, double domain);

}  // namespace rotorbox
