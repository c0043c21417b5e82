#pragma once

#include "rotorbox/config.hpp"

namespace rotorbox {

// Leading-order per-period angular-momentum gain of the n-th wall (hbar):
// -sin((2n-1) pi / 4N) * sin(pi / 4N); sums to exactly -1 over n = 1..2N.
double analytic_flux(int n_rounds, int n);

// Finite-eps closed form for the same quantity under the exact dynamics
// (all partition reflections kept):
//   -cos^{n-1}(e) sin(e) sin(n e) / (2 cos^{2N}(e)),
// which sums to -(1+c)/(2c) over n = 1..2N. The ideal-limit run reproduces
// analytic_flux instead.
double flux_closed_form(int n_rounds, int n);

struct FluxProfile {
  int n_rounds = 0;
  std::vector<double> per_period;   // simulated, hbar units, entry n-1
  std::vector<double> analytic;     // analytic_flux column
  std::vector<double> closed_form;  // finite-eps expectation for the physical run
  std::vector<double> prob_left;
  std::vector<double> prob_spin_given_left;
  double total = 0.0;
  ExperimentConfig config;
};

// Delta<L_x> of the single rotor wall present during period n; all other
// periods use a fixed theta=0 wall.
double run_flux_experiment(const ExperimentConfig& cfg, int n);

FluxProfile flux_profile(const ExperimentConfig& cfg);

}  // namespace rotorbox
