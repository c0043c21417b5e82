#pragma once

#include "rotorbox/config.hpp"

namespace rotorbox {

// End-to-end angular-momentum-shift experiment: evolve |L>|up_z>|Phi> for 2N
// periods, post-select the particle on Left and the spin along x, and read
// the wall's <L_x> change.
struct ShiftReport {
  double prob_left = 0.0;
  double prob_spin_given_left = 0.0;
  double lx_initial = 0.0;  // hbar
  double lx_final = 0.0;    // hbar
  double shift = 0.0;       // lx_final - lx_initial
  // Closed-form deviation of |shift| from 1 at delta_theta -> 0:
  // (1-c)/(2c) with c = cos^{2N}(eps); the leading estimate is (1-c)/2.
  double predicted_bound = 0.0;
  double predicted_bound_leading = 0.0;
  ExperimentConfig config;
};

ShiftReport run_shift_experiment(const ExperimentConfig& cfg);

// Normalized post-selected wall state; equals e^{-i theta} Phi (up_x) or
// e^{+i theta} Phi (down_x) in the ideal limit.
RotorPacket conditional_wall_state(const ExperimentConfig& cfg, PostSelect outcome);

// Evolve the post-selected state backwards through the inverse schedule,
// project onto the pre-selected |L>|up_z>, and return the fidelity of the
// conditioned initial wall state with Phi.
double backward_check(const ExperimentConfig& cfg);

double shift_deviation_bound(int n_rounds, double epsilon);          // (1-c)/(2c)
double shift_deviation_bound_leading(int n_rounds, double epsilon);  // (1-c)/2

}  // namespace rotorbox
