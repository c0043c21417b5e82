#pragma once

#include "rotorbox/config.hpp"

namespace rotorbox {

// Leading-order linear momentum received by the wall, per the single
// reflection accounting: 2 p0 * integral |sin(theta/2) Phi(theta)|^2 dtheta,
// evaluated by quadrature on the rotor grid.
double analytic_p_transfer(const RotorPacket& rotor, double p0);

enum class Evaluation { factored, dense };
std::string to_string(Evaluation e);
Evaluation evaluation_from_string(const std::string& s);

// Sign convention: expectation_p uses p = -i d/dx, under which the imprint
// e^{-2 i p0 x_w} lowers <p> by 2 p0. p_transfer is reported as momentum
// received by the wall, -(p_final - p_initial), so a particle reflecting off
// the right wall pushes it rightward (+2 p0 per reflection event).
struct MomentumReport {
  double p_transfer = 0.0;           // momentum received by the wall (hbar = 1)
  double p_transfer_analytic = 0.0;  // single-reflection accounting
  double p_initial = 0.0;
  double p_final = 0.0;
  double kappa = 0.0;  // measured p_transfer / analytic
  // Effective coefficients the two stamping conventions produce, after the
  // post-selection normalization: N sin^2(eps)/c^2 and N/c^2.
  double kappa_once_reference = 0.0;
  double kappa_period_reference = 0.0;
  double lx_initial = 0.0;
  double lx_final = 0.0;
  double lx_shift = 0.0;
  double p_transfer_left_only = 0.0;  // no spin post-selection
  double lx_shift_left_only = 0.0;
  double prob_left = 0.0;
  double prob_spin_given_left = 0.0;
  double coherence_guard = 0.0;  // |<Psi | down-branch wall packet>|^2
  double phase_budget = 0.0;
  bool budget_warning = false;  // phase budget above 0.1
  double norm_final = 0.0;      // 1 up to the once-per-transit defect
  ReflectionPhase reflection = ReflectionPhase::off;
  Evaluation evaluation = Evaluation::factored;
  ExperimentConfig config;
};

// The 4-factor run |L>|up_z>|Phi>|Psi> over 2N periods with reflection
// phases, post-selected on Left and the x spin. The factored evaluation
// exploits that the dynamics never mixes wall-axis branches and is exact for
// this experiment; the dense evaluation runs the full tensor and is kept as
// the cross-check route (memory-capped).
MomentumReport run_momentum_experiment(const ExperimentConfig& cfg,
                                       Evaluation eval = Evaluation::factored);

struct SweepRow {
  double delta_theta = 0.0;
  double delta_xw = 0.0;
  Index rotor_grid = 0;
  double phase_budget = 0.0;
  bool budget_warning = false;
  double p_transfer = 0.0;
  double lx_shift = 0.0;
};

// Rows of (delta_theta, delta_xw) -> (p_transfer, lx_shift); the rotor grid
// is enlarged per rung so the packet stays resolved. Ladder must be
// monotone decreasing in both parameters.
std::vector<SweepRow> sweep_vanishing(const ExperimentConfig& cfg,
                                      const std::vector<std::pair<double, double>>& ladder);

// Smallest power-of-two grid that resolves a packet of half-width
// delta_theta (about 3.5 samples per sigma), at least `minimum`.
Index resolved_rotor_grid(double delta_theta, Index minimum);

}  // namespace rotorbox
