#include "rotorbox/shift.hpp"

namespace rotorbox {

namespace {

struct EvolvedRun {
  double prob_left;
  double prob_joint;
  RotorPacket conditional;  // normalized post-selected wall state
  RotorPacket initial;
};

EvolvedRun evolve_and_select(const ExperimentConfig& cfg, PostSelect outcome) {
  cfg.validate();
  if (cfg.wall) throw std::invalid_argument("shift experiment takes no wall packet");
  const RotorPacket phi = cfg.rotor_packet();
  JointState st = make_initial_state(cfg.n_rounds, spin::up_z(), phi);
  evolve(st, uniform_schedule(cfg));

  const double prob_left = st.plane(ParticleMode::left(), 0).squaredNorm() +
                           st.plane(ParticleMode::left(), 1).squaredNorm();
  CVec psi = left_slice(st, postselect_bra(outcome));
  const double prob_joint = psi.squaredNorm();
  if (prob_joint < kPostselectFloor) throw postselection_failed(prob_left, prob_joint);
  psi /= psi.norm();
  return {prob_left, prob_joint, rotor_from_samples(phi.grid_size, phi.delta_theta, psi), phi};
}

}  // namespace

double shift_deviation_bound(int n_rounds, double epsilon) {
  const double c = survival_amplitude(n_rounds, epsilon);
  return (1.0 - c) / (2.0 * c);
}

double shift_deviation_bound_leading(int n_rounds, double epsilon) {
  return (1.0 - survival_amplitude(n_rounds, epsilon)) / 2.0;
}

ShiftReport run_shift_experiment(const ExperimentConfig& cfg) {
  const EvolvedRun run = evolve_and_select(cfg, cfg.postselect);
  ShiftReport rep;
  rep.prob_left = run.prob_left;
  rep.prob_spin_given_left = run.prob_joint / run.prob_left;
  rep.lx_initial = expectation_lx(run.initial);
  rep.lx_final = expectation_lx(run.conditional);
  rep.shift = rep.lx_final - rep.lx_initial;
  rep.predicted_bound = shift_deviation_bound(cfg.n_rounds, cfg.epsilon());
  rep.predicted_bound_leading = shift_deviation_bound_leading(cfg.n_rounds, cfg.epsilon());
  rep.config = cfg;
  return rep;
}

RotorPacket conditional_wall_state(const ExperimentConfig& cfg, PostSelect outcome) {
  return evolve_and_select(cfg, outcome).conditional;
}

double backward_check(const ExperimentConfig& cfg) {
  const EvolvedRun run = evolve_and_select(cfg, cfg.postselect);
  // Post-selected joint state |L>|outcome_x>|Phi+>, evolved back to t = 0.
  JointState st(cfg.n_rounds, cfg.rotor.grid);
  const Vec2c ket = postselect_bra(cfg.postselect);
  for (Index s = 0; s < 2; ++s) {
    auto pl = st.plane(ParticleMode::left(), s);
    for (Index g = 0; g < cfg.rotor.grid; ++g) pl[g] = ket[s] * run.conditional.theta_samples[g];
  }
  evolve_adjoint(st, uniform_schedule(cfg));
  CVec chi = left_slice(st, spin::up_z());
  if (chi.squaredNorm() < kPostselectFloor) {
    throw postselection_failed(chi.squaredNorm(), chi.squaredNorm());
  }
  chi /= chi.norm();
  return fidelity(chi, run.initial.theta_samples);
}

}  // namespace rotorbox
