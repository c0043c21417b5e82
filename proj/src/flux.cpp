#include "rotorbox/flux.hpp"

namespace rotorbox {

double analytic_flux(int n_rounds, int n) {
  if (n < 1 || n > 2 * n_rounds) throw std::out_of_range("flux index out of 1..2N");
  const double q = EIGEN_PI / (4.0 * n_rounds);
  return -std::sin((2.0 * n - 1.0) * q) * std::sin(q);
}

double flux_closed_form(int n_rounds, int n) {
  if (n < 1 || n > 2 * n_rounds) throw std::out_of_range("flux index out of 1..2N");
  const double e = EIGEN_PI / (2.0 * n_rounds);
  const double c = survival_amplitude(n_rounds, e);
  return -std::pow(std::cos(e), n - 1) * std::sin(e) * std::sin(n * e) / (2.0 * c);
}

namespace {

struct FluxPoint {
  double delta_lx;
  double prob_left;
  double prob_joint;
};

FluxPoint flux_point(const ExperimentConfig& cfg, int n, const RotorPacket& phi,
                     double lx_initial) {
  JointState st = make_initial_state(cfg.n_rounds, spin::up_z(), phi);
  evolve(st, flux_schedule(cfg, n));
  const double prob_left = st.plane(ParticleMode::left(), 0).squaredNorm() +
                           st.plane(ParticleMode::left(), 1).squaredNorm();
  CVec psi = left_slice(st, postselect_bra(cfg.postselect));
  const double prob_joint = psi.squaredNorm();
  if (prob_joint < kPostselectFloor) throw postselection_failed(prob_left, prob_joint);
  psi /= psi.norm();
  const RotorPacket cond = rotor_from_samples(phi.grid_size, phi.delta_theta, psi);
  return {expectation_lx(cond) - lx_initial, prob_left, prob_joint};
}

}  // namespace

double run_flux_experiment(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  if (cfg.wall) throw std::invalid_argument("flux experiment takes no wall packet");
  const RotorPacket phi = cfg.rotor_packet();
  return flux_point(cfg, n, phi, expectation_lx(phi)).delta_lx;
}

FluxProfile flux_profile(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.wall) throw std::invalid_argument("flux experiment takes no wall packet");
  const RotorPacket phi = cfg.rotor_packet();
  const double lx0 = expectation_lx(phi);
  FluxProfile profile;
  profile.n_rounds = cfg.n_rounds;
  profile.config = cfg;
  const int count = 2 * cfg.n_rounds;
  profile.per_period.reserve(count);
  for (int n = 1; n <= count; ++n) {
    const FluxPoint pt = flux_point(cfg, n, phi, lx0);
    profile.per_period.push_back(pt.delta_lx);
    profile.analytic.push_back(analytic_flux(cfg.n_rounds, n));
    profile.closed_form.push_back(flux_closed_form(cfg.n_rounds, n));
    profile.prob_left.push_back(pt.prob_left);
    profile.prob_spin_given_left.push_back(pt.prob_joint / pt.prob_left);
    profile.total += pt.delta_lx;
  }
  return profile;
}

}  // namespace rotorbox
