#include "rotorbox/config.hpp"

namespace rotorbox {

std::string to_string(PostSelect p) { return p == PostSelect::up_x ? "up_x" : "down_x"; }

PostSelect postselect_from_string(const std::string& s) {
  if (s == "up_x" || s == "up-x") return PostSelect::up_x;
  if (s == "down_x" || s == "down-x") return PostSelect::down_x;
  throw std::invalid_argument("unknown post-selection outcome: " + s);
}

Vec2c postselect_bra(PostSelect p) {
  return p == PostSelect::up_x ? spin::up_x() : spin::down_x();
}

void ExperimentConfig::validate() const {
  if (n_rounds < 2) throw std::invalid_argument("n_rounds must be >= 2");
  const double eps = epsilon();
  if (eps < 0.0 || eps > EIGEN_PI / 4) {
    throw std::invalid_argument("epsilon must lie in [0, pi/4]");
  }
  if (rotor.delta_theta <= 0.0 || rotor.delta_theta > EIGEN_PI / 8) {
    throw std::invalid_argument("delta_theta must lie in (0, pi/8]");
  }
  if (rotor.grid < 2 || (rotor.grid & (rotor.grid - 1)) != 0) {
    throw std::invalid_argument("rotor grid must be a power of two");
  }
  if (wall) {
    if (wall->delta_xw <= 0.0) throw std::invalid_argument("delta_xw must be positive");
    if (wall->extent_factor < 2.0) throw std::invalid_argument("extent factor must be >= 2");
    if (wall->box_momentum < 0.0) throw std::invalid_argument("box momentum must be >= 0");
    if (phase_budget() > 1.0) {
      throw model_validity_error("phase budget 2*N*p0*delta_xw = " +
                                 std::to_string(phase_budget()) +
                                 " exceeds 1: interference model invalid");
    }
  }
}

RotorPacket ExperimentConfig::rotor_packet() const {
  return make_rotor_packet(rotor.grid, rotor.delta_theta, rotor.family, rotor.center);
}

WallPacket ExperimentConfig::wall_packet() const {
  if (!wall) throw std::logic_error("config has no wall packet");
  return make_wall_packet(wall->grid, wall->extent_factor * wall->delta_xw, wall->delta_xw,
                          wall->box_momentum, wall->family);
}

namespace {

PeriodUnitary base_period(const ExperimentConfig& cfg) {
  PeriodUnitary u;
  u.epsilon = cfg.epsilon();
  u.wall_angle_conditioned = true;
  u.up_branch_transparent = cfg.ideal;
  if (cfg.wall) {
    u.reflection = cfg.reflection;
    u.box_momentum = cfg.wall->box_momentum;
    u.wall_extent = cfg.wall->extent_factor * cfg.wall->delta_xw;
  }
  return u;
}

}  // namespace

std::vector<PeriodUnitary> uniform_schedule(const ExperimentConfig& cfg) {
  return std::vector<PeriodUnitary>(2 * cfg.n_rounds, base_period(cfg));
}

std::vector<PeriodUnitary> flux_schedule(const ExperimentConfig& cfg, int n) {
  if (n < 1 || n > 2 * cfg.n_rounds) throw std::out_of_range("flux wall index out of 1..2N");
  auto sched = uniform_schedule(cfg);
  for (int j = 0; j < 2 * cfg.n_rounds; ++j) sched[j].wall_angle_conditioned = (j + 1 == n);
  return sched;
}

}  // namespace rotorbox
