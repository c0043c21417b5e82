#pragma once

#include <optional>

#include "rotorbox/dynamics.hpp"

namespace rotorbox {

enum class PostSelect { up_x, down_x };

std::string to_string(PostSelect p);
PostSelect postselect_from_string(const std::string& s);
Vec2c postselect_bra(PostSelect p);

struct RotorConfig {
  Index grid = 256;
  double delta_theta = 0.05;
  PacketFamily family = PacketFamily::gaussian;
  double center = 0.0;
};

struct WallConfig {
  Index grid = 1024;
  double extent_factor = 8.0;  // x grid covers [-extent_factor*delta_xw, +...)
  double delta_xw = 0.0;
  double box_momentum = 0.0;
  PacketFamily family = PacketFamily::raised_cosine;
};

struct ExperimentConfig {
  int n_rounds = 100;
  std::optional<double> epsilon_override;  // default pi/(2N)
  RotorConfig rotor;
  std::optional<WallConfig> wall;
  PostSelect postselect = PostSelect::up_x;
  ReflectionPhase reflection = ReflectionPhase::off;
  bool ideal = false;  // up-branch partition opaque: removes finite-eps leakage

  double epsilon() const {
    return epsilon_override.value_or(EIGEN_PI / (2.0 * static_cast<double>(n_rounds)));
  }
  double phase_budget() const {
    if (!wall) return 0.0;
    return 2.0 * n_rounds * wall->box_momentum * wall->delta_xw;
  }
  // epsilon = 0 is allowed as the opaque-partition probe.
  void validate() const;

  RotorPacket rotor_packet() const;
  WallPacket wall_packet() const;
};

// 2N identical rotor-wall periods.
std::vector<PeriodUnitary> uniform_schedule(const ExperimentConfig& cfg);
// Fixed theta=0 walls except the rotor wall during period n (1-based).
std::vector<PeriodUnitary> flux_schedule(const ExperimentConfig& cfg, int n);

}  // namespace rotorbox
