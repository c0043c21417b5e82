#include "rotorbox/dynamics.hpp"

#include <cmath>

namespace rotorbox {

namespace {

constexpr Index kUp = 0;
constexpr Index kDown = 1;

ParticleMode mode_at_slot(Index slot) {
  return slot == 0   ? ParticleMode::left()
         : slot == 1 ? ParticleMode::right()
                     : ParticleMode::out(static_cast<int>(slot) - 1);
}

// z <-> wall-axis spin basis for every particle mode.
// wall-axis coeffs = [[c2, i s2],[i s2, c2]] * z coeffs (see spin.hpp).
void rotate_spin_basis(JointState& st, bool to_theta) {
  const Index G = st.rotor_grid();
  const Index P = st.wall_grid();
  CVec tmp(P);
  for (Index slot = 0; slot < st.mode_count(); ++slot) {
    const ParticleMode m = mode_at_slot(slot);
    auto a = st.plane(m, kUp);
    auto b = st.plane(m, kDown);
    for (Index g = 0; g < G; ++g) {
      const double c2 = std::cos(theta_at(g, G) / 2);
      const Complex is2 = kI * std::sin(theta_at(g, G) / 2);
      auto sa = a.segment(g * P, P);
      auto sb = b.segment(g * P, P);
      if (to_theta) {
        tmp = c2 * sa + is2 * sb;
        sb = is2 * sa + c2 * sb;
      } else {
        tmp = c2 * sa - is2 * sb;
        sb = -is2 * sa + c2 * sb;
      }
      sa = tmp;
    }
  }
}

bool needs_phases(const PeriodUnitary& u, const JointState& st) {
  return u.reflection != ReflectionPhase::off && u.box_momentum != 0.0 && st.has_wall();
}

CVec make_phases(const PeriodUnitary& u, Index wall_grid) {
  CVec ph(wall_grid);
  for (Index p = 0; p < wall_grid; ++p) {
    ph[p] = std::exp(-2.0 * kI * u.box_momentum * wall_x_at(p, wall_grid, u.wall_extent));
  }
  return ph;
}

// Branch maps; the state must already be expressed in the basis of this
// period's wall (z for a fixed wall, wall-axis basis for the rotor wall).
void branch_maps_forward(JointState& st, const PeriodUnitary& u, const CVec* phases) {
  const double c = std::cos(u.epsilon), s = std::sin(u.epsilon);
  const double cu = u.up_branch_transparent ? 1.0 : c;
  const double su = u.up_branch_transparent ? 0.0 : s;
  const Index G = st.rotor_grid();
  const Index P = st.wall_grid();

  st.advance_out_ladder();
  auto l0 = st.plane(ParticleMode::left(), kUp);
  auto l1 = st.plane(ParticleMode::left(), kDown);
  auto r0 = st.plane(ParticleMode::right(), kUp);
  auto r1 = st.plane(ParticleMode::right(), kDown);
  auto o0 = st.plane(ParticleMode::out(1), kUp);
  auto o1 = st.plane(ParticleMode::out(1), kDown);

  o0 = kI * su * l0 + cu * r0;
  o1.setZero();
  l0 = cu * l0 + kI * su * r0;
  r0.setZero();

  if (phases == nullptr) {
    CVec tmp = l1;
    l1 = c * tmp + kI * s * r1;
    r1 = kI * s * tmp + c * r1;
    return;
  }
  const bool stamp_stay = u.reflection == ReflectionPhase::per_period;
  CVec tmp(P);
  for (Index g = 0; g < G; ++g) {
    auto sl = l1.segment(g * P, P);
    auto sr = r1.segment(g * P, P);
    tmp = sl;
    sl = c * tmp + kI * s * sr;
    if (stamp_stay) {
      sr = phases->cwiseProduct((kI * s * tmp + c * sr).eval());
    } else {
      sr = kI * s * phases->cwiseProduct(tmp) + c * sr;
    }
  }
}

void branch_maps_adjoint(JointState& st, const PeriodUnitary& u, const CVec* phases) {
  const double c = std::cos(u.epsilon), s = std::sin(u.epsilon);
  const double cu = u.up_branch_transparent ? 1.0 : c;
  const double su = u.up_branch_transparent ? 0.0 : s;
  const Index G = st.rotor_grid();
  const Index P = st.wall_grid();

  auto l0 = st.plane(ParticleMode::left(), kUp);
  auto l1 = st.plane(ParticleMode::left(), kDown);
  auto r0 = st.plane(ParticleMode::right(), kUp);
  auto r1 = st.plane(ParticleMode::right(), kDown);
  auto o0 = st.plane(ParticleMode::out(1), kUp);

  // Up branch: Out(1) flows back into (L, R); afterwards the Out(1) slot is
  // relabelled to the ladder top and inherits the old R amplitude (adjoint of
  // the unitary completion column).
  CVec tmp = l0;
  l0 = cu * tmp - kI * su * o0;
  CVec new_r0 = -kI * su * tmp + cu * o0;
  o0 = r0;
  r0 = new_r0;

  if (phases == nullptr) {
    tmp = l1;
    l1 = c * tmp - kI * s * r1;
    r1 = -kI * s * tmp + c * r1;
  } else {
    const bool stamp_stay = u.reflection == ReflectionPhase::per_period;
    CVec seg(P);
    for (Index g = 0; g < G; ++g) {
      auto sl = l1.segment(g * P, P);
      auto sr = r1.segment(g * P, P);
      seg = sl;
      sl = c * seg - kI * s * phases->conjugate().cwiseProduct(sr);
      if (stamp_stay) {
        sr = -kI * s * seg + c * phases->conjugate().cwiseProduct(sr);
      } else {
        sr = -kI * s * seg + c * sr;
      }
    }
  }
  st.retreat_out_ladder();
}

}  // namespace

std::string to_string(ReflectionPhase m) {
  switch (m) {
    case ReflectionPhase::off:
      return "off";
    case ReflectionPhase::once_per_transit:
      return "once-per-transit";
    case ReflectionPhase::per_period:
      return "per-period";
  }
  return "?";
}

ReflectionPhase reflection_phase_from_string(const std::string& s) {
  if (s == "off") return ReflectionPhase::off;
  if (s == "once-per-transit" || s == "once_per_transit") return ReflectionPhase::once_per_transit;
  if (s == "per-period" || s == "per_period") return ReflectionPhase::per_period;
  throw std::invalid_argument("unknown reflection mode: " + s);
}

void apply_period(JointState& state, const PeriodUnitary& u) {
  CVec ph;
  const CVec* php = nullptr;
  if (needs_phases(u, state)) {
    ph = make_phases(u, state.wall_grid());
    php = &ph;
  }
  if (u.wall_angle_conditioned) rotate_spin_basis(state, true);
  branch_maps_forward(state, u, php);
  if (u.wall_angle_conditioned) rotate_spin_basis(state, false);
}

void apply_period_adjoint(JointState& state, const PeriodUnitary& u) {
  CVec ph;
  const CVec* php = nullptr;
  if (needs_phases(u, state)) {
    ph = make_phases(u, state.wall_grid());
    php = &ph;
  }
  if (u.wall_angle_conditioned) rotate_spin_basis(state, true);
  branch_maps_adjoint(state, u, php);
  if (u.wall_angle_conditioned) rotate_spin_basis(state, false);
}

namespace {

template <typename Step>
void run_schedule(JointState& state, const std::vector<PeriodUnitary>& schedule, bool reversed,
                  Step step) {
  bool in_theta = false;
  const auto session = [&](const PeriodUnitary& u) {
    if (u.wall_angle_conditioned && !in_theta) {
      rotate_spin_basis(state, true);
      in_theta = true;
    } else if (!u.wall_angle_conditioned && in_theta) {
      rotate_spin_basis(state, false);
      in_theta = false;
    }
    CVec ph;
    const CVec* php = nullptr;
    if (needs_phases(u, state)) {
      ph = make_phases(u, state.wall_grid());
      php = &ph;
    }
    step(u, php);
  };
  if (reversed) {
    for (auto it = schedule.rbegin(); it != schedule.rend(); ++it) session(*it);
  } else {
    for (const auto& u : schedule) session(u);
  }
  if (in_theta) rotate_spin_basis(state, false);
}

}  // namespace

void evolve(JointState& state, const std::vector<PeriodUnitary>& schedule) {
  run_schedule(state, schedule, false,
               [&](const PeriodUnitary& u, const CVec* ph) { branch_maps_forward(state, u, ph); });
}

void evolve_adjoint(JointState& state, const std::vector<PeriodUnitary>& schedule) {
  run_schedule(state, schedule, true,
               [&](const PeriodUnitary& u, const CVec* ph) { branch_maps_adjoint(state, u, ph); });
}

double survival_amplitude(int n_rounds, double epsilon) {
  if (n_rounds < 1) throw std::invalid_argument("n_rounds must be >= 1");
  return std::pow(std::cos(epsilon), 2 * n_rounds);
}

Eigen::MatrixXcd build_period_matrix(const PeriodUnitary& u, double theta, double x,
                                     int n_rounds) {
  const Index modes = 2 * n_rounds + 2;
  const Index dim = 2 * modes;  // (mode, spin), spin fastest
  const double c = std::cos(u.epsilon), s = std::sin(u.epsilon);
  const double cu = u.up_branch_transparent ? 1.0 : c;
  const double su = u.up_branch_transparent ? 0.0 : s;
  const double eff_theta = u.wall_angle_conditioned ? theta : 0.0;
  Complex phi = 1.0;
  if (u.reflection != ReflectionPhase::off) phi = std::exp(-2.0 * kI * u.box_momentum * x);
  const bool stamp_stay = u.reflection == ReflectionPhase::per_period;

  const auto apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w = v;
    const double c2 = std::cos(eff_theta / 2);
    const Complex is2 = kI * std::sin(eff_theta / 2);
    for (Index m = 0; m < modes; ++m) {
      const Complex a = w[2 * m], b = w[2 * m + 1];
      w[2 * m] = c2 * a + is2 * b;
      w[2 * m + 1] = is2 * a + c2 * b;
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    const Index L = 0, R = 1;
    const auto O = [&](int k) { return Index(1 + k); };
    // up branch
    out[2 * L] = cu * w[2 * L] + kI * su * w[2 * R];
    out[2 * O(1)] = kI * su * w[2 * L] + cu * w[2 * R];
    for (int k = 1; k < 2 * n_rounds; ++k) out[2 * O(k + 1)] += w[2 * O(k)];
    out[2 * R] += w[2 * O(2 * n_rounds)];  // unitary completion, unreachable
    // down branch
    out[2 * L + 1] = c * w[2 * L + 1] + kI * s * w[2 * R + 1];
    out[2 * R + 1] = kI * s * phi * w[2 * L + 1] + (stamp_stay ? c * phi : c) * w[2 * R + 1];
    for (int k = 1; k < 2 * n_rounds; ++k) out[2 * O(k + 1) + 1] += w[2 * O(k) + 1];
    out[2 * O(1) + 1] += w[2 * O(2 * n_rounds) + 1];  // cyclic completion
    for (Index m = 0; m < modes; ++m) {
      const Complex a = out[2 * m], b = out[2 * m + 1];
      out[2 * m] = c2 * a - is2 * b;
      out[2 * m + 1] = -is2 * a + c2 * b;
    }
    return out;
  };

  Eigen::MatrixXcd mat(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e[j] = 1.0;
    mat.col(j) = apply(e);
  }
  return mat;
}

}  // namespace rotorbox
