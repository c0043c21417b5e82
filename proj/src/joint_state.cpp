#include "rotorbox/joint_state.hpp"

namespace rotorbox {

JointState::JointState(int n_rounds, Index rotor_grid, Index wall_grid)
    : n_rounds_(n_rounds), rotor_grid_(rotor_grid), wall_grid_(wall_grid) {
  if (n_rounds < 1) throw std::invalid_argument("n_rounds must be >= 1");
  if (rotor_grid < 1 || wall_grid < 1) throw std::invalid_argument("bad grid sizes");
  data_ = CVec::Zero(mode_count() * 2 * rotor_grid_ * wall_grid_);
}

Index JointState::slot_of(ParticleMode m) const {
  switch (m.kind) {
    case ParticleMode::Kind::left:
      return 0;
    case ParticleMode::Kind::right:
      return 1;
    case ParticleMode::Kind::out: {
      const int ladder = 2 * n_rounds_;
      if (m.out_k < 1 || m.out_k > ladder) throw std::out_of_range("Out index out of range");
      return 2 + (out_origin_ + m.out_k - 1) % ladder;
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::Map<CVec> JointState::plane(ParticleMode m, Index spin) {
  const Index len = rotor_grid_ * wall_grid_;
  return {data_.data() + (slot_of(m) * 2 + spin) * len, len};
}

Eigen::Map<const CVec> JointState::plane(ParticleMode m, Index spin) const {
  const Index len = rotor_grid_ * wall_grid_;
  return {data_.data() + (slot_of(m) * 2 + spin) * len, len};
}

void JointState::advance_out_ladder() {
  const int ladder = 2 * n_rounds_;
  // Relabel Out(k) -> Out(k+1): the slot that held Out(2N) becomes Out(1), to
  // be overwritten by the caller. Occupied Out(2N) means the schedule ran past
  // the 2N periods the mode space covers.
  if (plane(ParticleMode::out(ladder), 0).squaredNorm() != 0.0 ||
      plane(ParticleMode::out(ladder), 1).squaredNorm() != 0.0) {
    throw std::domain_error("Out(2N) would overflow: schedule longer than 2N periods");
  }
  out_origin_ = (out_origin_ + ladder - 1) % ladder;
  ++periods_applied_;
}

void JointState::retreat_out_ladder() {
  const int ladder = 2 * n_rounds_;
  out_origin_ = (out_origin_ + 1) % ladder;
  --periods_applied_;
}

JointState make_initial_state(int n_rounds, const Vec2c& spin, const RotorPacket& rotor,
                              const WallPacket* wall) {
  const Index wall_grid = wall != nullptr ? wall->grid_size : 1;
  JointState st(n_rounds, rotor.grid_size, wall_grid);
  for (Index s = 0; s < 2; ++s) {
    if (spin[s] == Complex{0.0, 0.0}) continue;
    auto pl = st.plane(ParticleMode::left(), s);
    for (Index g = 0; g < rotor.grid_size; ++g) {
      const Complex base = spin[s] * rotor.theta_samples[g];
      if (wall != nullptr) {
        for (Index p = 0; p < wall_grid; ++p) pl[g * wall_grid + p] = base * wall->x_samples[p];
      } else {
        pl[g] = base;
      }
    }
  }
  return st;
}

double norm(const JointState& state) { return state.norm(); }

ProjectionResult project(const JointState& state, const std::vector<ParticleMode>& filter,
                         const Vec2c& spin_bra) {
  if (std::abs(spin_bra.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("project: spin bra must be unit norm");
  }
  JointState reduced(state.n_rounds(), state.rotor_grid(), state.wall_grid());
  double prob = 0.0;
  for (const ParticleMode& m : filter) {
    auto p0 = state.plane(m, 0);
    auto p1 = state.plane(m, 1);
    auto r0 = reduced.plane(m, 0);
    auto r1 = reduced.plane(m, 1);
    for (Index i = 0; i < p0.size(); ++i) {
      const Complex contracted = std::conj(spin_bra[0]) * p0[i] + std::conj(spin_bra[1]) * p1[i];
      prob += std::norm(contracted);
      r0[i] = spin_bra[0] * contracted;
      r1[i] = spin_bra[1] * contracted;
    }
  }
  if (prob < kPostselectFloor) throw postselection_failed(prob, prob);
  reduced.raw() /= std::sqrt(prob);
  return {prob, std::move(reduced)};
}

RVec rotor_marginal(const JointState& state) {
  const Index G = state.rotor_grid();
  const Index P = state.wall_grid();
  RVec out = RVec::Zero(G);
  for (Index slot = 0; slot < state.mode_count(); ++slot) {
    const ParticleMode m = slot == 0   ? ParticleMode::left()
                           : slot == 1 ? ParticleMode::right()
                                       : ParticleMode::out(static_cast<int>(slot) - 1);
    for (Index s = 0; s < 2; ++s) {
      auto pl = state.plane(m, s);
      for (Index g = 0; g < G; ++g) {
        double acc = 0.0;
        for (Index p = 0; p < P; ++p) acc += std::norm(pl[g * P + p]);
        out[g] += acc;
      }
    }
  }
  return out;
}

CVec left_slice(const JointState& state, const Vec2c& spin_bra) {
  if (state.has_wall()) throw std::invalid_argument("left_slice: state has a wall dimension");
  auto p0 = state.plane(ParticleMode::left(), 0);
  auto p1 = state.plane(ParticleMode::left(), 1);
  CVec out(state.rotor_grid());
  for (Index g = 0; g < out.size(); ++g) {
    out[g] = std::conj(spin_bra[0]) * p0[g] + std::conj(spin_bra[1]) * p1[g];
  }
  return out;
}

Eigen::MatrixXcd left_slice_matrix(const JointState& state, const Vec2c& spin_bra) {
  const Index G = state.rotor_grid();
  const Index P = state.wall_grid();
  auto p0 = state.plane(ParticleMode::left(), 0);
  auto p1 = state.plane(ParticleMode::left(), 1);
  Eigen::MatrixXcd out(G, P);
  for (Index g = 0; g < G; ++g) {
    for (Index p = 0; p < P; ++p) {
      out(g, p) =
          std::conj(spin_bra[0]) * p0[g * P + p] + std::conj(spin_bra[1]) * p1[g * P + p];
    }
  }
  return out;
}

double fidelity(const JointState& a, const JointState& b) {
  if (a.n_rounds() != b.n_rounds() || a.rotor_grid() != b.rotor_grid() ||
      a.wall_grid() != b.wall_grid()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  Complex acc = 0.0;
  for (Index slot = 0; slot < a.mode_count(); ++slot) {
    const ParticleMode m = slot == 0   ? ParticleMode::left()
                           : slot == 1 ? ParticleMode::right()
                                       : ParticleMode::out(static_cast<int>(slot) - 1);
    for (Index s = 0; s < 2; ++s) {
      acc += a.plane(m, s).dot(b.plane(m, s));
    }
  }
  return std::norm(acc);
}

}  // namespace rotorbox
