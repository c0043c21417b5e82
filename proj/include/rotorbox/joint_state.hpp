#pragma once

#include <optional>
#include <vector>

#include "rotorbox/packets.hpp"
#include "rotorbox/spin.hpp"
#include "rotorbox/types.hpp"

namespace rotorbox {

struct ParticleMode {
  enum class Kind { left, right, out };
  Kind kind = Kind::left;
  int out_k = 0;  // 1..2N, valid when kind == out

  static ParticleMode left() { return {Kind::left, 0}; }
  static ParticleMode right() { return {Kind::right, 0}; }
  static ParticleMode out(int k) { return {Kind::out, k}; }
};

// Dense amplitude tensor over particle mode x spin(z) x rotor angle x wall
// position, stored in the z spin basis. The particle mode space for a run
// with N rounds is {Left, Right, Out(1..2N)}: 2N+2 modes. Out modes are kept
// explicitly so evolution stays exactly unitary until post-selection.
//
// The Out ladder is stored circularly (the per-period ratchet Out(k) ->
// Out(k+1) is a relabel, not a copy); all public indexing is logical.
class JointState {
 public:
  JointState(int n_rounds, Index rotor_grid, Index wall_grid = 1);

  int n_rounds() const { return n_rounds_; }
  Index mode_count() const { return 2 * n_rounds_ + 2; }
  Index rotor_grid() const { return rotor_grid_; }
  Index wall_grid() const { return wall_grid_; }
  bool has_wall() const { return wall_grid_ > 1; }

  Complex& amp(ParticleMode m, Index spin, Index g, Index p = 0) {
    return data_[flat_index(m, spin, g, p)];
  }
  const Complex& amp(ParticleMode m, Index spin, Index g, Index p = 0) const {
    return data_[flat_index(m, spin, g, p)];
  }

  // Contiguous (rotor x wall) plane for one (mode, spin) pair.
  Eigen::Map<CVec> plane(ParticleMode m, Index spin);
  Eigen::Map<const CVec> plane(ParticleMode m, Index spin) const;

  double norm() const { return data_.norm(); }
  void normalize() { data_ /= data_.norm(); }

  // Ladder bookkeeping for the dynamics layer. advance() relabels
  // Out(k) -> Out(k+1) and hands back the plane pair that becomes Out(1);
  // it throws if Out(2N) is still occupied. retreat() is the inverse relabel.
  void advance_out_ladder();
  void retreat_out_ladder();
  int periods_applied() const { return periods_applied_; }

  CVec& raw() { return data_; }
  const CVec& raw() const { return data_; }

 private:
  Index slot_of(ParticleMode m) const;
  Index flat_index(ParticleMode m, Index spin, Index g, Index p) const {
    return ((slot_of(m) * 2 + spin) * rotor_grid_ + g) * wall_grid_ + p;
  }

  int n_rounds_ = 0;
  Index rotor_grid_ = 0;
  Index wall_grid_ = 1;
  Index out_origin_ = 0;       // physical slot of Out(1) within the ladder
  int periods_applied_ = 0;    // net forward periods; guards Out(2N) overflow
  CVec data_;
};

// |L>|spin> Phi(theta) [Psi(x_w)] product state; unit norm by construction.
JointState make_initial_state(int n_rounds, const Vec2c& spin, const RotorPacket& rotor,
                              const WallPacket* wall = nullptr);

double norm(const JointState& state);

struct ProjectionResult {
  double probability = 0.0;
  JointState reduced;
};

// Measure "particle mode in filter" then "spin = bra"; the reduced state is
// renormalized and re-embedded as |bra> x (contracted amplitudes). Throws
// postselection_failed below kPostselectFloor.
ProjectionResult project(const JointState& state, const std::vector<ParticleMode>& filter,
                         const Vec2c& spin_bra);

// sum over all non-rotor indices of |amplitude|^2, one entry per theta sample.
RVec rotor_marginal(const JointState& state);

// <bra_spin| amplitudes on the Left mode: a theta-vector (no wall) or a
// (theta x wall) matrix. This is the unnormalized post-selection slice.
CVec left_slice(const JointState& state, const Vec2c& spin_bra);
Eigen::MatrixXcd left_slice_matrix(const JointState& state, const Vec2c& spin_bra);

double fidelity(const JointState& a, const JointState& b);

}  // namespace rotorbox
