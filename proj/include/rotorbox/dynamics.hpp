#pragma once

#include <vector>

#include "rotorbox/joint_state.hpp"

namespace rotorbox {

// Where the spin-dependent wall's reflection phase e^{-2 i p0 x_w} lands
// within one period:
//   off              - no phase (wall at a fixed position)
//   once_per_transit - only the Left->Right transmitted branch is stamped
//   per_period       - Left->Right and Right->Right are both stamped (every
//                      period spent on the right side bounces off the wall)
// per_period keeps the induced matrix exactly unitary; once_per_transit is
// unitary only up to O(sin(eps) * |1 - e^{-2 i p0 x}|).
enum class ReflectionPhase { off, once_per_transit, per_period };

std::string to_string(ReflectionPhase m);
ReflectionPhase reflection_phase_from_string(const std::string& s);

// One period T of the conditional box dynamics. Reflection off the left wall
// and the central partition carries no phase; transmission through the
// partition carries i sin(eps); reflection cos(eps).
//
// In the wall-axis spin basis:
//   up branch:   Left -> cos e Left + i sin e Out(1)
//                Right -> i sin e Left + cos e Out(1),  Out(k) -> Out(k+1)
//   down branch: Left -> cos e Left + i sin e phi Right
//                Right -> i sin e Left + cos e [phi] Right, Out(k) -> Out(k+1)
// with phi = e^{-2 i p0 x_w} per the reflection mode.
//
// up_branch_transparent replaces the up-branch partition by an opaque one
// (Left -> Left exactly): the ideal-limit device that removes the cos^{2N}
// survival factor and the escaped modes from the transparent branch.
struct PeriodUnitary {
  double epsilon = 0.0;
  bool wall_angle_conditioned = true;  // rotor wall; false = fixed theta=0 wall
  ReflectionPhase reflection = ReflectionPhase::off;
  double box_momentum = 0.0;
  double wall_extent = 0.0;  // x-grid half length; needed to sample the phases
  bool up_branch_transparent = false;
};

// Single-period map and its adjoint; state enters and leaves in the z basis.
void apply_period(JointState& state, const PeriodUnitary& u);
void apply_period_adjoint(JointState& state, const PeriodUnitary& u);

// Left-to-right composition. Consecutive periods sharing the same wall
// conditioning are run inside one spin-basis session, so fixed-angle runs
// pay for two basis rotations total.
void evolve(JointState& state, const std::vector<PeriodUnitary>& schedule);
void evolve_adjoint(JointState& state, const std::vector<PeriodUnitary>& schedule);

// cos^{2N}(eps): amplitude remaining on Left for the transparent-wall branch
// after 2N periods (analytic oracle).
double survival_amplitude(int n_rounds, double epsilon);

// Dense (2M x 2M) matrix of one period at fixed wall angle theta and wall
// position x, ordering (mode, spin). Exercises the same branch maps; used by
// the unitarity and basis-sandwich checks.
Eigen::MatrixXcd build_period_matrix(const PeriodUnitary& u, double theta, double x,
                                     int n_rounds);

}  // namespace rotorbox
