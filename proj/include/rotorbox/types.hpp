#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rotorbox {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Tolerance budget for double precision at grid sizes up to 4096.
inline constexpr double kUnitaryTol = 1e-10;    // norm preservation across schedules
inline constexpr double kQuadratureTol = 1e-10; // agreement between grid and Fourier routes
inline constexpr double kIdentityTol = 1e-12;   // exact identities (Parseval, mode shifts)
inline constexpr double kPostselectFloor = 1e-30;

// Post-selection produced an amplitude below kPostselectFloor: the requested
// outcome is incompatible with the evolved state, as opposed to merely small.
class postselection_failed : public std::runtime_error {
 public:
  postselection_failed(double prob_left, double prob_outcome)
      : std::runtime_error("post-selection failed: P(left)=" + std::to_string(prob_left) +
                           ", P(outcome)=" + std::to_string(prob_outcome)),
        prob_left_(prob_left),
        prob_outcome_(prob_outcome) {}
  double prob_left() const { return prob_left_; }
  double prob_outcome() const { return prob_outcome_; }

 private:
  double prob_left_;
  double prob_outcome_;
};

// Configuration violates the regime the model is valid in (phase budget > 1).
class model_validity_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rotorbox
