#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rotorbox/config.hpp"
#include "rotorbox/joint_state.hpp"

using namespace rotorbox;

namespace {

JointState left_up_state(int n_rounds, Index grid = 2, Index wall_grid = 1,
                         const WallPacket* wall = nullptr) {
  // delta-like rotor content on a tiny grid: the fixed-wall map ignores theta
  const RotorPacket stub = rotor_from_samples(grid, EIGEN_PI, CVec::Constant(grid, 1.0));
  return make_initial_state(n_rounds, spin::up_z(), stub, wall);
}

PeriodUnitary fixed_wall(double eps) {
  PeriodUnitary u;
  u.epsilon = eps;
  u.wall_angle_conditioned = false;
  return u;
}

}  // namespace

TEST_CASE("spin_rotation: endpoints, unitarity, x-basis scalar products") {
  CHECK((spin_rotation(0.0) - Mat2c::Identity()).norm() < 1e-15);

  const Mat2c at_pi = spin_rotation(EIGEN_PI);
  CHECK(std::abs(at_pi(1, 0) - (-kI)) < 1e-15);  // up_z -> -i down_z
  CHECK(std::abs(at_pi(0, 0)) < 1e-15);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(-EIGEN_PI, EIGEN_PI);
  for (int i = 0; i < 50; ++i) {
    const Mat2c r = spin_rotation(angle(rng));
    CHECK((r.adjoint() * r - Mat2c::Identity()).norm() < 1e-14);
  }

  // <up_x|up_theta> = <up_x|down_theta> = e^{-i theta/2}/sqrt(2) at theta=0.3
  const double t = 0.3;
  const Complex expected = std::exp(-kI * t / 2.0) / std::sqrt(2.0);
  CHECK(std::abs(spin::up_x().dot(spin::up_theta(t)) - expected) < 1e-14);
  CHECK(std::abs(spin::up_x().dot(spin::down_theta(t)) - expected) < 1e-14);
  // columns of spin_rotation are the wall-axis kets
  CHECK((spin_rotation(t).col(0) - spin::up_theta(t)).norm() < 1e-15);
  CHECK((spin_rotation(t).col(1) - spin::down_theta(t)).norm() < 1e-15);
}

TEST_CASE("transparent branch: Left amplitude cos^{2N} and the Out ladder") {
  const int N = 100;
  const double eps = EIGEN_PI / (2 * N);
  JointState st = left_up_state(N);
  for (int j = 0; j < 2 * N; ++j) apply_period(st, fixed_wall(eps));

  const double c = survival_amplitude(N, eps);
  for (Index g = 0; g < 2; ++g) {
    CHECK(std::abs(st.amp(ParticleMode::left(), 0, g) - c / std::sqrt(2.0)) < 1e-10);
  }
  for (int k = 1; k <= 2 * N; ++k) {
    const Complex expected =
        kI * std::sin(eps) * std::pow(std::cos(eps), 2 * N - k) / std::sqrt(2.0);
    CHECK(std::abs(st.amp(ParticleMode::out(k), 0, 0) - expected) < 1e-12);
    CHECK(std::abs(st.amp(ParticleMode::out(k), 0, 1) - expected) < 1e-12);
  }
  CHECK(std::abs(st.norm() - 1.0) < kUnitaryTol);
}

TEST_CASE("reflective branch: full cycle returns -|L>|down_z> exactly") {
  const int N = 100;
  const double eps = EIGEN_PI / (2 * N);
  const RotorPacket stub = rotor_from_samples(2, EIGEN_PI, CVec::Constant(2, 1.0));
  JointState st = make_initial_state(N, spin::down_z(), stub);
  for (int j = 0; j < 2 * N; ++j) apply_period(st, fixed_wall(eps));
  for (Index g = 0; g < 2; ++g) {
    const Complex expected = -1.0 / std::sqrt(2.0);
    CHECK(std::abs(st.amp(ParticleMode::left(), 1, g) - expected) < 1e-10);
    CHECK(std::abs(st.amp(ParticleMode::right(), 1, g)) < 1e-10);
  }
}

TEST_CASE("reflection phase: one period imprints e^{-2 i p0 x} on Right") {
  const int N = 5;
  const double p0 = 0.8;
  const WallPacket wall = make_wall_packet(64, 4.0, 0.5, p0);
  const RotorPacket stub = rotor_from_samples(2, EIGEN_PI, CVec::Constant(2, 1.0));
  JointState st = make_initial_state(N, spin::down_z(), stub, &wall);

  PeriodUnitary u = fixed_wall(EIGEN_PI / (2 * N));
  u.reflection = ReflectionPhase::once_per_transit;
  u.box_momentum = p0;
  u.wall_extent = wall.extent;
  apply_period(st, u);

  for (Index p = 0; p < wall.grid_size; ++p) {
    const Complex expected = kI * std::sin(u.epsilon) *
                             std::exp(-2.0 * kI * p0 * wall.x(p)) * wall.x_samples[p] /
                             std::sqrt(2.0);
    CHECK(std::abs(st.amp(ParticleMode::right(), 1, 0, p) - expected) < 1e-13);
  }
}

TEST_CASE("survival_amplitude: endpoints and asymptotics") {
  CHECK(survival_amplitude(1, EIGEN_PI / 2) < 1e-30);
  CHECK(survival_amplitude(100, EIGEN_PI / 200) == doctest::Approx(0.97563).epsilon(1e-5));
  // large-N asymptotic e^{-pi^2/(4N)}; next correction is pi^4/(96 N^3)
  for (int n : {25, 50, 100, 200, 400}) {
    const double c = survival_amplitude(n, EIGEN_PI / (2 * n));
    const double bound = 2.0 * std::pow(EIGEN_PI, 4) / (96.0 * n * n * n);
    CHECK(std::abs(c - std::exp(-EIGEN_PI * EIGEN_PI / (4.0 * n))) < bound);
  }
  // leakage 1 - cos^{2N} is a monotone trend toward 0
  double prev = 1.0 - survival_amplitude(25, EIGEN_PI / 50);
  for (int n : {50, 100, 200, 400}) {
    const double leak = 1.0 - survival_amplitude(n, EIGEN_PI / (2 * n));
    CHECK(leak < prev);
    prev = leak;
  }
}

TEST_CASE("period matrix is unitary; once-per-transit defect is bounded") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(-EIGEN_PI, EIGEN_PI);
  std::uniform_real_distribution<double> epsd(0.0, EIGEN_PI / 4);
  for (int i = 0; i < 20; ++i) {
    PeriodUnitary u;
    u.epsilon = epsd(rng);
    u.reflection = i % 2 == 0 ? ReflectionPhase::off : ReflectionPhase::per_period;
    u.box_momentum = 0.6;
    u.wall_extent = 4.0;
    const Eigen::MatrixXcd m = build_period_matrix(u, angle(rng), 0.3, 4);
    CHECK((m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs()
              .maxCoeff() < kIdentityTol);
  }
  PeriodUnitary u;
  u.epsilon = 0.05;
  u.reflection = ReflectionPhase::once_per_transit;
  u.box_momentum = 0.5;
  u.wall_extent = 4.0;
  const double x = 0.25;
  const Eigen::MatrixXcd m = build_period_matrix(u, 0.2, x, 4);
  const double defect =
      (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  const double bound = 2.0 * std::sin(u.epsilon) *
                       std::abs(1.0 - std::exp(-2.0 * kI * u.box_momentum * x)) + 1e-12;
  CHECK(defect > 1e-6);  // genuinely non-unitary
  CHECK(defect < bound);
}

TEST_CASE("basis-change sandwich: conditioned period = rotation * fixed * rotation^-1") {
  const int N = 3;
  PeriodUnitary cond;
  cond.epsilon = 0.3;
  PeriodUnitary fixed = cond;
  fixed.wall_angle_conditioned = false;
  for (const double theta : {0.0, 0.4, -1.2}) {
    const Eigen::MatrixXcd lhs = build_period_matrix(cond, theta, 0.0, N);
    const Eigen::MatrixXcd m0 = build_period_matrix(fixed, theta, 0.0, N);
    Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(lhs.rows(), lhs.cols());
    for (Index m = 0; m < lhs.rows() / 2; ++m) {
      rot.block<2, 2>(2 * m, 2 * m) = spin_rotation(theta);
    }
    CHECK((lhs - rot * m0 * rot.adjoint()).cwiseAbs().maxCoeff() < kIdentityTol);
  }
}

TEST_CASE("apply_period agrees with the period matrix slice by slice") {
  const int N = 3;
  const Index G = 8, P = 4;
  std::mt19937 rng(23);
  std::normal_distribution<double> gauss;
  const WallPacket wall = make_wall_packet(P, 2.0, 1.0, 0.7);

  JointState st(N, G, P);
  for (Index i = 0; i < st.raw().size(); ++i) st.raw()[i] = Complex(gauss(rng), gauss(rng));
  // keep Out(2N) empty so the forward guard holds
  st.plane(ParticleMode::out(2 * N), 0).setZero();
  st.plane(ParticleMode::out(2 * N), 1).setZero();
  st.raw() /= st.raw().norm();

  PeriodUnitary u;
  u.epsilon = 0.4;
  u.reflection = ReflectionPhase::per_period;
  u.box_momentum = 0.7;
  u.wall_extent = wall.extent;

  JointState before = st;
  apply_period(st, u);

  for (Index g = 0; g < G; ++g) {
    for (Index p = 0; p < P; ++p) {
      const Eigen::MatrixXcd mat = build_period_matrix(u, theta_at(g, G), wall.x(p), N);
      Eigen::VectorXcd in(mat.rows());
      for (Index m = 0; m < before.mode_count(); ++m) {
        const ParticleMode pm = m == 0   ? ParticleMode::left()
                                : m == 1 ? ParticleMode::right()
                                         : ParticleMode::out(static_cast<int>(m) - 1);
        in[2 * m] = before.amp(pm, 0, g, p);
        in[2 * m + 1] = before.amp(pm, 1, g, p);
      }
      const Eigen::VectorXcd out = mat * in;
      for (Index m = 0; m < st.mode_count(); ++m) {
        const ParticleMode pm = m == 0   ? ParticleMode::left()
                                : m == 1 ? ParticleMode::right()
                                         : ParticleMode::out(static_cast<int>(m) - 1);
        CHECK(std::abs(st.amp(pm, 0, g, p) - out[2 * m]) < 1e-12);
        CHECK(std::abs(st.amp(pm, 1, g, p) - out[2 * m + 1]) < 1e-12);
      }
    }
  }
}

TEST_CASE("epsilon = 0: nothing leaves Left") {
  const RotorPacket phi = make_rotor_packet(64, 0.3);
  JointState st = make_initial_state(4, spin::up_x(), phi);
  const JointState before = st;
  PeriodUnitary u;
  u.epsilon = 0.0;
  for (int j = 0; j < 8; ++j) apply_period(st, u);
  CHECK((st.raw() - before.raw()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Out-mode ratchet: Out(k) stays empty until period k") {
  const int N = 6;
  JointState st = left_up_state(N, 16);
  PeriodUnitary u;
  u.epsilon = 0.3;
  for (int j = 1; j <= 2 * N; ++j) {
    apply_period(st, u);
    for (int k = j + 1; k <= 2 * N; ++k) {
      CHECK(st.plane(ParticleMode::out(k), 0).norm() == 0.0);
      CHECK(st.plane(ParticleMode::out(k), 1).norm() == 0.0);
    }
  }
}

TEST_CASE("evolving past 2N periods overflows the Out ladder") {
  JointState st = left_up_state(3, 8);
  PeriodUnitary u;
  u.epsilon = 0.2;
  for (int j = 0; j < 6; ++j) apply_period(st, u);
  CHECK_THROWS_AS(apply_period(st, u), std::domain_error);
}

TEST_CASE("empty schedule is the identity") {
  const RotorPacket phi = make_rotor_packet(32, 0.4);
  JointState st = make_initial_state(3, spin::up_z(), phi);
  const JointState before = st;
  evolve(st, {});
  CHECK((st.raw() - before.raw()).norm() == 0.0);
}

TEST_CASE("per-period phases with p0 = 0 are bit-identical to the phase-free run") {
  const RotorPacket phi = make_rotor_packet(32, 0.4);
  const WallPacket wall = make_wall_packet(16, 2.0, 0.5, 0.0);
  JointState a = make_initial_state(4, spin::up_z(), phi, &wall);
  JointState b = a;
  ExperimentConfig cfg;
  cfg.n_rounds = 4;
  cfg.rotor.grid = 32;
  cfg.rotor.delta_theta = 0.4;
  auto sched_off = uniform_schedule(cfg);
  auto sched_on = sched_off;
  for (auto& u : sched_on) {
    u.reflection = ReflectionPhase::per_period;
    u.box_momentum = 0.0;
    u.wall_extent = wall.extent;
  }
  evolve(a, sched_off);
  evolve(b, sched_on);
  CHECK((a.raw() - b.raw()).norm() == 0.0);
}

TEST_CASE("adjoint period inverts the forward period on random states") {
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 5; ++trial) {
    const int N = 3;
    const Index G = 8, P = trial % 2 == 0 ? 1 : 4;
    JointState st(N, G, P);
    for (Index i = 0; i < st.raw().size(); ++i) st.raw()[i] = Complex(gauss(rng), gauss(rng));
    st.plane(ParticleMode::out(2 * N), 0).setZero();
    st.plane(ParticleMode::out(2 * N), 1).setZero();
    st.raw() /= st.raw().norm();

    PeriodUnitary u;
    u.epsilon = 0.35;
    u.reflection = P > 1 ? ReflectionPhase::per_period : ReflectionPhase::off;
    u.box_momentum = 0.4;
    u.wall_extent = 2.0;

    const JointState before = st;
    apply_period(st, u);
    apply_period_adjoint(st, u);
    CHECK((st.raw() - before.raw()).cwiseAbs().maxCoeff() < 1e-13);
  }
}
