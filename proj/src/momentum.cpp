#include "rotorbox/momentum.hpp"

#include <array>

namespace rotorbox {

double analytic_p_transfer(const RotorPacket& rotor, double p0) {
  if (std::abs(rotor.theta_samples.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("analytic_p_transfer: rotor packet not normalized");
  }
  double acc = 0.0;
  for (Index g = 0; g < rotor.grid_size; ++g) {
    const double s = std::sin(rotor.theta(g) / 2);
    acc += s * s * std::norm(rotor.theta_samples[g]);
  }
  return 2.0 * p0 * acc;
}

std::string to_string(Evaluation e) { return e == Evaluation::factored ? "factored" : "dense"; }

Evaluation evaluation_from_string(const std::string& s) {
  if (s == "factored") return Evaluation::factored;
  if (s == "dense") return Evaluation::dense;
  throw std::invalid_argument("unknown evaluation: " + s);
}

Index resolved_rotor_grid(double delta_theta, Index minimum) {
  const double needed = 2.0 * EIGEN_PI * 10.5 / delta_theta;
  Index g = 2;
  while (g < needed || g < minimum) {
    g <<= 1;
    if (g > (Index{1} << 16)) {
      throw std::invalid_argument("delta_theta too small to resolve on a 2^16 grid");
    }
  }
  return g;
}

namespace {

using Mat2 = Eigen::Matrix2cd;

struct Grams {
  Mat2 overlap;  // <g_i|g_j>
  Mat2 momentum; // <g_i|p|g_j>
};

Grams x_grams(const CVec& g1, const CVec& g2, double extent) {
  Grams out;
  const Index P = g1.size();
  const CVec m1 = dft_unitary(g1);
  const CVec m2 = dft_unitary(g2);
  out.overlap << g1.dot(g1), g1.dot(g2), g2.dot(g1), g2.dot(g2);
  std::array<const CVec*, 2> m{&m1, &m2};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex acc = 0.0;
      for (Index k = 0; k < P; ++k) {
        const double kval = EIGEN_PI * derivative_mode_weight(k, P) / extent;
        acc += kval * std::conj((*m[i])[k]) * (*m[j])[k];
      }
      out.momentum(i, j) = acc;
    }
  }
  return out;
}

Grams theta_grams(const CVec& f1, const CVec& f2) {
  Grams out;
  const Index G = f1.size();
  const CVec m1 = grid_to_modes(f1);
  const CVec m2 = grid_to_modes(f2);
  out.overlap << f1.dot(f1), f1.dot(f2), f2.dot(f1), f2.dot(f2);
  std::array<const CVec*, 2> m{&m1, &m2};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex acc = 0.0;
      for (Index k = 0; k < G; ++k) {
        acc += derivative_mode_weight(k, G) * std::conj((*m[i])[k]) * (*m[j])[k];
      }
      out.momentum(i, j) = acc;
    }
  }
  return out;
}

double pair_sum(const Mat2& a, const Mat2& b) {
  Complex acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) acc += a(i, j) * b(i, j);
  }
  return acc.real();
}

struct FactoredRun {
  Complex u_left;        // up-branch Left amplitude after 2N periods
  double u_ladder_norm2; // total up-branch Out weight
  CVec d_left, d_right;  // down-branch amplitudes per wall sample
};

FactoredRun evolve_factored(const ExperimentConfig& cfg, const WallPacket& wall) {
  const int N = cfg.n_rounds;
  const double e = cfg.epsilon();
  const double c = std::cos(e), s = std::sin(e);
  const double cu = cfg.ideal ? 1.0 : c;
  const double su = cfg.ideal ? 0.0 : s;
  const Index P = wall.grid_size;

  CVec phases(P);
  for (Index p = 0; p < P; ++p) {
    phases[p] = std::exp(-2.0 * kI * wall.box_momentum * wall.x(p));
  }
  const bool stamp_stay = cfg.reflection == ReflectionPhase::per_period;
  const bool stamped = cfg.reflection != ReflectionPhase::off;

  CVec u = CVec::Zero(2 * N + 2);
  u[0] = 1.0;
  FactoredRun run;
  run.d_left = CVec::Constant(P, 1.0);
  run.d_right = CVec::Zero(P);
  CVec tmp(P);
  for (int period = 0; period < 2 * N; ++period) {
    const Complex new_l = cu * u[0] + kI * su * u[1];
    const Complex new_o1 = kI * su * u[0] + cu * u[1];
    for (Index k = u.size() - 1; k >= 3; --k) u[k] = u[k - 1];
    u[0] = new_l;
    u[1] = 0.0;
    u[2] = new_o1;

    tmp = run.d_left;
    run.d_left = c * tmp + kI * s * run.d_right;
    if (!stamped) {
      run.d_right = kI * s * tmp + c * run.d_right;
    } else if (stamp_stay) {
      run.d_right = phases.cwiseProduct((kI * s * tmp + c * run.d_right).eval());
    } else {
      run.d_right = kI * s * phases.cwiseProduct(tmp) + c * run.d_right;
    }
  }
  run.u_left = u[0];
  run.u_ladder_norm2 = u.segment(2, 2 * N).squaredNorm();
  return run;
}

// theta coefficient functions of the Left-mode spinor over the basis
// {Psi, d_left * Psi}:
//   up_z:   Phi cos^2(t/2) uL   ,  Phi sin^2(t/2)
//   down_z: -i Phi sin cos uL   ,  i Phi sin cos
struct ThetaFunctions {
  CVec up1, up2, dn1, dn2;
};

ThetaFunctions theta_functions(const RotorPacket& phi, Complex u_left) {
  const Index G = phi.grid_size;
  ThetaFunctions f{CVec(G), CVec(G), CVec(G), CVec(G)};
  for (Index g = 0; g < G; ++g) {
    const double t = phi.theta(g);
    const double c2 = std::cos(t / 2), s2 = std::sin(t / 2);
    const Complex base = phi.theta_samples[g];
    f.up1[g] = base * c2 * c2 * u_left;
    f.up2[g] = base * s2 * s2;
    f.dn1[g] = -kI * base * s2 * c2 * u_left;
    f.dn2[g] = kI * base * s2 * c2;
  }
  return f;
}

struct Moments {
  double norm2 = 0.0;
  double p = 0.0;   // <p>, unnormalized accumulator
  double lx = 0.0;  // <L_x>, unnormalized accumulator
};

Moments accumulate(const CVec& f1, const CVec& f2, const Grams& xg) {
  const Grams tg = theta_grams(f1, f2);
  Moments m;
  m.norm2 = pair_sum(tg.overlap, xg.overlap);
  m.p = pair_sum(tg.overlap, xg.momentum);
  m.lx = pair_sum(tg.momentum, xg.overlap);
  return m;
}

MomentumReport momentum_factored(const ExperimentConfig& cfg) {
  const RotorPacket phi = cfg.rotor_packet();
  const WallPacket wall = cfg.wall_packet();
  const FactoredRun run = evolve_factored(cfg, wall);

  const CVec g1 = wall.x_samples;
  const CVec g2 = run.d_left.cwiseProduct(wall.x_samples);
  const Grams xg = x_grams(g1, g2, wall.extent);
  const ThetaFunctions f = theta_functions(phi, run.u_left);

  const Vec2c bra = postselect_bra(cfg.postselect);
  const CVec sel1 = std::conj(bra[0]) * f.up1 + std::conj(bra[1]) * f.dn1;
  const CVec sel2 = std::conj(bra[0]) * f.up2 + std::conj(bra[1]) * f.dn2;
  const Moments cond = accumulate(sel1, sel2, xg);

  const Moments up = accumulate(f.up1, f.up2, xg);
  const Moments dn = accumulate(f.dn1, f.dn2, xg);
  const double prob_left = up.norm2 + dn.norm2;
  if (cond.norm2 < kPostselectFloor) throw postselection_failed(prob_left, cond.norm2);

  MomentumReport rep;
  rep.evaluation = Evaluation::factored;
  rep.p_initial = expectation_p(wall);
  rep.p_final = cond.p / cond.norm2;
  rep.lx_initial = expectation_lx(phi);
  rep.lx_final = cond.lx / cond.norm2;
  rep.prob_left = prob_left;
  rep.prob_spin_given_left = cond.norm2 / prob_left;
  rep.p_transfer_left_only = -((up.p + dn.p) / prob_left - rep.p_initial);
  rep.lx_shift_left_only = (up.lx + dn.lx) / prob_left - rep.lx_initial;
  rep.coherence_guard = fidelity(g2.normalized(), g1);

  // full-state norm: up ladder with cos^2 weight, down branch with sin^2
  double cos2 = 0.0, sin2 = 0.0;
  for (Index g = 0; g < phi.grid_size; ++g) {
    const double w = std::norm(phi.theta_samples[g]);
    const double s2 = std::sin(phi.theta(g) / 2);
    sin2 += w * s2 * s2;
    cos2 += w * (1.0 - s2 * s2);
  }
  const double dr_norm2 = run.d_right.cwiseProduct(wall.x_samples).squaredNorm();
  rep.norm_final = std::sqrt(cos2 * (std::norm(run.u_left) + run.u_ladder_norm2) +
                             sin2 * (g2.squaredNorm() + dr_norm2));
  return rep;
}

MomentumReport momentum_dense(const ExperimentConfig& cfg) {
  const RotorPacket phi = cfg.rotor_packet();
  const WallPacket wall = cfg.wall_packet();
  const Index G = phi.grid_size, P = wall.grid_size;
  const double bytes = 16.0 * (2.0 * cfg.n_rounds + 2) * 2 * G * P;
  if (bytes > 2.0e9) {
    throw std::invalid_argument("dense evaluation would allocate > 2 GB; use factored");
  }
  JointState st = make_initial_state(cfg.n_rounds, spin::up_z(), phi, &wall);
  evolve(st, uniform_schedule(cfg));

  const double norm_final = st.norm();
  const double prob_left = st.plane(ParticleMode::left(), 0).squaredNorm() +
                           st.plane(ParticleMode::left(), 1).squaredNorm();
  const Eigen::MatrixXcd up = left_slice_matrix(st, spin::up_z());
  const Eigen::MatrixXcd dn = left_slice_matrix(st, spin::down_z());
  const Vec2c bra = postselect_bra(cfg.postselect);
  const Eigen::MatrixXcd sel = std::conj(bra[0]) * up + std::conj(bra[1]) * dn;

  const auto moments = [&](const Eigen::MatrixXcd& m) {
    Moments out;
    out.norm2 = m.squaredNorm();
    for (Index g = 0; g < G; ++g) {
      const CVec row = m.row(g).transpose();
      const CVec rmodes = dft_unitary(row);
      for (Index k = 0; k < P; ++k) {
        out.p += EIGEN_PI * derivative_mode_weight(k, P) / wall.extent * std::norm(rmodes[k]);
      }
    }
    for (Index p = 0; p < P; ++p) {
      const CVec col = m.col(p);
      const CVec cmodes = grid_to_modes(col);
      for (Index k = 0; k < G; ++k) {
        out.lx += derivative_mode_weight(k, G) * std::norm(cmodes[k]);
      }
    }
    return out;
  };

  const Moments cond = moments(sel);
  if (cond.norm2 < kPostselectFloor) throw postselection_failed(prob_left, cond.norm2);
  const Moments mup = moments(up);
  const Moments mdn = moments(dn);

  MomentumReport rep;
  rep.evaluation = Evaluation::dense;
  rep.p_initial = expectation_p(wall);
  rep.p_final = cond.p / cond.norm2;
  rep.lx_initial = expectation_lx(phi);
  rep.lx_final = cond.lx / cond.norm2;
  rep.prob_left = prob_left;
  rep.prob_spin_given_left = cond.norm2 / prob_left;
  rep.p_transfer_left_only = -((mup.p + mdn.p) / prob_left - rep.p_initial);
  rep.lx_shift_left_only = (mup.lx + mdn.lx) / prob_left - rep.lx_initial;
  rep.norm_final = norm_final;

  // down-branch wall packet read off where that branch carries most weight
  Index gstar = 0;
  double best = -1.0;
  for (Index g = 0; g < G; ++g) {
    const double w = std::abs(std::sin(phi.theta(g) / 2)) * std::abs(phi.theta_samples[g]);
    if (w > best) {
      best = w;
      gstar = g;
    }
  }
  const double t = phi.theta(gstar);
  CVec down_row = (kI * std::sin(t / 2)) * up.row(gstar).transpose() +
                  std::cos(t / 2) * dn.row(gstar).transpose();
  rep.coherence_guard = fidelity(down_row.normalized(), wall.x_samples);
  return rep;
}

}  // namespace

MomentumReport run_momentum_experiment(const ExperimentConfig& cfg, Evaluation eval) {
  cfg.validate();
  if (!cfg.wall) throw std::invalid_argument("momentum experiment requires a wall packet");
  MomentumReport rep =
      eval == Evaluation::factored ? momentum_factored(cfg) : momentum_dense(cfg);
  rep.reflection = cfg.reflection;
  rep.config = cfg;
  rep.phase_budget = cfg.phase_budget();
  rep.budget_warning = rep.phase_budget > 0.1;
  rep.p_transfer = -(rep.p_final - rep.p_initial);
  rep.lx_shift = rep.lx_final - rep.lx_initial;
  rep.p_transfer_analytic = analytic_p_transfer(cfg.rotor_packet(), cfg.wall->box_momentum);
  rep.kappa = rep.p_transfer_analytic > 0.0 ? rep.p_transfer / rep.p_transfer_analytic : 0.0;
  const double c = cfg.ideal ? 1.0 : survival_amplitude(cfg.n_rounds, cfg.epsilon());
  const double s = std::sin(cfg.epsilon());
  rep.kappa_once_reference = cfg.n_rounds * s * s / (c * c);
  rep.kappa_period_reference = cfg.n_rounds / (c * c);
  return rep;
}

std::vector<SweepRow> sweep_vanishing(const ExperimentConfig& cfg,
                                      const std::vector<std::pair<double, double>>& ladder) {
  if (!cfg.wall) throw std::invalid_argument("sweep requires a wall packet");
  for (size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i].first > ladder[i - 1].first || ladder[i].second > ladder[i - 1].second) {
      throw std::invalid_argument("sweep ladder must be monotone decreasing");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(ladder.size());
  for (const auto& [dtheta, dxw] : ladder) {
    ExperimentConfig rung = cfg;
    rung.rotor.delta_theta = dtheta;
    rung.rotor.grid = resolved_rotor_grid(dtheta, cfg.rotor.grid);
    rung.wall->delta_xw = dxw;
    const MomentumReport rep = run_momentum_experiment(rung);
    rows.push_back({dtheta, dxw, rung.rotor.grid, rep.phase_budget, rep.budget_warning,
                    rep.p_transfer, rep.lx_shift});
  }
  return rows;
}

}  // namespace rotorbox
