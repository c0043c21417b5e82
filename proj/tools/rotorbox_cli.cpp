// Command-line front end: configure a run, execute it, emit a JSON or CSV
// report and optional SVG plots.
//
// Exit codes: 0 success, 1 usage error, 2 post-selection failure,
// 3 model-validity violation (phase budget > 1).

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rotorbox/report.hpp"
#include "rotorbox/svg.hpp"

namespace rb = rotorbox;

namespace {

struct CommonFlags {
  int n_rounds = 100;
  double epsilon = -1.0;  // <0: use pi/(2N)
  double delta_theta = 0.05;
  rb::Index grid = 256;
  std::string postselect = "up_x";
  std::string family = "gaussian";
  double center = 0.0;
  bool ideal = false;
  std::string output = "json";
  std::string svg_path;
  unsigned seed = 0;  // reserved; runs are deterministic
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--n-rounds", f.n_rounds, "number of rounds N (2N periods)");
  cmd->add_option("--epsilon", f.epsilon, "partition transmissivity parameter (default pi/2N)");
  cmd->add_option("--delta-theta", f.delta_theta, "wall-angle packet half width");
  cmd->add_option("--grid", f.grid, "rotor grid size (power of two)");
  cmd->add_option("--postselect", f.postselect, "spin outcome: up_x | down_x");
  cmd->add_option("--family", f.family, "rotor packet family: gaussian | raised-cosine");
  cmd->add_option("--center", f.center, "rotor packet center angle");
  cmd->add_flag("--ideal", f.ideal, "ideal limit: opaque partition for the transparent branch");
  cmd->add_option("--output", f.output, "report format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--svg", f.svg_path, "write an SVG plot to this path");
  cmd->add_option("--seed", f.seed, "reserved (runs are deterministic)");
}

rb::ExperimentConfig to_config(const CommonFlags& f) {
  rb::ExperimentConfig cfg;
  cfg.n_rounds = f.n_rounds;
  if (f.epsilon >= 0.0) cfg.epsilon_override = f.epsilon;
  cfg.rotor.grid = f.grid;
  cfg.rotor.delta_theta = f.delta_theta;
  cfg.rotor.family = rb::packet_family_from_string(f.family);
  cfg.rotor.center = f.center;
  cfg.postselect = rb::postselect_from_string(f.postselect);
  cfg.ideal = f.ideal;
  return cfg;
}

class PhaseTimer {
 public:
  explicit PhaseTimer(rb::ReportEnvelope& env) : env_(env) {}
  template <typename F>
  auto time(const std::string& phase, F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    env_.timings[phase] = dt.count();
    return result;
  }

 private:
  rb::ReportEnvelope& env_;
};

void emit(const rb::ReportEnvelope& env, const std::string& format) {
  if (format == "csv") {
    std::cout << env.to_csv();
  } else {
    std::cout << env.to_json().dump(2) << '\n';
  }
}

int cmd_shift(const CommonFlags& flags) {
  rb::ReportEnvelope env;
  env.command = "shift";
  const rb::ExperimentConfig cfg = to_config(flags);
  PhaseTimer timer(env);
  const rb::ShiftReport rep = timer.time("run", [&] { return rb::run_shift_experiment(cfg); });
  env.config = rb::config_json(cfg);
  env.results = rb::shift_results(rep);
  emit(env, flags.output);
  return 0;
}

int cmd_flux(const CommonFlags& flags, int wall_index) {
  rb::ReportEnvelope env;
  env.command = "flux";
  rb::ExperimentConfig cfg = to_config(flags);
  env.config = rb::config_json(cfg);
  PhaseTimer timer(env);
  if (wall_index > 0) {
    const double value =
        timer.time("run", [&] { return rb::run_flux_experiment(cfg, wall_index); });
    env.results = {{"wall_index", wall_index},
                   {"simulated", rb::quantity(value, "hbar")},
                   {"analytic", rb::quantity(rb::analytic_flux(cfg.n_rounds, wall_index), "hbar")},
                   {"finite_eps",
                    rb::quantity(rb::flux_closed_form(cfg.n_rounds, wall_index), "hbar")}};
  } else {
    const rb::FluxProfile profile = timer.time("run", [&] { return rb::flux_profile(cfg); });
    env.results = rb::flux_results(profile);
    if (!flags.svg_path.empty()) {
      rb::PlotSpec plot;
      plot.title = "Per-period angular momentum gain of the wall";
      plot.x_label = "period n";
      plot.y_label = "delta <L_x> (hbar)";
      rb::PlotSeries sim{"simulated", {}, {}, "#b33a1f", true};
      rb::PlotSeries ana{"analytic half-sine", {}, {}, "#1f6fb3", false};
      for (size_t i = 0; i < profile.per_period.size(); ++i) {
        sim.x.push_back(static_cast<double>(i + 1));
        sim.y.push_back(profile.per_period[i]);
        ana.x.push_back(static_cast<double>(i + 1));
        ana.y.push_back(profile.analytic[i]);
      }
      plot.series = {ana, sim};
      rb::write_svg(flags.svg_path, plot);
    }
  }
  emit(env, flags.output);
  return 0;
}

struct MomentumFlags {
  double p0 = 1.0;
  double phase_budget = 0.01;
  double delta_xw = 0.0;  // 0: derive from budget
  rb::Index wall_grid = 1024;
  double extent_factor = 8.0;
  std::string reflection = "once-per-transit";
  std::string wall_family = "raised-cosine";
  std::string evaluation = "factored";
  bool sweep = false;
  int sweep_rungs = 4;
};

rb::ExperimentConfig momentum_config(const CommonFlags& flags, const MomentumFlags& mf) {
  rb::ExperimentConfig cfg = to_config(flags);
  rb::WallConfig wall;
  wall.grid = mf.wall_grid;
  wall.extent_factor = mf.extent_factor;
  wall.box_momentum = mf.p0;
  wall.family = rb::packet_family_from_string(mf.wall_family);
  if (mf.delta_xw > 0.0) {
    wall.delta_xw = mf.delta_xw;
  } else if (mf.p0 > 0.0) {
    wall.delta_xw = mf.phase_budget / (2.0 * flags.n_rounds * mf.p0);
  } else {
    wall.delta_xw = 1.0;  // p0 = 0: imprint-free; any support works
  }
  cfg.wall = wall;
  cfg.reflection = rb::reflection_phase_from_string(mf.reflection);
  return cfg;
}

int cmd_momentum(const CommonFlags& flags, const MomentumFlags& mf) {
  rb::ReportEnvelope env;
  env.command = "momentum";
  rb::ExperimentConfig cfg = momentum_config(flags, mf);
  env.config = rb::config_json(cfg);
  PhaseTimer timer(env);
  const auto eval = rb::evaluation_from_string(mf.evaluation);
  if (mf.sweep) {
    std::vector<std::pair<double, double>> ladder;
    double dt = cfg.rotor.delta_theta, dx = cfg.wall->delta_xw;
    for (int r = 0; r < mf.sweep_rungs; ++r) {
      ladder.emplace_back(dt, dx);
      dt /= 2;
      dx /= 2;
    }
    const auto rows = timer.time("run", [&] { return rb::sweep_vanishing(cfg, ladder); });
    env.results = rb::sweep_results(rows);
    for (const auto& r : rows) {
      if (r.budget_warning) {
        std::cerr << "warning: phase budget " << r.phase_budget << " above 0.1 at delta_theta="
                  << r.delta_theta << '\n';
      }
    }
  } else {
    const rb::MomentumReport rep =
        timer.time("run", [&] { return rb::run_momentum_experiment(cfg, eval); });
    env.results = rb::momentum_results(rep);
    if (rep.budget_warning) {
      std::cerr << "warning: phase budget " << rep.phase_budget << " above 0.1\n";
    }
  }
  emit(env, flags.output);
  return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& ladder_csv) {
  rb::ReportEnvelope env;
  env.command = "sweep";
  std::vector<int> ns;
  std::stringstream ss(ladder_csv);
  for (std::string item; std::getline(ss, item, ',');) ns.push_back(std::stoi(item));
  if (ns.empty()) throw CLI::ValidationError("--n-ladder", "empty ladder");

  rb::Json rows = rb::Json::array();
  PhaseTimer timer(env);
  std::vector<double> xs, survival, shifts;
  timer.time("run", [&] {
    for (int n : ns) {
      CommonFlags f = flags;
      f.n_rounds = n;
      rb::ExperimentConfig cfg = to_config(f);
      const rb::ShiftReport rep = rb::run_shift_experiment(cfg);
      const double c = rb::survival_amplitude(n, cfg.epsilon());
      rows.push_back({{"n_rounds", n},
                      {"survival", rb::quantity(rep.prob_left, "probability")},
                      {"survival_analytic", rb::quantity(c * c, "probability")},
                      {"shift", rb::quantity(rep.shift, "hbar")},
                      {"shift_deviation",
                       rb::quantity(std::abs(rep.shift + 1.0), "hbar")},
                      {"predicted_bound", rb::quantity(rep.predicted_bound, "hbar")}});
      xs.push_back(n);
      survival.push_back(rep.prob_left);
      shifts.push_back(std::abs(rep.shift + 1.0));
    }
    return 0;
  });
  env.config = rb::config_json(to_config(flags));
  env.results = {{"ladder", rows}};
  if (!flags.svg_path.empty()) {
    rb::PlotSpec plot;
    plot.title = "Convergence with N";
    plot.x_label = "N";
    plot.y_label = "survival / |shift + 1|";
    plot.series = {{"survival", xs, survival, "#1f6fb3", false},
                   {"|shift + 1|", xs, shifts, "#b33a1f", false}};
    rb::write_svg(flags.svg_path, plot);
  }
  emit(env, flags.output);
  return 0;
}

int cmd_backward(const CommonFlags& flags) {
  rb::ReportEnvelope env;
  env.command = "backward";
  const rb::ExperimentConfig cfg = to_config(flags);
  env.config = rb::config_json(cfg);
  PhaseTimer timer(env);
  const double fid = timer.time("run", [&] { return rb::backward_check(cfg); });
  env.results = {{"fidelity", rb::quantity(fid, "probability")}};
  emit(env, flags.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional box dynamics: angular momentum transfer to a rotatable "
               "spin-dependent wall"};
  app.require_subcommand(1);

  CommonFlags shift_flags, flux_flags, mom_flags_common, sweep_flags, backward_flags;
  MomentumFlags mom_flags;
  int flux_wall_index = 0;
  std::string n_ladder = "25,50,100,200";

  auto* shift = app.add_subcommand("shift", "angular-momentum shift of the wall");
  add_common(shift, shift_flags);

  auto* flux = app.add_subcommand("flux", "per-period angular-momentum flux profile");
  flux_flags.n_rounds = 20;
  flux_flags.delta_theta = 0.02;
  flux_flags.grid = 4096;
  add_common(flux, flux_flags);
  flux->add_option("--wall-index", flux_wall_index, "probe a single period n (default: all)");

  auto* momentum = app.add_subcommand("momentum", "linear momentum transfer to the wall");
  mom_flags_common.grid = 512;
  add_common(momentum, mom_flags_common);
  momentum->add_option("--p0", mom_flags.p0, "particle momentum entering the imprint");
  momentum->add_option("--phase-budget", mom_flags.phase_budget,
                       "target 2*N*p0*delta_xw (sets delta_xw)");
  momentum->add_option("--delta-xw", mom_flags.delta_xw, "wall position half width (overrides)");
  momentum->add_option("--wall-grid", mom_flags.wall_grid, "wall position grid size");
  momentum->add_option("--extent-factor", mom_flags.extent_factor, "x extent / delta_xw");
  momentum->add_option("--reflection-mode", mom_flags.reflection,
                       "once-per-transit | per-period | off");
  momentum->add_option("--wall-family", mom_flags.wall_family,
                       "wall packet family: raised-cosine | gaussian");
  momentum->add_option("--evaluation", mom_flags.evaluation, "factored | dense");
  momentum->add_flag("--sweep", mom_flags.sweep, "run the vanishing-transfer ladder");
  momentum->add_option("--sweep-rungs", mom_flags.sweep_rungs, "ladder length (halving)");

  auto* sweep = app.add_subcommand("sweep", "survival and shift convergence over an N ladder");
  sweep_flags.grid = 512;
  add_common(sweep, sweep_flags);
  sweep->add_option("--n-ladder", n_ladder, "comma-separated N values");

  auto* backward = app.add_subcommand("backward", "backward-evolution consistency check");
  add_common(backward, backward_flags);

  try {
    app.parse(argc, argv);
    if (shift->parsed()) return cmd_shift(shift_flags);
    if (flux->parsed()) return cmd_flux(flux_flags, flux_wall_index);
    if (momentum->parsed()) return cmd_momentum(mom_flags_common, mom_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, n_ladder);
    if (backward->parsed()) return cmd_backward(backward_flags);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const rb::postselection_failed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rb::model_validity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
