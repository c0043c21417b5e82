#include "rotorbox/report.hpp"

#include <sstream>

namespace rotorbox {

Json quantity(double value, const std::string& unit) {
  return Json{{"value", value}, {"unit", unit}};
}

Json config_json(const ExperimentConfig& cfg) {
  Json j;
  j["n_rounds"] = cfg.n_rounds;
  j["epsilon"] = quantity(cfg.epsilon(), "radian");
  j["ideal"] = cfg.ideal;
  j["postselect"] = to_string(cfg.postselect);
  j["rotor"] = {{"grid", cfg.rotor.grid},
                {"delta_theta", quantity(cfg.rotor.delta_theta, "radian")},
                {"family", to_string(cfg.rotor.family)},
                {"center", quantity(cfg.rotor.center, "radian")}};
  if (cfg.wall) {
    j["wall"] = {{"grid", cfg.wall->grid},
                 {"extent_factor", cfg.wall->extent_factor},
                 {"delta_xw", quantity(cfg.wall->delta_xw, "length")},
                 {"box_momentum", quantity(cfg.wall->box_momentum, "p0-units")},
                 {"family", to_string(cfg.wall->family)},
                 {"phase_budget", quantity(cfg.phase_budget(), "dimensionless")}};
    j["reflection_mode"] = to_string(cfg.reflection);
  }
  return j;
}

Json tolerances_json() {
  return Json{{"unitary", kUnitaryTol},
              {"quadrature", kQuadratureTol},
              {"identity", kIdentityTol},
              {"postselect_floor", kPostselectFloor}};
}

Json shift_results(const ShiftReport& rep) {
  Json j;
  j["prob_left"] = quantity(rep.prob_left, "probability");
  j["prob_spin_given_left"] = quantity(rep.prob_spin_given_left, "probability");
  j["lx_initial"] = quantity(rep.lx_initial, "hbar");
  j["lx_final"] = quantity(rep.lx_final, "hbar");
  j["shift"] = quantity(rep.shift, "hbar");
  const double target = rep.config.postselect == PostSelect::up_x ? -1.0 : 1.0;
  j["deviation_from_target"] = quantity(std::abs(rep.shift - target), "hbar");
  j["predicted_deviation_bound"] = quantity(rep.predicted_bound, "hbar");
  j["predicted_deviation_bound_leading"] = quantity(rep.predicted_bound_leading, "hbar");
  return j;
}

Json flux_results(const FluxProfile& profile) {
  Json j;
  j["n_rounds"] = profile.n_rounds;
  Json rows = Json::array();
  double analytic_total = 0.0;
  for (size_t i = 0; i < profile.per_period.size(); ++i) {
    analytic_total += profile.analytic[i];
    rows.push_back({{"n", i + 1},
                    {"simulated", quantity(profile.per_period[i], "hbar")},
                    {"analytic", quantity(profile.analytic[i], "hbar")},
                    {"finite_eps", quantity(profile.closed_form[i], "hbar")},
                    {"prob_left", quantity(profile.prob_left[i], "probability")},
                    {"prob_spin_given_left",
                     quantity(profile.prob_spin_given_left[i], "probability")}});
  }
  j["per_period"] = rows;
  j["total"] = quantity(profile.total, "hbar");
  j["analytic_total"] = quantity(analytic_total, "hbar");
  return j;
}

Json momentum_results(const MomentumReport& rep) {
  Json j;
  j["p_transfer"] = quantity(rep.p_transfer, "p0-units");
  j["p_transfer_analytic"] = quantity(rep.p_transfer_analytic, "p0-units");
  j["p_initial"] = quantity(rep.p_initial, "p0-units");
  j["p_final"] = quantity(rep.p_final, "p0-units");
  j["kappa"] = quantity(rep.kappa, "dimensionless");
  j["kappa_once_reference"] = quantity(rep.kappa_once_reference, "dimensionless");
  j["kappa_period_reference"] = quantity(rep.kappa_period_reference, "dimensionless");
  j["lx_initial"] = quantity(rep.lx_initial, "hbar");
  j["lx_final"] = quantity(rep.lx_final, "hbar");
  j["lx_shift"] = quantity(rep.lx_shift, "hbar");
  j["p_transfer_left_only"] = quantity(rep.p_transfer_left_only, "p0-units");
  j["lx_shift_left_only"] = quantity(rep.lx_shift_left_only, "hbar");
  j["prob_left"] = quantity(rep.prob_left, "probability");
  j["prob_spin_given_left"] = quantity(rep.prob_spin_given_left, "probability");
  j["coherence_guard"] = quantity(rep.coherence_guard, "probability");
  j["phase_budget"] = quantity(rep.phase_budget, "dimensionless");
  j["budget_warning"] = rep.budget_warning;
  j["norm_final"] = quantity(rep.norm_final, "dimensionless");
  j["reflection_mode"] = to_string(rep.reflection);
  j["evaluation"] = to_string(rep.evaluation);
  return j;
}

Json sweep_results(const std::vector<SweepRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"delta_theta", quantity(r.delta_theta, "radian")},
                   {"delta_xw", quantity(r.delta_xw, "length")},
                   {"rotor_grid", r.rotor_grid},
                   {"phase_budget", quantity(r.phase_budget, "dimensionless")},
                   {"budget_warning", r.budget_warning},
                   {"p_transfer", quantity(r.p_transfer, "p0-units")},
                   {"lx_shift", quantity(r.lx_shift, "hbar")}});
  }
  return Json{{"rows", arr}};
}

Json ReportEnvelope::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  j["results"] = results;
  j["tolerances"] = tolerances_json();
  Json t;
  for (const auto& [k, v] : timings) t[k] = v;
  j["timings"] = t;
  return j;
}

namespace {

void flatten(const Json& node, const std::string& prefix, std::ostringstream& out) {
  if (node.is_object()) {
    if (node.contains("value") && node.contains("unit") && node.size() == 2) {
      out << prefix << ',' << node["value"].dump() << ',' << node["unit"].get<std::string>()
          << '\n';
      return;
    }
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (node.is_array()) {
    for (size_t i = 0; i < node.size(); ++i) {
      flatten(node[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ',' << node.dump() << ",\n";
  }
}

}  // namespace

std::string ReportEnvelope::to_csv() const {
  std::ostringstream out;
  out << "key,value,unit\n";
  out << "schema_version," << kSchemaVersion << ",\n";
  out << "command," << command << ",\n";
  flatten(config, "config", out);
  flatten(results, "results", out);
  return out.str();
}

}  // namespace rotorbox
