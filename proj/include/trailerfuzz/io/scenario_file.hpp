#pragma once

// Scenario and sweep-grid documents.
//
// Scenario:
//   {"label": "right-high",
//    "initial": {"x": 80, "y": 180, "alpha_deg": 60, "beta_deg": 30},
//    "params": {"v": 1, "l_c": 2, "l_t": 8, "theta_max_deg": 30, "beta_max_deg": 30,
//               "clamp_beta": true, "clamp_command": true},
//    "tolerances": {"x_tol": 2, "y_tol": 1, "alpha_tol_deg": 10},
//    "max_steps": 1000, "mode": "both"}
// Only "initial" is required. Unknown keys are rejected.
//
// Sweep grid:
//   {"x": {"min": -90, "max": 90, "count": 7}, "y": {...}, "alpha_deg": {...}, "beta_deg": {...},
//    "params": {...}, "tolerances": {...}, "max_steps": 1000}

#include <cstddef>
#include <string>

#include "trailerfuzz/io/json_util.hpp"
#include "trailerfuzz/simulation.hpp"

namespace trailerfuzz::io {

namespace detail {

inline std::size_t as_count(const Json& v, const std::string& context, std::size_t minimum) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
    throw ConfigError(context + ": expected an integer >= " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(v.get<long long>());
}

inline bool flag_or(const Json& j, const std::string& key, bool fallback, const std::string& ctx) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw ConfigError(ctx + "." + key + ": expected true or false");
  return j[key].get<bool>();
}

inline PlantParams params_from_json(const Json& j, const std::string& ctx) {
  check_keys(j, {"v", "l_c", "l_t", "theta_max_deg", "beta_max_deg", "clamp_beta", "clamp_command"}, ctx);
  PlantParams p;
  p.v = number_or(j, "v", p.v, ctx);
  p.l_c = number_or(j, "l_c", p.l_c, ctx);
  p.l_t = number_or(j, "l_t", p.l_t, ctx);
  p.theta_max = number_or(j, "theta_max_deg", p.theta_max, ctx);
  p.beta_max = number_or(j, "beta_max_deg", p.beta_max, ctx);
  p.clamp_beta = flag_or(j, "clamp_beta", p.clamp_beta, ctx);
  p.clamp_command = flag_or(j, "clamp_command", p.clamp_command, ctx);
  return p;
}

inline DockTolerance tolerance_from_json(const Json& j, const std::string& ctx) {
  check_keys(j, {"x_tol", "y_tol", "alpha_tol_deg"}, ctx);
  DockTolerance t;
  t.x_tol = number_or(j, "x_tol", t.x_tol, ctx);
  t.y_tol = number_or(j, "y_tol", t.y_tol, ctx);
  t.alpha_tol = number_or(j, "alpha_tol_deg", t.alpha_tol, ctx);
  return t;
}

inline Axis axis_from_json(const Json& j, const std::string& ctx) {
  check_keys(j, {"min", "max", "count"}, ctx);
  return {as_number(require(j, "min", ctx), ctx + ".min"), as_number(require(j, "max", ctx), ctx + ".max"),
          as_count(require(j, "count", ctx), ctx + ".count", 0)};
}

}  // namespace detail

inline Scenario scenario_from_json(const Json& j, const std::string& source = "scenario") {
  check_keys(j, {"label", "initial", "params", "tolerances", "max_steps", "mode"}, source);
  Scenario s;
  if (j.contains("label")) s.label = as_string(j["label"], source + ".label");

  const std::string ictx = source + ".initial";
  const Json& init = require(j, "initial", source);
  check_keys(init, {"x", "y", "alpha_deg", "beta_deg"}, ictx);
  s.initial = {as_number(require(init, "x", ictx), ictx + ".x"),
               as_number(require(init, "y", ictx), ictx + ".y"),
               as_number(require(init, "alpha_deg", ictx), ictx + ".alpha_deg"),
               as_number(require(init, "beta_deg", ictx), ictx + ".beta_deg")};

  if (j.contains("params")) s.params = detail::params_from_json(j["params"], source + ".params");
  if (j.contains("tolerances")) s.tolerance = detail::tolerance_from_json(j["tolerances"], source + ".tolerances");
  if (j.contains("max_steps")) s.max_steps = detail::as_count(j["max_steps"], source + ".max_steps", 1);
  if (j.contains("mode")) {
    try {
      s.mode = mode_from_string(as_string(j["mode"], source + ".mode"));
    } catch (const UsageError& e) {
      throw ConfigError(source + ".mode: " + e.what());
    }
  }
  return s;
}

inline Json scenario_to_json(const Scenario& s) {
  return {{"label", s.label},
          {"initial", {{"x", s.initial.x}, {"y", s.initial.y}, {"alpha_deg", s.initial.alpha}, {"beta_deg", s.initial.beta}}},
          {"params",
           {{"v", s.params.v}, {"l_c", s.params.l_c}, {"l_t", s.params.l_t},
            {"theta_max_deg", s.params.theta_max}, {"beta_max_deg", s.params.beta_max},
            {"clamp_beta", s.params.clamp_beta}, {"clamp_command", s.params.clamp_command}}},
          {"tolerances", {{"x_tol", s.tolerance.x_tol}, {"y_tol", s.tolerance.y_tol}, {"alpha_tol_deg", s.tolerance.alpha_tol}}},
          {"max_steps", s.max_steps},
          {"mode", std::string(to_string(s.mode))}};
}

inline Scenario load_scenario(const std::string& path) { return scenario_from_json(load_json_file(path), path); }

/// A sweep grid plus the scenario template each cell starts from.
struct GridSpec {
  SweepGrid grid;
  Scenario base;
};

inline GridSpec grid_from_json(const Json& j, const std::string& source = "grid") {
  check_keys(j, {"x", "y", "alpha_deg", "beta_deg", "params", "tolerances", "max_steps"}, source);
  GridSpec g;
  g.grid.x = detail::axis_from_json(require(j, "x", source), source + ".x");
  g.grid.y = detail::axis_from_json(require(j, "y", source), source + ".y");
  g.grid.alpha = detail::axis_from_json(require(j, "alpha_deg", source), source + ".alpha_deg");
  g.grid.beta = detail::axis_from_json(require(j, "beta_deg", source), source + ".beta_deg");
  if (j.contains("params")) g.base.params = detail::params_from_json(j["params"], source + ".params");
  if (j.contains("tolerances")) g.base.tolerance = detail::tolerance_from_json(j["tolerances"], source + ".tolerances");
  if (j.contains("max_steps")) g.base.max_steps = detail::as_count(j["max_steps"], source + ".max_steps", 1);
  return g;
}

inline GridSpec load_grid(const std::string& path) { return grid_from_json(load_json_file(path), path); }

inline Json outcome_to_json(const Scenario& scenario, const RunResult& result) {
  Json runs = Json::array();
  for (const Trajectory* t : result.trajectories()) {
    const Outcome& o = t->outcome;
    Json run = {{"mode", std::string(to_string(t->mode))},
                {"outcome", std::string(to_string(o.kind))},
                {"steps", o.steps},
                {"final_state",
                 {{"x", o.final_state.x}, {"y", o.final_state.y}, {"alpha_deg", o.final_state.alpha},
                  {"beta_deg", o.final_state.beta}}},
                {"fallback_count", t->fallback_count}};
    if (!o.message.empty()) run["message"] = o.message;
    runs.push_back(std::move(run));
  }
  return {{"label", scenario.label}, {"docked", result.all_docked()}, {"runs", runs}};
}

inline Json sweep_summary_to_json(const SweepReport& report) {
  Json counts = Json::object();
  for (OutcomeKind k : {OutcomeKind::docked, OutcomeKind::out_of_bounds, OutcomeKind::jackknifed,
                        OutcomeKind::timeout, OutcomeKind::insufficient_space, OutcomeKind::error}) {
    auto it = report.counts.find(k);
    counts[std::string(to_string(k))] = it == report.counts.end() ? 0 : it->second;
  }
  return {{"cells", report.cells.size()}, {"success_ratio", report.success_ratio}, {"counts", counts}};
}

}  // namespace trailerfuzz::io
