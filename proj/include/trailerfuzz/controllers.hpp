#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trailerfuzz/errors.hpp"
#include "trailerfuzz/fuzzy/json.hpp"
#include "trailerfuzz/fuzzy/rule_base.hpp"
#include "trailerfuzz/plant.hpp"

namespace trailerfuzz {

using fuzzy::Interval;
using fuzzy::RuleBase;

/// Peaks of a strong triangular partition (see fuzzy::make_partition).
struct PartitionSpec {
  std::string name;
  Interval universe;
  std::vector<std::string> labels;
  std::vector<double> peaks;

  fuzzy::LinguisticVariable build() const {
    return fuzzy::make_partition(name, universe, labels, peaks);
  }
};

inline const std::vector<std::string> kDistanceLabels{"LE", "LC", "CE", "RC", "RI"};
inline const std::vector<std::string> kDirectionLabels{"LB", "LU", "LV", "VE", "RV", "RU", "RB"};
inline const std::vector<std::string> kPolarityLabels{"NB", "NM", "NS", "ZE", "PS", "PM", "PB"};

// Trailer controller rule table: rows follow kDirectionLabels (trailer
// heading), columns follow kDistanceLabels (lateral position).
inline constexpr std::array<std::array<std::string_view, 5>, 7> kTrailerRuleTable{{
    {"PS", "PM", "NS", "NM", "NB"},  // LB
    {"NS", "PS", "PM", "PB", "PB"},  // LU
    {"NS", "NS", "PS", "PM", "PB"},  // LV
    {"NM", "NS", "ZE", "PS", "PM"},  // VE
    {"NB", "NM", "NS", "PS", "PS"},  // RV
    {"NB", "NB", "NM", "NS", "PS"},  // RU
    {"PB", "PM", "PS", "NM", "NS"},  // RB
}};

// Cab controller: steer with the polarity of the heading error.
inline constexpr std::array<std::string_view, 7> kCabRuleTable{"NB", "NM", "NS", "ZE",
                                                               "PS", "PM", "PB"};

/// Membership layout of both controllers.
struct ControllerDesign {
  PartitionSpec distance;   // X: trailer lateral position
  PartitionSpec direction;  // A: trailer heading
  PartitionSpec deviation;  // B: commanded cab angle (trailer controller output)
  PartitionSpec error;      // G: cab-angle error
  PartitionSpec steering;   // S: steering angle (cab controller output)
};

/**
 * Default membership layout.
 *
 * Position and heading terms are packed towards the docking line so the
 * trailer controller acts firmly near alignment; the outer terms saturate as
 * shoulders. The error partition has a narrow ZE so the cab follows beta'
 * within a few steps. Output partitions are uniform.
 */
inline ControllerDesign default_design() {
  return {
      {"X", {-100.0, 100.0}, kDistanceLabels, {-50.0, -20.0, 0.0, 20.0, 50.0}},
      {"A", {-180.0, 180.0}, kDirectionLabels, {-120.0, -55.0, -10.0, 0.0, 10.0, 55.0, 120.0}},
      {"B", {-30.0, 30.0}, kPolarityLabels, {-30.0, -20.0, -10.0, 0.0, 10.0, 20.0, 30.0}},
      {"G", {-60.0, 60.0}, kPolarityLabels, {-15.0, -8.0, -3.0, 0.0, 3.0, 8.0, 15.0}},
      {"S", {-30.0, 30.0}, kPolarityLabels, {-30.0, -20.0, -10.0, 0.0, 10.0, 20.0, 30.0}},
  };
}

/// Evenly spaced peaks across every universe, kept for comparison runs.
inline ControllerDesign uniform_design() {
  return {
      {"X", {-100.0, 100.0}, kDistanceLabels, {-100.0, -50.0, 0.0, 50.0, 100.0}},
      {"A", {-180.0, 180.0}, kDirectionLabels, {-180.0, -120.0, -60.0, 0.0, 60.0, 120.0, 180.0}},
      {"B", {-30.0, 30.0}, kPolarityLabels, {-30.0, -20.0, -10.0, 0.0, 10.0, 20.0, 30.0}},
      {"G", {-60.0, 60.0}, kPolarityLabels, {-60.0, -40.0, -20.0, 0.0, 20.0, 40.0, 60.0}},
      {"S", {-30.0, 30.0}, kPolarityLabels, {-30.0, -20.0, -10.0, 0.0, 10.0, 20.0, 30.0}},
  };
}

inline RuleBase build_trailer_controller(const ControllerDesign& d) {
  std::vector<fuzzy::Rule> rules;
  for (std::size_t col = 0; col < kDistanceLabels.size(); ++col) {
    for (std::size_t row = 0; row < kDirectionLabels.size(); ++row) {
      rules.push_back({{kDistanceLabels[col], kDirectionLabels[row]},
                       std::string(kTrailerRuleTable[row][col])});
    }
  }
  return RuleBase("flc_t", {d.distance.build(), d.direction.build()}, d.deviation.build(),
                  std::move(rules));
}

inline RuleBase build_cab_controller(const ControllerDesign& d) {
  std::vector<fuzzy::Rule> rules;
  for (std::size_t i = 0; i < kPolarityLabels.size(); ++i) {
    rules.push_back({{kPolarityLabels[i]}, std::string(kCabRuleTable[i])});
  }
  return RuleBase("flc_c", {d.error.build()}, d.steering.build(), std::move(rules));
}

struct CascadeOutput {
  double beta_prime = 0.0;  // commanded cab angle
  double gamma = 0.0;       // beta_prime - beta, clamped to the error universe
  double theta = 0.0;       // steering angle
  bool fallback = false;    // a controller had no firing rule
};

/**
 * Trailer controller feeding the cab controller.
 *
 * The trailer controller maps (x, alpha) to the cab angle beta' that a
 * self-steering trailer would want; the cab controller maps the error
 * beta' - beta to a steering angle. Immutable; safe to share across threads.
 */
class CascadeController {
 public:
  CascadeController() : CascadeController(default_design()) {}
  explicit CascadeController(const ControllerDesign& design)
      : CascadeController(build_trailer_controller(design), build_cab_controller(design)) {}

  CascadeController(RuleBase trailer, RuleBase cab) : trailer_(std::move(trailer)), cab_(std::move(cab)) {
    if (trailer_.antecedents().size() != 2) {
      throw ConfigError("trailer controller must take exactly two inputs (x, alpha)");
    }
    if (cab_.antecedents().size() != 1) {
      throw ConfigError("cab controller must take exactly one input (gamma)");
    }
  }

  const RuleBase& trailer() const { return trailer_; }
  const RuleBase& cab() const { return cab_; }

  fuzzy::Defuzzified trailer_detailed(double x, double alpha) const {
    if (!std::isfinite(x) || !std::isfinite(alpha)) {
      throw InputDomainError("flc_t: inputs must be finite");
    }
    const std::array<double, 2> in{x, alpha};
    return fuzzy::infer_detailed(trailer_, in);
  }

  fuzzy::Defuzzified cab_detailed(double gamma) const {
    if (!std::isfinite(gamma)) throw InputDomainError("flc_c: input must be finite");
    const std::array<double, 1> in{gamma};
    return fuzzy::infer_detailed(cab_, in);
  }

  /// Commanded cab angle beta' for trailer position x and heading alpha.
  double flc_t(double x, double alpha) const { return trailer_detailed(x, alpha).value; }

  /// Steering angle for the cab-angle error gamma.
  double flc_c(double gamma) const { return cab_detailed(gamma).value; }

  CascadeOutput cascade_step(const PlantState& state) const {
    CascadeOutput out;
    const auto t = trailer_detailed(state.x, state.alpha);
    if (!std::isfinite(state.beta)) throw InputDomainError("cascade: beta must be finite");
    out.beta_prime = t.value;
    out.gamma = cab_.antecedents()[0].universe().clamp(t.value - state.beta);
    const auto c = cab_detailed(out.gamma);
    out.theta = c.value;
    out.fallback = t.fallback || c.fallback;
    return out;
  }

  io::Json to_json() const { return {{"flc_t", fuzzy::to_json(trailer_)}, {"flc_c", fuzzy::to_json(cab_)}}; }

  /// Replaces either controller from a {"flc_t": ..., "flc_c": ...} document.
  CascadeController with_overrides(const io::Json& doc) const {
    io::check_keys(doc, {"flc_t", "flc_c"}, "controllers");
    RuleBase t = doc.contains("flc_t") ? fuzzy::rule_base_from_json(doc["flc_t"], "controllers.flc_t") : trailer_;
    RuleBase c = doc.contains("flc_c") ? fuzzy::rule_base_from_json(doc["flc_c"], "controllers.flc_c") : cab_;
    return CascadeController(std::move(t), std::move(c));
  }

 private:
  RuleBase trailer_;
  RuleBase cab_;
};

/// Shared instance built from default_design().
inline const CascadeController& default_controller() {
  static const CascadeController instance;
  return instance;
}

inline double flc_t(double x, double alpha) { return default_controller().flc_t(x, alpha); }
inline double flc_c(double gamma) { return default_controller().flc_c(gamma); }
inline CascadeOutput cascade_step(const PlantState& state) {
  return default_controller().cascade_step(state);
}

}  // namespace trailerfuzz
