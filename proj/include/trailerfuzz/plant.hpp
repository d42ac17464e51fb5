#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "trailerfuzz/errors.hpp"

namespace trailerfuzz {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;
inline constexpr double kRadPerDeg = std::numbers::pi / 180.0;

constexpr double to_radians(double deg) { return deg * kRadPerDeg; }
constexpr double to_degrees(double rad) { return rad * kDegPerRad; }

/// Wraps an angle in degrees into (-180, 180].
inline double wrap_degrees(double deg) {
  double r = std::remainder(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  return r;
}

/**
 * Configuration of the cab-trailer system at one time step.
 *
 * (x, y) is the centre rear of the trailer with the dock at the origin, alpha
 * the trailer heading measured from the y axis and beta the cab heading
 * relative to the trailer. Angles are in degrees.
 */
struct PlantState {
  double x = 0.0;
  double y = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(alpha) && std::isfinite(beta);
  }

  /// Reflection through the y axis.
  PlantState mirrored() const { return {-x, y, -alpha, -beta}; }

  friend bool operator==(const PlantState&, const PlantState&) = default;
};

struct PlantParams {
  double v = 1.0;        // distance backed per step
  double l_c = 2.0;      // cab length
  double l_t = 8.0;      // trailer length
  double theta_max = 30.0;
  double beta_max = 30.0;
  double jackknife_limit = 90.0;
  // Clamp beta to +-beta_max after each step.
  bool clamp_beta = true;
  // Reference mode: clamp the commanded beta to +-beta_max. When off, an
  // out-of-range command ends the run with an error outcome.
  bool clamp_command = true;

  void validate() const {
    auto bad = [](const std::string& what) { throw UsageError("plant parameters: " + what); };
    if (!(v > 0.0) || !std::isfinite(v)) bad("v must be positive");
    if (!(l_c > 0.0) || !std::isfinite(l_c)) bad("l_c must be positive");
    if (!(l_t > 0.0) || !std::isfinite(l_t)) bad("l_t must be positive");
    if (!(theta_max > 0.0 && theta_max <= 90.0)) bad("theta_max must lie in (0, 90]");
    if (!(beta_max > 0.0 && beta_max <= jackknife_limit)) bad("beta_max must lie in (0, jackknife_limit]");
    if (!std::isfinite(jackknife_limit)) bad("jackknife_limit must be finite");
  }
};

/// Per-step by-products of the kinematic update.
struct StepDiagnostics {
  double cab_displacement = 0.0;      // d_c
  double trailer_displacement = 0.0;  // d_t
  double unclamped_beta = 0.0;        // beta before the operating clamp
  bool asin_clamped = false;          // an arcsin argument left [-1, 1]
};

struct StepResult {
  PlantState state;
  StepDiagnostics diagnostics;
};

namespace detail {

struct ClampedAsin {
  double degrees;
  bool clamped;
};

inline ClampedAsin asin_degrees(double arg) {
  const bool clamped = arg < -1.0 || arg > 1.0;
  const double a = clamped ? (arg < 0.0 ? -1.0 : 1.0) : arg;
  return {to_degrees(std::asin(a)), clamped};
}

inline void require_finite(const PlantState& s) {
  if (!s.finite()) throw InputDomainError("plant state is not finite");
}

// Trailer motion shared by both stepping modes. Leaves beta untouched.
inline StepResult move_trailer(const PlantState& s, double theta, const PlantParams& p) {
  StepResult out;
  const double d_c = -p.v * std::cos(to_radians(theta));
  const double d_t = d_c * std::cos(to_radians(s.beta));
  const double alpha_rad = to_radians(s.alpha);
  const auto turn = asin_degrees(d_c * std::sin(to_radians(s.beta)) / p.l_t);

  out.state.x = s.x + d_t * std::sin(alpha_rad);
  out.state.y = s.y + d_t * std::cos(alpha_rad);
  out.state.alpha = wrap_degrees(s.alpha - turn.degrees);
  out.state.beta = s.beta;
  out.diagnostics.cab_displacement = d_c;
  out.diagnostics.trailer_displacement = d_t;
  out.diagnostics.asin_clamped = turn.clamped;
  return out;
}

inline void finish_beta(StepResult& r, double raw_beta, const PlantParams& p) {
  r.diagnostics.unclamped_beta = raw_beta;
  r.state.beta = p.clamp_beta ? std::clamp(raw_beta, -p.beta_max, p.beta_max) : raw_beta;
}

}  // namespace detail

/// One kinematic step under steering angle `theta`, with diagnostics.
inline StepResult advance(const PlantState& state, double theta, const PlantParams& params) {
  detail::require_finite(state);
  if (!std::isfinite(theta)) throw InputDomainError("steering angle is not finite");
  if (std::abs(theta) > params.theta_max) {
    throw UsageError("steering angle exceeds theta_max");
  }
  StepResult r = detail::move_trailer(state, theta, params);
  const auto cab = detail::asin_degrees(-params.v * std::sin(to_radians(theta)) / params.l_c);
  r.diagnostics.asin_clamped = r.diagnostics.asin_clamped || cab.clamped;
  detail::finish_beta(r, state.beta - cab.degrees, params);
  return r;
}

inline PlantState step(const PlantState& state, double theta, const PlantParams& params) {
  return advance(state, theta, params).state;
}

/**
 * Idealised step in which the trailer steers itself: the trailer moves as in
 * advance() with zero cab steering, then beta is set to `beta_command`.
 */
inline StepResult advance_reference(const PlantState& state, double beta_command,
                                    const PlantParams& params) {
  detail::require_finite(state);
  if (!std::isfinite(beta_command)) throw InputDomainError("beta command is not finite");
  if (std::abs(beta_command) > params.beta_max) {
    throw UsageError("beta command exceeds beta_max");
  }
  StepResult r = detail::move_trailer(state, 0.0, params);
  detail::finish_beta(r, beta_command, params);
  return r;
}

inline PlantState step_reference(const PlantState& state, double beta_command,
                                 const PlantParams& params) {
  return advance_reference(state, beta_command, params).state;
}

struct DockTolerance {
  double x_tol = 2.0;
  double y_tol = 1.0;
  double alpha_tol = 10.0;
};

inline bool dock_check(const PlantState& s, const DockTolerance& tol = {}) {
  return std::abs(s.x) <= tol.x_tol && s.y <= tol.y_tol && std::abs(s.alpha) <= tol.alpha_tol;
}

enum class OutcomeKind { docked, out_of_bounds, jackknifed, timeout, insufficient_space, error };

constexpr std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::docked:
      return "docked";
    case OutcomeKind::out_of_bounds:
      return "out-of-bounds";
    case OutcomeKind::jackknifed:
      return "jackknifed";
    case OutcomeKind::timeout:
      return "timeout";
    case OutcomeKind::insufficient_space:
      return "insufficient-space";
    case OutcomeKind::error:
      return "error";
  }
  return "?";
}

struct Outcome {
  OutcomeKind kind = OutcomeKind::error;
  PlantState final_state;
  std::size_t steps = 0;
  std::string message;  // populated for error outcomes
};

/// Thresholds used to decide whether a run has terminated.
struct TerminationLimits {
  DockTolerance tolerance;
  std::size_t max_steps = 1000;
  double jackknife_limit = 90.0;
  // Out of bounds once |x| exceeds three times this.
  double x_bound = 100.0;
};

/**
 * Terminal classification of a state, or nullopt while the run is live.
 *
 * `unclamped_beta` is the cab angle before the operating clamp; it defaults
 * to the state's own beta.
 */
inline std::optional<OutcomeKind> classify(const PlantState& s, std::size_t step_count,
                                           const TerminationLimits& limits,
                                           std::optional<double> unclamped_beta = std::nullopt) {
  if (dock_check(s, limits.tolerance)) return OutcomeKind::docked;
  if (std::abs(unclamped_beta.value_or(s.beta)) > limits.jackknife_limit) {
    return OutcomeKind::jackknifed;
  }
  if (s.y <= 0.0) return OutcomeKind::insufficient_space;
  if (std::abs(s.x) > 3.0 * limits.x_bound) return OutcomeKind::out_of_bounds;
  if (step_count >= limits.max_steps) return OutcomeKind::timeout;
  return std::nullopt;
}

}  // namespace trailerfuzz
