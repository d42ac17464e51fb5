#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "trailerfuzz/controllers.hpp"
#include "trailerfuzz/errors.hpp"
#include "trailerfuzz/plant.hpp"

namespace trailerfuzz {

enum class Mode { cascade, reference, both };

constexpr std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::cascade:
      return "cascade";
    case Mode::reference:
      return "reference";
    case Mode::both:
      return "both";
  }
  return "?";
}

inline Mode mode_from_string(std::string_view s) {
  if (s == "cascade") return Mode::cascade;
  if (s == "reference") return Mode::reference;
  if (s == "both") return Mode::both;
  throw UsageError("unknown mode '" + std::string(s) + "' (expected cascade, reference or both)");
}

struct Scenario {
  std::string label = "scenario";
  PlantState initial;
  PlantParams params;
  DockTolerance tolerance;
  std::size_t max_steps = 1000;
  Mode mode = Mode::cascade;

  /// Checks the plant constraints on the initial state and the parameters.
  void validate() const {
    if (!initial.finite()) throw UsageError("initial state must be finite");
    if (initial.y < 0.0) throw UsageError("initial y must satisfy y >= 0");
    if (std::abs(initial.x) > 100.0) throw UsageError("initial x must satisfy -100 <= x <= 100");
    if (std::abs(initial.alpha) > 180.0) {
      throw UsageError("initial alpha must satisfy -180 <= alpha <= 180");
    }
    if (max_steps < 1) throw UsageError("max_steps must be at least 1");
    params.validate();
  }

  TerminationLimits limits() const {
    return {tolerance, max_steps, params.jackknife_limit, 100.0};
  }

  Scenario mirrored() const {
    Scenario s = *this;
    s.initial = initial.mirrored();
    return s;
  }
};

struct Sample {
  std::size_t step = 0;
  PlantState state;
  double beta_prime = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
};

/**
 * One closed-loop run.
 *
 * samples[t] holds the state at step t and the controller outputs computed
 * from it; the last sample's outputs are evaluated but never applied.
 * diagnostics[t] describes the transition from samples[t] to samples[t + 1].
 */
struct Trajectory {
  Mode mode = Mode::cascade;
  std::vector<Sample> samples;
  std::vector<StepDiagnostics> diagnostics;
  Outcome outcome;
  std::size_t fallback_count = 0;
};

struct RunResult {
  std::optional<Trajectory> cascade;
  std::optional<Trajectory> reference;

  std::vector<const Trajectory*> trajectories() const {
    std::vector<const Trajectory*> out;
    if (cascade) out.push_back(&*cascade);
    if (reference) out.push_back(&*reference);
    return out;
  }

  bool all_docked() const {
    for (const Trajectory* t : trajectories()) {
      if (t->outcome.kind != OutcomeKind::docked) return false;
    }
    return cascade || reference;
  }
};

namespace detail {

inline Sample make_sample(const CascadeController& ctl, Mode mode, std::size_t step,
                          const PlantState& s, bool& fallback) {
  Sample out{step, s, 0.0, 0.0, 0.0};
  if (mode == Mode::cascade) {
    const CascadeOutput c = ctl.cascade_step(s);
    out.beta_prime = c.beta_prime;
    out.gamma = c.gamma;
    out.theta = c.theta;
    fallback = c.fallback;
  } else {
    const auto t = ctl.trailer_detailed(s.x, s.alpha);
    out.beta_prime = t.value;
    out.gamma = ctl.cab().antecedents()[0].universe().clamp(t.value - s.beta);
    fallback = t.fallback;
  }
  return out;
}

}  // namespace detail

/// Runs one mode (cascade or reference) to termination.
inline Trajectory run_mode(const Scenario& scenario, Mode mode,
                           const CascadeController& ctl = default_controller()) {
  if (mode == Mode::both) throw UsageError("run_mode needs a single mode");
  Trajectory traj;
  traj.mode = mode;
  const TerminationLimits limits = scenario.limits();
  const PlantParams& p = scenario.params;

  PlantState state = scenario.initial;
  std::optional<double> raw_beta;
  try {
    for (std::size_t t = 0;; ++t) {
      bool fallback = false;
      traj.samples.push_back(detail::make_sample(ctl, mode, t, state, fallback));
      if (auto kind = classify(state, t, limits, raw_beta)) {
        traj.outcome = {*kind, state, t, {}};
        return traj;
      }
      traj.fallback_count += fallback ? 1 : 0;
      const Sample& cur = traj.samples.back();
      const StepResult r = mode == Mode::cascade
                               ? advance(state, cur.theta, p)
                               : advance_reference(state,
                                                   p.clamp_command ? std::clamp(cur.beta_prime, -p.beta_max, p.beta_max)
                                                                   : cur.beta_prime,
                                                   p);
      traj.diagnostics.push_back(r.diagnostics);
      state = r.state;
      raw_beta = r.diagnostics.unclamped_beta;
    }
  } catch (const std::exception& e) {
    // The sample for the failing state may be missing; keep samples/steps consistent.
    if (traj.samples.size() == traj.diagnostics.size()) {
      traj.samples.push_back({traj.diagnostics.size(), state, NAN, NAN, NAN});
    }
    traj.outcome = {OutcomeKind::error, state, traj.diagnostics.size(), e.what()};
  }
  return traj;
}

inline RunResult run(const Scenario& scenario, const CascadeController& ctl = default_controller()) {
  scenario.validate();
  RunResult out;
  if (scenario.mode != Mode::reference) out.cascade = run_mode(scenario, Mode::cascade, ctl);
  if (scenario.mode != Mode::cascade) out.reference = run_mode(scenario, Mode::reference, ctl);
  return out;
}

struct Convergence {
  std::vector<double> distance;  // per-step planar distance
  double tail_mean = 0.0;        // mean over the last 10 entries
};

/// Per-step (x, y) distance between two runs, truncated to the shorter one.
inline Convergence convergence_metric(const Trajectory& a, const Trajectory& b) {
  if (a.samples.empty() || b.samples.empty()) throw UsageError("convergence_metric: empty trajectory");
  Convergence c;
  const std::size_t n = std::min(a.samples.size(), b.samples.size());
  c.distance.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PlantState& p = a.samples[i].state;
    const PlantState& q = b.samples[i].state;
    c.distance.push_back(std::hypot(p.x - q.x, p.y - q.y));
  }
  const std::size_t tail = std::min<std::size_t>(10, n);
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += c.distance[i];
  c.tail_mean = sum / static_cast<double>(tail);
  return c;
}

/// Windowed summary used to judge whether two runs draw together over time.
struct ConvergenceWindows {
  double early_max = 0.0;  // max over the first 10% of steps after the warm-up
  double late_mean = 0.0;  // mean over the last 10% of steps
};

inline ConvergenceWindows convergence_windows(const Convergence& c, std::size_t warmup = 5) {
  const std::size_t n = c.distance.size();
  if (n <= warmup + 1) throw UsageError("convergence_windows: trajectory too short");
  const std::size_t window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n - warmup))));
  ConvergenceWindows w;
  for (std::size_t i = warmup; i < std::min(n, warmup + window); ++i) {
    w.early_max = std::max(w.early_max, c.distance[i]);
  }
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += c.distance[i];
  w.late_mean = sum / static_cast<double>(tail);
  return w;
}

/// Uniform grid along one axis: count points from min to max inclusive.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  double at(std::size_t i) const {
    if (count == 1) return min;
    const double n = static_cast<double>(count - 1);
    // Symmetric blend so a negated axis yields exactly negated values.
    return (static_cast<double>(count - 1 - i) * min + static_cast<double>(i) * max) / n;
  }

  /// Negated axis; point i maps to -at(i).
  Axis mirrored() const { return {-min, -max, count}; }
};

struct SweepGrid {
  Axis x;
  Axis y;
  Axis alpha;
  Axis beta;

  std::size_t size() const { return x.count * y.count * alpha.count * beta.count; }

  /// Initial state of cell `i`; x varies slowest, beta fastest.
  PlantState cell(std::size_t i) const {
    const std::size_t ib = i % beta.count;
    i /= beta.count;
    const std::size_t ia = i % alpha.count;
    i /= alpha.count;
    const std::size_t iy = i % y.count;
    const std::size_t ix = i / y.count;
    return {x.at(ix), y.at(iy), alpha.at(ia), beta.at(ib)};
  }

  SweepGrid mirrored() const { return {x.mirrored(), y, alpha.mirrored(), beta.mirrored()}; }
};

struct SweepCell {
  PlantState initial;
  OutcomeKind kind = OutcomeKind::error;
  std::size_t steps = 0;
  std::string message;
};

struct SweepReport {
  SweepGrid grid;
  std::vector<SweepCell> cells;
  std::map<OutcomeKind, std::size_t> counts;
  double success_ratio = 0.0;
};

/**
 * Runs every grid cell in cascade mode from `base` (whose initial state and
 * mode are overridden). Cells are independent and evaluated on up to
 * `threads` workers; per-cell failures become error outcomes.
 */
inline SweepReport sweep(const SweepGrid& grid, const Scenario& base,
                         const CascadeController& ctl = default_controller(),
                         unsigned threads = std::thread::hardware_concurrency()) {
  for (const Axis* a : {&grid.x, &grid.y, &grid.alpha, &grid.beta}) {
    if (a->count == 0) throw UsageError("sweep: every axis needs count >= 1");
    if (!std::isfinite(a->min) || !std::isfinite(a->max)) throw UsageError("sweep: axis bounds must be finite");
  }
  base.params.validate();

  SweepReport report;
  report.grid = grid;
  report.cells.resize(grid.size());

  auto evaluate = [&](std::size_t i) {
    SweepCell& cell = report.cells[i];
    cell.initial = grid.cell(i);
    Scenario s = base;
    s.initial = cell.initial;
    s.mode = Mode::cascade;
    try {
      s.validate();
      const Trajectory t = run_mode(s, Mode::cascade, ctl);
      cell.kind = t.outcome.kind;
      cell.steps = t.outcome.steps;
      cell.message = t.outcome.message;
    } catch (const std::exception& e) {
      cell.kind = OutcomeKind::error;
      cell.message = e.what();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, grid.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) evaluate(i);
      });
    }
  }

  std::size_t docked = 0;
  for (const SweepCell& c : report.cells) {
    ++report.counts[c.kind];
    docked += c.kind == OutcomeKind::docked ? 1 : 0;
  }
  report.success_ratio = static_cast<double>(docked) / static_cast<double>(report.cells.size());
  return report;
}

}  // namespace trailerfuzz
