#pragma once

#include <cstddef>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>

#include "trailerfuzz/controllers.hpp"
#include "trailerfuzz/io/csv.hpp"
#include "trailerfuzz/io/scenario_file.hpp"
#include "trailerfuzz/io/svg.hpp"
#include "trailerfuzz/simulation.hpp"

namespace trailerfuzz::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kFailure = 2 };

struct Console {
  std::ostream& out;
  std::ostream& err;
};

struct RunOptions {
  std::string scenario_path;
  std::string out_dir;
  std::optional<Mode> mode;
  std::optional<std::string> controllers_path;
  std::optional<std::size_t> max_steps;
  std::size_t tick_every = 20;
};

struct SweepOptions {
  std::string grid_path;
  std::string out_dir;
  std::optional<std::string> controllers_path;
  std::optional<std::size_t> max_steps;
  unsigned threads = std::thread::hardware_concurrency();
};

struct SurfaceOptions {
  std::string controller;
  std::size_t resolution = 41;
  std::string out_path;
  std::optional<std::string> controllers_path;
};

inline CascadeController load_controllers(const std::optional<std::string>& path) {
  if (!path) return default_controller();
  return default_controller().with_overrides(io::load_json_file(*path));
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError(p.string() + ": cannot open for writing");
  return f;
}

inline void ensure_dir(const std::string& dir) {
  if (dir.empty()) throw UsageError("--out is required");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(dir + ": cannot create directory (" + ec.message() + ")");
}

}  // namespace detail

/// Writes trajectory.csv, outcome.json and trajectory.svg for one scenario.
inline int cmd_run(const RunOptions& opt, Console con) {
  RunResult result;
  Scenario scenario;
  try {
    scenario = io::load_scenario(opt.scenario_path);
    if (opt.mode) scenario.mode = *opt.mode;
    if (opt.max_steps) scenario.max_steps = *opt.max_steps;
    scenario.validate();
    const CascadeController ctl = load_controllers(opt.controllers_path);
    detail::ensure_dir(opt.out_dir);
    result = run(scenario, ctl);

    const std::filesystem::path dir(opt.out_dir);
    {
      auto f = detail::open_output(dir / "trajectory.csv");
      io::write_trajectory_csv(f, result);
    }
    {
      auto f = detail::open_output(dir / "outcome.json");
      f << io::outcome_to_json(scenario, result).dump(2) << '\n';
    }
    {
      auto f = detail::open_output(dir / "trajectory.svg");
      io::SvgOptions svg;
      svg.tick_every = opt.tick_every;
      io::write_trajectory_svg(f, result, svg);
    }
  } catch (const std::exception& e) {
    con.err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  for (const Trajectory* t : result.trajectories()) {
    const Outcome& o = t->outcome;
    con.out << scenario.label << " [" << to_string(t->mode) << "]: " << to_string(o.kind) << " after " << o.steps
            << " steps at (x=" << o.final_state.x << ", y=" << o.final_state.y << ", alpha=" << o.final_state.alpha
            << ")\n";
    if (!o.message.empty()) con.err << "run error: " << o.message << '\n';
  }
  return result.all_docked() ? kSuccess : kFailure;
}

/// Writes sweep.csv and summary.json for a grid of initial conditions.
inline int cmd_sweep(const SweepOptions& opt, Console con) {
  try {
    io::GridSpec spec = io::load_grid(opt.grid_path);
    if (opt.max_steps) spec.base.max_steps = *opt.max_steps;
    if (spec.grid.size() == 0) throw UsageError("sweep grid is empty (an axis has count 0)");
    const CascadeController ctl = load_controllers(opt.controllers_path);
    detail::ensure_dir(opt.out_dir);
    const SweepReport report = sweep(spec.grid, spec.base, ctl, opt.threads);

    const std::filesystem::path dir(opt.out_dir);
    {
      auto f = detail::open_output(dir / "sweep.csv");
      io::write_sweep_csv(f, report);
    }
    {
      auto f = detail::open_output(dir / "summary.json");
      f << io::sweep_summary_to_json(report).dump(2) << '\n';
    }
    con.out << report.cells.size() << " cells, success ratio " << report.success_ratio << '\n';
  } catch (const std::exception& e) {
    con.err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kSuccess;
}

/// Samples a controller over a uniform grid of its input universe(s).
inline int cmd_surface(const SurfaceOptions& opt, Console con) {
  try {
    if (opt.controller != "flc_t" && opt.controller != "flc_c") {
      throw UsageError("unknown controller '" + opt.controller + "' (expected flc_t or flc_c)");
    }
    if (opt.resolution < 2) throw UsageError("--resolution must be at least 2");
    if (opt.out_path.empty()) throw UsageError("--out is required");
    const CascadeController ctl = load_controllers(opt.controllers_path);
    auto f = detail::open_output(opt.out_path);
    const std::size_t n = opt.resolution;
    if (opt.controller == "flc_c") {
      const Interval g = ctl.cab().antecedents()[0].universe();
      const Axis axis{g.lo, g.hi, n};
      f << "gamma_deg,theta_deg\n";
      for (std::size_t i = 0; i < n; ++i) {
        const double gamma = axis.at(i);
        f << io::format_number(gamma) << ',' << io::format_number(ctl.flc_c(gamma)) << '\n';
      }
    } else {
      const Interval xu = ctl.trailer().antecedents()[0].universe();
      const Interval au = ctl.trailer().antecedents()[1].universe();
      const Axis xs{xu.lo, xu.hi, n}, as{au.lo, au.hi, n};
      f << "x,alpha_deg,beta_prime_deg\n";
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          f << io::format_number(xs.at(i)) << ',' << io::format_number(as.at(j)) << ','
            << io::format_number(ctl.flc_t(xs.at(i), as.at(j))) << '\n';
        }
      }
    }
    con.out << "wrote " << opt.out_path << '\n';
  } catch (const std::exception& e) {
    con.err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kSuccess;
}

}  // namespace trailerfuzz::cli
