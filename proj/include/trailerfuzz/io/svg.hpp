#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>

#include "trailerfuzz/io/csv.hpp"
#include "trailerfuzz/simulation.hpp"

namespace trailerfuzz::io {

struct SvgOptions {
  std::size_t tick_every = 20;  // heading tick spacing in steps; 0 disables ticks
  double tick_length = 8.0;     // drawn along the trailer body
  double margin = 10.0;
  double scale = 3.0;           // pixels per length unit
};

/**
 * Planar plot of a run: one polyline per executed mode, heading ticks
 * along each path and a marker at the dock.
 */
inline void write_trajectory_svg(std::ostream& out, const RunResult& result, const SvgOptions& opt = {}) {
  double min_x = -opt.tick_length, max_x = opt.tick_length;
  double min_y = -opt.tick_length, max_y = opt.tick_length;
  for (const Trajectory* t : result.trajectories()) {
    for (const Sample& s : t->samples) {
      if (!s.state.finite()) continue;
      min_x = std::min(min_x, s.state.x - opt.tick_length);
      max_x = std::max(max_x, s.state.x + opt.tick_length);
      min_y = std::min(min_y, s.state.y - opt.tick_length);
      max_y = std::max(max_y, s.state.y + opt.tick_length);
    }
  }
  const double width = (max_x - min_x) * opt.scale + 2 * opt.margin;
  const double height = (max_y - min_y) * opt.scale + 2 * opt.margin;
  // SVG y grows downwards.
  auto px = [&](double x) { return format_number((x - min_x) * opt.scale + opt.margin); };
  auto py = [&](double y) { return format_number((max_y - y) * opt.scale + opt.margin); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width) << "\" height=\""
      << format_number(height) << "\" viewBox=\"0 0 " << format_number(width) << ' ' << format_number(height)
      << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line class=\"dock-line\" x1=\"" << px(min_x) << "\" y1=\"" << py(0) << "\" x2=\"" << px(max_x)
      << "\" y2=\"" << py(0) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  out << "  <circle class=\"dock\" cx=\"" << px(0) << "\" cy=\"" << py(0)
      << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";

  for (const Trajectory* t : result.trajectories()) {
    const std::string mode(to_string(t->mode));
    const char* colour = t->mode == Mode::cascade ? "#1f77b4" : "#d62728";
    out << "  <g class=\"" << mode << "\">\n";
    out << "    <polyline class=\"path\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const Sample& s : t->samples) {
      if (!s.state.finite()) continue;
      out << (first ? "" : " ") << px(s.state.x) << ',' << py(s.state.y);
      first = false;
    }
    out << "\"/>\n";
    if (opt.tick_every > 0) {
      for (std::size_t i = 0; i < t->samples.size(); i += opt.tick_every) {
        const PlantState& s = t->samples[i].state;
        if (!s.finite()) continue;
        const double a = to_radians(s.alpha);
        const double ex = s.x + opt.tick_length * std::sin(a);
        const double ey = s.y + opt.tick_length * std::cos(a);
        out << "    <line class=\"heading\" x1=\"" << px(s.x) << "\" y1=\"" << py(s.y) << "\" x2=\"" << px(ex)
            << "\" y2=\"" << py(ey) << "\" stroke=\"" << colour << "\" stroke-opacity=\"0.6\"/>\n";
      }
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
}

}  // namespace trailerfuzz::io
