#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "trailerfuzz/errors.hpp"
#include "trailerfuzz/simulation.hpp"

namespace trailerfuzz::io {

/// Shortest-round-trip-safe decimal rendering (17 significant digits).
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("invalid number '" + std::string(text) + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline constexpr std::string_view kTrajectoryHeader =
    "step,x,y,alpha_deg,beta_deg,beta_prime_deg,gamma_deg,theta_deg,mode";

inline void write_trajectory_csv(std::ostream& out, const RunResult& result) {
  out << kTrajectoryHeader << '\n';
  for (const Trajectory* t : result.trajectories()) {
    const std::string_view mode = to_string(t->mode);
    for (const Sample& s : t->samples) {
      out << s.step << ',' << format_number(s.state.x) << ',' << format_number(s.state.y) << ','
          << format_number(s.state.alpha) << ',' << format_number(s.state.beta) << ','
          << format_number(s.beta_prime) << ',' << format_number(s.gamma) << ','
          << format_number(s.theta) << ',' << mode << '\n';
    }
  }
}

struct CsvTrajectoryRow {
  std::size_t step = 0;
  Sample sample;
  Mode mode = Mode::cascade;
};

inline std::vector<CsvTrajectoryRow> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) {
    throw ConfigError("trajectory CSV: unexpected header");
  }
  std::vector<CsvTrajectoryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw ConfigError("trajectory CSV: expected 9 columns");
    CsvTrajectoryRow r;
    r.step = static_cast<std::size_t>(parse_number(f[0]));
    r.sample = {r.step,
                {parse_number(f[1]), parse_number(f[2]), parse_number(f[3]), parse_number(f[4])},
                parse_number(f[5]),
                parse_number(f[6]),
                parse_number(f[7])};
    r.mode = mode_from_string(f[8]);
    rows.push_back(r);
  }
  return rows;
}

inline constexpr std::string_view kSweepHeader = "x0,y0,alpha0,beta0,outcome,steps";

inline void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << kSweepHeader << '\n';
  for (const SweepCell& c : report.cells) {
    out << format_number(c.initial.x) << ',' << format_number(c.initial.y) << ','
        << format_number(c.initial.alpha) << ',' << format_number(c.initial.beta) << ','
        << to_string(c.kind) << ',' << c.steps << '\n';
  }
}

}  // namespace trailerfuzz::io
