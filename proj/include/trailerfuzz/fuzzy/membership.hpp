#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <string_view>

#include "trailerfuzz/errors.hpp"

namespace trailerfuzz::fuzzy {

/// Closed interval of crisp values.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr double midpoint() const { return 0.5 * (lo + hi); }
  constexpr double width() const { return hi - lo; }
  constexpr bool contains(double u) const { return lo <= u && u <= hi; }
  constexpr double clamp(double u) const { return u < lo ? lo : (u > hi ? hi : u); }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

enum class MembershipKind { triangular, left_shoulder, right_shoulder };

constexpr std::string_view to_string(MembershipKind kind) {
  switch (kind) {
    case MembershipKind::triangular:
      return "triangular";
    case MembershipKind::left_shoulder:
      return "left-shoulder";
    case MembershipKind::right_shoulder:
      return "right-shoulder";
  }
  return "?";
}

inline MembershipKind membership_kind_from_string(std::string_view name) {
  if (name == "triangular") return MembershipKind::triangular;
  if (name == "left-shoulder") return MembershipKind::left_shoulder;
  if (name == "right-shoulder") return MembershipKind::right_shoulder;
  throw ConfigError("unknown membership kind '" + std::string(name) + "'");
}

/// Area and first moment of a membership shape restricted to an interval.
struct Moments {
  double area = 0.0;
  double moment = 0.0;

  double centroid() const { return moment / area; }
};

/**
 * Piecewise-linear membership shape.
 *
 * Breakpoints are strictly increasing:
 *   triangular     (left foot, peak, right foot)
 *   left-shoulder  (plateau edge, foot)   -- 1 for u <= plateau edge
 *   right-shoulder (foot, plateau edge)   -- 1 for u >= plateau edge
 */
class MembershipFunction {
 public:
  static MembershipFunction triangular(double left_foot, double peak, double right_foot) {
    return MembershipFunction(MembershipKind::triangular, {left_foot, peak, right_foot});
  }
  static MembershipFunction left_shoulder(double plateau_edge, double foot) {
    return MembershipFunction(MembershipKind::left_shoulder, {plateau_edge, foot, 0.0});
  }
  static MembershipFunction right_shoulder(double foot, double plateau_edge) {
    return MembershipFunction(MembershipKind::right_shoulder, {foot, plateau_edge, 0.0});
  }

  static MembershipFunction from_breakpoints(MembershipKind kind, std::span<const double> points) {
    const std::size_t expected = kind == MembershipKind::triangular ? 3 : 2;
    if (points.size() != expected) {
      std::ostringstream msg;
      msg << to_string(kind) << " membership needs " << expected << " breakpoints, got "
          << points.size();
      throw ConfigError(msg.str());
    }
    std::array<double, 3> bp{};
    for (std::size_t i = 0; i < points.size(); ++i) bp[i] = points[i];
    return MembershipFunction(kind, bp);
  }

  MembershipKind kind() const { return kind_; }

  std::span<const double> breakpoints() const {
    return {bp_.data(), kind_ == MembershipKind::triangular ? std::size_t{3} : std::size_t{2}};
  }

  /// Degree of membership; 0 for NaN.
  double operator()(double u) const {
    if (std::isnan(u)) return 0.0;
    switch (kind_) {
      case MembershipKind::triangular: {
        const double a = bp_[0], b = bp_[1], c = bp_[2];
        if (u <= a || u >= c) return 0.0;
        if (u == b) return 1.0;
        return u < b ? (u - a) / (b - a) : (c - u) / (c - b);
      }
      case MembershipKind::left_shoulder: {
        const double edge = bp_[0], foot = bp_[1];
        if (u <= edge) return 1.0;
        if (u >= foot) return 0.0;
        return (foot - u) / (foot - edge);
      }
      case MembershipKind::right_shoulder: {
        const double foot = bp_[0], edge = bp_[1];
        if (u >= edge) return 1.0;
        if (u <= foot) return 0.0;
        return (u - foot) / (edge - foot);
      }
    }
    return 0.0;
  }

  /// Lowest and highest abscissa where the shape is nonzero, before truncation to a universe.
  Interval support() const {
    constexpr double inf = HUGE_VAL;
    switch (kind_) {
      case MembershipKind::triangular:
        return {bp_[0], bp_[2]};
      case MembershipKind::left_shoulder:
        return {-inf, bp_[1]};
      case MembershipKind::right_shoulder:
        return {bp_[0], inf};
    }
    return {};
  }

  /// Exact area and first moment of the shape truncated to `range`.
  Moments moments(Interval range) const {
    std::array<double, 5> knots{};
    std::size_t n = 0;
    knots[n++] = range.lo;
    for (double b : breakpoints()) {
      if (b > range.lo && b < range.hi) knots[n++] = b;
    }
    knots[n++] = range.hi;

    Moments m;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double u0 = knots[i], u1 = knots[i + 1];
      const double f0 = (*this)(u0), f1 = (*this)(u1);
      const double h = u1 - u0;
      m.area += 0.5 * h * (f0 + f1);
      m.moment += h / 6.0 * (f0 * (2.0 * u0 + u1) + f1 * (u0 + 2.0 * u1));
    }
    return m;
  }

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

 private:
  MembershipFunction(MembershipKind kind, std::array<double, 3> bp) : kind_(kind), bp_(bp) {
    const auto pts = breakpoints();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!std::isfinite(pts[i])) throw ConfigError("membership breakpoints must be finite");
      if (i > 0 && !(pts[i - 1] < pts[i])) {
        throw ConfigError(std::string(to_string(kind)) +
                          " membership breakpoints must be strictly increasing");
      }
    }
  }

  MembershipKind kind_;
  std::array<double, 3> bp_;
};

/// Free-function form of MembershipFunction::operator().
inline double eval_membership(const MembershipFunction& mf, double u) { return mf(u); }

}  // namespace trailerfuzz::fuzzy
