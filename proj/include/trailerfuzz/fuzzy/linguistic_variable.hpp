#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trailerfuzz/errors.hpp"
#include "trailerfuzz/fuzzy/membership.hpp"

namespace trailerfuzz::fuzzy {

struct Term {
  std::string label;
  MembershipFunction shape;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Per-term degrees, index-aligned with LinguisticVariable::terms().
using MembershipVector = std::vector<double>;

/**
 * A named universe of discourse with an ordered term set.
 *
 * Every breakpoint must lie inside the universe; labels are unique.
 */
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms)
      : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
    if (!std::isfinite(universe_.lo) || !std::isfinite(universe_.hi) ||
        !(universe_.lo < universe_.hi)) {
      throw ConfigError("variable '" + name_ + "': universe must be a finite interval lo < hi");
    }
    if (terms_.empty()) throw ConfigError("variable '" + name_ + "' has no terms");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const Term& t = terms_[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (terms_[j].label == t.label) {
          throw ConfigError("variable '" + name_ + "': duplicate term '" + t.label + "'");
        }
      }
      for (double b : t.shape.breakpoints()) {
        if (!universe_.contains(b)) {
          throw ConfigError("variable '" + name_ + "': term '" + t.label +
                            "' has a breakpoint outside the universe");
        }
      }
    }
  }

  const std::string& name() const { return name_; }
  Interval universe() const { return universe_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].label == label) return i;
    }
    return std::nullopt;
  }

  std::size_t require_index(const std::string& label) const {
    if (auto i = index_of(label)) return *i;
    throw ConfigError("variable '" + name_ + "' has no term '" + label + "'");
  }

  friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

 private:
  std::string name_;
  Interval universe_;
  std::vector<Term> terms_;
};

/// Clamps `u` into the universe and evaluates every term.
inline MembershipVector fuzzify(const LinguisticVariable& var, double u) {
  if (!std::isfinite(u)) {
    throw InputDomainError("variable '" + var.name() + "': crisp input is not finite");
  }
  const double clamped = var.universe().clamp(u);
  MembershipVector degrees;
  degrees.reserve(var.size());
  for (const Term& t : var.terms()) degrees.push_back(t.shape(clamped));
  return degrees;
}

inline std::map<std::string, double> fuzzify_labeled(const LinguisticVariable& var, double u) {
  const MembershipVector degrees = fuzzify(var, u);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < degrees.size(); ++i) out.emplace(var.terms()[i].label, degrees[i]);
  return out;
}

/**
 * Builds a strong triangular partition from ordered peaks.
 *
 * Interior terms are triangles whose feet are the neighbouring peaks; the
 * outermost terms are shoulders whose plateau runs from the first/last peak to
 * the universe bound. Degrees sum to one everywhere in the universe.
 */
inline LinguisticVariable make_partition(std::string name, Interval universe,
                                         const std::vector<std::string>& labels,
                                         const std::vector<double>& peaks) {
  if (labels.size() != peaks.size() || labels.size() < 2) {
    throw ConfigError("partition '" + name + "' needs matching labels and at least two peaks");
  }
  std::vector<Term> terms;
  const std::size_t n = peaks.size();
  for (std::size_t i = 0; i < n; ++i) {
    MembershipFunction shape =
        i == 0       ? MembershipFunction::left_shoulder(peaks[0], peaks[1])
        : i == n - 1 ? MembershipFunction::right_shoulder(peaks[n - 2], peaks[n - 1])
                     : MembershipFunction::triangular(peaks[i - 1], peaks[i], peaks[i + 1]);
    terms.push_back({labels[i], shape});
  }
  return LinguisticVariable(std::move(name), universe, std::move(terms));
}

}  // namespace trailerfuzz::fuzzy
