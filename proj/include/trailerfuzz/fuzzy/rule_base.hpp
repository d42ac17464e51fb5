#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trailerfuzz/errors.hpp"
#include "trailerfuzz/fuzzy/linguistic_variable.hpp"

namespace trailerfuzz::fuzzy {

/// One rule in label form: IF antecedent[0] AND antecedent[1] ... THEN consequent.
struct Rule {
  std::vector<std::string> antecedents;
  std::string consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Per-rule activation weights, index-aligned with RuleBase::rules().
using FiringVector = std::vector<double>;

/**
 * Single-output Mamdani rule base.
 *
 * The rule set must be total: every combination of antecedent terms appears
 * exactly once. Rules keep the order they were supplied in.
 */
class RuleBase {
 public:
  RuleBase(std::string name, std::vector<LinguisticVariable> antecedents,
           LinguisticVariable consequent, std::vector<Rule> rules)
      : name_(std::move(name)),
        antecedents_(std::move(antecedents)),
        consequent_(std::move(consequent)),
        rules_(std::move(rules)) {
    if (antecedents_.empty()) throw ConfigError("rule base '" + name_ + "' has no antecedents");

    std::size_t combinations = 1;
    for (const auto& v : antecedents_) combinations *= v.size();
    if (rules_.size() != combinations) {
      throw ConfigError("rule base '" + name_ + "' must hold exactly " +
                        std::to_string(combinations) + " rules, got " +
                        std::to_string(rules_.size()));
    }

    std::vector<bool> seen(combinations, false);
    resolved_.reserve(rules_.size());
    for (const Rule& r : rules_) {
      if (r.antecedents.size() != antecedents_.size()) {
        throw ConfigError("rule base '" + name_ + "': rule arity does not match antecedents");
      }
      Resolved res;
      std::size_t slot = 0;
      for (std::size_t k = 0; k < antecedents_.size(); ++k) {
        const std::size_t idx = antecedents_[k].require_index(r.antecedents[k]);
        res.terms.push_back(idx);
        slot = slot * antecedents_[k].size() + idx;
      }
      if (seen[slot]) throw ConfigError("rule base '" + name_ + "': duplicate antecedent combination");
      seen[slot] = true;
      res.consequent = consequent_.require_index(r.consequent);
      resolved_.push_back(std::move(res));
    }

    for (const Term& t : consequent_.terms()) {
      const Moments m = t.shape.moments(consequent_.universe());
      if (!(m.area > 0.0)) {
        throw ConfigError("rule base '" + name_ + "': consequent term '" + t.label +
                          "' has zero area inside the universe");
      }
      consequent_moments_.push_back(m);
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<LinguisticVariable>& antecedents() const { return antecedents_; }
  const LinguisticVariable& consequent() const { return consequent_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

  std::span<const std::size_t> antecedent_terms(std::size_t rule) const {
    return resolved_.at(rule).terms;
  }
  std::size_t consequent_term(std::size_t rule) const { return resolved_.at(rule).consequent; }

  /// Area and moment of each consequent term over the consequent universe.
  const std::vector<Moments>& consequent_moments() const { return consequent_moments_; }

  /// Consequent label for a combination of antecedent labels.
  const std::string& lookup(const std::vector<std::string>& labels) const {
    for (const Rule& r : rules_) {
      if (r.antecedents == labels) return r.consequent;
    }
    throw UsageError("rule base '" + name_ + "': no rule for the given labels");
  }

 private:
  struct Resolved {
    std::vector<std::size_t> terms;
    std::size_t consequent = 0;
  };

  std::string name_;
  std::vector<LinguisticVariable> antecedents_;
  LinguisticVariable consequent_;
  std::vector<Rule> rules_;
  std::vector<Resolved> resolved_;
  std::vector<Moments> consequent_moments_;
};

/// Product t-norm over the fuzzified inputs.
inline FiringVector fire_rules(const RuleBase& rb, std::span<const double> inputs) {
  const auto& vars = rb.antecedents();
  if (inputs.size() != vars.size()) {
    throw UsageError("rule base '" + rb.name() + "' expects " + std::to_string(vars.size()) +
                     " inputs, got " + std::to_string(inputs.size()));
  }
  std::vector<MembershipVector> degrees;
  degrees.reserve(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) degrees.push_back(fuzzify(vars[k], inputs[k]));

  FiringVector fv(rb.size(), 0.0);
  for (std::size_t r = 0; r < rb.size(); ++r) {
    const auto terms = rb.antecedent_terms(r);
    double w = 1.0;
    for (std::size_t k = 0; k < terms.size() && w > 0.0; ++k) w *= degrees[k][terms[k]];
    fv[r] = w;
  }
  return fv;
}

struct Defuzzified {
  double value = 0.0;
  // Set when no rule fired and the universe midpoint was substituted.
  bool fallback = false;
};

/**
 * Centroid of the additive aggregate sum_r w_r * mu_r(u).
 *
 * Because the aggregate is a weighted sum of the consequent shapes, its
 * centroid reduces to sum(w * moment) / sum(w * area) over the stored
 * per-term moments.
 */
inline Defuzzified defuzzify_centroid(const RuleBase& rb, std::span<const double> fv) {
  if (fv.size() != rb.size()) {
    throw UsageError("rule base '" + rb.name() + "': firing vector has " +
                     std::to_string(fv.size()) + " entries, expected " +
                     std::to_string(rb.size()));
  }
  const auto& moments = rb.consequent_moments();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t r = 0; r < fv.size(); ++r) {
    const double w = fv[r];
    if (!(w >= 0.0 && w <= 1.0)) throw UsageError("firing weights must lie in [0, 1]");
    if (w == 0.0) continue;
    const Moments& m = moments[rb.consequent_term(r)];
    num += w * m.moment;
    den += w * m.area;
  }
  const Interval out = rb.consequent().universe();
  if (!(den > 0.0)) return {out.midpoint(), true};
  return {out.clamp(num / den), false};
}

inline Defuzzified infer_detailed(const RuleBase& rb, std::span<const double> inputs) {
  const FiringVector fv = fire_rules(rb, inputs);
  return defuzzify_centroid(rb, fv);
}

inline double infer(const RuleBase& rb, std::span<const double> inputs) {
  return infer_detailed(rb, inputs).value;
}

inline double infer(const RuleBase& rb, std::initializer_list<double> inputs) {
  return infer(rb, std::span<const double>(inputs.begin(), inputs.size()));
}

}  // namespace trailerfuzz::fuzzy
