#pragma once

// JSON (de)serialization of rule bases.
//
// {
//   "name": "flc_c",
//   "inputs": [ <variable>, ... ],
//   "output": <variable>,
//   "rules": [ {"if": ["NB"], "then": "NB"}, ... ]
// }
// <variable> = {"name": "G", "universe": [lo, hi],
//               "terms": [{"label": "NB", "kind": "left-shoulder", "breakpoints": [-60, -40]}, ...]}

#include <string>
#include <vector>

#include "trailerfuzz/fuzzy/rule_base.hpp"
#include "trailerfuzz/io/json_util.hpp"

namespace trailerfuzz::fuzzy {

inline io::Json to_json(const LinguisticVariable& var) {
  io::Json terms = io::Json::array();
  for (const Term& t : var.terms()) {
    const auto bp = t.shape.breakpoints();
    terms.push_back({{"label", t.label},
                     {"kind", std::string(to_string(t.shape.kind()))},
                     {"breakpoints", std::vector<double>(bp.begin(), bp.end())}});
  }
  return {{"name", var.name()},
          {"universe", {var.universe().lo, var.universe().hi}},
          {"terms", terms}};
}

inline io::Json to_json(const RuleBase& rb) {
  io::Json inputs = io::Json::array();
  for (const auto& v : rb.antecedents()) inputs.push_back(to_json(v));
  io::Json rules = io::Json::array();
  for (const Rule& r : rb.rules()) rules.push_back({{"if", r.antecedents}, {"then", r.consequent}});
  return {{"name", rb.name()}, {"inputs", inputs}, {"output", to_json(rb.consequent())},
          {"rules", rules}};
}

inline LinguisticVariable variable_from_json(const io::Json& j, const std::string& context) {
  io::check_keys(j, {"name", "universe", "terms"}, context);
  const std::string name = io::as_string(io::require(j, "name", context), context + ".name");
  const std::string ctx = context + "(" + name + ")";

  const io::Json& u = io::require(j, "universe", ctx);
  if (!u.is_array() || u.size() != 2) throw ConfigError(ctx + ".universe: expected [lo, hi]");
  const Interval universe{io::as_number(u[0], ctx + ".universe[0]"),
                          io::as_number(u[1], ctx + ".universe[1]")};

  const io::Json& ts = io::require(j, "terms", ctx);
  if (!ts.is_array()) throw ConfigError(ctx + ".terms: expected an array");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string tctx = ctx + ".terms[" + std::to_string(i) + "]";
    io::check_keys(ts[i], {"label", "kind", "breakpoints"}, tctx);
    const std::string label = io::as_string(io::require(ts[i], "label", tctx), tctx + ".label");
    const MembershipKind kind =
        membership_kind_from_string(io::as_string(io::require(ts[i], "kind", tctx), tctx + ".kind"));
    const io::Json& bpj = io::require(ts[i], "breakpoints", tctx);
    if (!bpj.is_array()) throw ConfigError(tctx + ".breakpoints: expected an array");
    std::vector<double> bp;
    for (const auto& b : bpj) bp.push_back(io::as_number(b, tctx + ".breakpoints"));
    terms.push_back({label, MembershipFunction::from_breakpoints(kind, bp)});
  }
  return LinguisticVariable(name, universe, std::move(terms));
}

inline RuleBase rule_base_from_json(const io::Json& j, const std::string& context = "controller") {
  io::check_keys(j, {"name", "inputs", "output", "rules"}, context);
  const std::string name = io::as_string(io::require(j, "name", context), context + ".name");

  const io::Json& in = io::require(j, "inputs", context);
  if (!in.is_array()) throw ConfigError(context + ".inputs: expected an array");
  std::vector<LinguisticVariable> inputs;
  for (std::size_t i = 0; i < in.size(); ++i) {
    inputs.push_back(variable_from_json(in[i], context + ".inputs[" + std::to_string(i) + "]"));
  }
  LinguisticVariable output = variable_from_json(io::require(j, "output", context), context + ".output");

  const io::Json& rs = io::require(j, "rules", context);
  if (!rs.is_array()) throw ConfigError(context + ".rules: expected an array");
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const std::string rctx = context + ".rules[" + std::to_string(i) + "]";
    io::check_keys(rs[i], {"if", "then"}, rctx);
    const io::Json& ifs = io::require(rs[i], "if", rctx);
    if (!ifs.is_array()) throw ConfigError(rctx + ".if: expected an array of labels");
    Rule r;
    for (const auto& l : ifs) r.antecedents.push_back(io::as_string(l, rctx + ".if"));
    r.consequent = io::as_string(io::require(rs[i], "then", rctx), rctx + ".then");
    rules.push_back(std::move(r));
  }
  return RuleBase(name, std::move(inputs), std::move(output), std::move(rules));
}

}  // namespace trailerfuzz::fuzzy
