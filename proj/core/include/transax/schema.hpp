#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transax/formula.hpp"

namespace transax {

struct Binding {
  std::map<std::string, Formula> formulas;  // metavariable -> formula
  std::map<std::string, int> variables;     // variable metavariable -> index
  bool operator==(const Binding&) const = default;
};

struct SideCondition {
  enum class Kind { NotFreeIn, Closed };
  Kind kind;
  std::string var_meta;      // NotFreeIn only
  std::string formula_meta;
  bool operator==(const SideCondition&) const = default;
  std::string to_string() const;
};

struct Schema {
  std::string name;
  Formula tmpl;
  std::vector<SideCondition> conditions;
  bool operator==(const Schema&) const = default;

  std::vector<std::string> formula_metas() const;  // sorted, deduplicated
  std::vector<std::string> var_metas() const;
  // Conditions may only mention metavariables occurring in tmpl.
  void validate(const Signature& sig) const;
};

// Collect metavariable names occurring in a template.
void collect_metas(const Formula& tmpl, std::vector<std::string>& formula_metas,
                   std::vector<std::string>& var_metas);

// Uniform substitution. Metavariable occurrences are replaced by the bound
// formula as-is; a variable of the bound formula that ends up under a
// quantifier is captured deliberately (this is how A4 instances arise).
// Throws IncompleteBinding if a metavariable is unbound, SideConditionViolated
// if a condition fails on concrete bound formulas.
Formula instantiate(const Schema& s, const Binding& b);

// Substitution without side-condition checking; bound values may themselves
// be schematic (used when translating schemata).
Formula substitute(const Formula& tmpl, const Binding& b);

// Leftmost-outermost structural match of f against s.tmpl; a match, when it
// exists, is unique. Side conditions are checked on the resulting binding.
std::optional<Binding> match_schema(const Formula& f, const Schema& s);

bool check_conditions(const std::vector<SideCondition>& conditions, const Binding& b);

// Depth of the shallowest / deepest occurrence of metavariable m in tmpl,
// or nullopt when m does not occur.
std::optional<int> min_meta_occurrence_depth(const Formula& tmpl, const std::string& m);
std::optional<int> max_meta_occurrence_depth(const Formula& tmpl, const std::string& m);

}  // namespace transax
