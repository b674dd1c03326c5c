#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "transax/enumerate.hpp"
#include "transax/schema.hpp"
#include "transax/translation.hpp"

namespace transax {

struct Rule {
  std::string name;
  std::vector<Formula> premises;  // templates
  Formula conclusion;
  std::vector<SideCondition> conditions;
  // Conclusion metavariables not occurring in any premise; must be listed
  // here explicitly (e.g. the bound variable of generalization).
  std::vector<std::string> fresh;
  bool operator==(const Rule&) const = default;
};

struct Calculus {
  std::string name;
  Signature sig;
  std::vector<Schema> axioms;
  std::vector<Rule> rules;
  // When set, every universal generalization of an axiom instance counts as
  // an axiom instance too (requires a quantifier named "forall").
  bool generalized_axioms = false;

  const Schema* find_axiom(const std::string& name) const;
  const Rule* find_rule(const std::string& name) const;
  void validate() const;
  bool operator==(const Calculus&) const = default;
};

struct AxiomJust {
  std::string axiom;
  Binding binding;
  std::vector<int> gen_vars;  // outermost-first universal prefix
  bool operator==(const AxiomJust&) const = default;
};
struct RuleJust {
  std::string rule;
  std::vector<int> premises;  // 0-based indices of earlier steps
  Binding binding;
  bool operator==(const RuleJust&) const = default;
};
using Justification = std::variant<AxiomJust, RuleJust>;

struct ProofStep {
  Formula formula;
  Justification just;
  bool operator==(const ProofStep&) const = default;
};
struct Proof {
  std::vector<ProofStep> steps;
  bool operator==(const Proof&) const = default;
};

struct ProofVerdict {
  bool ok = false;
  int failing_step = -1;  // 0-based; -1 when ok
  std::string message;
};

// Every step must be a declared axiom instance (side conditions included) or
// follow from earlier steps by a declared rule, with the claimed binding.
ProofVerdict check_proof(const Calculus& c, const Proof& p);

// Bounded instance enumeration. Schema letters range over all well-formed
// formulas, open ones included; instantiation is not restricted to sentences
// (an assumption, but the standard reading). The metavariable depth budget
// decides which bindings count as "instances to depth":
//   ShallowestOccurrence: budget(m) = depth - min occurrence depth of m; some
//     occurrence of each bound value stays within the bound (lenient; keeps
//     deep templates such as A5 non-vacuous at small depths).
//   DeepestOccurrence: budget(m) = depth - max occurrence depth of m; the
//     whole instance stays within the bound (strict; used by closure).
enum class DepthRule { ShallowestOccurrence, DeepestOccurrence };

struct InstanceEnumOptions {
  int depth = 3;
  int ind_var_limit = 1;
  int prop_var_limit = 1;
  std::size_t cap = 5'000'000;
  DepthRule depth_rule = DepthRule::ShallowestOccurrence;
};

std::vector<std::pair<Formula, Binding>> enumerate_schema_instances(
    const Schema& s, const Signature& sig, const InstanceEnumOptions& opts);

struct RuleApplication {
  std::vector<Formula> premises;
  Formula conclusion;
  bool operator==(const RuleApplication&) const = default;
  bool operator<(const RuleApplication& other) const;
};

// Rule instances whose every premise and conclusion has depth <= opts.depth
// (DeepestOccurrence budgets over all rule templates).
std::vector<RuleApplication> enumerate_rule_instances(const Rule& r, const Signature& sig,
                                                      const InstanceEnumOptions& opts);

// Schema reading of a rule: applications with metavariables ranging over an
// explicit formula pool. Var metavariables range over x1..x_limit.
std::vector<RuleApplication> rule_applications(const Rule& r,
                                               const std::vector<Formula>& pool,
                                               int ind_var_limit = 1,
                                               std::size_t cap = 5'000'000);

// Application-set reading of a translated rule: the image under t of the
// rule's applications over the source universe to universe_depth.
std::vector<RuleApplication> translate_rule_appset(const Translation& t, const Rule& r,
                                                   int universe_depth,
                                                   const EnumOptions& universe_opts);

struct ClosureOptions {
  int max_depth = 3;
  int max_rounds = 8;
  int ind_var_limit = 1;
  int prop_var_limit = 1;
  std::size_t cap = 5'000'000;
};

struct ClosureResult {
  std::set<Formula> theorems;
  bool saturated = false;
  int rounds_used = 0;

  // How each element was first derived; premises are concrete formulas.
  struct Derivation {
    bool from_axiom = false;
    std::size_t index = 0;  // axiom or rule index in the calculus
    Binding binding;
    std::vector<int> gen_vars;
    std::vector<Formula> premises;
  };
  std::map<Formula, Derivation> provenance;
};

// Forward closure: all axiom instances of depth <= max_depth, then up to
// max_rounds rounds of rule application keeping conclusions within depth.
// Rules act on the theorem set only (rules of proof, not rules of inference):
// every premise must itself be derived before the rule fires.
ClosureResult closure_bounded(const Calculus& c, const ClosureOptions& opts);

struct TheoremSearch {
  enum class Status { Yes, Unknown };
  Status status = Status::Unknown;
  std::optional<Proof> proof;  // verified before being returned
  bool saturated = false;
  int rounds_used = 0;
};

TheoremSearch is_theorem_bounded(const Calculus& c, const Formula& f,
                                 const ClosureOptions& opts);

// Extracts a checkable proof for a closure element.
Proof reconstruct_proof(const Calculus& c, const ClosureResult& closure, const Formula& f);

// Maps axioms and rules through translate_schema; names get a prime suffix.
Calculus translate_calculus(const Translation& t, const Calculus& c);

}  // namespace transax
