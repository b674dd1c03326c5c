#pragma once

#include <optional>
#include <string>
#include <vector>

#include "transax/calculus.hpp"
#include "transax/eval.hpp"
#include "transax/model.hpp"

namespace transax {

enum class GModelSemantics { Value, Star };

struct IndependenceOptions {
  int instance_depth = 3;
  GModelSemantics semantics = GModelSemantics::Star;
  // Star mode default; value semantics is one-variable and forces 1.
  int ind_var_limit = 3;
  // Matrix checks only. Generalized models interpret predicates, not
  // propositional variables, so the model overload forces 0.
  int prop_var_limit = 2;
  std::size_t cap = 5'000'000;
  StarOptions star;
};

struct IndependenceReport {
  enum class Verdict { Independent, AxiomFailure, RuleFailure, TargetDesignated };

  Verdict verdict = Verdict::Independent;
  std::string semantics;  // "value", "star" or "matrix"
  std::string calculus_name;
  std::string model_name;
  int instance_depth = 0;
  int ind_var_limit = 0;
  int prop_var_limit = 0;

  struct AxiomCheck {
    std::string axiom;
    std::size_t instances = 0;
    bool ok = true;
    std::optional<Formula> failing;  // first failing instance
    std::string failing_detail;
    bool operator==(const AxiomCheck&) const = default;
  };
  std::vector<AxiomCheck> axioms;

  struct RuleCheck {
    std::string rule;
    // Table argument over all value tuples vs enumerated concrete instances.
    bool designation_level = false;
    std::size_t cases = 0;
    bool ok = true;
    std::string failing_detail;
    bool operator==(const RuleCheck&) const = default;
  };
  std::vector<RuleCheck> rules;

  Formula target;
  bool target_undesignated = false;
  std::string target_detail;
  std::vector<std::string> notes;

  bool independent() const { return verdict == Verdict::Independent; }
  bool operator==(const IndependenceReport&) const = default;
};

// Soundness of c with respect to the model plus refutation of target:
// (a) every enumerated axiom instance holds, (b) rules preserve holding,
// (c) target fails. Holding means designated value in value mode and true*
// in star mode. This certifies unprovability of the target and nothing more;
// no attempt is made to characterize exactly which formulas such a defective
// system does prove.
IndependenceReport verify_independence(const Calculus& c, const GeneralizedModel& m,
                                       const Formula& target,
                                       const IndependenceOptions& opts = {});

// Matrix variant: instances must be designated under every valuation; rules
// are checked at designation level. Quantified calculi are rejected.
IndependenceReport verify_independence(const Calculus& c, const Matrix& mx,
                                       const Formula& target,
                                       const IndependenceOptions& opts = {});

std::string verdict_name(IndependenceReport::Verdict v);
std::string report_to_text(const IndependenceReport& rep);
std::string report_to_json(const IndependenceReport& rep);
IndependenceReport report_from_json(const std::string& text, const Signature& sig);

// The displayed quantifier-axiom tables over a two-element domain: the
// ->(forall(X), X) table, the three-stage build-up of the distribution
// axiom's value over sentence antecedents, and the final table; formatted to
// be byte-comparable against golden files.
std::string audit_axiom_tables(const GeneralizedModel& m);

struct MatrixSearchOptions {
  int max_size = 3;
  int instance_depth = 3;
  int prop_var_limit = 2;
  std::size_t cap = 500'000'000;  // designation checks budget
};

struct MatrixSearchResult {
  bool found = false;
  std::optional<Matrix> matrix;
  std::size_t candidates = 0;  // table combinations examined
  std::string enumeration;     // order note; first hit is reproducible
};

// Exhaustive search over value-set sizes 1..max_size, designated subsets and
// connective tables, pruned by the designation-level axiom filter; any hit is
// re-verified through verify_independence before being returned.
MatrixSearchResult search_matrix(const Calculus& c, const Formula& target,
                                 const MatrixSearchOptions& opts = {});

struct ModelSearchOptions {
  // Tables tried for -> per (~, exists) pair: the pointwise classical seed
  // first, then (optionally) tables satisfying the designation-level modus
  // ponens constraint, in ascending encoding order, up to imp_cap.
  bool enumerate_imp = false;
  std::size_t imp_cap = 4096;
  int instance_depth = 3;
  int ind_var_limit = 1;
  std::size_t cap = 500'000'000;
};

struct ModelSearchResult {
  bool found = false;
  std::optional<GeneralizedModel> model;
  std::size_t candidates = 0;  // (~, exists, ->) combinations examined
  std::string strategy;        // declared search-space restriction
};

// Two-element domain; ~ and exists tables are swept exhaustively (256 x 256),
// -> per the declared strategy, predicate interpretations per target; the
// designated set is fixed to the subsets containing the distinguished
// element. Hits are re-verified through verify_independence.
ModelSearchResult search_generalized_model(const Calculus& c, const Formula& target,
                                           const ModelSearchOptions& opts = {});

}  // namespace transax
