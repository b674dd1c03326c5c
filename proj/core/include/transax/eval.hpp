#pragma once

#include <map>
#include <optional>

#include "transax/formula.hpp"
#include "transax/model.hpp"

namespace transax {

// Value of a one-variable formula by recursive table application; atoms read
// pred_interp. f may use no variable other than x1.
Subset value_1var(const GeneralizedModel& m, const Formula& f);

// Pointwise table of X -> f~(fexists(f~(X))): the operation the defined
// universal quantifier induces. Requires tables for ~ and exists.
OpTable compose_forall(const GeneralizedModel& m);

// Step-by-step value computation of a one-variable formula: atoms replaced by
// their interpretations, then every innermost application reduced per line
// until a single subset remains. Operators print functionally, e.g.
// "->(exists({v}), {u})".
std::string evaluation_chain(const GeneralizedModel& m, const Formula& f);

struct StarOptions {
  // The dedicated forall clause is stated for the defined quantifier; with
  // this set a primitive forall node gets the same clause, otherwise it
  // raises SemanticsMismatch.
  bool primitive_forall = true;
};

// Starred satisfaction over ~, ->, exists (and optionally forall). Assignment
// maps free-variable indices to domain element indices. The negation and
// forall clauses consult the assignment only through the "every free
// variable sits on the distinguished element" test.
bool eval_star(const GeneralizedModel& m, const Formula& f,
               const std::map<int, int>& assignment, const StarOptions& opts = {});

// eval_star under the assignment sending every free variable to the
// distinguished element.
bool true_star(const GeneralizedModel& m, const Formula& f, const StarOptions& opts = {});

// Propositional matrix evaluation; valuation maps p_i index -> matrix value.
int eval_matrix(const Matrix& mx, const Formula& f, const std::map<int, int>& valuation);

struct ValidityOptions {
  int max_domain = 0;  // 0: the monadic bound 2^(number of predicates in f)
  int workers = 1;
  std::size_t cap = 200'000'000;  // evaluation budget across all models
};

struct Countermodel {
  int domain_size = 0;
  std::map<std::string, Subset> pred_interp;
  std::map<int, int> prop_interp;  // propositional variable -> 0/1
  std::map<int, int> assignment;   // free variable -> element index
};

struct ValidityResult {
  bool valid = false;
  std::optional<Countermodel> countermodel;  // first in enumeration order
  int max_domain_used = 0;
};

// Classical validity for monadic formulas over ~, ->, /\, \/, exists, forall:
// satisfied by every assignment in every model of size up to the bound. Free
// variables are universally read; propositional variables range over {0,1}
// independently of the domain, so on propositional input this is the
// truth-table check.
ValidityResult classically_valid(const Formula& f, const ValidityOptions& opts = {});

}  // namespace transax
