#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "transax/enumerate.hpp"
#include "transax/schema.hpp"

namespace transax {

// A definitional, variable-fixed, compositional map between vocabularies.
// Each source connective of arity n has a defining template over the target
// signature in placeholders $1..$n; each source quantifier has a template in
// $1 (the body) and the bound-variable placeholder $v. Predicates and both
// variable families are carried over unchanged.
struct Translation {
  std::string name;
  Signature source;
  Signature target;
  std::map<std::string, Formula> connective_defs;
  std::map<std::string, Formula> quantifier_defs;

  // Exactly one template per source primitive; templates mention only target
  // primitives and their declared placeholders. Throws SignatureMismatch.
  void validate() const;

  bool operator==(const Translation&) const = default;
};

// Structural recursion; metavariable leaves pass through untouched, so the
// same function translates schema templates. Throws SignatureMismatch on
// primitives without a defining template.
Formula translate(const Translation& t, const Formula& f);

// Carries side conditions over verbatim (the map is variable-fixed).
Schema translate_schema(const Translation& t, const Schema& s);

struct SurjectivityResult {
  bool surjective = false;
  int depth = 0;
  // Minimal-depth target formula outside the image, first in enumeration
  // order; absent when surjective up to the bound.
  std::optional<Formula> witness;
  int source_search_depth = 0;
};

struct InjectivityResult {
  bool injective = false;
  int depth = 0;
  std::optional<std::pair<Formula, Formula>> witness;  // distinct, same image
};

struct DiagnosticOptions {
  int ind_var_limit = 2;
  int prop_var_limit = 2;
  // Source formulas are searched to this depth when computing the image;
  // -1 means: same as the target depth, raised when some defining template
  // can shrink depth (a bare placeholder or constant template).
  int source_search_depth = -1;
  std::size_t cap = 2'000'000;
};

SurjectivityResult surjective_up_to(const Translation& t, int depth,
                                    const DiagnosticOptions& opts = {});
InjectivityResult injective_up_to(const Translation& t, int depth,
                                  const DiagnosticOptions& opts = {});

}  // namespace transax
