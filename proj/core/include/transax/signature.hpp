#pragma once

#include <optional>
#include <string>
#include <vector>

namespace transax {

struct Connective {
  std::string name;
  int arity = 0;
  bool operator==(const Connective&) const = default;
};

// A logical vocabulary. Propositional variables p1, p2, ... and individual
// variables x1, x2, ... are countable implicit families shared by every
// signature; only predicates, connectives and quantifiers vary.
struct Signature {
  std::vector<std::string> predicates;    // unary predicate letters
  std::vector<Connective> connectives;
  std::vector<std::string> quantifiers;

  bool has_predicate(const std::string& name) const;
  bool has_quantifier(const std::string& name) const;
  std::optional<int> connective_arity(const std::string& name) const;

  // Throws SignatureMismatch if names collide or an arity is negative.
  void validate() const;

  bool operator==(const Signature&) const = default;
};

// "x3" -> 3, "p12" -> 12. Returns nullopt if text is not of that shape.
std::optional<int> var_index(const std::string& text, char family);
std::string ind_var_name(int index);
std::string prop_var_name(int index);

}  // namespace transax
