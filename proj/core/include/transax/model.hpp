#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "transax/signature.hpp"

namespace transax {

// Subset of a domain as a bitmask; element i of Domain::elements is bit i.
using Subset = std::uint32_t;

struct Domain {
  std::vector<std::string> elements;  // ordered
  int distinguished = 0;              // index of the element u

  int size() const { return static_cast<int>(elements.size()); }
  Subset full() const { return (Subset{1} << elements.size()) - 1; }
  std::optional<int> element_index(const std::string& name) const;
  void validate() const;

  bool operator==(const Domain&) const = default;
};

// "{u,v}", "{u}", "{}" relative to the domain's element order.
std::string subset_to_string(const Domain& d, Subset s);
Subset parse_subset(const Domain& d, const std::string& text);

// Operation on the powerset, one row per argument tuple. Quantifier tables
// are unary.
struct OpTable {
  std::string primitive;
  int arity = 1;
  std::map<std::vector<Subset>, Subset> rows;

  Subset apply(const std::vector<Subset>& args) const;
  void validate(const Domain& d) const;  // total, with values inside the domain

  bool operator==(const OpTable&) const = default;
};

struct GeneralizedModel {
  std::string name;
  Domain domain;
  std::map<std::string, Subset> pred_interp;
  std::map<std::string, OpTable> tables;  // keyed by connective/quantifier name
  std::set<Subset> designated;

  bool is_designated(Subset s) const { return designated.count(s) != 0; }
  const OpTable& table(const std::string& primitive) const;
  void validate() const;
  // Coverage must be exact: a table per signature primitive, an
  // interpretation per predicate, nothing extra.
  void validate_against(const Signature& sig) const;

  bool operator==(const GeneralizedModel&) const = default;
};

// Classical operations: ~ complement, -> material, /\ intersection, \/
// union, exists nonemptiness, forall totality. Unknown names raise
// MissingInterpretation.
OpTable standard_connective_table(const Domain& d, const std::string& name, int arity);
OpTable standard_quantifier_table(const Domain& d, const std::string& name);

// Model with the classical tables for every primitive of sig and designated
// set {A}.
GeneralizedModel standard_model(const Domain& d, const Signature& sig,
                                std::map<std::string, Subset> pred_interp);

// Finite propositional matrix over values 0..size-1.
struct MatrixTable {
  int arity = 0;
  std::vector<int> values;  // row-major: index = sum of args[i]*size^(arity-1-i)

  bool operator==(const MatrixTable&) const = default;
};

struct Matrix {
  std::string name;
  int size = 2;
  std::set<int> designated;
  std::map<std::string, MatrixTable> tables;

  bool is_designated(int v) const { return designated.count(v) != 0; }
  int apply(const std::string& name, const std::vector<int>& args) const;
  void validate() const;
  void validate_against(const Signature& sig) const;

  bool operator==(const Matrix&) const = default;
};

// Two-valued matrix (0 false, 1 true, designated {1}) for sig's connectives.
Matrix boolean_matrix(const Signature& sig);

}  // namespace transax
