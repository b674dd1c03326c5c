#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "transax/signature.hpp"

namespace transax {

// Immutable formula tree with structural equality. Metavariable leaves and
// metavariable binders make the same type double as a schema template; a
// formula with none of those is concrete. Copies share nodes.
class Formula {
 public:
  enum class Kind { Prop, Atom, Conn, Quant, Meta };

  Formula() = default;

  static Formula prop(int index);
  static Formula atom(std::string predicate, int var);
  static Formula conn(std::string name, std::vector<Formula> children);
  static Formula quant(std::string name, int var, Formula body);
  // Quantifier whose bound variable is a metavariable (schema use only).
  static Formula quant_meta(std::string name, std::string var_meta, Formula body);
  static Formula meta(std::string name);

  bool empty() const { return node_ == nullptr; }
  Kind kind() const { return node_->kind; }
  // Predicate, connective, quantifier or metavariable name.
  const std::string& name() const { return node_->name; }
  // Prop index, atom argument index, or quantifier bound index (0 when the
  // binder is a metavariable).
  int var() const { return node_->var; }
  const std::string& binder_meta() const { return node_->binder_meta; }
  bool has_meta_binder() const { return !node_->binder_meta.empty(); }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children[i]; }
  int arity() const { return static_cast<int>(node_->children.size()); }

  // Leaves (Prop, Atom, nullary Conn, Meta) have depth 0; Conn/Quant add 1.
  int depth() const { return node_->depth; }
  int size() const { return node_->size; }
  bool is_schematic() const { return node_->has_meta; }
  // Bit i-1 set iff x_i occurs free.
  std::uint32_t free_mask() const { return node_->free_mask; }
  std::vector<int> free_vars() const;
  std::uint32_t prop_mask() const { return node_->prop_mask; }
  std::size_t hash() const { return node_->hash; }

  // Every predicate/connective/quantifier node belongs to sig.
  bool well_formed(const Signature& sig) const;

  std::string to_string() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  // Deterministic structural total order.
  bool operator<(const Formula& other) const { return compare(*this, other) < 0; }
  static int compare(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    int var = 0;
    std::string binder_meta;
    std::vector<Formula> children;
    int depth = 0;
    int size = 1;
    std::uint32_t free_mask = 0;
    std::uint32_t prop_mask = 0;
    bool has_meta = false;
    std::size_t hash = 0;
  };

  static Formula make(Node node);
  std::shared_ptr<const Node> node_;
};

}  // namespace transax

template <>
struct std::hash<transax::Formula> {
  std::size_t operator()(const transax::Formula& f) const { return f.hash(); }
};
