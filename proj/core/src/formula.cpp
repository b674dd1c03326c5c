#include "transax/formula.hpp"

#include <algorithm>

#include "transax/errors.hpp"

namespace transax {

namespace {

constexpr int kPrecImp = 10;
constexpr int kPrecOr = 20;
constexpr int kPrecAnd = 30;
constexpr int kPrecUnary = 40;
constexpr int kPrecAtom = 100;

std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint32_t var_bit(int index) {
  if (index < 1 || index > 32)
    throw VariableLimitExceeded("variable index out of supported range: " +
                                std::to_string(index));
  return 1u << (index - 1);
}

int precedence_of(const std::string& name, int arity) {
  if (arity == 0) return kPrecAtom;
  if (name == "->") return kPrecImp;
  if (name == "\\/") return kPrecOr;
  if (name == "/\\") return kPrecAnd;
  if (name == "~") return kPrecUnary;
  return kPrecAtom;  // functional notation
}

// min_prec: smallest operator precedence printable here without parentheses.
// rightmost: whether the node extends to the end of the enclosing scope
// (quantifiers swallow everything to their right, so they need parentheses
// anywhere else).
void print_rec(std::string& out, const Formula& f, int min_prec, bool rightmost) {
  switch (f.kind()) {
    case Formula::Kind::Prop:
      out += prop_var_name(f.var());
      return;
    case Formula::Kind::Atom:
      out += f.name();
      out += '(';
      out += ind_var_name(f.var());
      out += ')';
      return;
    case Formula::Kind::Meta:
      out += f.name();
      return;
    case Formula::Kind::Quant: {
      bool wrap = !rightmost || kPrecUnary < min_prec;
      if (wrap) out += '(';
      out += f.name();
      out += ' ';
      out += f.has_meta_binder() ? f.binder_meta() : ind_var_name(f.var());
      out += ". ";
      print_rec(out, f.child(0), 0, true);
      if (wrap) out += ')';
      return;
    }
    case Formula::Kind::Conn: {
      const std::string& name = f.name();
      int arity = f.arity();
      if (arity == 0) {
        out += name;
        return;
      }
      int prec = precedence_of(name, arity);
      if (prec == kPrecAtom) {  // functional notation for nonstandard names
        out += name;
        out += '(';
        for (int i = 0; i < arity; ++i) {
          if (i) out += ", ";
          print_rec(out, f.child(i), 0, true);
        }
        out += ')';
        return;
      }
      bool wrap = prec < min_prec;
      bool inner_rightmost = wrap ? true : rightmost;
      if (wrap) out += '(';
      if (name == "~") {
        out += '~';
        print_rec(out, f.child(0), kPrecUnary, inner_rightmost);
      } else {
        // -> is right-associative, \/ and /\ left-associative.
        int left_min = (name == "->") ? prec + 1 : prec;
        int right_min = (name == "->") ? prec : prec + 1;
        print_rec(out, f.child(0), left_min, false);
        out += ' ';
        out += name;
        out += ' ';
        print_rec(out, f.child(1), right_min, inner_rightmost);
      }
      if (wrap) out += ')';
      return;
    }
  }
}

}  // namespace

Formula Formula::make(Node node) {
  std::size_t h = hash_combine(static_cast<std::size_t>(node.kind) * 0x51ed2701,
                               std::hash<std::string>{}(node.name));
  h = hash_combine(h, static_cast<std::size_t>(node.var));
  if (!node.binder_meta.empty())
    h = hash_combine(h, std::hash<std::string>{}(node.binder_meta));
  node.depth = 0;
  node.size = 1;
  for (const auto& c : node.children) {
    node.depth = std::max(node.depth, c.depth() + 1);
    node.size += c.size();
    node.free_mask |= c.free_mask();
    node.prop_mask |= c.prop_mask();
    node.has_meta = node.has_meta || c.is_schematic();
    h = hash_combine(h, c.hash());
  }
  switch (node.kind) {
    case Kind::Prop:
      node.prop_mask = var_bit(node.var);
      break;
    case Kind::Atom:
      node.free_mask = var_bit(node.var);
      break;
    case Kind::Quant:
      if (node.binder_meta.empty())
        node.free_mask &= ~var_bit(node.var);
      else
        node.has_meta = true;
      break;
    case Kind::Meta:
      node.has_meta = true;
      break;
    case Kind::Conn:
      break;
  }
  node.hash = h;
  Formula f;
  f.node_ = std::make_shared<const Node>(std::move(node));
  return f;
}

Formula Formula::prop(int index) {
  Node n;
  n.kind = Kind::Prop;
  n.var = index;
  return make(std::move(n));
}

Formula Formula::atom(std::string predicate, int var) {
  Node n;
  n.kind = Kind::Atom;
  n.name = std::move(predicate);
  n.var = var;
  return make(std::move(n));
}

Formula Formula::conn(std::string name, std::vector<Formula> children) {
  Node n;
  n.kind = Kind::Conn;
  n.name = std::move(name);
  n.children = std::move(children);
  return make(std::move(n));
}

Formula Formula::quant(std::string name, int var, Formula body) {
  Node n;
  n.kind = Kind::Quant;
  n.name = std::move(name);
  n.var = var;
  n.children.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::quant_meta(std::string name, std::string var_meta, Formula body) {
  Node n;
  n.kind = Kind::Quant;
  n.name = std::move(name);
  n.binder_meta = std::move(var_meta);
  n.children.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::meta(std::string name) {
  Node n;
  n.kind = Kind::Meta;
  n.name = std::move(name);
  return make(std::move(n));
}

std::vector<int> Formula::free_vars() const {
  std::vector<int> out;
  std::uint32_t mask = free_mask();
  for (int i = 1; i <= 32; ++i)
    if (mask & (1u << (i - 1))) out.push_back(i);
  return out;
}

bool Formula::well_formed(const Signature& sig) const {
  switch (kind()) {
    case Kind::Prop:
      return var() >= 1;
    case Kind::Atom:
      return sig.has_predicate(name()) && var() >= 1;
    case Kind::Meta:
      return true;
    case Kind::Quant:
      if (!sig.has_quantifier(name())) return false;
      return child(0).well_formed(sig);
    case Kind::Conn: {
      auto a = sig.connective_arity(name());
      if (!a || *a != arity()) return false;
      for (const auto& c : children())
        if (!c.well_formed(sig)) return false;
      return true;
    }
  }
  return false;
}

std::string Formula::to_string() const {
  std::string out;
  print_rec(out, *this, 0, true);
  return out;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash) return false;
  return compare(*this, other) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (a.var() != b.var()) return a.var() < b.var() ? -1 : 1;
  if (int c = a.binder_meta().compare(b.binder_meta())) return c < 0 ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (int i = 0; i < a.arity(); ++i)
    if (int c = compare(a.child(i), b.child(i))) return c;
  return 0;
}

}  // namespace transax
