#include "transax/model.hpp"

#include <algorithm>

#include "transax/errors.hpp"

namespace transax {

std::optional<int> Domain::element_index(const std::string& name) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

void Domain::validate() const {
  if (elements.empty()) throw DomainSizeUnsupported("empty domain");
  if (elements.size() > 20) throw DomainSizeUnsupported("domain too large for subset masks");
  std::set<std::string> seen;
  for (const auto& e : elements) {
    if (e.empty() || e.find_first_of("{},: \t") != std::string::npos)
      throw FixtureError("bad domain element name '" + e + "'");
    if (!seen.insert(e).second) throw FixtureError("duplicate domain element " + e);
  }
  if (distinguished < 0 || distinguished >= size())
    throw FixtureError("distinguished element out of range");
}

std::string subset_to_string(const Domain& d, Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < d.size(); ++i) {
    if (!(s >> i & 1)) continue;
    if (!first) out += ",";
    out += d.elements[i];
    first = false;
  }
  return out + "}";
}

Subset parse_subset(const Domain& d, const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t.size() < 2 || t.front() != '{' || t.back() != '}')
    throw FixtureError("subset literal must be brace-delimited: " + text);
  Subset s = 0;
  std::string body = t.substr(1, t.size() - 2);
  if (body.empty()) return s;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string name = body.substr(start, comma == std::string::npos ? comma : comma - start);
    auto idx = d.element_index(name);
    if (!idx) throw FixtureError("unknown domain element '" + name + "' in " + text);
    if (s >> *idx & 1) throw FixtureError("repeated element in subset literal " + text);
    s |= Subset{1} << *idx;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

Subset OpTable::apply(const std::vector<Subset>& args) const {
  auto it = rows.find(args);
  if (it == rows.end())
    throw MissingTable("no row for the given arguments in table " + primitive);
  return it->second;
}

void OpTable::validate(const Domain& d) const {
  if (arity < 1) throw FixtureError("table " + primitive + " has arity < 1");
  Subset full = d.full();
  std::size_t expected = 1;
  for (int i = 0; i < arity; ++i) expected *= full + 1;
  if (rows.size() != expected)
    throw FixtureError("table " + primitive + " is not total: " + std::to_string(rows.size()) +
                       " rows, expected " + std::to_string(expected));
  for (const auto& [args, val] : rows) {
    if (args.size() != static_cast<std::size_t>(arity))
      throw FixtureError("row arity mismatch in table " + primitive);
    for (Subset a : args)
      if (a > full) throw FixtureError("row argument outside the domain in table " + primitive);
    if (val > full) throw FixtureError("row value outside the domain in table " + primitive);
  }
}

const OpTable& GeneralizedModel::table(const std::string& primitive) const {
  auto it = tables.find(primitive);
  if (it == tables.end()) throw MissingTable("no table for " + primitive);
  return it->second;
}

void GeneralizedModel::validate() const {
  domain.validate();
  Subset full = domain.full();
  for (const auto& [p, s] : pred_interp)
    if (s > full) throw FixtureError("interpretation of " + p + " outside the domain");
  for (const auto& [name, t] : tables) {
    if (t.primitive != name) throw FixtureError("table keyed under the wrong name: " + name);
    t.validate(domain);
  }
  for (Subset s : designated)
    if (s > full) throw FixtureError("designated value outside the domain");
}

void GeneralizedModel::validate_against(const Signature& sig) const {
  validate();
  for (const auto& p : sig.predicates)
    if (!pred_interp.count(p)) throw MissingInterpretation("no interpretation for predicate " + p);
  if (pred_interp.size() != sig.predicates.size())
    throw SignatureMismatch("model interprets predicates outside the signature");
  for (const auto& c : sig.connectives) {
    auto it = tables.find(c.name);
    if (it == tables.end()) throw MissingTable("no table for connective " + c.name);
    if (it->second.arity != c.arity)
      throw SignatureMismatch("table arity differs from connective " + c.name);
  }
  for (const auto& q : sig.quantifiers) {
    auto it = tables.find(q);
    if (it == tables.end()) throw MissingTable("no table for quantifier " + q);
    if (it->second.arity != 1) throw SignatureMismatch("quantifier table " + q + " must be unary");
  }
  if (tables.size() != sig.connectives.size() + sig.quantifiers.size())
    throw SignatureMismatch("model has tables outside the signature");
}

namespace {

template <typename Fn>
OpTable table_from(const Domain& d, const std::string& name, int arity, Fn&& fn) {
  OpTable t;
  t.primitive = name;
  t.arity = arity;
  Subset full = d.full();
  std::vector<Subset> args(arity, 0);
  while (true) {
    t.rows[args] = fn(args);
    int i = arity - 1;
    while (i >= 0 && args[i] == full) args[i--] = 0;
    if (i < 0) break;
    ++args[i];
  }
  return t;
}

}  // namespace

OpTable standard_connective_table(const Domain& d, const std::string& name, int arity) {
  Subset full = d.full();
  if (name == "~" && arity == 1)
    return table_from(d, name, 1, [&](const std::vector<Subset>& a) {
      return static_cast<Subset>(full & ~a[0]);
    });
  if (name == "->" && arity == 2)
    return table_from(d, name, 2, [&](const std::vector<Subset>& a) {
      return static_cast<Subset>((full & ~a[0]) | a[1]);
    });
  if (name == "/\\" && arity == 2)
    return table_from(d, name, 2, [&](const std::vector<Subset>& a) { return a[0] & a[1]; });
  if (name == "\\/" && arity == 2)
    return table_from(d, name, 2, [&](const std::vector<Subset>& a) { return a[0] | a[1]; });
  throw MissingInterpretation("no standard table for connective " + name + "/" +
                              std::to_string(arity));
}

OpTable standard_quantifier_table(const Domain& d, const std::string& name) {
  Subset full = d.full();
  if (name == "exists")
    return table_from(d, name, 1, [&](const std::vector<Subset>& a) {
      return a[0] != 0 ? full : Subset{0};
    });
  if (name == "forall")
    return table_from(d, name, 1, [&](const std::vector<Subset>& a) {
      return a[0] == full ? full : Subset{0};
    });
  throw MissingInterpretation("no standard table for quantifier " + name);
}

GeneralizedModel standard_model(const Domain& d, const Signature& sig,
                                std::map<std::string, Subset> pred_interp) {
  GeneralizedModel m;
  m.name = "standard";
  m.domain = d;
  m.pred_interp = std::move(pred_interp);
  for (const auto& c : sig.connectives)
    m.tables[c.name] = standard_connective_table(d, c.name, c.arity);
  for (const auto& q : sig.quantifiers) m.tables[q] = standard_quantifier_table(d, q);
  m.designated = {d.full()};
  m.validate_against(sig);
  return m;
}

int Matrix::apply(const std::string& name, const std::vector<int>& args) const {
  auto it = tables.find(name);
  if (it == tables.end()) throw MissingTable("no matrix table for " + name);
  const MatrixTable& t = it->second;
  if (args.size() != static_cast<std::size_t>(t.arity))
    throw MissingTable("arity mismatch applying matrix table " + name);
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= size) throw MissingTable("value out of range applying " + name);
    idx = idx * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
  }
  return t.values[idx];
}

void Matrix::validate() const {
  if (size < 1) throw FixtureError("matrix needs at least one value");
  for (int v : designated)
    if (v < 0 || v >= size) throw FixtureError("designated value out of range");
  for (const auto& [name, t] : tables) {
    if (t.arity < 0) throw FixtureError("negative arity in matrix table " + name);
    std::size_t expected = 1;
    for (int i = 0; i < t.arity; ++i) expected *= static_cast<std::size_t>(size);
    if (t.values.size() != expected)
      throw FixtureError("matrix table " + name + " is not total");
    for (int v : t.values)
      if (v < 0 || v >= size) throw FixtureError("matrix table " + name + " value out of range");
  }
}

void Matrix::validate_against(const Signature& sig) const {
  validate();
  if (!sig.quantifiers.empty())
    throw SemanticsMismatch("matrix semantics is propositional; signature has quantifiers");
  if (!sig.predicates.empty())
    throw SemanticsMismatch("matrix semantics is propositional; signature has predicates");
  // Extra tables are permitted; instances only ever use the signature's
  // connectives.
  for (const auto& c : sig.connectives) {
    auto it = tables.find(c.name);
    if (it == tables.end()) throw MissingTable("no matrix table for connective " + c.name);
    if (it->second.arity != c.arity)
      throw SignatureMismatch("matrix table arity differs from connective " + c.name);
  }
}

Matrix boolean_matrix(const Signature& sig) {
  Matrix m;
  m.name = "bool2";
  m.size = 2;
  m.designated = {1};
  for (const auto& c : sig.connectives) {
    MatrixTable t;
    t.arity = c.arity;
    std::size_t total = 1;
    for (int i = 0; i < c.arity; ++i) total *= 2;
    t.values.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<int> args(c.arity);
      std::size_t rest = idx;
      for (int i = c.arity - 1; i >= 0; --i) {
        args[i] = static_cast<int>(rest % 2);
        rest /= 2;
      }
      int v;
      if (c.name == "~" && c.arity == 1)
        v = 1 - args[0];
      else if (c.name == "->" && c.arity == 2)
        v = (args[0] == 0 || args[1] == 1) ? 1 : 0;
      else if (c.name == "/\\" && c.arity == 2)
        v = args[0] & args[1];
      else if (c.name == "\\/" && c.arity == 2)
        v = args[0] | args[1];
      else
        throw MissingInterpretation("no Boolean table for connective " + c.name);
      t.values[idx] = v;
    }
    m.tables[c.name] = std::move(t);
  }
  m.validate();
  return m;
}

}  // namespace transax
