#include "transax/signature.hpp"

#include <set>

#include "transax/errors.hpp"

namespace transax {

bool Signature::has_predicate(const std::string& name) const {
  for (const auto& p : predicates)
    if (p == name) return true;
  return false;
}

bool Signature::has_quantifier(const std::string& name) const {
  for (const auto& q : quantifiers)
    if (q == name) return true;
  return false;
}

std::optional<int> Signature::connective_arity(const std::string& name) const {
  for (const auto& c : connectives)
    if (c.name == name) return c.arity;
  return std::nullopt;
}

void Signature::validate() const {
  std::set<std::string> seen;
  auto add = [&](const std::string& name, const char* what) {
    if (name.empty())
      throw SignatureMismatch(std::string("empty ") + what + " name");
    if (!seen.insert(name).second)
      throw SignatureMismatch("duplicate name in signature: " + name);
    if (var_index(name, 'p') || var_index(name, 'x'))
      throw SignatureMismatch("name collides with a variable family: " + name);
  };
  for (const auto& p : predicates) add(p, "predicate");
  for (const auto& c : connectives) {
    add(c.name, "connective");
    if (c.arity < 0)
      throw SignatureMismatch("negative arity for connective " + c.name);
  }
  for (const auto& q : quantifiers) add(q, "quantifier");
}

std::optional<int> var_index(const std::string& text, char family) {
  if (text.size() < 2 || text[0] != family) return std::nullopt;
  int value = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > 1'000'000) return std::nullopt;
  }
  if (text[1] == '0') return std::nullopt;  // no leading zeros, no x0
  return value;
}

std::string ind_var_name(int index) { return "x" + std::to_string(index); }
std::string prop_var_name(int index) { return "p" + std::to_string(index); }

}  // namespace transax
