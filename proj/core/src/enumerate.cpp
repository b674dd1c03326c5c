#include "transax/enumerate.hpp"

#include "transax/errors.hpp"

namespace transax {

namespace {

void check_cap(std::size_t produced, std::size_t cap) {
  if (produced > cap)
    throw ResourceCapExceeded("formula enumeration exceeded cap of " + std::to_string(cap));
}

}  // namespace

std::vector<Formula> enumerate_formulas(const Signature& sig, const EnumOptions& opts) {
  sig.validate();
  std::vector<Formula> all;       // depth-then-structure order
  std::vector<Formula> level;     // formulas of depth exactly k
  // Depth 0: propositional variables, atoms, nullary connectives.
  for (int i = 1; i <= opts.prop_var_limit; ++i) level.push_back(Formula::prop(i));
  for (const auto& p : sig.predicates)
    for (int v = 1; v <= opts.ind_var_limit; ++v) level.push_back(Formula::atom(p, v));
  for (const auto& c : sig.connectives)
    if (c.arity == 0) level.push_back(Formula::conn(c.name, {}));
  check_cap(level.size(), opts.cap);
  all = level;

  for (int d = 1; d <= opts.max_depth; ++d) {
    std::vector<Formula> next;
    std::size_t prev_size = all.size();  // |formulas of depth < d|
    if (prev_size == 0) break;
    for (const auto& c : sig.connectives) {
      if (c.arity == 0) continue;
      // Tuples over formulas of depth < d with at least one child of depth
      // d-1; constructors are injective, so no duplicates arise.
      std::vector<std::size_t> idx(c.arity, 0);
      while (true) {
        int max_child_depth = 0;
        for (int i = 0; i < c.arity; ++i)
          max_child_depth = std::max(max_child_depth, all[idx[i]].depth());
        if (max_child_depth == d - 1) {
          std::vector<Formula> children;
          children.reserve(c.arity);
          for (int i = 0; i < c.arity; ++i) children.push_back(all[idx[i]]);
          next.push_back(Formula::conn(c.name, std::move(children)));
          check_cap(all.size() + next.size(), opts.cap);
        }
        int k = c.arity - 1;
        while (k >= 0 && ++idx[k] == prev_size) idx[k--] = 0;
        if (k < 0) break;
      }
    }
    for (const auto& q : sig.quantifiers) {
      for (int v = 1; v <= opts.ind_var_limit; ++v) {
        for (std::size_t i = 0; i < prev_size; ++i) {
          if (all[i].depth() != d - 1) continue;
          next.push_back(Formula::quant(q, v, all[i]));
          check_cap(all.size() + next.size(), opts.cap);
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

std::vector<Formula> enumerate_formulas(const Signature& sig, int max_depth,
                                        int vars_limit, std::size_t cap) {
  EnumOptions opts;
  opts.max_depth = max_depth;
  opts.ind_var_limit = vars_limit;
  opts.prop_var_limit = vars_limit;
  opts.cap = cap;
  return enumerate_formulas(sig, opts);
}

}  // namespace transax
