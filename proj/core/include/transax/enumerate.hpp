#pragma once

#include <cstddef>
#include <vector>

#include "transax/formula.hpp"
#include "transax/signature.hpp"

namespace transax {

struct EnumOptions {
  int max_depth = 0;
  int ind_var_limit = 1;   // individual variables drawn from x1..x_limit
  int prop_var_limit = 1;  // propositional variables drawn from p1..p_limit
  std::size_t cap = 2'000'000;
};

// Exhaustive, duplicate-free, deterministic: every formula over sig with
// node-depth <= max_depth and variables within the limits appears exactly
// once, in depth-then-structure order. Throws ResourceCapExceeded past cap.
std::vector<Formula> enumerate_formulas(const Signature& sig, const EnumOptions& opts);

// Convenience overload: one limit for both variable families.
std::vector<Formula> enumerate_formulas(const Signature& sig, int max_depth,
                                        int vars_limit,
                                        std::size_t cap = 2'000'000);

}  // namespace transax
