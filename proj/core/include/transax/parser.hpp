#pragma once

#include <string>

#include "transax/formula.hpp"
#include "transax/signature.hpp"

namespace transax {

// Concrete: variables, predicates and signature primitives only.
// Schematic: additionally Phi-style formula metavariables (leading capital,
//   not in the signature) and bare lowercase variable metavariables in binder
//   position.
// Template: additionally $1..$9 formula placeholders and the $v binder
//   placeholder (used by translation definition files).
enum class ParseMode { Concrete, Schematic, Template };

// Grammar (precedence low to high): -> (right assoc), \/, /\, then ~ and
// quantifiers; a quantifier body extends maximally to the right.
Formula parse_formula(const std::string& text, const Signature& sig,
                      ParseMode mode = ParseMode::Concrete);

}  // namespace transax
