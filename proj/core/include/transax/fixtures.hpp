#pragma once

#include <string>

#include "transax/calculus.hpp"
#include "transax/model.hpp"
#include "transax/translation.hpp"

namespace transax {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Line-oriented definition files; '#' starts a comment. Parsers throw
// FixtureError with a line number. Each parse_x_text / x_to_text pair
// round-trips up to comments and blank lines.

// calculus NAME / predicates / connectives NAME ARITY, ... / quantifiers /
// generalized_axioms BOOL / axiom NAME: TEMPLATE [x not free in Phi] /
// rule NAME: PREMISE, ... => CONCLUSION [fresh x]
Calculus parse_calculus_text(const std::string& text);
Calculus load_calculus(const std::string& path);
std::string calculus_to_text(const Calculus& c);

// translation NAME / source|target predicates|connectives|quantifiers ... /
// map conn NAME := TEMPLATE / map quant NAME := TEMPLATE  ($1..$n, $v)
Translation parse_translation_text(const std::string& text);
Translation load_translation(const std::string& path);
std::string translation_to_text(const Translation& t);

// model NAME / domain ELEM... distinguished ELEM / designated SUBSET, ... /
// pred NAME := SUBSET / table NAME ARITY ... rows "ARGS : VALUE" ... end
GeneralizedModel parse_gmodel_text(const std::string& text);
GeneralizedModel load_gmodel(const std::string& path);
std::string gmodel_to_text(const GeneralizedModel& m);

// matrix NAME / values N / designated V... / table NAME ARITY ... end
Matrix parse_matrix_text(const std::string& text);
Matrix load_matrix(const std::string& path);
std::string matrix_to_text(const Matrix& m);

// One concrete formula (after comment/blank stripping).
Formula parse_formula_file_text(const std::string& text, const Signature& sig);
Formula load_formula(const std::string& path, const Signature& sig);

// Signature large enough to parse the given concrete formula text: the four
// standard connectives plus exists/forall, every capitalized identifier as a
// predicate, every other unknown identifier as a nullary connective.
Signature infer_signature(const std::string& formula_text);

std::string proof_to_json(const Proof& p);
Proof proof_from_json(const std::string& text, const Signature& sig);

std::string gmodel_to_json(const GeneralizedModel& m);
GeneralizedModel gmodel_from_json(const std::string& text);
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

}  // namespace transax
