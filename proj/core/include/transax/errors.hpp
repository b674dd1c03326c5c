#pragma once

#include <stdexcept>
#include <string>

namespace transax {

struct Error: std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the lexer/parser. position is a 1-based offset into the input.
struct ParseError: Error {
  ParseError(std::string msg, int pos):
    Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  int position;
};

struct SignatureMismatch: Error { using Error::Error; };
struct UnboundVariable: Error { using Error::Error; };
struct SideConditionViolated: Error { using Error::Error; };
struct IncompleteBinding: Error { using Error::Error; };
struct MissingTable: Error { using Error::Error; };
struct MissingInterpretation: Error { using Error::Error; };
struct VariableLimitExceeded: Error { using Error::Error; };
struct ResourceCapExceeded: Error { using Error::Error; };
struct SemanticsMismatch: Error { using Error::Error; };
struct DomainSizeUnsupported: Error { using Error::Error; };
struct FixtureError: Error { using Error::Error; };

}  // namespace transax
