#pragma once

// Surface syntax (ASCII):
//
//   ->  implication          ->.  truncated division   <->  equivalence
//   \/  max                  /\   min                  (+)  strong disjunction
//   (-) ominus               &    strong conjunction   *    product
//   ~   negation             D(a) delta                d(a, b) distance
//   0   falsity              c{3/4} constant           E[P1] expectation of P1's payoff
//
// Binding strength, loosest first: ->, ->., <->, \/, /\, (+) and (-), &,
// *, then the prefix operators. Every binary operator associates to the
// right. Product, truncated division, delta and E[..] belong to goal
// formulas only.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expgame/logic.hpp"

namespace expgame {

struct Diagnostic {
  enum class Severity : std::uint8_t { Error, Warning };

  Severity severity = Severity::Error;
  std::size_t begin = 0;  // byte offsets into the parsed text, end exclusive
  std::size_t end = 0;
  std::string message;
};

template <class T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

ParseResult<Formula> parse_formula(std::string_view text);
ParseResult<ModalFormula> parse_modal_formula(std::string_view text, const std::vector<std::string>& players);

// Fully parenthesised text that parses back to the same tree.
std::string print_formula(const Formula& f);
std::string print_modal_formula(const ModalFormula& f, const std::vector<std::string>& players);

// "name:line:col: error: message" followed by the source line and a caret
// marker under the span.
std::string render_diagnostic(std::string_view source_name, std::string_view text, const Diagnostic& d);

}  // namespace expgame
