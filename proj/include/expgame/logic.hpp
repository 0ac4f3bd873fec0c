#pragma once

// Formulas of finite-valued Lukasiewicz logic with constants (payoff level)
// and of Lukasiewicz-Product-1/2 logic over expectation atoms (goal level).
//
// Both levels share one immutable node representation. Derived connectives
// (strong/weak conjunction and disjunction, ominus, iff, distance) are
// first-class nodes; expand_derived() rewrites them into implication and
// falsity only.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "expgame/rational.hpp"

namespace expgame {

enum class Connective : std::uint8_t {
  // leaves
  Falsity,   // 0
  Constant,  // c{r}
  Variable,  // propositional variable (payoff level only)
  Atom,      // E[phi_i] (goal level only)
  Half,      // 1/2 (goal level only)
  // Lukasiewicz
  Implies,
  Neg,
  StrongAnd,  // &
  StrongOr,   // (+)
  Ominus,     // (-)
  MinAnd,     // /\ .
  MaxOr,      // \/ .
  Iff,
  Distance,
  // product logic (goal level only)
  Product,
  TruncDiv,
  Delta,
};

const char* connective_name(Connective c);
int arity(Connective c);
bool is_product_connective(Connective c);

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Level : std::uint8_t { Payoff, Goal };

template <Level L>
class Expr {
 public:
  Expr() = default;

  static Expr falsity() { return make(Connective::Falsity); }
  static Expr constant(Rational value);
  static Expr var(std::string name) requires(L == Level::Payoff);
  static Expr atom(std::size_t player) requires(L == Level::Goal);
  static Expr half() requires(L == Level::Goal) { return make(Connective::Half); }

  static Expr implies(Expr a, Expr b) { return make(Connective::Implies, {a, b}); }
  static Expr neg(Expr a) { return make(Connective::Neg, {a}); }
  static Expr strong_and(Expr a, Expr b) { return make(Connective::StrongAnd, {a, b}); }
  static Expr strong_or(Expr a, Expr b) { return make(Connective::StrongOr, {a, b}); }
  static Expr ominus(Expr a, Expr b) { return make(Connective::Ominus, {a, b}); }
  static Expr min_and(Expr a, Expr b) { return make(Connective::MinAnd, {a, b}); }
  static Expr max_or(Expr a, Expr b) { return make(Connective::MaxOr, {a, b}); }
  static Expr iff(Expr a, Expr b) { return make(Connective::Iff, {a, b}); }
  static Expr distance(Expr a, Expr b) { return make(Connective::Distance, {a, b}); }

  static Expr product(Expr a, Expr b) requires(L == Level::Goal) {
    return make(Connective::Product, {a, b});
  }
  static Expr trunc_div(Expr a, Expr b) requires(L == Level::Goal) {
    return make(Connective::TruncDiv, {a, b});
  }
  static Expr delta(Expr a) requires(L == Level::Goal) { return make(Connective::Delta, {a}); }

  // Generic constructor for a connective with the given operands.
  static Expr node(Connective op, std::vector<Expr> operands);

  explicit operator bool() const { return node_ != nullptr; }
  Connective op() const { return checked().op; }
  const std::vector<Expr>& operands() const { return checked().operands; }
  const Expr& operand(std::size_t i) const { return checked().operands.at(i); }
  const std::string& name() const { return checked().name; }
  const Rational& value() const { return checked().value; }
  std::size_t player() const { return checked().player; }

  std::size_t size() const;  // node count
  std::size_t depth() const;

  friend bool operator==(const Expr& a, const Expr& b) { return structurally_equal(a, b); }

 private:
  struct Node {
    Connective op;
    std::vector<Expr> operands;
    std::string name;
    Rational value;
    std::size_t player = 0;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Connective op, std::vector<Expr> operands = {});
  static bool structurally_equal(const Expr& a, const Expr& b);
  const Node& checked() const {
    if (!node_) throw std::logic_error("empty formula handle");
    return *node_;
  }

  std::shared_ptr<const Node> node_;
};

using Formula = Expr<Level::Payoff>;
using ModalFormula = Expr<Level::Goal>;

extern template class Expr<Level::Payoff>;
extern template class Expr<Level::Goal>;

using Valuation = std::map<std::string, Rational>;

// Truth functions of the connectives on [0,1].
namespace truth {
Rational implies(const Rational& a, const Rational& b);
Rational neg(const Rational& a);
Rational strong_and(const Rational& a, const Rational& b);
Rational strong_or(const Rational& a, const Rational& b);
Rational ominus(const Rational& a, const Rational& b);
Rational min_and(const Rational& a, const Rational& b);
Rational max_or(const Rational& a, const Rational& b);
Rational iff(const Rational& a, const Rational& b);
Rational distance(const Rational& a, const Rational& b);
Rational product(const Rational& a, const Rational& b);
Rational trunc_div(const Rational& a, const Rational& b);
Rational delta(const Rational& a);
}  // namespace truth

// Value of f under v. Every variable must be bound to a value of L_k and
// every constant must lie in L_k; the result is again in L_k.
Rational eval_formula(const Formula& f, const Valuation& v, const LkScale& scale);

// Value of a goal formula once each expectation atom E[phi_i] has a value.
Rational eval_modal_closed(const ModalFormula& f, const std::map<std::size_t, Rational>& atom_values);

// Rewrites every derived connective into implication and falsity
// (negation becomes phi -> 0). Product-logic nodes are kept, their operands
// are rewritten.
template <Level L>
Expr<L> expand_derived(const Expr<L>& f);

std::set<std::string> variables_of(const Formula& f);
// Constants of f that are not in L_k.
std::vector<Rational> constants_outside(const Formula& f, const LkScale& scale);
std::set<std::size_t> atoms_of(const ModalFormula& f);

}  // namespace expgame
