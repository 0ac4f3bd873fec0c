#pragma once

// Compilation of equilibrium questions into sentences over the ordered real
// field, serialised as SMT-LIB2.
//
// Probabilities become real variables x_<player>_<strategy> (players
// numbered from 1, strategies by enumeration index). Expected payoffs are
// multilinear polynomials in those variables; goal connectives become ite
// terms. Truncated division a ->. b is replaced by ite(a <= b, 1, q) with a
// fresh q constrained by (a <= b) or (q*a = b and 0 <= q <= 1); when the
// guard fails a > b >= 0, so q = b/a is well defined.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expgame/expectation.hpp"
#include "expgame/limits.hpp"

namespace expgame::rcf {

class Term {
 public:
  enum class Kind : std::uint8_t {
    Const, Var, Add, Mul, Sub, Neg, Ite,             // real sorted
    True, False, Le, Lt, Ge, Gt, Eq,                 // atoms
    And, Or, Not, Implies, Forall, Exists,           // connectives
  };

  Term() = default;

  // The constructors fold constants, so a fully numeric term collapses to a
  // single constant and decided comparisons collapse to True or False.
  static Term constant(Rational r);
  static Term var(std::string name);
  static Term add(std::vector<Term> terms);
  static Term mul(std::vector<Term> terms);
  static Term sub(Term a, Term b);
  static Term neg(Term a);
  static Term ite(Term cond, Term then_term, Term else_term);
  static Term boolean(bool b);
  static Term compare(Kind relation, Term a, Term b);
  static Term conj(std::vector<Term> terms);
  static Term disj(std::vector<Term> terms);
  static Term negation(Term a);
  static Term implies(Term a, Term b);
  static Term forall(std::vector<std::string> vars, Term body);
  static Term exists(std::vector<std::string> vars, Term body);

  explicit operator bool() const { return node_ != nullptr; }
  Kind kind() const { return node().kind; }
  const Rational& value() const { return node().value; }
  const std::string& name() const { return node().name; }
  const std::vector<Term>& args() const { return node().args; }
  const std::vector<std::string>& bound() const { return node().bound; }

  bool is_constant() const { return kind() == Kind::Const; }
  bool is_bool() const;
  bool contains(Kind k) const;

  std::string smt() const;

 private:
  struct Node {
    Kind kind = Kind::Const;
    Rational value;
    std::string name;
    std::vector<Term> args;
    std::vector<std::string> bound;
  };
  static Term make(Node n);
  const Node& node() const;

  std::shared_ptr<const Node> node_;
};

std::string smt_constant(const Rational& r);

using Assignment = std::map<std::string, Rational>;

// Numeric evaluation of quantifier-free terms; throws on unbound variables.
Rational evaluate_real(const Term& t, const Assignment& a);
bool evaluate_bool(const Term& t, const Assignment& a);

// Probability term for each strategy of one player: either variables or
// concrete constants.
using Block = std::vector<Term>;

Block variable_block(const Game& g, std::size_t player, const std::string& prefix);
Block constant_block(const Game& g, const MixedStrategy& m);

std::string variable_name(const std::string& prefix, std::size_t player, std::uint64_t strategy);

// Fresh variable introduced for a truncated division: when divisor > dividend,
// quotient = dividend / divisor.
struct Division {
  std::string quotient;
  Term divisor;
  Term dividend;
};

struct GoalEncoding {
  Term value;
  std::vector<Term> side_constraints;
  std::vector<Division> divisions;  // in creation order

  std::vector<std::string> fresh_variables() const;
};

class FreshNames {
 public:
  explicit FreshNames(std::string prefix = "q") : prefix_(std::move(prefix)) {}
  std::string next() { return prefix_ + "_" + std::to_string(counter_++); }

 private:
  std::string prefix_;
  std::uint64_t counter_ = 0;
};

// Sum over S of (product of block entries) times f_{phi_player}(s). Players
// the payoff does not depend on are summed out (their block sums to 1 under
// the simplex constraints), so a constant payoff yields a constant term.
Term encode_expectation(const Game& g, std::size_t player, const std::vector<Block>& blocks,
                        const EnumerationLimits& limits = {});
Term encode_expectation(const Game& g, std::size_t player, const EnumerationLimits& limits = {});

GoalEncoding encode_goal(const Game& g, std::size_t player, const std::vector<Block>& blocks, FreshNames& fresh,
                         const EnumerationLimits& limits = {});
GoalEncoding encode_goal(const Game& g, std::size_t player, const EnumerationLimits& limits = {});

// Quotient values for a concrete assignment of the probability variables.
Assignment solve_divisions(const std::vector<Division>& divisions, Assignment a);

// Block entries are >= 0 and sum to 1.
std::vector<Term> simplex_constraints(const Block& block);

struct SmtScript {
  std::string logic;
  std::vector<std::string> comments;
  std::vector<std::string> declarations;
  std::vector<Term> assertions;

  std::string str() const;
};

// QF_NRA query that is satisfiable iff `player` has a deviation that
// strictly improves their goal against the other players' strategies in p.
SmtScript compile_verification_query(const Game& g, const Profile& p, std::size_t player,
                                     const EnumerationLimits& limits = {});

// NRA sentence (one exists-forall alternation) that holds iff the game has a
// Nash equilibrium.
SmtScript compile_existence_sentence(const Game& g, const EnumerationLimits& limits = {});

}  // namespace expgame::rcf
