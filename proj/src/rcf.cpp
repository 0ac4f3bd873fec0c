#include "expgame/rcf.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace expgame::rcf {

using Kind = Term::Kind;

// ---------------------------------------------------------------------------
// Term construction

Term Term::make(Node n) {
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

const Term::Node& Term::node() const {
  if (!node_) throw std::logic_error("empty term");
  return *node_;
}

Term Term::constant(Rational r) {
  Node n;
  n.kind = Kind::Const;
  n.value = std::move(r);
  return make(std::move(n));
}

Term Term::var(std::string name) {
  Node n;
  n.kind = Kind::Var;
  n.name = std::move(name);
  return make(std::move(n));
}

Term Term::add(std::vector<Term> terms) {
  Rational c;
  std::vector<Term> rest;
  for (auto& t : terms) {
    if (t.is_constant()) {
      c += t.value();
    } else if (t.kind() == Kind::Add) {
      for (const auto& a : t.args()) {
        if (a.is_constant()) c += a.value(); else rest.push_back(a);
      }
    } else {
      rest.push_back(std::move(t));
    }
  }
  if (!c.is_zero()) rest.push_back(constant(c));
  if (rest.empty()) return constant(Rational(0));
  if (rest.size() == 1) return rest.front();
  Node n;
  n.kind = Kind::Add;
  n.args = std::move(rest);
  return make(std::move(n));
}

Term Term::mul(std::vector<Term> terms) {
  Rational c(1);
  std::vector<Term> rest;
  for (auto& t : terms) {
    if (t.is_constant()) {
      c *= t.value();
    } else {
      rest.push_back(std::move(t));
    }
  }
  if (c.is_zero() || rest.empty()) return constant(c);
  if (c != Rational(1)) rest.insert(rest.begin(), constant(c));
  if (rest.size() == 1) return rest.front();
  Node n;
  n.kind = Kind::Mul;
  n.args = std::move(rest);
  return make(std::move(n));
}

Term Term::sub(Term a, Term b) {
  if (a.is_constant() && b.is_constant()) return constant(a.value() - b.value());
  if (b.is_constant() && b.value().is_zero()) return a;
  Node n;
  n.kind = Kind::Sub;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::neg(Term a) {
  if (a.is_constant()) return constant(-a.value());
  Node n;
  n.kind = Kind::Neg;
  n.args = {std::move(a)};
  return make(std::move(n));
}

Term Term::ite(Term cond, Term then_term, Term else_term) {
  if (cond.kind() == Kind::True) return then_term;
  if (cond.kind() == Kind::False) return else_term;
  Node n;
  n.kind = Kind::Ite;
  n.args = {std::move(cond), std::move(then_term), std::move(else_term)};
  return make(std::move(n));
}

Term Term::boolean(bool b) {
  Node n;
  n.kind = b ? Kind::True : Kind::False;
  return make(std::move(n));
}

Term Term::compare(Kind relation, Term a, Term b) {
  if (a.is_constant() && b.is_constant()) {
    const auto& x = a.value();
    const auto& y = b.value();
    switch (relation) {
      case Kind::Le: return boolean(x <= y);
      case Kind::Lt: return boolean(x < y);
      case Kind::Ge: return boolean(x >= y);
      case Kind::Gt: return boolean(x > y);
      case Kind::Eq: return boolean(x == y);
      default: break;
    }
  }
  if (relation != Kind::Le && relation != Kind::Lt && relation != Kind::Ge && relation != Kind::Gt &&
      relation != Kind::Eq) {
    throw std::invalid_argument("not a relation");
  }
  Node n;
  n.kind = relation;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::conj(std::vector<Term> terms) {
  std::vector<Term> rest;
  for (auto& t : terms) {
    if (t.kind() == Kind::False) return boolean(false);
    if (t.kind() != Kind::True) rest.push_back(std::move(t));
  }
  if (rest.empty()) return boolean(true);
  if (rest.size() == 1) return rest.front();
  Node n;
  n.kind = Kind::And;
  n.args = std::move(rest);
  return make(std::move(n));
}

Term Term::disj(std::vector<Term> terms) {
  std::vector<Term> rest;
  for (auto& t : terms) {
    if (t.kind() == Kind::True) return boolean(true);
    if (t.kind() != Kind::False) rest.push_back(std::move(t));
  }
  if (rest.empty()) return boolean(false);
  if (rest.size() == 1) return rest.front();
  Node n;
  n.kind = Kind::Or;
  n.args = std::move(rest);
  return make(std::move(n));
}

Term Term::negation(Term a) {
  if (a.kind() == Kind::True) return boolean(false);
  if (a.kind() == Kind::False) return boolean(true);
  Node n;
  n.kind = Kind::Not;
  n.args = {std::move(a)};
  return make(std::move(n));
}

Term Term::implies(Term a, Term b) {
  if (a.kind() == Kind::True) return b;
  if (a.kind() == Kind::False || b.kind() == Kind::True) return boolean(true);
  Node n;
  n.kind = Kind::Implies;
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Term Term::forall(std::vector<std::string> vars, Term body) {
  if (vars.empty() || body.kind() == Kind::True || body.kind() == Kind::False) return body;
  Node n;
  n.kind = Kind::Forall;
  n.bound = std::move(vars);
  n.args = {std::move(body)};
  return make(std::move(n));
}

Term Term::exists(std::vector<std::string> vars, Term body) {
  if (vars.empty() || body.kind() == Kind::True || body.kind() == Kind::False) return body;
  Node n;
  n.kind = Kind::Exists;
  n.bound = std::move(vars);
  n.args = {std::move(body)};
  return make(std::move(n));
}

bool Term::is_bool() const {
  switch (kind()) {
    case Kind::Const: case Kind::Var: case Kind::Add: case Kind::Mul:
    case Kind::Sub: case Kind::Neg: case Kind::Ite:
      return false;
    default:
      return true;
  }
}

bool Term::contains(Kind k) const {
  if (kind() == k) return true;
  return std::any_of(args().begin(), args().end(), [k](const Term& a) { return a.contains(k); });
}

// ---------------------------------------------------------------------------
// SMT-LIB2 text

std::string smt_constant(const Rational& r) {
  const Rational a = abs(r);
  std::string body = a.is_integer() ? a.numerator() : "(/ " + a.numerator() + " " + a.denominator() + ")";
  return r.sign() < 0 ? "(- " + body + ")" : body;
}

namespace {

const char* smt_operator(Kind k) {
  switch (k) {
    case Kind::Add: return "+";
    case Kind::Mul: return "*";
    case Kind::Sub: return "-";
    case Kind::Neg: return "-";
    case Kind::Ite: return "ite";
    case Kind::Le: return "<=";
    case Kind::Lt: return "<";
    case Kind::Ge: return ">=";
    case Kind::Gt: return ">";
    case Kind::Eq: return "=";
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Not: return "not";
    case Kind::Implies: return "=>";
    case Kind::Forall: return "forall";
    case Kind::Exists: return "exists";
    default: return "?";
  }
}

void write_smt(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Kind::Const: os << smt_constant(t.value()); return;
    case Kind::Var: os << t.name(); return;
    case Kind::True: os << "true"; return;
    case Kind::False: os << "false"; return;
    case Kind::Forall:
    case Kind::Exists:
      os << '(' << smt_operator(t.kind()) << " (";
      for (std::size_t i = 0; i < t.bound().size(); ++i) os << (i ? " (" : "(") << t.bound()[i] << " Real)";
      os << ") ";
      write_smt(os, t.args()[0]);
      os << ')';
      return;
    default:
      os << '(' << smt_operator(t.kind());
      for (const auto& a : t.args()) {
        os << ' ';
        write_smt(os, a);
      }
      os << ')';
  }
}

}  // namespace

std::string Term::smt() const {
  std::ostringstream os;
  write_smt(os, *this);
  return os.str();
}

// ---------------------------------------------------------------------------
// evaluation

Rational evaluate_real(const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Kind::Const: return t.value();
    case Kind::Var: {
      const auto it = a.find(t.name());
      if (it == a.end()) throw std::invalid_argument("unassigned variable " + t.name());
      return it->second;
    }
    case Kind::Add: {
      Rational s;
      for (const auto& x : t.args()) s += evaluate_real(x, a);
      return s;
    }
    case Kind::Mul: {
      Rational p(1);
      for (const auto& x : t.args()) p *= evaluate_real(x, a);
      return p;
    }
    case Kind::Sub: return evaluate_real(t.args()[0], a) - evaluate_real(t.args()[1], a);
    case Kind::Neg: return -evaluate_real(t.args()[0], a);
    case Kind::Ite:
      return evaluate_bool(t.args()[0], a) ? evaluate_real(t.args()[1], a) : evaluate_real(t.args()[2], a);
    default: throw std::invalid_argument("not a real term");
  }
}

bool evaluate_bool(const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Le: return evaluate_real(t.args()[0], a) <= evaluate_real(t.args()[1], a);
    case Kind::Lt: return evaluate_real(t.args()[0], a) < evaluate_real(t.args()[1], a);
    case Kind::Ge: return evaluate_real(t.args()[0], a) >= evaluate_real(t.args()[1], a);
    case Kind::Gt: return evaluate_real(t.args()[0], a) > evaluate_real(t.args()[1], a);
    case Kind::Eq: return evaluate_real(t.args()[0], a) == evaluate_real(t.args()[1], a);
    case Kind::And:
      return std::all_of(t.args().begin(), t.args().end(), [&](const Term& x) { return evaluate_bool(x, a); });
    case Kind::Or:
      return std::any_of(t.args().begin(), t.args().end(), [&](const Term& x) { return evaluate_bool(x, a); });
    case Kind::Not: return !evaluate_bool(t.args()[0], a);
    case Kind::Implies: return !evaluate_bool(t.args()[0], a) || evaluate_bool(t.args()[1], a);
    case Kind::Forall:
    case Kind::Exists: throw std::invalid_argument("cannot evaluate a quantified term");
    default: throw std::invalid_argument("not a boolean term");
  }
}

// ---------------------------------------------------------------------------
// blocks

std::string variable_name(const std::string& prefix, std::size_t player, std::uint64_t strategy) {
  return prefix + "_" + std::to_string(player + 1) + "_" + std::to_string(strategy);
}

Block variable_block(const Game& g, std::size_t player, const std::string& prefix) {
  Block b;
  const std::uint64_t count = strategy_count(g, player);
  for (std::uint64_t s = 0; s < count; ++s) b.push_back(Term::var(variable_name(prefix, player, s)));
  return b;
}

Block constant_block(const Game& g, const MixedStrategy& m) {
  Block b;
  const std::uint64_t count = strategy_count(g, m.owner);
  for (std::uint64_t s = 0; s < count; ++s) b.push_back(Term::constant(m.prob(s)));
  return b;
}

std::vector<Term> simplex_constraints(const Block& block) {
  std::vector<Term> out;
  for (const auto& t : block) out.push_back(Term::compare(Kind::Ge, t, Term::constant(Rational(0))));
  out.push_back(Term::compare(Kind::Eq, Term::add(block), Term::constant(Rational(1))));
  return out;
}

// ---------------------------------------------------------------------------
// expectation polynomials

namespace {

// f_{phi_player}(s) for every s in S, mixed radix with player 0 most
// significant.
struct PayoffTable {
  std::vector<std::uint64_t> radix;
  std::vector<Rational> values;

  std::uint64_t index(const std::vector<std::uint64_t>& digits) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < radix.size(); ++j) idx = idx * radix[j] + digits[j];
    return idx;
  }
};

PayoffTable payoff_table(const Game& g, std::size_t player, const EnumerationLimits& limits) {
  PayoffTable t;
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < g.player_count(); ++j) {
    const std::uint64_t c = strategy_count(g, j);
    if (c > limits.max_player_strategies) {
      throw CapExceeded("strategies of " + g.players[j], c, limits.max_player_strategies);
    }
    t.radix.push_back(c);
    total = saturating_mul(total, c);
  }
  if (total > limits.max_combinations) throw CapExceeded("strategy combinations", total, limits.max_combinations);

  std::vector<std::uint64_t> digits(t.radix.size(), 0);
  t.values.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) {
    StrategyCombination combo;
    for (std::size_t j = 0; j < digits.size(); ++j) combo.push_back(strategy_at(g, j, digits[j]));
    t.values.push_back(payoff(g, player, combo));
    for (std::size_t pos = digits.size(); pos-- > 0;) {
      if (++digits[pos] < t.radix[pos]) break;
      digits[pos] = 0;
    }
  }
  return t;
}

// Players whose strategy can change the payoff.
std::vector<bool> relevant_players(const PayoffTable& t) {
  const std::size_t n = t.radix.size();
  std::vector<bool> relevant(n, false);
  std::vector<std::uint64_t> digits(n, 0);
  for (std::uint64_t k = 0; k < t.values.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (relevant[j] || digits[j] == 0) continue;
      auto base = digits;
      base[j] = 0;
      if (t.values[t.index(base)] != t.values[k]) relevant[j] = true;
    }
    for (std::size_t pos = n; pos-- > 0;) {
      if (++digits[pos] < t.radix[pos]) break;
      digits[pos] = 0;
    }
  }
  return relevant;
}

}  // namespace

Term encode_expectation(const Game& g, std::size_t player, const std::vector<Block>& blocks,
                        const EnumerationLimits& limits) {
  const std::size_t n = g.player_count();
  if (blocks.size() != n) throw std::invalid_argument("one block per player required");
  const PayoffTable table = payoff_table(g, player, limits);
  for (std::size_t j = 0; j < n; ++j) {
    if (blocks[j].size() != table.radix[j]) throw std::invalid_argument("block size mismatch");
  }
  const auto relevant = relevant_players(table);

  // monomial (variable names in player order) -> coefficient
  std::map<std::vector<std::string>, Rational> poly;
  std::vector<std::uint64_t> digits(n, 0);
  std::function<void(std::size_t, Rational, std::vector<std::string>&)> rec =
      [&](std::size_t j, Rational coeff, std::vector<std::string>& vars) {
        if (coeff.is_zero()) return;
        if (j == n) {
          const Rational& f = table.values[table.index(digits)];
          if (!f.is_zero()) poly[vars] += coeff * f;
          return;
        }
        if (!relevant[j]) {
          digits[j] = 0;
          rec(j + 1, coeff, vars);
          return;
        }
        for (std::uint64_t s = 0; s < table.radix[j]; ++s) {
          digits[j] = s;
          const Term& e = blocks[j][s];
          if (e.is_constant()) {
            rec(j + 1, coeff * e.value(), vars);
          } else if (e.kind() == Kind::Var) {
            vars.push_back(e.name());
            rec(j + 1, coeff, vars);
            vars.pop_back();
          } else {
            throw std::invalid_argument("block entries must be variables or constants");
          }
        }
      };
  std::vector<std::string> vars;
  rec(0, Rational(1), vars);

  std::vector<Term> terms;
  for (const auto& [mono, coeff] : poly) {
    if (coeff.is_zero()) continue;
    std::vector<Term> factors{Term::constant(coeff)};
    for (const auto& v : mono) factors.push_back(Term::var(v));
    terms.push_back(Term::mul(std::move(factors)));
  }
  return Term::add(std::move(terms));
}

Term encode_expectation(const Game& g, std::size_t player, const EnumerationLimits& limits) {
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < g.player_count(); ++j) blocks.push_back(variable_block(g, j, "x"));
  return encode_expectation(g, player, blocks, limits);
}

// ---------------------------------------------------------------------------
// goals

std::vector<std::string> GoalEncoding::fresh_variables() const {
  std::vector<std::string> out;
  for (const auto& d : divisions) out.push_back(d.quotient);
  return out;
}

GoalEncoding encode_goal(const Game& g, std::size_t player, const std::vector<Block>& blocks, FreshNames& fresh,
                         const EnumerationLimits& limits) {
  GoalEncoding enc;
  std::map<std::size_t, Term> atoms;
  for (std::size_t j : atoms_of(g.goals.at(player))) atoms[j] = encode_expectation(g, j, blocks, limits);

  const Term zero = Term::constant(Rational(0));
  const Term one = Term::constant(Rational(1));
  using T = Term;

  std::function<Term(const ModalFormula&)> enc_rec = [&](const ModalFormula& f) -> Term {
    switch (f.op()) {
      case Connective::Falsity: return zero;
      case Connective::Half: return T::constant(Rational(1, 2));
      case Connective::Constant: return T::constant(f.value());
      case Connective::Atom: return atoms.at(f.player());
      case Connective::Neg: return T::sub(one, enc_rec(f.operand(0)));
      case Connective::Delta: return T::ite(T::compare(Kind::Ge, enc_rec(f.operand(0)), one), one, zero);
      default: break;
    }
    const Term a = enc_rec(f.operand(0));
    const Term b = enc_rec(f.operand(1));
    switch (f.op()) {
      case Connective::StrongOr: {
        const Term s = T::add({a, b});
        return T::ite(T::compare(Kind::Le, s, one), s, one);
      }
      case Connective::StrongAnd: {
        const Term s = T::sub(T::add({a, b}), one);
        return T::ite(T::compare(Kind::Ge, s, zero), s, zero);
      }
      case Connective::Implies: {
        const Term s = T::add({T::sub(one, a), b});
        return T::ite(T::compare(Kind::Le, s, one), s, one);
      }
      case Connective::Ominus: {
        const Term s = T::sub(a, b);
        return T::ite(T::compare(Kind::Ge, s, zero), s, zero);
      }
      case Connective::MinAnd: return T::ite(T::compare(Kind::Le, a, b), a, b);
      case Connective::MaxOr: return T::ite(T::compare(Kind::Ge, a, b), a, b);
      case Connective::Distance: return T::ite(T::compare(Kind::Ge, a, b), T::sub(a, b), T::sub(b, a));
      case Connective::Iff:
        return T::sub(one, T::ite(T::compare(Kind::Ge, a, b), T::sub(a, b), T::sub(b, a)));
      case Connective::Product: return T::mul({a, b});
      case Connective::TruncDiv: {
        const Term guard = T::compare(Kind::Le, a, b);
        if (guard.kind() == Kind::True) return one;
        if (a.is_constant() && b.is_constant()) return T::constant(b.value() / a.value());
        const std::string q = fresh.next();
        const Term qv = T::var(q);
        enc.divisions.push_back({q, a, b});
        enc.side_constraints.push_back(T::disj(
            {guard, T::conj({T::compare(Kind::Eq, T::mul({qv, a}), b), T::compare(Kind::Ge, qv, zero),
                             T::compare(Kind::Le, qv, one)})}));
        return T::ite(guard, one, qv);
      }
      default: throw std::logic_error("unexpected connective in goal");
    }
  };
  enc.value = enc_rec(g.goals.at(player));
  return enc;
}

GoalEncoding encode_goal(const Game& g, std::size_t player, const EnumerationLimits& limits) {
  std::vector<Block> blocks;
  for (std::size_t j = 0; j < g.player_count(); ++j) blocks.push_back(variable_block(g, j, "x"));
  FreshNames fresh;
  return encode_goal(g, player, blocks, fresh, limits);
}

Assignment solve_divisions(const std::vector<Division>& divisions, Assignment a) {
  for (const auto& d : divisions) {
    const Rational divisor = evaluate_real(d.divisor, a);
    const Rational dividend = evaluate_real(d.dividend, a);
    a[d.quotient] = divisor > dividend ? dividend / divisor : Rational(0);
  }
  return a;
}

// ---------------------------------------------------------------------------
// scripts

std::string SmtScript::str() const {
  std::ostringstream os;
  for (const auto& c : comments) os << "; " << c << '\n';
  os << "(set-logic " << logic << ")\n";
  for (const auto& d : declarations) os << "(declare-const " << d << " Real)\n";
  for (const auto& a : assertions) os << "(assert " << a.smt() << ")\n";
  os << "(check-sat)\n";
  return os.str();
}

namespace {

void legend(const Game& g, const std::string& prefix, std::size_t player, std::vector<std::string>& comments) {
  const std::uint64_t count = strategy_count(g, player);
  for (std::uint64_t s = 0; s < count; ++s) {
    comments.push_back(variable_name(prefix, player, s) + " = Pr[" + g.players[player] + " plays " +
                       format_strategy(g, strategy_at(g, player, s)) + "]");
  }
}

}  // namespace

SmtScript compile_verification_query(const Game& g, const Profile& p, std::size_t player,
                                     const EnumerationLimits& limits) {
  SmtScript script;
  script.logic = "QF_NRA";
  script.comments.push_back("improving deviation for " + g.players.at(player) +
                            " (sat: deviation exists, unsat: best response)");
  legend(g, "y", player, script.comments);

  std::vector<Block> blocks;
  for (std::size_t j = 0; j < g.player_count(); ++j) {
    blocks.push_back(j == player ? variable_block(g, j, "y") : constant_block(g, p[j]));
  }
  const Rational baseline = eval_goal(g, player, p, limits);
  script.comments.push_back("current goal value " + baseline.str());

  FreshNames fresh;
  const GoalEncoding enc = encode_goal(g, player, blocks, fresh, limits);
  for (const auto& t : blocks[player]) script.declarations.push_back(t.name());
  for (const auto& q : enc.fresh_variables()) script.declarations.push_back(q);
  for (auto& c : simplex_constraints(blocks[player])) script.assertions.push_back(std::move(c));
  for (const auto& c : enc.side_constraints) script.assertions.push_back(c);
  script.assertions.push_back(Term::compare(Kind::Gt, enc.value, Term::constant(baseline)));
  return script;
}

SmtScript compile_existence_sentence(const Game& g, const EnumerationLimits& limits) {
  const std::size_t n = g.player_count();
  SmtScript script;
  script.logic = "NRA";
  script.comments.push_back("sat iff the game has a Nash equilibrium");

  std::vector<Block> x;
  for (std::size_t j = 0; j < n; ++j) {
    x.push_back(variable_block(g, j, "x"));
    legend(g, "x", j, script.comments);
  }
  for (const auto& b : x) {
    for (const auto& t : b) script.declarations.push_back(t.name());
  }

  FreshNames fresh;
  std::vector<GoalEncoding> at_x;
  for (std::size_t i = 0; i < n; ++i) at_x.push_back(encode_goal(g, i, x, fresh, limits));
  for (const auto& e : at_x) {
    for (const auto& q : e.fresh_variables()) script.declarations.push_back(q);
  }
  for (const auto& b : x) {
    for (auto& c : simplex_constraints(b)) script.assertions.push_back(std::move(c));
  }
  for (const auto& e : at_x) {
    for (const auto& c : e.side_constraints) script.assertions.push_back(c);
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto blocks = x;
    blocks[i] = variable_block(g, i, "y");
    const GoalEncoding dev = encode_goal(g, i, blocks, fresh, limits);
    std::vector<std::string> bound;
    for (const auto& t : blocks[i]) bound.push_back(t.name());
    for (const auto& q : dev.fresh_variables()) bound.push_back(q);
    std::vector<Term> premise = simplex_constraints(blocks[i]);
    premise.insert(premise.end(), dev.side_constraints.begin(), dev.side_constraints.end());
    script.assertions.push_back(Term::forall(
        std::move(bound),
        Term::implies(Term::conj(std::move(premise)), Term::compare(Kind::Le, dev.value, at_x[i].value))));
  }
  return script;
}

}  // namespace expgame::rcf
