#include "expgame/logic.hpp"

#include <algorithm>
#include <functional>

namespace expgame {

const char* connective_name(Connective c) {
  switch (c) {
    case Connective::Falsity: return "falsity";
    case Connective::Constant: return "constant";
    case Connective::Variable: return "variable";
    case Connective::Atom: return "expectation";
    case Connective::Half: return "half";
    case Connective::Implies: return "implies";
    case Connective::Neg: return "neg";
    case Connective::StrongAnd: return "strong-and";
    case Connective::StrongOr: return "strong-or";
    case Connective::Ominus: return "ominus";
    case Connective::MinAnd: return "min";
    case Connective::MaxOr: return "max";
    case Connective::Iff: return "iff";
    case Connective::Distance: return "distance";
    case Connective::Product: return "product";
    case Connective::TruncDiv: return "truncated-division";
    case Connective::Delta: return "delta";
  }
  return "?";
}

int arity(Connective c) {
  switch (c) {
    case Connective::Falsity:
    case Connective::Constant:
    case Connective::Variable:
    case Connective::Atom:
    case Connective::Half:
      return 0;
    case Connective::Neg:
    case Connective::Delta:
      return 1;
    default:
      return 2;
  }
}

bool is_product_connective(Connective c) {
  return c == Connective::Product || c == Connective::TruncDiv || c == Connective::Delta ||
         c == Connective::Half;
}

// ---------------------------------------------------------------------------
// Expr

template <Level L>
Expr<L> Expr<L>::make(Connective op, std::vector<Expr> operands) {
  for (const auto& o : operands) {
    if (!o) throw std::invalid_argument("empty operand");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->operands = std::move(operands);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

template <Level L>
Expr<L> Expr<L>::constant(Rational value) {
  if (!in_unit_interval(value)) {
    throw std::invalid_argument("truth constant outside [0,1]: " + value.str());
  }
  if constexpr (L == Level::Goal) {
    // The goal language has a dedicated constant for one half.
    if (value == Rational(1, 2)) return half();
  }
  auto n = std::make_shared<Node>();
  n->op = Connective::Constant;
  n->value = std::move(value);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

template <Level L>
Expr<L> Expr<L>::var(std::string name) requires(L == Level::Payoff) {
  auto n = std::make_shared<Node>();
  n->op = Connective::Variable;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

template <Level L>
Expr<L> Expr<L>::atom(std::size_t player) requires(L == Level::Goal) {
  auto n = std::make_shared<Node>();
  n->op = Connective::Atom;
  n->player = player;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

template <Level L>
Expr<L> Expr<L>::node(Connective op, std::vector<Expr> operands) {
  if (static_cast<int>(operands.size()) != arity(op) || arity(op) == 0) {
    throw std::invalid_argument(std::string("bad operand count for ") + connective_name(op));
  }
  if (L == Level::Payoff && is_product_connective(op)) {
    throw std::invalid_argument(std::string(connective_name(op)) + " is not a payoff connective");
  }
  return make(op, std::move(operands));
}

template <Level L>
std::size_t Expr<L>::size() const {
  std::size_t n = 1;
  for (const auto& o : operands()) n += o.size();
  return n;
}

template <Level L>
std::size_t Expr<L>::depth() const {
  std::size_t d = 0;
  for (const auto& o : operands()) d = std::max(d, o.depth());
  return d + 1;
}

template <Level L>
bool Expr<L>::structurally_equal(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.op != y.op || x.operands.size() != y.operands.size()) return false;
  switch (x.op) {
    case Connective::Variable:
      if (x.name != y.name) return false;
      break;
    case Connective::Constant:
      if (x.value != y.value) return false;
      break;
    case Connective::Atom:
      if (x.player != y.player) return false;
      break;
    default:
      break;
  }
  return std::equal(x.operands.begin(), x.operands.end(), y.operands.begin());
}

template class Expr<Level::Payoff>;
template class Expr<Level::Goal>;

// ---------------------------------------------------------------------------
// truth functions

namespace truth {

Rational implies(const Rational& a, const Rational& b) { return min(Rational(1) - a + b, Rational(1)); }
Rational neg(const Rational& a) { return Rational(1) - a; }
Rational strong_and(const Rational& a, const Rational& b) { return max(Rational(0), a + b - Rational(1)); }
Rational strong_or(const Rational& a, const Rational& b) { return min(Rational(1), a + b); }
Rational ominus(const Rational& a, const Rational& b) { return max(Rational(0), a - b); }
Rational min_and(const Rational& a, const Rational& b) { return min(a, b); }
Rational max_or(const Rational& a, const Rational& b) { return max(a, b); }
Rational iff(const Rational& a, const Rational& b) { return Rational(1) - abs(a - b); }
Rational distance(const Rational& a, const Rational& b) { return abs(a - b); }
Rational product(const Rational& a, const Rational& b) { return a * b; }
Rational trunc_div(const Rational& a, const Rational& b) { return a <= b ? Rational(1) : b / a; }
Rational delta(const Rational& a) { return a == Rational(1) ? Rational(1) : Rational(0); }

}  // namespace truth

namespace {

Rational apply_binary(Connective op, const Rational& a, const Rational& b) {
  switch (op) {
    case Connective::Implies: return truth::implies(a, b);
    case Connective::StrongAnd: return truth::strong_and(a, b);
    case Connective::StrongOr: return truth::strong_or(a, b);
    case Connective::Ominus: return truth::ominus(a, b);
    case Connective::MinAnd: return truth::min_and(a, b);
    case Connective::MaxOr: return truth::max_or(a, b);
    case Connective::Iff: return truth::iff(a, b);
    case Connective::Distance: return truth::distance(a, b);
    case Connective::Product: return truth::product(a, b);
    case Connective::TruncDiv: return truth::trunc_div(a, b);
    default: break;
  }
  throw std::logic_error(std::string("not a binary connective: ") + connective_name(op));
}

// Shared recursion for both levels; `leaf` resolves variables and atoms.
template <Level L, class Leaf>
Rational evaluate(const Expr<L>& f, const Leaf& leaf) {
  switch (f.op()) {
    case Connective::Falsity: return Rational(0);
    case Connective::Half: return Rational(1, 2);
    case Connective::Constant:
    case Connective::Variable:
    case Connective::Atom:
      return leaf(f);
    case Connective::Neg: return truth::neg(evaluate<L>(f.operand(0), leaf));
    case Connective::Delta: return truth::delta(evaluate<L>(f.operand(0), leaf));
    default:
      return apply_binary(f.op(), evaluate<L>(f.operand(0), leaf), evaluate<L>(f.operand(1), leaf));
  }
}

}  // namespace

Rational eval_formula(const Formula& f, const Valuation& v, const LkScale& scale) {
  auto leaf = [&](const Formula& node) -> Rational {
    if (node.op() == Connective::Constant) {
      if (!scale.contains(node.value())) {
        throw EvalError("constant " + node.value().str() + " outside L_" + std::to_string(scale.k()));
      }
      return node.value();
    }
    const auto it = v.find(node.name());
    if (it == v.end()) throw EvalError("unbound variable " + node.name());
    if (!scale.contains(it->second)) {
      throw EvalError("value " + it->second.str() + " of " + node.name() + " outside L_" +
                      std::to_string(scale.k()));
    }
    return it->second;
  };
  Rational result = evaluate<Level::Payoff>(f, leaf);
  if (!scale.contains(result)) throw std::logic_error("L_k not closed: " + result.str());
  return result;
}

Rational eval_modal_closed(const ModalFormula& f, const std::map<std::size_t, Rational>& atom_values) {
  auto leaf = [&](const ModalFormula& node) -> Rational {
    if (node.op() == Connective::Constant) return node.value();
    const auto it = atom_values.find(node.player());
    if (it == atom_values.end()) {
      throw EvalError("unbound expectation atom for player index " + std::to_string(node.player()));
    }
    if (!in_unit_interval(it->second)) {
      throw EvalError("expectation value outside [0,1]: " + it->second.str());
    }
    return it->second;
  };
  Rational result = evaluate<Level::Goal>(f, leaf);
  if (!in_unit_interval(result)) throw std::logic_error("goal value outside [0,1]: " + result.str());
  return result;
}

// ---------------------------------------------------------------------------
// expansion of derived connectives

template <Level L>
Expr<L> expand_derived(const Expr<L>& f) {
  using E = Expr<L>;
  const auto neg = [](const E& a) { return E::implies(a, E::falsity()); };
  const auto strong_and = [&](const E& a, const E& b) { return neg(E::implies(a, neg(b))); };
  const auto iff = [&](const E& a, const E& b) {
    return strong_and(E::implies(a, b), E::implies(b, a));
  };

  if (arity(f.op()) == 0) return f;
  std::vector<E> ops;
  for (const auto& o : f.operands()) ops.push_back(expand_derived(o));

  switch (f.op()) {
    case Connective::Implies: return E::implies(ops[0], ops[1]);
    case Connective::Neg: return neg(ops[0]);
    case Connective::StrongAnd: return strong_and(ops[0], ops[1]);
    case Connective::StrongOr: return neg(strong_and(neg(ops[0]), neg(ops[1])));
    case Connective::Ominus: return strong_and(ops[0], neg(ops[1]));
    case Connective::MinAnd: return strong_and(ops[0], E::implies(ops[0], ops[1]));
    case Connective::MaxOr: return E::implies(E::implies(ops[0], ops[1]), ops[1]);
    case Connective::Iff: return iff(ops[0], ops[1]);
    case Connective::Distance: return neg(iff(ops[0], ops[1]));
    default: return E::node(f.op(), std::move(ops));
  }
}

template Formula expand_derived(const Formula&);
template ModalFormula expand_derived(const ModalFormula&);

std::set<std::string> variables_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Connective::Variable) out.insert(g.name());
    for (const auto& o : g.operands()) walk(o);
  };
  walk(f);
  return out;
}

std::vector<Rational> constants_outside(const Formula& f, const LkScale& scale) {
  std::vector<Rational> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Connective::Constant && !scale.contains(g.value())) out.push_back(g.value());
    for (const auto& o : g.operands()) walk(o);
  };
  walk(f);
  return out;
}

std::set<std::size_t> atoms_of(const ModalFormula& f) {
  std::set<std::size_t> out;
  std::function<void(const ModalFormula&)> walk = [&](const ModalFormula& g) {
    if (g.op() == Connective::Atom) out.insert(g.player());
    for (const auto& o : g.operands()) walk(o);
  };
  walk(f);
  return out;
}

}  // namespace expgame
