#include "expgame/expectation.hpp"

#include <functional>

namespace expgame {

MixedStrategy MixedStrategy::point_mass(std::size_t owner, std::uint64_t index) {
  MixedStrategy m{owner, {}};
  m.probs.emplace(index, Rational(1));
  return m;
}

MixedStrategy MixedStrategy::uniform(std::size_t owner, std::uint64_t count) {
  MixedStrategy m{owner, {}};
  for (std::uint64_t s = 0; s < count; ++s) m.probs.emplace(s, Rational(1, static_cast<long>(count)));
  return m;
}

Rational MixedStrategy::prob(std::uint64_t index) const {
  const auto it = probs.find(index);
  return it == probs.end() ? Rational(0) : it->second;
}

Rational MixedStrategy::total() const {
  Rational t;
  for (const auto& [s, q] : probs) t += q;
  return t;
}

bool MixedStrategy::is_point_mass() const {
  const auto n = normalized();
  return n.probs.size() == 1 && n.probs.begin()->second == Rational(1);
}

MixedStrategy MixedStrategy::normalized() const {
  MixedStrategy m{owner, {}};
  for (const auto& [s, q] : probs) {
    if (!q.is_zero()) m.probs.emplace(s, q);
  }
  return m;
}

Profile Profile::with(std::size_t player, MixedStrategy s) const {
  Profile p = *this;
  p.strategies.at(player) = std::move(s);
  return p;
}

Profile all_zero_profile(const Game& g) {
  Profile p;
  for (std::size_t i = 0; i < g.player_count(); ++i) p.strategies.push_back(MixedStrategy::point_mass(i, 0));
  return p;
}

std::vector<std::string> validate_profile(const Game& g, const Profile& p) {
  std::vector<std::string> out;
  if (p.size() != g.player_count()) {
    out.push_back("profile has " + std::to_string(p.size()) + " strategies for " +
                  std::to_string(g.player_count()) + " players");
  }
  for (std::size_t i = 0; i < std::min(p.size(), g.player_count()); ++i) {
    const auto& m = p.strategies[i];
    const std::string& name = g.players[i];
    if (m.owner != i) out.push_back(name + " slot holds a strategy of player #" + std::to_string(m.owner + 1));
    const std::uint64_t count = strategy_count(g, i);
    bool negative = false;
    for (const auto& [s, q] : m.probs) {
      if (s >= count) out.push_back(name + " strategy index " + std::to_string(s) + " out of range");
      if (q.sign() < 0) negative = true;
    }
    if (negative) out.push_back(name + " negative probability");
    const Rational total = m.total();
    if (total != Rational(1)) out.push_back(name + " probabilities sum to " + total.str());
  }
  return out;
}

namespace {

struct SupportEntry {
  Strategy strategy;
  Rational prob;
};

// Walks the product of the supports, player by player, carrying the partial
// product of probabilities; `visit` receives each full valuation and weight.
void for_each_support_combination(const Game& g, const Profile& p, const EnumerationLimits& limits,
                                  const std::function<void(const Valuation&, const Rational&)>& visit) {
  const std::size_t n = g.player_count();
  if (p.size() != n) throw std::invalid_argument("profile does not match the game");
  std::vector<std::vector<SupportEntry>> supports(n);
  std::uint64_t work = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [s, q] : p[i].probs) {
      if (!q.is_zero()) supports[i].push_back({strategy_at(g, i, s), q});
    }
    work = saturating_mul(work, supports[i].size());
  }
  if (work > limits.max_combinations) throw CapExceeded("strategy combinations", work, limits.max_combinations);

  Valuation v;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& weight) {
    if (i == n) {
      visit(v, weight);
      return;
    }
    for (const auto& e : supports[i]) {
      for (std::size_t j = 0; j < e.strategy.values.size(); ++j) v[g.controls[i][j]] = e.strategy.values[j];
      rec(i + 1, weight * e.prob);
    }
  };
  rec(0, Rational(1));
}

}  // namespace

Rational expected_payoff(const Game& g, std::size_t player, const Profile& p, const EnumerationLimits& limits) {
  const Formula& phi = g.payoffs.at(player);
  Rational sum;
  for_each_support_combination(g, p, limits, [&](const Valuation& v, const Rational& w) {
    sum += w * eval_formula(phi, v, g.scale);
  });
  return sum;
}

std::vector<Rational> expected_payoffs(const Game& g, const Profile& p, const EnumerationLimits& limits) {
  std::vector<Rational> sums(g.player_count());
  for_each_support_combination(g, p, limits, [&](const Valuation& v, const Rational& w) {
    for (std::size_t j = 0; j < sums.size(); ++j) sums[j] += w * eval_formula(g.payoffs[j], v, g.scale);
  });
  return sums;
}

Rational eval_goal(const Game& g, std::size_t player, const Profile& p, const EnumerationLimits& limits) {
  const ModalFormula& goal = g.goals.at(player);
  std::map<std::size_t, Rational> atoms;
  for (std::size_t j : atoms_of(goal)) atoms[j] = expected_payoff(g, j, p, limits);
  return eval_modal_closed(goal, atoms);
}

std::vector<Rational> eval_goals(const Game& g, const Profile& p, const EnumerationLimits& limits) {
  const auto e = expected_payoffs(g, p, limits);
  std::map<std::size_t, Rational> atoms;
  for (std::size_t j = 0; j < e.size(); ++j) atoms[j] = e[j];
  std::vector<Rational> out;
  for (const auto& goal : g.goals) out.push_back(eval_modal_closed(goal, atoms));
  return out;
}

}  // namespace expgame
