#include "expgame/equilibrium.hpp"

#include <algorithm>
#include <map>

namespace expgame {

bool has_atomic_goal(const Game& g, std::size_t player) {
  return g.goals.at(player).op() == Connective::Atom;
}

// ---------------------------------------------------------------------------
// DeviationEvaluator

DeviationEvaluator::DeviationEvaluator(const Game& g, std::size_t player, const Profile& p,
                                       const EnumerationLimits& limits)
    : game_(g), player_(player), strategy_count_(expgame::strategy_count(g, player)) {
  if (strategy_count_ > limits.max_player_strategies) {
    throw CapExceeded("strategies of " + g.players.at(player), strategy_count_, limits.max_player_strategies);
  }
  const auto atoms = atoms_of(g.goals.at(player));
  atoms_.assign(atoms.begin(), atoms.end());
  vertex_.assign(atoms_.size(), std::vector<Rational>(strategy_count_));
  for (std::uint64_t s = 0; s < strategy_count_; ++s) {
    const auto e = expected_payoffs(g, p.with(player, MixedStrategy::point_mass(player, s)), limits);
    for (std::size_t a = 0; a < atoms_.size(); ++a) vertex_[a][s] = e.at(atoms_[a]);
  }
  current_ = value_of(p[player]);
}

Rational DeviationEvaluator::goal_from(const std::map<std::size_t, Rational>& atoms) const {
  return eval_modal_closed(game_.goals[player_], atoms);
}

Rational DeviationEvaluator::value_of(const MixedStrategy& deviation) const {
  std::map<std::size_t, Rational> atoms;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    Rational e;
    for (const auto& [s, q] : deviation.probs) e += q * vertex_[a].at(s);
    atoms[atoms_[a]] = e;
  }
  return goal_from(atoms);
}

Rational DeviationEvaluator::value_of_pure(std::uint64_t strategy) const {
  std::map<std::size_t, Rational> atoms;
  for (std::size_t a = 0; a < atoms_.size(); ++a) atoms[atoms_[a]] = vertex_[a].at(strategy);
  return goal_from(atoms);
}

DeviationEvaluator::Best DeviationEvaluator::best_pure() const {
  Best best{MixedStrategy::point_mass(player_, 0), value_of_pure(0)};
  for (std::uint64_t s = 1; s < strategy_count_; ++s) {
    Rational v = value_of_pure(s);
    if (v > best.value) best = {MixedStrategy::point_mass(player_, s), std::move(v)};
  }
  return best;
}

DeviationEvaluator::Best DeviationEvaluator::best_on_grid(std::uint32_t denominator,
                                                          const EnumerationLimits& limits) const {
  if (denominator == 0) throw std::invalid_argument("grid denominator must be positive");
  if (denominator == 1) return best_pure();
  const std::uint64_t count = composition_count(denominator, strategy_count_);
  if (count > limits.max_compositions) {
    throw CapExceeded("grid deviations of " + game_.players[player_], count, limits.max_compositions);
  }
  std::optional<Best> best;
  for_each_composition(denominator, strategy_count_, [&](const std::vector<std::uint32_t>& counts) {
    MixedStrategy m = composition_strategy(player_, counts, denominator);
    Rational v = value_of(m);
    if (!best || v > best->value) best = Best{std::move(m), std::move(v)};
  });
  return *best;
}

// ---------------------------------------------------------------------------
// grids

void for_each_composition(std::uint32_t total, std::uint64_t parts,
                          const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  if (parts == 0) {
    if (total == 0) visit({});
    return;
  }
  std::vector<std::uint32_t> counts(parts, 0);
  std::function<void(std::uint64_t, std::uint32_t)> rec = [&](std::uint64_t pos, std::uint32_t left) {
    if (pos + 1 == parts) {
      counts[pos] = left;
      visit(counts);
      return;
    }
    for (std::uint32_t c = left + 1; c-- > 0;) {
      counts[pos] = c;
      rec(pos + 1, left - c);
    }
    counts[pos] = 0;
  };
  rec(0, total);
}

MixedStrategy composition_strategy(std::size_t owner, const std::vector<std::uint32_t>& counts,
                                   std::uint32_t total) {
  MixedStrategy m{owner, {}};
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s]) m.probs.emplace(s, Rational(counts[s], static_cast<long>(total)));
  }
  return m;
}

// ---------------------------------------------------------------------------
// refutation and verification

namespace {

std::optional<DeviationWitness> as_witness(const DeviationEvaluator& ev, DeviationEvaluator::Best best) {
  if (best.value <= ev.current_value()) return std::nullopt;
  return DeviationWitness{ev.player(), std::move(best.strategy), ev.current_value(), std::move(best.value)};
}

}  // namespace

std::optional<DeviationWitness> pure_deviation_refute(const Game& g, std::size_t player, const Profile& p,
                                                      const EnumerationLimits& limits) {
  const DeviationEvaluator ev(g, player, p, limits);
  return as_witness(ev, ev.best_pure());
}

std::optional<DeviationWitness> grid_refute(const Game& g, std::size_t player, const Profile& p,
                                            std::uint32_t denominator, const EnumerationLimits& limits) {
  const DeviationEvaluator ev(g, player, p, limits);
  return as_witness(ev, ev.best_on_grid(denominator, limits));
}

VerificationReport verify_equilibrium(const Game& g, const Profile& p, std::uint32_t denominator,
                                      const EnumerationLimits& limits) {
  VerificationReport report;
  std::optional<DeviationWitness> first_witness;
  bool all_certified = true;
  std::optional<Rational> max_gap;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const DeviationEvaluator ev(g, i, p, limits);
    auto best = ev.best_on_grid(denominator, limits);
    const Rational gap = best.value - ev.current_value();
    auto witness = as_witness(ev, std::move(best));
    if (witness) {
      if (!first_witness) first_witness = *witness;
      report.players.emplace_back(NotEquilibrium{std::move(*witness)});
      all_certified = false;
    } else if (has_atomic_goal(g, i)) {
      report.players.emplace_back(Equilibrium{});
    } else {
      report.players.emplace_back(Unknown{denominator, gap});
      if (!max_gap || *max_gap < gap) max_gap = gap;
      all_certified = false;
    }
  }
  if (first_witness) {
    report.overall = NotEquilibrium{*first_witness};
  } else if (all_certified) {
    report.overall = Equilibrium{};
  } else {
    report.overall = Unknown{denominator, *max_gap};
  }
  return report;
}

bool witness_reverifies(const Game& g, const Profile& p, const DeviationWitness& w,
                        const EnumerationLimits& limits) {
  if (!validate_profile(g, p.with(w.player, w.new_strategy)).empty()) return false;
  const Rational before = eval_goal(g, w.player, p, limits);
  const Rational after = eval_goal(g, w.player, p.with(w.player, w.new_strategy), limits);
  return before == w.old_value && after == w.new_value && after > before;
}

// ---------------------------------------------------------------------------
// dynamics

DynamicsTrace best_response_dynamics(const Game& g, const Profile& start, std::uint64_t max_iters,
                                     std::uint32_t denominator, const EnumerationLimits& limits) {
  const std::size_t n = g.player_count();
  DynamicsTrace trace;
  Profile current = start;
  trace.steps.push_back({current, eval_goals(g, current, limits), std::nullopt});

  std::map<std::pair<Profile, std::size_t>, std::size_t> seen;  // (profile, next player) -> step
  seen.emplace(std::make_pair(current, std::size_t{0}), 0);

  std::size_t passes = 0;
  std::size_t next = 0;
  while (true) {
    if (trace.iterations >= max_iters) {
      trace.status = MaxIters{};
      return trace;
    }
    const std::size_t i = next;
    next = (next + 1) % n;
    ++trace.iterations;

    const DeviationEvaluator ev(g, i, current, limits);
    auto best = ev.best_on_grid(denominator, limits);
    if (best.value <= ev.current_value()) {
      if (++passes == n) {
        trace.status = FixedPoint{};
        return trace;
      }
      continue;
    }
    passes = 0;
    current = current.with(i, std::move(best.strategy));
    trace.steps.push_back({current, eval_goals(g, current, limits), i});
    const auto [it, fresh] = seen.emplace(std::make_pair(current, next), trace.steps.size() - 1);
    if (!fresh) {
      trace.status = Cycle{trace.steps.size() - 1 - it->second};
      return trace;
    }
  }
}

// ---------------------------------------------------------------------------
// grid search

SearchReport search_equilibrium(const Game& g, std::uint32_t denominator, const EnumerationLimits& limits) {
  if (denominator == 0) throw std::invalid_argument("grid denominator must be positive");
  const std::size_t n = g.player_count();

  std::vector<std::vector<MixedStrategy>> grids(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t count = strategy_count(g, i);
    if (count > limits.max_player_strategies) {
      throw CapExceeded("strategies of " + g.players[i], count, limits.max_player_strategies);
    }
    total = saturating_mul(total, composition_count(denominator, count));
    if (total > limits.max_compositions) throw CapExceeded("grid profiles", total, limits.max_compositions);
    for_each_composition(denominator, count, [&](const std::vector<std::uint32_t>& c) {
      grids[i].push_back(composition_strategy(i, c, denominator));
    });
  }

  bool all_atomic = true;
  for (std::size_t i = 0; i < n; ++i) all_atomic = all_atomic && has_atomic_goal(g, i);

  SearchReport report;
  std::optional<Rational> best_eps;
  std::vector<std::size_t> idx(n, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    Profile p;
    for (std::size_t i = 0; i < n; ++i) p.strategies.push_back(grids[i][idx[i]]);
    ++report.profiles_examined;

    Rational eps;
    for (std::size_t i = 0; i < n; ++i) {
      const DeviationEvaluator ev(g, i, p, limits);
      eps = max(eps, ev.best_on_grid(denominator, limits).value - ev.current_value());
    }
    if (!best_eps || eps < *best_eps) {
      best_eps = eps;
      report.best_candidate = p;
      report.epsilon = eps;
    }
    if (eps.is_zero() && all_atomic) {
      report.certified = p;
      return report;
    }

    for (std::size_t pos = n; pos-- > 0;) {
      if (++idx[pos] < grids[pos].size()) break;
      idx[pos] = 0;
    }
  }
  return report;
}

}  // namespace expgame
