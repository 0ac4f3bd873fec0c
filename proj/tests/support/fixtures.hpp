#pragma once

#include "expgame/expectation.hpp"

namespace fixtures {

using namespace expgame;

inline Game two_player(std::uint32_t k, ModalFormula goal1, ModalFormula goal2) {
  Game g;
  g.scale = LkScale(k);
  g.players = {"P1", "P2"};
  g.variables = {"p1", "p2"};
  g.controls = {{"p1"}, {"p2"}};
  g.payoffs = {Formula::var("p1"), Formula::var("p2")};
  g.goals = {std::move(goal1), std::move(goal2)};
  return g;
}

// Goals are the players' own expectations.
inline Game example1() { return two_player(1, ModalFormula::atom(0), ModalFormula::atom(1)); }

// P1 wants the expectations equal, P2 wants them apart.
inline Game example2() {
  const auto d = ModalFormula::distance(ModalFormula::atom(0), ModalFormula::atom(1));
  return two_player(1, ModalFormula::neg(d), d);
}

// One player, one variable, goal E[p1].
inline Game single(std::uint32_t k = 1) {
  Game g;
  g.scale = LkScale(k);
  g.players = {"P1"};
  g.variables = {"p1"};
  g.controls = {{"p1"}};
  g.payoffs = {Formula::var("p1")};
  g.goals = {ModalFormula::atom(0)};
  return g;
}

inline MixedStrategy pm(std::size_t owner, std::uint64_t s) { return MixedStrategy::point_mass(owner, s); }
inline MixedStrategy uni(std::size_t owner, std::uint64_t n = 2) { return MixedStrategy::uniform(owner, n); }

inline Profile profile(std::vector<MixedStrategy> s) { return Profile{std::move(s)}; }

}  // namespace fixtures
