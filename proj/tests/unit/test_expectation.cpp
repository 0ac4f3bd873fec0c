#include <doctest.h>

#include "expgame/expectation.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace expgame;
using fixtures::pm;
using fixtures::uni;

TEST_CASE("mixed strategy helpers") {
  const auto u = MixedStrategy::uniform(0, 4);
  CHECK(u.prob(3) == Rational(1, 4));
  CHECK(u.prob(9) == 0);
  CHECK(u.total() == 1);
  CHECK_FALSE(u.is_point_mass());
  CHECK(pm(0, 2).is_point_mass());
  MixedStrategy m{0, {{0, Rational(0)}, {1, Rational(1)}}};
  CHECK(m.normalized().probs.size() == 1);
}

TEST_CASE("profile validation") {
  const Game g = fixtures::example2();
  CHECK(validate_profile(g, fixtures::profile({uni(0), uni(1)})).empty());

  MixedStrategy short_by{0, {{0, Rational(2, 5)}, {1, Rational(1, 2)}}};
  CHECK(validate_profile(g, fixtures::profile({short_by, uni(1)})) ==
        std::vector<std::string>{"P1 probabilities sum to 9/10"});

  MixedStrategy negative{0, {{0, Rational(-1, 10)}, {1, Rational(11, 10)}}};
  CHECK(validate_profile(g, fixtures::profile({negative, uni(1)})) ==
        std::vector<std::string>{"P1 negative probability"});

  CHECK_FALSE(validate_profile(g, fixtures::profile({uni(0)})).empty());
  CHECK_FALSE(validate_profile(g, fixtures::profile({pm(0, 2), uni(1)})).empty());
  CHECK_FALSE(validate_profile(g, fixtures::profile({uni(1), uni(1)})).empty());
}

TEST_CASE("expected payoff examples") {
  const Game single = fixtures::single();
  CHECK(expected_payoff(single, 0, fixtures::profile({uni(0)})) == Rational(1, 2));

  Game g = fixtures::example2();
  g.payoffs[0] = Formula::strong_and(Formula::var("p1"), Formula::var("p2"));
  CHECK(expected_payoff(g, 0, fixtures::profile({uni(0), uni(1)})) == Rational(1, 4));

  // Point masses reduce to the pure payoff.
  CHECK(expected_payoff(g, 0, fixtures::profile({pm(0, 1), pm(1, 1)})) == 1);
  CHECK(expected_payoff(g, 0, fixtures::profile({pm(0, 1), pm(1, 0)})) == 0);
}

TEST_CASE("goal values for Example 2") {
  const Game g = fixtures::example2();
  const Profile p = fixtures::profile({uni(0), pm(1, 1)});
  CHECK(expected_payoffs(g, p) == std::vector<Rational>{Rational(1, 2), 1});
  CHECK(eval_goal(g, 0, p) == Rational(1, 2));
  CHECK(eval_goal(g, 1, p) == Rational(1, 2));
  CHECK(eval_goals(g, p) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("atomic goals equal the expectation") {
  gen::Gen rng(31);
  for (int n = 0; n < 50; ++n) {
    const Game g = rng.game({.atomic_goals = true});
    const Profile p = rng.profile(g);
    for (std::size_t i = 0; i < g.player_count(); ++i) CHECK(eval_goal(g, i, p) == expected_payoff(g, i, p));
  }
}

TEST_CASE("expected payoff agrees with the naive oracle") {
  gen::Gen rng(41);
  for (int n = 0; n < 150; ++n) {
    const Game g = rng.game({});
    const Profile p = rng.profile(g);
    REQUIRE(validate_profile(g, p).empty());
    const auto all = expected_payoffs(g, p);
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      const Rational e = expected_payoff(g, i, p);
      CHECK(e == oracle::expected_payoff(g, i, p));
      CHECK(all[i] == e);
      CHECK(eval_goal(g, i, p) == oracle::goal_value(g, i, p));
    }
  }
}

TEST_CASE("multilinearity, vertex decomposition and range") {
  gen::Gen rng(43);
  for (int n = 0; n < 100; ++n) {
    const Game g = rng.game({});
    const Profile p = rng.profile(g);
    const std::size_t i = rng.uniform(0, g.player_count() - 1);
    const std::size_t who = rng.uniform(0, g.player_count() - 1);

    // Mixture of two distributions for player `who`.
    const MixedStrategy other = rng.mixed(g, who, 5);
    const Rational lambda = rng.unit(9);
    MixedStrategy mix{who, {}};
    for (const auto& [s, q] : p[who].probs) mix.probs[s] = mix.prob(s) + lambda * q;
    for (const auto& [s, q] : other.probs) mix.probs[s] = mix.prob(s) + (Rational(1) - lambda) * q;
    CHECK(expected_payoff(g, i, p.with(who, mix)) ==
          lambda * expected_payoff(g, i, p) + (Rational(1) - lambda) * expected_payoff(g, i, p.with(who, other)));

    Rational decomposed(0);
    for (const auto& [s, q] : p[who].probs) {
      decomposed = decomposed + q * expected_payoff(g, i, p.with(who, pm(who, s)));
    }
    const Rational e = expected_payoff(g, i, p);
    CHECK(decomposed == e);

    // Between the smallest and largest payoff value.
    Rational lo(1);
    Rational hi(0);
    oracle::for_each_combination(g, [&](const std::vector<std::uint64_t>& s) {
      Profile q;
      for (std::size_t j = 0; j < s.size(); ++j) q.strategies.push_back(pm(j, s[j]));
      const Rational v = expected_payoff(g, i, q);
      lo = min(lo, v);
      hi = max(hi, v);
    });
    CHECK(lo <= e);
    CHECK(e <= hi);
  }
}

TEST_CASE("the support product is capped") {
  Game g = fixtures::example2();
  g.scale = LkScale(9);
  const Profile p = fixtures::profile({uni(0, 10), uni(1, 10)});
  EnumerationLimits limits;
  limits.max_combinations = 50;
  CHECK_THROWS_AS(expected_payoff(g, 0, p, limits), CapExceeded);
  limits.max_combinations = 100;
  CHECK(expected_payoff(g, 0, p, limits) == Rational(1, 2));
  // Small supports pass even when |S| is large.
  CHECK(expected_payoff(g, 0, fixtures::profile({pm(0, 3), pm(1, 0)}), limits) == Rational(1, 3));
}

TEST_CASE("all-zero profile") {
  const Game g = fixtures::example2();
  const Profile p = all_zero_profile(g);
  CHECK(p == fixtures::profile({pm(0, 0), pm(1, 0)}));
  CHECK(expected_payoffs(g, p) == std::vector<Rational>{0, 0});
}
