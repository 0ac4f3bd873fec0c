#include <doctest.h>

#include "expgame/game_file.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace expgame;

namespace {

const char* kExample2 = R"(# P1 wants agreement, P2 wants distance
k: 1
player P1 controls p1
player P2 controls p2
payoff P1: p1
payoff P2: p2
goal P1: ~d(E[P1], E[P2])
goal P2: d(E[P1], E[P2])
)";

std::vector<std::string> errors(std::string_view text) {
  const auto r = parse_game_file(text);
  CHECK_FALSE(r.ok());
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) {
    CHECK(d.begin <= d.end);
    CHECK(d.end <= text.size());
    out.push_back(d.message);
  }
  return out;
}

bool mentions(const std::vector<std::string>& msgs, std::string_view needle) {
  for (const auto& m : msgs) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string replaced(std::string text, std::string_view from, std::string_view to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

}  // namespace

TEST_CASE("Example 2 game file") {
  const auto r = parse_game_file(kExample2);
  REQUIRE(r.ok());
  const Game& g = *r.value;
  const Game expected = fixtures::example2();
  CHECK(g.scale == expected.scale);
  CHECK(g.players == expected.players);
  CHECK(g.variables == expected.variables);
  CHECK(g.controls == expected.controls);
  CHECK(g.payoffs[0] == expected.payoffs[0]);
  CHECK(g.goals[0] == expected.goals[0]);
  CHECK(g.goals[1] == expected.goals[1]);
}

TEST_CASE("game file diagnostics") {
  const std::string base = kExample2;
  CHECK(mentions(errors(replaced(base, "goal P2: d(E[P1], E[P2])\n", "")), "missing goal for P2"));
  CHECK(mentions(errors(replaced(base, "controls p2", "controls p2, p1")), "controlled by both P1 and P2"));
  CHECK(mentions(errors(replaced(base, "k: 1\n", "")), "missing 'k:'"));
  CHECK(mentions(errors(replaced(base, "k: 1", "k: 0")), "positive integer"));
  CHECK(mentions(errors(base + "player P1 controls q\n"), "duplicate player P1"));
  CHECK(mentions(errors(base + "payoff P1: p2\n"), "duplicate payoff for P1"));
  CHECK(mentions(errors(base + "goal P3: E[P1]\n"), "undeclared player P3"));
  CHECK(mentions(errors(base + "hello\n"), "unrecognised line"));
  CHECK(mentions(errors(replaced(base, "payoff P1: p1", "payoff P1: p3")), "unknown variable p3"));
  CHECK(mentions(errors(replaced(base, "payoff P1: p1", "payoff P1: c{1/2}")), "outside L_1"));
  CHECK(mentions(errors(replaced(base, "payoff P1: p1", "payoff P1: p1 &")), "unexpected end of formula"));
  CHECK(mentions(errors(replaced(base, "goal P1: ~d(E[P1], E[P2])", "goal P1: E[P7]")), "unknown player P7"));
  CHECK(mentions(errors(replaced(base, "controls p2", "controls")), "empty control set P2"));
}

TEST_CASE("formula diagnostics are located in the file") {
  const std::string text = replaced(kExample2, "payoff P2: p2", "payoff P2: p2 $");
  const auto r = parse_game_file(text);
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(text.substr(r.diagnostics[0].begin, 1) == "$");
}

TEST_CASE("validation errors point at the offending declaration") {
  const std::string text = replaced(kExample2, "goal P2: d(E[P1], E[P2])\n", "");
  const auto r = parse_game_file(text);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(text.substr(r.diagnostics[0].begin, 9) == "player P2");
}

TEST_CASE("format_game round-trips") {
  gen::Gen rng(101);
  for (int n = 0; n < 50; ++n) {
    const Game g = rng.game({});
    const std::string text = format_game(g);
    const auto r = parse_game_file(text);
    REQUIRE_MESSAGE(r.ok(), text);
    CHECK(format_game(*r.value) == text);
    CHECK(r.value->controls == g.controls);
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      CHECK(r.value->payoffs[i] == g.payoffs[i]);
      CHECK(r.value->goals[i] == g.goals[i]);
    }
  }
}

TEST_CASE("profile files") {
  const Game g = fixtures::example2();
  const auto r = parse_profile_file("# comment\nP1  p1=0  1/2\nP1 p1=1 1/2\nP2  p2=1  1\n", g);
  REQUIRE(r.ok());
  CHECK(*r.value == fixtures::profile({fixtures::uni(0), fixtures::pm(1, 1)}));
  CHECK(format_profile(g, *r.value) == "P1  p1=0  1/2\nP1  p1=1  1/2\nP2  p2=1  1\n");

  const auto diag = [&](std::string_view text) {
    const auto x = parse_profile_file(text, g);
    CHECK_FALSE(x.ok());
    REQUIRE_FALSE(x.diagnostics.empty());
    return x.diagnostics.front().message;
  };
  CHECK(diag("P1 p1=0 1/2\nP2 p2=1 1\n") == "P1 probabilities sum to 1/2");
  CHECK(diag("P1 p1=1 1\n") == "no entries for P2");
  CHECK(diag("P3 p1=1 1\n") == "unknown player P3");
  CHECK(diag("P1 p1=1/2 1\nP2 p2=1 1\n") == "value 1/2 outside L_1");
  CHECK(diag("P1 p2=1 1\nP2 p2=1 1\n").find("missing value for p1") != std::string::npos);
  CHECK(diag("P1 p1=1 1\nP1 p1=1 0\nP2 p2=1 1\n").find("duplicate entry") != std::string::npos);
  CHECK(diag("P1 p1=1\n").find("expected") != std::string::npos);
  CHECK(diag("P1 p1=1 -1\nP1 p1=0 2\nP2 p2=0 1\n") == "P1 negative probability");
}

TEST_CASE("profile files round-trip") {
  gen::Gen rng(103);
  for (int n = 0; n < 50; ++n) {
    const Game g = rng.game({});
    Profile p = rng.profile(g);
    for (auto& m : p.strategies) m = m.normalized();
    const auto r = parse_profile_file(format_profile(g, p), g);
    REQUIRE(r.ok());
    CHECK(*r.value == p);
  }
}

TEST_CASE("combinations") {
  const Game g = fixtures::example2();
  const auto r = parse_combination("p2=0, p1=1", g);
  REQUIRE(r.ok());
  CHECK((*r.value)[0].values == std::vector<Rational>{1});
  CHECK((*r.value)[1].values == std::vector<Rational>{0});
  CHECK_FALSE(parse_combination("p1=1", g).ok());
  CHECK_FALSE(parse_combination("p1=1,p2=1,p3=0", g).ok());
  CHECK_FALSE(parse_combination("p1=1,p2=2", g).ok());
}
