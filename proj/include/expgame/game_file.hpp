#pragma once

// Game files are line oriented; '#' starts a comment.
//
//   k: 1
//   player P1 controls p1
//   player P2 controls p2, p3
//   payoff P1: p1 & p2
//   goal P1: ~d(E[P1], E[P2])
//
// Variables are the union of the control sets, in declaration order.

#include <string>
#include <string_view>

#include "expgame/expectation.hpp"
#include "expgame/game.hpp"
#include "expgame/parser.hpp"

namespace expgame {

// Succeeds only if the game also passes validate_game.
ParseResult<Game> parse_game_file(std::string_view text);

std::string format_game(const Game& g);

// Profile files: one line per support point,
//
//   P1  p1=1/2,p2=0  1/3
//
// Strategies not listed have probability 0.
ParseResult<Profile> parse_profile_file(std::string_view text, const Game& g);

std::string format_profile(const Game& g, const Profile& p);

// "p1=1,p2=1/2" as a full strategy combination.
ParseResult<StrategyCombination> parse_combination(std::string_view text, const Game& g);

}  // namespace expgame
