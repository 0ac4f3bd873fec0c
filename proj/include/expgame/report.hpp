#pragma once

// Text rendering of strategies, verdicts and search results, plus the
// key=value summary files written by `verify --report` and
// `search --report`:
//
//   verdict=equilibrium | not-equilibrium | unknown
//   player=<name of the refuted player, empty otherwise>
//   epsilon=<witness improvement | search epsilon | max grid gap>
//   witness=<deviation, empty when there is none>
//
// Search summaries add `profile=` with the reported profile.

#include <string>

#include "expgame/equilibrium.hpp"

namespace expgame {

// "[p1=1]" for a point mass, "1/2[p1=0] + 1/2[p1=1]" otherwise.
std::string format_mixed(const Game& g, const MixedStrategy& m);

// "P1: [p1=1]; P2: 1/2[p2=0] + 1/2[p2=1]"
std::string format_profile_inline(const Game& g, const Profile& p);

const char* verdict_name(const Verdict& v);

std::string format_verdict_line(const Game& g, std::size_t player, const Verdict& v);
std::string format_verification(const Game& g, const VerificationReport& r);
std::string verification_summary(const Game& g, const VerificationReport& r);

std::string format_search(const Game& g, const SearchReport& r, std::uint32_t denominator);
std::string search_summary(const Game& g, const SearchReport& r);

std::string format_dynamics(const Game& g, const DynamicsTrace& t);

}  // namespace expgame
