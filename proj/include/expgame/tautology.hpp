#pragma once

#include <cstdint>
#include <optional>

#include "expgame/limits.hpp"
#include "expgame/logic.hpp"

namespace expgame {

struct TautologyResult {
  bool holds = false;
  std::optional<Valuation> counterexample;  // first failing valuation, lexicographic
  Rational counterexample_value;
  std::uint64_t valuations_checked = 0;
};

// Exhaustive check over all valuations of f's variables into L_k.
TautologyResult check_tautology(const Formula& f, const LkScale& scale,
                                const EnumerationLimits& limits = {});

bool is_tautology(const Formula& f, const LkScale& scale, const EnumerationLimits& limits = {});

// All rationals in [0,1] whose reduced denominator is at most max_denominator,
// in increasing order.
std::vector<Rational> farey_points(std::uint32_t max_denominator);

// Goal-level formulas range over the continuum, so validity can only be
// sampled: every atom in {0, ..., atom_count-1} runs over farey_points.
// The result is "sampled, not proven".
struct SampledCheck {
  bool holds_on_sample = false;
  std::optional<std::map<std::size_t, Rational>> counterexample;
  std::uint64_t points_checked = 0;
};

SampledCheck check_goal_on_grid(const ModalFormula& f, std::size_t atom_count,
                                std::uint32_t max_denominator, const EnumerationLimits& limits = {});

}  // namespace expgame
