#pragma once

// Best-response checks for expectation games.
//
// A profile is refuted for player i by exhibiting a deviation whose goal
// value strictly exceeds the current one (exact arithmetic, no tolerance).
// Deviations are searched over the pure strategies and, optionally, over
// the grid of mixed strategies with probabilities in (1/D)Z. Absence of a
// witness certifies a best response only when the goal is a single
// expectation atom: the goal is then affine in the player's distribution
// and attains its maximum at a vertex of the simplex.

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "expgame/expectation.hpp"

namespace expgame {

struct DeviationWitness {
  std::size_t player = 0;
  MixedStrategy new_strategy;
  Rational old_value;
  Rational new_value;

  Rational improvement() const { return new_value - old_value; }
};

struct Equilibrium {
  enum class Certificate : std::uint8_t { Exact, SolverChecked };
  Certificate certificate = Certificate::Exact;
};

struct NotEquilibrium {
  DeviationWitness witness;
};

struct Unknown {
  std::uint32_t grid_denominator = 1;
  Rational max_observed_improvement;  // best grid goal minus current goal, <= 0
};

using Verdict = std::variant<Equilibrium, NotEquilibrium, Unknown>;

inline bool is_equilibrium(const Verdict& v) { return std::holds_alternative<Equilibrium>(v); }
inline bool is_refuted(const Verdict& v) { return std::holds_alternative<NotEquilibrium>(v); }
inline bool is_unknown(const Verdict& v) { return std::holds_alternative<Unknown>(v); }

struct VerificationReport {
  std::vector<Verdict> players;
  Verdict overall;
};

// True iff Phi_i is a single expectation atom E[phi_j].
bool has_atomic_goal(const Game& g, std::size_t player);

// Goal value of `player` for every deviation of theirs, with the other
// players fixed. Expectations are precomputed at the vertices of the
// player's simplex, so each deviation costs one dot product per atom.
class DeviationEvaluator {
 public:
  DeviationEvaluator(const Game& g, std::size_t player, const Profile& p, const EnumerationLimits& limits = {});

  std::size_t player() const { return player_; }
  std::uint64_t strategy_count() const { return strategy_count_; }
  const Rational& current_value() const { return current_; }

  Rational value_of(const MixedStrategy& deviation) const;
  Rational value_of_pure(std::uint64_t strategy) const;

  // Best deviation over the grid with the given denominator (denominator 1
  // is the pure scan). Ties keep the first deviation in enumeration order.
  struct Best {
    MixedStrategy strategy;
    Rational value;
  };
  Best best_pure() const;
  Best best_on_grid(std::uint32_t denominator, const EnumerationLimits& limits = {}) const;

 private:
  Rational goal_from(const std::map<std::size_t, Rational>& atoms) const;

  const Game& game_;
  std::size_t player_;
  std::uint64_t strategy_count_;
  std::vector<std::size_t> atoms_;
  std::vector<std::vector<Rational>> vertex_;  // vertex_[a][s] = E[phi_atoms_[a]] at point mass s
  Rational current_;
};

// Calls visit(counts) for every composition of `total` into `parts`
// non-negative integers. Order: lexicographically descending, so the point
// masses appear in strategy order when total == 1.
void for_each_composition(std::uint32_t total, std::uint64_t parts,
                          const std::function<void(const std::vector<std::uint32_t>&)>& visit);
MixedStrategy composition_strategy(std::size_t owner, const std::vector<std::uint32_t>& counts,
                                   std::uint32_t total);

std::optional<DeviationWitness> pure_deviation_refute(const Game& g, std::size_t player, const Profile& p,
                                                      const EnumerationLimits& limits = {});

std::optional<DeviationWitness> grid_refute(const Game& g, std::size_t player, const Profile& p,
                                            std::uint32_t denominator, const EnumerationLimits& limits = {});

VerificationReport verify_equilibrium(const Game& g, const Profile& p, std::uint32_t denominator = 1,
                                      const EnumerationLimits& limits = {});

// Recomputes both goal values from scratch with eval_goal.
bool witness_reverifies(const Game& g, const Profile& p, const DeviationWitness& w,
                        const EnumerationLimits& limits = {});

struct TraceStep {
  Profile profile;
  std::vector<Rational> goal_values;
  std::optional<std::size_t> updated_player;  // empty for the start profile
};

struct FixedPoint {};
struct Cycle {
  std::size_t period = 0;  // number of updates in the cycle
};
struct MaxIters {};
using DynamicsStatus = std::variant<FixedPoint, Cycle, MaxIters>;

struct DynamicsTrace {
  std::vector<TraceStep> steps;
  DynamicsStatus status;
  std::uint64_t iterations = 0;  // player turns taken
};

// Round-robin best-response dynamics in declaration order. One iteration is
// one player's turn; the player switches to their best grid deviation if it
// strictly improves their goal. Stops at a fixed point (a full round with no
// update), on revisiting a (profile, next player) state, or after max_iters
// turns.
DynamicsTrace best_response_dynamics(const Game& g, const Profile& start, std::uint64_t max_iters,
                                     std::uint32_t denominator, const EnumerationLimits& limits = {});

struct SearchReport {
  std::optional<Profile> certified;  // first grid profile verified Equilibrium(exact)
  Profile best_candidate;            // minimises epsilon when nothing is certified
  Rational epsilon;                  // largest grid improvement available at best_candidate
  std::uint64_t profiles_examined = 0;
};

// Scans every grid profile (player 0 most significant). A missing
// certificate says nothing about existence: it is a finite inner
// approximation only.
SearchReport search_equilibrium(const Game& g, std::uint32_t denominator, const EnumerationLimits& limits = {});

}  // namespace expgame
