#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace expgame {

// Enumeration caps. The (k+1)^m blowup is inherent to the semantics, so
// every exhaustive loop checks its size up front and refuses to start
// instead of hanging.
struct EnumerationLimits {
  std::uint64_t max_valuations = 10'000'000;     // tautology checking
  std::uint64_t max_player_strategies = 1'000'000;  // |S_i|
  std::uint64_t max_combinations = 10'000'000;   // |S|
  std::uint64_t max_compositions = 1'000'000;    // grid deviations / grid profiles

  static EnumerationLimits unlimited();
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t needed, std::uint64_t cap);
  std::uint64_t needed() const { return needed_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t needed_;
  std::uint64_t cap_;
};

// Saturating arithmetic for size estimates.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);
// Number of ways to write `total` as an ordered sum of `parts` non-negative
// integers, i.e. C(total + parts - 1, parts - 1), saturating.
std::uint64_t composition_count(std::uint64_t total, std::uint64_t parts);

}  // namespace expgame
