#include "expgame/limits.hpp"

#include <limits>

namespace expgame {

namespace {
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
}

EnumerationLimits EnumerationLimits::unlimited() { return {kMax, kMax, kMax, kMax}; }

CapExceeded::CapExceeded(const std::string& what, std::uint64_t needed, std::uint64_t cap)
    : std::runtime_error(what + ": " + (needed == kMax ? std::string("overflow") : std::to_string(needed)) +
                         " exceeds cap " + std::to_string(cap)),
      needed_(needed),
      cap_(cap) {}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

std::uint64_t composition_count(std::uint64_t total, std::uint64_t parts) {
  if (parts == 0) return total == 0 ? 1 : 0;
  // C(total + parts - 1, r) with r = min(total, parts - 1), built incrementally;
  // each prefix value is itself a binomial coefficient so the division is exact.
  const std::uint64_t n = total + parts - 1;
  const std::uint64_t r = total < parts - 1 ? total : parts - 1;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (n - r + i) / i;
    if (c > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace expgame
