#include "expgame/tautology.hpp"

#include <algorithm>
#include <numeric>

namespace expgame {

TautologyResult check_tautology(const Formula& f, const LkScale& scale, const EnumerationLimits& limits) {
  const auto vars = variables_of(f);
  const std::vector<std::string> names(vars.begin(), vars.end());
  const std::uint64_t total = saturating_pow(scale.size(), names.size());
  if (total > limits.max_valuations) throw CapExceeded("tautology enumeration", total, limits.max_valuations);

  TautologyResult result;
  std::vector<std::uint32_t> levels(names.size(), 0);
  Valuation v;
  for (const auto& n : names) v[n] = Rational(0);

  for (std::uint64_t step = 0; step < total; ++step) {
    const Rational value = eval_formula(f, v, scale);
    ++result.valuations_checked;
    if (value != Rational(1)) {
      result.counterexample = v;
      result.counterexample_value = value;
      return result;
    }
    // odometer, last variable fastest
    for (std::size_t pos = names.size(); pos-- > 0;) {
      if (levels[pos] < scale.k()) {
        v[names[pos]] = scale.value(++levels[pos]);
        break;
      }
      levels[pos] = 0;
      v[names[pos]] = Rational(0);
    }
  }
  result.holds = true;
  return result;
}

bool is_tautology(const Formula& f, const LkScale& scale, const EnumerationLimits& limits) {
  return check_tautology(f, scale, limits).holds;
}

std::vector<Rational> farey_points(std::uint32_t max_denominator) {
  std::vector<Rational> out;
  for (std::uint32_t d = 1; d <= max_denominator; ++d) {
    for (std::uint32_t n = 0; n <= d; ++n) {
      if (std::gcd(n, d) == 1) out.emplace_back(static_cast<long>(n), static_cast<long>(d));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SampledCheck check_goal_on_grid(const ModalFormula& f, std::size_t atom_count, std::uint32_t max_denominator,
                                const EnumerationLimits& limits) {
  const auto points = farey_points(max_denominator);
  const std::uint64_t total = saturating_pow(points.size(), atom_count);
  if (total > limits.max_valuations) throw CapExceeded("grid sample", total, limits.max_valuations);

  SampledCheck result;
  std::vector<std::size_t> idx(atom_count, 0);
  std::map<std::size_t, Rational> atoms;
  for (std::size_t a = 0; a < atom_count; ++a) atoms[a] = points[0];

  for (std::uint64_t step = 0; step < total; ++step) {
    ++result.points_checked;
    if (eval_modal_closed(f, atoms) != Rational(1)) {
      result.counterexample = atoms;
      return result;
    }
    for (std::size_t pos = atom_count; pos-- > 0;) {
      if (++idx[pos] < points.size()) {
        atoms[pos] = points[idx[pos]];
        break;
      }
      idx[pos] = 0;
      atoms[pos] = points[0];
    }
  }
  result.holds_on_sample = true;
  return result;
}

}  // namespace expgame
