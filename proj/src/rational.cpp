#include "expgame/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace expgame {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

Rational Rational::from_string(std::string_view text) {
  auto r = parse(text);
  if (!r) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  return *r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

LkScale::LkScale(std::uint32_t k) : k_(k) {
  if (k == 0) throw std::invalid_argument("L_k requires k >= 1");
}

std::optional<std::uint32_t> LkScale::level_of(const Rational& v) const {
  const Rational scaled = v * Rational(static_cast<long>(k_));
  if (!scaled.is_integer() || scaled.sign() < 0 || scaled > Rational(static_cast<long>(k_))) {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(scaled.raw().get_num().get_ui());
}

Rational LkScale::value(std::uint32_t level) const {
  if (level > k_) throw std::out_of_range("level outside L_k");
  return Rational(static_cast<long>(level), static_cast<long>(k_));
}

}  // namespace expgame
