#include "ftdecomp/rounding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ftdecomp {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t l = std::lcm(den_, o.den_);
  return Rational(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const std::int64_t a = g1 ? num_ / g1 : 0;
  const std::int64_t d = g1 ? o.den_ / g1 : o.den_;
  const std::int64_t c = g2 ? o.num_ / g2 : 0;
  const std::int64_t b = g2 ? den_ / g2 : den_;
  return Rational(a * c, b * d);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("division by zero rational");
  return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  // Denominators are positive, so cross-multiplication preserves order.
  const __int128 lhs = static_cast<__int128>(num_) * o.den_;
  const __int128 rhs = static_cast<__int128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Tenths round_tenths(const Rational& exact) {
  // |x| * 10 = a / b; round half up on the magnitude, then restore sign.
  const __int128 a = static_cast<__int128>(exact.num() < 0 ? -exact.num() : exact.num()) * 10;
  const __int128 b = exact.den();
  const __int128 q = (2 * a + b) / (2 * b);
  const auto magnitude = static_cast<std::int64_t>(q);
  return Tenths{exact.num() < 0 ? -magnitude : magnitude};
}

Tenths round_tenths(std::int64_t num, std::int64_t den) { return round_tenths(Rational(num, den)); }

std::string Tenths::str() const {
  const std::int64_t mag = count < 0 ? -count : count;
  std::string out = count < 0 ? "-" : "";
  out += std::to_string(mag / 10);
  out += '.';
  out += static_cast<char>('0' + mag % 10);
  return out;
}

bool parse_tenths(const std::string& text, Tenths& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-') {
    negative = true;
    pos = 1;
  }
  const auto dot = text.find('.', pos);
  const std::string whole = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 1 || (dot != std::string::npos && frac.empty())) return false;
  std::int64_t w = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
  if (ec != std::errc() || ptr != whole.data() + whole.size()) return false;
  std::int64_t f = 0;
  if (!frac.empty()) {
    if (frac[0] < '0' || frac[0] > '9') return false;
    f = frac[0] - '0';
  }
  const std::int64_t c = w * 10 + f;
  out = Tenths{negative ? -c : c};
  return true;
}

bool tenths_from_double(double value, Tenths& out) {
  if (!std::isfinite(value)) return false;
  const double scaled = value * 10.0;
  const double nearest = std::round(scaled);
  if (std::fabs(scaled - nearest) > 1e-9 * std::max(1.0, std::fabs(scaled))) return false;
  out = Tenths{static_cast<std::int64_t>(nearest)};
  return true;
}

}  // namespace ftdecomp
