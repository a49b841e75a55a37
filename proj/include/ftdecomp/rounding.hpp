#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ftdecomp {

/// Exact rational with a positive denominator, kept in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;
  Rational operator-() const { return Rational(-num_, den_); }

  bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& other) const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A value counted in units of 0.1. Whether the scale is percent (53.6%)
/// or a plain ratio (0.2) depends on the caller.
struct Tenths {
  std::int64_t count = 0;

  static constexpr Tenths from_count(std::int64_t c) { return Tenths{c}; }

  Rational exact() const { return Rational(count, 10); }
  double as_double() const { return static_cast<double>(count) / 10.0; }

  /// "53.6", "-0.3", "100.0". Always exactly one decimal digit.
  std::string str() const;

  Tenths operator+(Tenths o) const { return Tenths{count + o.count}; }
  Tenths operator-() const { return Tenths{-count}; }
  auto operator<=>(const Tenths&) const = default;
};

/// Nearest multiple of 0.1, ties away from zero.
Tenths round_tenths(const Rational& exact);

/// Convenience for round_tenths(Rational(num, den)); den must be non-zero.
Tenths round_tenths(std::int64_t num, std::int64_t den);

/// Parses "53.6", "100", "-0.3". Rejects anything that is not an exact
/// multiple of 0.1. Returns false on failure.
bool parse_tenths(const std::string& text, Tenths& out);

/// Accepts a double read from JSON and snaps it to tenths; false when the
/// value is not within 1e-9 of a multiple of 0.1.
bool tenths_from_double(double value, Tenths& out);

}  // namespace ftdecomp
