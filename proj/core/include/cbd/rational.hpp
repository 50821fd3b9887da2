#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cbd {

/// Arbitrary-precision exact rational. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "a/b", "123", "0.25" or ".5" exactly. Decimals with k fractional
/// digits become n / 10^k before reduction. Leading '-' is accepted.
/// Throws ParseError on anything else (exponents, spaces, empty strings, b = 0).
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form, or "a" when the denominator is 1.
std::string to_string(const Rational& value);

Rational abs(const Rational& value);

/// A probability value; construction enforces 0 <= value <= 1.
class Probability {
 public:
  Probability() = default;
  explicit Probability(Rational value);

  static Probability zero() { return Probability(); }
  static Probability one() { return Probability(Rational(1)); }

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const Probability& a, const Probability& b) { return a.value_ == b.value_; }
  friend bool operator<(const Probability& a, const Probability& b) { return a.value_ < b.value_; }

 private:
  Rational value_{0};
};

}  // namespace cbd
