#include "cbd/rational.hpp"

#include <cctype>

#include "cbd/error.hpp"

namespace cbd {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class to_integer(std::string_view digits) { return mpz_class(std::string(digits), 10); }

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }

  Rational result;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("invalid fraction '" + original + "'");
    const mpz_class d = to_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + original + "'");
    result = Rational(to_integer(num), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw ParseError("invalid decimal '" + original + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const mpz_class w = whole.empty() ? mpz_class(0) : to_integer(whole);
    result = Rational(w * scale + to_integer(frac), scale);
  } else {
    if (!all_digits(text)) throw ParseError("invalid number '" + original + "'");
    result = Rational(to_integer(text));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  Rational c = value;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Probability::Probability(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 0 || value_ > 1) {
    throw ValidationError("probability " + to_string(value_) + " outside [0, 1]");
  }
}

}  // namespace cbd
