#include "tropjac/rational.hpp"

#include "tropjac/errors.hpp"

#include <cctype>

namespace tropjac {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) {
    throw InvalidInput("malformed rational \"" + std::string(whole) + "\"");
  }
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw InvalidInput("malformed rational \"" + std::string(whole) + "\"");
    }
  }
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw InvalidInput("malformed rational \"" + std::string(text) + "\"");
  }
  Integer den = parse_integer(den_text, text);
  if (den == 0) {
    throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  const Integer& num = numerator(q);
  const Integer& den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer floor(const Rational& q) {
  Integer num = numerator(q);
  Integer den = denominator(q);
  Integer quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer g = boost::multiprecision::gcd(a, b);
  Integer r = a / g * b;
  return r < 0 ? Integer(-r) : r;
}

Integer common_denominator(const std::vector<Rational>& values) {
  Integer result = 1;
  for (const auto& v : values) result = lcm(result, denominator(v));
  return result;
}

}  // namespace tropjac
