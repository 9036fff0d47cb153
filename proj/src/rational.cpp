#include "casimir/rational.hpp"

#include <cctype>

#include "casimir/errors.hpp"

namespace casimir {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw DomainError("empty number in '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw DomainError("malformed number '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw DomainError("malformed number '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw DomainError("sign not allowed in denominator of '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text, text);
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

HalfInt HalfInt::from_rational(const Rational& r) {
  Rational twice = r * 2;
  if (twice.get_den() != 1) {
    throw DomainError("exponent " + to_string(r) + " does not have denominator 1 or 2");
  }
  if (!twice.get_num().fits_slong_p()) throw DomainError("exponent out of range");
  return from_twice(twice.get_num().get_si());
}

HalfInt HalfInt::parse(std::string_view text) { return from_rational(parse_rational(text)); }

Rational HalfInt::to_rational() const {
  Rational r(Integer(static_cast<long>(twice_)), Integer(2));
  r.canonicalize();
  return r;
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace casimir
