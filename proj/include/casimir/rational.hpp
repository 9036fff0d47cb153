#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace casimir {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form "num/den"; integers keep the "/1".
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "a" or "a/b" (optional sign on a). Result is canonical.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);

/// Exponent with denominator 1 or 2. Stored as twice its value so that
/// ordering and arithmetic stay in machine integers.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(std::int64_t whole) : twice_(2 * whole) {}  // NOLINT: implicit by intent

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// Throws DomainError unless r has denominator 1 or 2.
  static HalfInt from_rational(const Rational& r);
  /// Parses "a" or "a/2".
  static HalfInt parse(std::string_view text);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Integer value; only meaningful when is_integer().
  constexpr std::int64_t whole() const { return twice_ / 2; }
  /// Largest integer strictly below this value.
  constexpr std::int64_t floor_below() const {
    // values v with v < twice/2: floor((twice - 1) / 2)
    std::int64_t t = twice_ - 1;
    return t >= 0 ? t / 2 : -((-t + 1) / 2);
  }
  Rational to_rational() const;
  std::string str() const;

  constexpr auto operator<=>(const HalfInt&) const = default;

  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator*(std::int64_t k) const { return from_twice(twice_ * k); }
  HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }

 private:
  std::int64_t twice_ = 0;
};

inline constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }

}  // namespace casimir

template <>
struct std::hash<casimir::HalfInt> {
  std::size_t operator()(const casimir::HalfInt& h) const noexcept {
    return std::hash<std::int64_t>{}(h.twice());
  }
};
