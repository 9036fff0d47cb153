#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/rational.hpp"

namespace casimir {

/// Truncated formal series in q with half-integer exponents.
///
/// Every coefficient with exponent below order() is known exactly; stored
/// terms are exactly the nonzero ones, so two series with the same order are
/// equal iff their term maps are equal.
class QSeries {
 public:
  using TermMap = std::map<HalfInt, Rational>;

  /// The zero series known up to `order`.
  explicit QSeries(HalfInt order) : order_(order) {}
  /// Drops zero coefficients and terms at or beyond `order`.
  QSeries(TermMap terms, HalfInt order);

  static QSeries monomial(const Rational& coefficient, HalfInt exponent, HalfInt order);
  static QSeries one(HalfInt order) { return monomial(Rational(1), 0, order); }

  HalfInt order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of q^e. Throws PrecisionError when e >= order().
  Rational coefficient(HalfInt e) const;

  /// Same coefficients, known only below n <= order().
  QSeries truncated(HalfInt n) const;

  /// q -> q^l (l >= 1); the order scales with l.
  QSeries substitute_power(int l) const;

  /// Multiplies by q^shift; the order shifts too.
  QSeries shifted(HalfInt shift) const;

  bool has_integer_exponents() const;

  /// Accumulates c*q^e in place (ignored when e >= order()).
  void add_term(HalfInt e, const Rational& c);

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  TermMap terms_;
  HalfInt order_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& c, const QSeries& a);

/// Sum_{j >= 0, j*m < order} q^{j*m}.
QSeries geometric(int m, HalfInt order);

/// True iff all coefficients below n agree. Throws PrecisionError when n
/// exceeds either order.
bool series_eq(const QSeries& a, const QSeries& b, HalfInt n);

/// Smallest exponent below n where the series differ, if any.
std::optional<HalfInt> first_difference(const QSeries& a, const QSeries& b, HalfInt n);

/// Human-readable form, e.g. "1 + 2*q + 2*q^4 + O(q^5)".
std::string to_display_string(const QSeries& s);

/// Key of a two-variable term: (q-exponent, x-exponent).
struct BiExponent {
  HalfInt q;
  int x = 0;
  auto operator<=>(const BiExponent&) const = default;
};

/// Truncated series in q and x; x-exponents are non-negative and unbounded,
/// the q-direction is truncated at q_order().
class BiSeries {
 public:
  using TermMap = std::map<BiExponent, Rational>;

  explicit BiSeries(HalfInt q_order) : q_order_(q_order) {}
  BiSeries(TermMap terms, HalfInt q_order);

  HalfInt q_order() const { return q_order_; }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(BiExponent e) const;
  void add_term(BiExponent e, const Rational& c);
  BiSeries truncated(HalfInt n) const;

  /// Specialization x = 1.
  QSeries at_x_equals_one() const;

  friend bool operator==(const BiSeries&, const BiSeries&) = default;

 private:
  TermMap terms_;
  HalfInt q_order_;
};

BiSeries operator+(const BiSeries& a, const BiSeries& b);
BiSeries operator*(const BiSeries& a, const BiSeries& b);

bool series_eq(const BiSeries& a, const BiSeries& b, HalfInt n);
std::optional<BiExponent> first_difference(const BiSeries& a, const BiSeries& b, HalfInt n);
std::string to_display_string(const BiSeries& s);

/// Polynomial in the formal symbol mu (standing for 2*pi*i*hbar).
class MuPoly {
 public:
  MuPoly() = default;
  explicit MuPoly(std::vector<Rational> coefficients);
  static MuPoly constant(const Rational& c) { return MuPoly({c}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  Rational coefficient(int k) const;

  friend bool operator==(const MuPoly&, const MuPoly&) = default;

 private:
  void normalize();
  std::vector<Rational> coefficients_;
};

MuPoly operator+(const MuPoly& a, const MuPoly& b);
MuPoly operator-(const MuPoly& a, const MuPoly& b);
MuPoly operator*(const MuPoly& a, const MuPoly& b);
MuPoly operator*(const Rational& c, const MuPoly& a);
std::string to_display_string(const MuPoly& p);

}  // namespace casimir
