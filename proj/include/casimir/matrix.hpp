#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "casimir/rational.hpp"

namespace casimir {

/// Dense matrix over Q, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_integral() const;
  Rational trace() const;
  RatMatrix transposed() const;

  std::size_t rank() const;
  /// Columns form a basis of the null space.
  RatMatrix kernel() const;
  /// Throws DomainError when singular.
  RatMatrix inverse() const;
  RatMatrix power(unsigned k) const;

  /// Columns [begin, end).
  RatMatrix column_block(std::size_t begin, std::size_t end) const;
  static RatMatrix hstack(const std::vector<RatMatrix>& blocks);

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& c, const RatMatrix& a);

/// Monic characteristic polynomial det(t I - A) of an integer matrix,
/// coefficients from t^0 upward. Computed modulo enough word-size primes to
/// exceed the coefficient bound C(n,k) R^k (R = max absolute row sum) and
/// reconstructed by CRT, so the result is exact.
/// Throws UnsupportedInputError for non-integer entries.
std::vector<Integer> characteristic_polynomial(const RatMatrix& a);

/// All roots of a monic integer polynomial as (root, multiplicity), ascending,
/// found by divisor search on the constant term within |root| <= radius.
/// Throws UnsupportedInputError when the polynomial does not split over Z.
std::vector<std::pair<Integer, int>> integer_roots(std::vector<Integer> poly, const Integer& radius);

/// Max absolute row sum; every eigenvalue lies within this radius.
Integer gershgorin_radius(const RatMatrix& a);

}  // namespace casimir
