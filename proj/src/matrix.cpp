#include "casimir/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>

#include "casimir/errors.hpp"

namespace casimir {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0), data_(rows_ * cols_) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("ragged matrix literal");
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (v != 0) return false;
  }
  return true;
}

bool RatMatrix::is_integral() const {
  for (const auto& v : data_) {
    if (v.get_den() != 1) return false;
  }
  return true;
}

Rational RatMatrix::trace() const {
  Rational t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t RatMatrix::rank() const {
  RatMatrix copy = *this;
  return rref(copy).size();
}

RatMatrix RatMatrix::kernel() const {
  RatMatrix reduced = *this;
  std::vector<std::size_t> pivots = rref(reduced);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  RatMatrix basis(cols_, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t f = free_cols[j];
    basis(f, j) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], j) = -reduced(i, f);
  }
  return basis;
}

RatMatrix RatMatrix::inverse() const {
  if (!is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = rows_;
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

RatMatrix RatMatrix::power(unsigned k) const {
  RatMatrix result = identity(rows_);
  RatMatrix base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

RatMatrix RatMatrix::column_block(std::size_t begin, std::size_t end) const {
  RatMatrix out(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) out(r, c - begin) = (*this)(r, c);
  return out;
}

RatMatrix RatMatrix::hstack(const std::vector<RatMatrix>& blocks) {
  std::size_t rows = blocks.empty() ? 0 : blocks[0].rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  RatMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    offset += b.cols();
  }
  return out;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix shape mismatch in +");
  RatMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + Rational(-1) * b; }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shape mismatch in *");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& v = a(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (b(k, c) != 0) out(r, c) += v * b(k, c);
      }
    }
  }
  return out;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
  return out;
}

// ------------------------------------------------- characteristic polynomial

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// index-th prime below 2^62 (descending), generated lazily and shared.
u64 crt_prime(std::size_t index) {
  static std::vector<u64> primes;
  static std::mutex guard;
  std::lock_guard lock(guard);
  u64 candidate = primes.empty() ? (1ULL << 62) - 1 : primes.back() - 2;
  while (primes.size() <= index) {
    if (is_prime(candidate)) primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[index];
}

u64 reduce(const Integer& v, u64 p) {
  Integer r;
  Integer pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
  u64 out = 0;
  mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
  return out;
}

// Hessenberg reduction followed by the standard recurrence; O(n^3) mod p.
std::vector<u64> charpoly_mod(std::vector<u64> h, std::size_t n, u64 p) {
  auto at = [&](std::size_t r, std::size_t c) -> u64& { return h[r * n + c]; };
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && at(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(i, c), at(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(at(r, i), at(r, m));
    }
    u64 inv = powmod(at(m, m - 1), p - 2, p);
    for (std::size_t r = m + 1; r < n; ++r) {
      u64 u = mulmod(at(r, m - 1), inv, p);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        at(r, c) = (at(r, c) + p - mulmod(u, at(m, c), p)) % p;
      }
      for (std::size_t rr = 0; rr < n; ++rr) {
        at(rr, m) = (at(rr, m) + mulmod(u, at(rr, r), p)) % p;
      }
    }
  }
  // polys[k] = charpoly of the leading k x k block.
  std::vector<std::vector<u64>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<u64> next(k + 1, 0);
    // (t - h[k-1][k-1]) * polys[k-1]
    const auto& prev = polys[k - 1];
    u64 diag = at(k - 1, k - 1);
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = (next[d + 1] + prev[d]) % p;
      next[d] = (next[d] + p - mulmod(diag, prev[d], p)) % p;
    }
    u64 sub = 1;
    for (std::size_t i = 1; i < k; ++i) {
      sub = mulmod(sub, at(k - i, k - i - 1), p);
      u64 coeff = mulmod(sub, at(k - i - 1, k - 1), p);
      if (coeff == 0) continue;
      const auto& q = polys[k - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) {
        next[d] = (next[d] + p - mulmod(coeff, q[d], p)) % p;
      }
    }
    polys[k] = std::move(next);
  }
  return polys[n];
}

}  // namespace

Integer gershgorin_radius(const RatMatrix& a) {
  Integer radius = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Rational sum;
    for (std::size_t c = 0; c < a.cols(); ++c) sum += abs(a(r, c));
    Integer ceil_sum;
    mpz_cdiv_q(ceil_sum.get_mpz_t(), sum.get_num_mpz_t(), sum.get_den_mpz_t());
    if (ceil_sum > radius) radius = ceil_sum;
  }
  return radius;
}

std::vector<Integer> characteristic_polynomial(const RatMatrix& a) {
  if (!a.is_square()) throw DomainError("characteristic polynomial of a non-square matrix");
  if (!a.is_integral()) {
    throw UnsupportedInputError("characteristic polynomial needs an integer matrix");
  }
  const std::size_t n = a.rows();
  if (n == 0) return {Integer(1)};
  // |coefficient of t^{n-k}| <= C(n,k) R^k <= (1 + R)^n.
  Integer bound;
  Integer base = gershgorin_radius(a) + 1;
  mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), n);
  Integer needed = 2 * bound + 1;

  std::vector<Integer> result(n + 1, 0);
  Integer modulus = 1;
  std::size_t used = 0;
  while (modulus <= needed) {
    u64 p = crt_prime(used++);
    std::vector<u64> h(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) h[r * n + c] = reduce(a(r, c).get_num(), p);
    std::vector<u64> residues = charpoly_mod(std::move(h), n, p);
    Integer pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    if (used == 1) {
      for (std::size_t k = 0; k <= n; ++k) {
        mpz_import(result[k].get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &residues[k]);
      }
      modulus = pz;
      continue;
    }
    // x = result + modulus * ((r - result) * modulus^{-1} mod p)
    Integer inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
    for (std::size_t k = 0; k <= n; ++k) {
      Integer rk;
      mpz_import(rk.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &residues[k]);
      Integer t = (rk - result[k]) * inv;
      mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t());
      result[k] += modulus * t;
    }
    modulus *= pz;
  }
  Integer half = modulus / 2;
  for (auto& c : result) {
    if (c > half) c -= modulus;
  }
  return result;
}

namespace {

// Divides poly by (t - root) when exact; returns false otherwise.
bool divide_out(std::vector<Integer>& poly, const Integer& root) {
  // Synthetic division, high to low.
  const std::size_t deg = poly.size() - 1;
  std::vector<Integer> quotient(deg);
  Integer carry = 0;
  for (std::size_t k = deg; k-- > 0;) {
    carry = poly[k + 1] + carry * root;
    quotient[k] = carry;
  }
  Integer remainder = poly[0] + carry * root;
  if (remainder != 0) return false;
  poly = std::move(quotient);
  return true;
}

}  // namespace

std::vector<std::pair<Integer, int>> integer_roots(std::vector<Integer> poly, const Integer& radius) {
  std::vector<std::pair<Integer, int>> roots;
  auto strip = [&](const Integer& root) {
    int mult = 0;
    while (poly.size() > 1 && divide_out(poly, root)) ++mult;
    if (mult) roots.emplace_back(root, mult);
  };
  strip(Integer(0));
  if (poly.size() > 1) {
    const Integer constant = abs(poly[0]);
    for (Integer d = 1; d <= radius && poly.size() > 1; ++d) {
      if (!mpz_divisible_p(constant.get_mpz_t(), d.get_mpz_t())) continue;
      strip(d);
      strip(Integer(-d));
    }
  }
  if (poly.size() > 1) {
    throw UnsupportedInputError("characteristic polynomial has " + std::to_string(poly.size() - 1) +
                                " non-integer root(s)");
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return roots;
}

}  // namespace casimir
