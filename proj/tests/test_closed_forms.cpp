#include <doctest.h>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"
#include "support.hpp"

using namespace casimir;
using casimir::test::B;
using casimir::test::Q;

TEST_CASE("jacobi_theta") {
  CHECK(jacobi_theta(1, 5) == Q({{0, 1}, {1, 2}, {4, 2}}, 5));
  CHECK(jacobi_theta(1, 1) == Q({{0, 1}}, 1));
  CHECK(jacobi_theta(2, 9) == Q({{0, 1}, {2, 2}, {8, 2}}, 9));
  CHECK_THROWS_AS(jacobi_theta(0, 5), DomainError);
  CHECK_THROWS_AS(jacobi_theta(-1, 5), DomainError);
}

TEST_CASE("partial_theta") {
  CHECK(partial_theta(PartialThetaKind::kM0, 1, 10) == B({{0, 0, 1}, {1, 1, 1}, {4, 2, 1}, {9, 3, 1}}, 10));
  CHECK(partial_theta(PartialThetaKind::kL0, 3, 7) == B({{0, 0, 1}}, 7));
  CHECK(partial_theta(PartialThetaKind::kMminus2, 2, 10) == B({{2, 2, 1}, {8, 4, 1}}, 10));
  CHECK(partial_theta(PartialThetaKind::kP, 1, 5) == B({{0, 0, 1}, {1, 1, 2}, {4, 2, 2}}, 5));
  CHECK(parse_partial_theta_kind("M-2") == PartialThetaKind::kMminus2);
  CHECK_THROWS_AS(parse_partial_theta_kind("M3"), DomainError);
}

TEST_CASE("theta identities") {
  for (int l = 1; l <= 3; ++l) {
    QSeries theta = jacobi_theta(l, 40);
    CHECK(theta == partial_theta(PartialThetaKind::kM0, l, 40).at_x_equals_one() +
                       partial_theta(PartialThetaKind::kMminus2, l, 40).at_x_equals_one());
    CHECK(theta == partial_theta(PartialThetaKind::kP, l, 40).at_x_equals_one());
  }
}

TEST_CASE("partial_appell_lerch") {
  CHECK(partial_appell_lerch({{1, 1}, {0, 0}, 1, 1}, 5) == Q({{0, 1}, {1, 2}, {2, 1}, {3, 1}, {4, 3}}, 5));
  CHECK(partial_appell_lerch({{1, 1}, {0, 1}, 1, 1}, 4) == Q({{0, 1}, {1, 3}, {2, 2}, {3, 2}}, 4));
  CHECK(partial_appell_lerch({{1, 1}, {1, 1}, 1, 1}, 4) == Q({{0, 1}, {1, 4}, {2, 4}, {3, 4}}, 4));
  CHECK_THROWS_AS(partial_appell_lerch({{1, 1}, {0, 0}, 2, 1}, 5), DomainError);
  CHECK_THROWS_AS(partial_appell_lerch({{0, 1}, {0, 0}, 1, 1}, 5), DomainError);
  CHECK_THROWS_AS(partial_appell_lerch({{1, 1}, {-1, 1}, 1, 1}, 5), DomainError);
  CHECK_THROWS_AS(partial_appell_lerch({{1}, {0}, 0, 1}, 5), DomainError);
  CHECK_THROWS_AS(partial_appell_lerch({{1, 1}, {0, 0}, 1, 0}, 5), DomainError);
}

TEST_CASE("partial_appell_lerch equals the double sum over a_k") {
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> cases = {
      {{1, 1}, {0, 0}}, {{1, 1}, {0, 1}}, {{2, 3}, {1, 1}}, {{1, 0, 2}, {1, 2, 0}}};
  for (const auto& [a, b] : cases) {
    const int p = int(a.size()) - 1;
    for (int l = 1; l <= 2; ++l) {
      const long n_order = 25;
      auto mult = verma_multiplicities(a, b, p, n_order);
      QSeries expected(n_order);
      for (long n = 0; l * n * n < n_order; ++n) {
        for (long k = 0; l * (n * n + (2 * n + 1) * k) < n_order; ++k) {
          expected.add_term(l * (n * n + (2 * n + 1) * k), Rational(mult[std::size_t(k)]));
        }
      }
      CHECK(partial_appell_lerch({a, b, p, l}, n_order) == expected);
    }
  }
}

TEST_CASE("verma_multiplicities") {
  auto ones = verma_multiplicities({1, 1}, {0, 0}, 1, 6);
  CHECK(ones == std::vector<Integer>(7, 1));
  auto m = verma_multiplicities({1, 1}, {0, 1}, 1, 4);
  CHECK(m == std::vector<Integer>{1, 2, 2, 2, 2});
  auto big = verma_multiplicities({2, 3}, {1, 1}, 1, 4);
  CHECK(big == std::vector<Integer>{6, 11, 12, 12, 12});
  // p = 2: (1 + y)^3 / (1 - y)^2
  auto two = verma_multiplicities({1, 1, 1}, {1, 1, 1}, 2, 4);
  CHECK(two == std::vector<Integer>{1, 5, 12, 20, 28});
  CHECK_THROWS_AS(verma_multiplicities({1}, {1}, 0, 3), DomainError);
  for (const auto& x : verma_multiplicities({0, 2, 1}, {1, 0, 2}, 2, 20)) CHECK(x >= 0);
}

TEST_CASE("appell_lerch_cone") {
  ConeSeries slice = appell_lerch_cone({0, 4, 0});
  std::map<ConeExponent, Integer> expected = {
      {{4, -2, 0}, 1}, {{1, -1, 0}, 1}, {{0, 0, 0}, 1}, {{1, 1, 0}, 1}, {{4, 2, 0}, 1}};
  CHECK(slice.terms == expected);
  CHECK_THROWS_AS(appell_lerch_cone({1, 4, 0}), DomainError);
  CHECK_THROWS_AS(appell_lerch_cone({0, 4, -1}), DomainError);

  // Window of sum_n q^{n^2} x1^n sum_{m=0}^{2} q^{2nm} x2^m.
  ConeWindow w{-4, 4, 2};
  std::map<ConeExponent, Integer> direct;
  for (int n = -10; n <= 10; ++n) {
    for (int m = 0; m <= 2; ++m) {
      int e = n * n + 2 * n * m;
      if (e >= w.q_min && e <= w.q_max) direct[{e, n, m}] += 1;
    }
  }
  CHECK(appell_lerch_cone(w).terms == direct);
}
