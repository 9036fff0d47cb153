#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/sl2_rep.hpp"

using namespace casimir;

namespace {

BasisIndex idx(std::vector<int> s) { return BasisIndex{std::move(s)}; }
LinearCombination single(BasisIndex b, long c = 1) { return {{std::move(b), Rational(c)}}; }

}  // namespace

TEST_CASE("parse_rep grammar") {
  ModuleExpr a = parse_rep("M0 x M0");
  CHECK(a == ModuleExpr::tensor({ModuleExpr::verma(0), ModuleExpr::verma(0)}));
  ModuleExpr b = parse_rep("(M0 + M-2)^2 x P");
  CHECK(b == ModuleExpr::tensor(
                 {ModuleExpr::power(ModuleExpr::direct_sum({ModuleExpr::verma(0), ModuleExpr::verma(-2)}), 2),
                  ModuleExpr::big_p()}));
  CHECK(parse_rep("  L1x L0 ") == ModuleExpr::tensor({ModuleExpr::irr(1), ModuleExpr::irr(0)}));
  CHECK(parse_rep("M0 + M-2 x P") ==
        ModuleExpr::direct_sum({ModuleExpr::verma(0), ModuleExpr::tensor({ModuleExpr::verma(-2), ModuleExpr::big_p()})}));
  CHECK(parse_rep("P^3").kind() == ModuleExpr::Kind::kPower);
}

TEST_CASE("parse_rep errors carry positions") {
  try {
    parse_rep("M0 +");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("1:5") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_rep("M 0"), ParseError);
  CHECK_THROWS_AS(parse_rep("L-1"), ParseError);
  CHECK_THROWS_AS(parse_rep("P^0"), ParseError);
  CHECK_THROWS_AS(parse_rep("(M0"), ParseError);
  CHECK_THROWS_AS(parse_rep(""), ParseError);
  try {
    parse_rep("M0\n x Q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2:4") != std::string::npos);
  }
}

TEST_CASE("printing round-trips") {
  for (const char* text : {"M0 x M0", "(M0 + M-2)^2 x P", "M0 + M-2 x P", "(P x P)^2", "L1 x (L0 + M3)",
                           "((M0 + M-1) x L2)^3 + P", "M-5"}) {
    ModuleExpr e = parse_rep(text);
    CHECK(parse_rep(e.to_string()) == e);
  }
  CHECK(parse_rep("(M0 + M-2)^2 x P").to_string() == "(M0 + M-2)^2 x P");
}

TEST_CASE("generator actions") {
  ModuleExpr m0 = parse_rep("M0");
  CHECK(act(Generator::kE, m0, idx({1})).empty());
  CHECK(act(Generator::kF, parse_rep("L1"), idx({1})).empty());
  CHECK(act(Generator::kE, parse_rep("L1"), idx({1})) == single(idx({0})));
  CHECK(act(Generator::kH, parse_rep("M-2"), idx({2})) == single(idx({2}), -6));
  CHECK(act(Generator::kE, parse_rep("M-1"), idx({3})) == single(idx({2}), 3 * (-1 - 3 + 1)));
  CHECK(act(Generator::kE, parse_rep("L0"), idx({0})).empty());
  CHECK(act(Generator::kH, parse_rep("L0"), idx({0})).empty());
  CHECK_THROWS_AS(act(Generator::kE, m0, idx({0, 1})), IndexError);
  CHECK_THROWS_AS(act(Generator::kE, parse_rep("L1"), idx({2})), IndexError);
  CHECK_THROWS_AS(act(Generator::kE, parse_rep("M0 + M0"), idx({2, 0})), IndexError);
}

TEST_CASE("weight spaces") {
  ModuleExpr p = parse_rep("P");
  auto basis = weight_space(p, -2);
  REQUIRE(basis.size() == 2);
  CHECK(basis_label(p, basis[0]) == "f v_{-1} x u_{1}");
  CHECK(basis_label(p, basis[1]) == "v_{-1} x u_{-1}");
  CHECK(weight_space(parse_rep("M0 x M0"), -4).size() == 3);
  CHECK(weight_space(parse_rep("M0"), 1).empty());
  CHECK(weight_space(parse_rep("M0"), 2).empty());
  CHECK(weight_space(parse_rep("L2 x L2"), 0).size() == 3);
  CHECK(weight_space(parse_rep("(M0 + M-2)^2"), -2).size() == 4);
  for (const auto& b : weight_space(parse_rep("P x M0 x L1"), -5)) {
    CHECK(weight_of(parse_rep("P x M0 x L1"), b) == -5);
  }
}

TEST_CASE("kappa matrices") {
  ModuleExpr p = parse_rep("P");
  CHECK(kappa_matrix(p, -2).entries == RatMatrix{{-4, 2}, {-2, 0}});
  CHECK(kappa_matrix(p, -4).entries == RatMatrix{{-12, 2}, {-8, -4}});
  CHECK(kappa_matrix(parse_rep("M0"), -4).entries == RatMatrix{{-8}});
  CHECK(kappa_matrix(parse_rep("L0"), 0).entries == RatMatrix{{0}});
  // Oracle basis (0,2),(1,1),(2,0) is the reverse of the canonical order.
  CHECK(kappa_matrix(parse_rep("M0 x M0"), -4).entries == RatMatrix{{-8, 0, 0}, {-4, -4, -4}, {0, 0, -8}});
  CHECK_THROWS_AS(kappa_matrix(parse_rep("M0"), 2), DomainError);
}

TEST_CASE("kappa equals the coproduct formula") {
  // On a tensor product kappa = kappa x 1 + 1 x kappa + 2 (e x f + f x e).
  ModuleExpr a = parse_rep("M-1");
  ModuleExpr b = parse_rep("L1");
  ModuleExpr ab = ModuleExpr::tensor({a, b});
  for (int w = -1; w >= -9; w -= 2) {
    for (const auto& v : weight_space(ab, w)) {
      BasisIndex va{{v.slots[0]}}, vb{{v.slots[1]}};
      LinearCombination expected;
      auto add = [&](const LinearCombination& left, const LinearCombination& right, long scale) {
        for (const auto& [x, cx] : left) {
          for (const auto& [y, cy] : right) {
            BasisIndex xy{{x.slots[0], y.slots[0]}};
            expected[xy] += cx * cy * scale;
            if (expected[xy] == 0) expected.erase(xy);
          }
        }
      };
      add(apply_kappa(a, single(va)), single(vb), 1);
      add(single(va), apply_kappa(b, single(vb)), 1);
      add(act(Generator::kE, a, va), act(Generator::kF, b, vb), 2);
      add(act(Generator::kF, a, va), act(Generator::kE, b, vb), 2);
      CHECK(apply_kappa(ab, single(v)) == expected);
    }
  }
}

TEST_CASE("Verma e-coefficient is forced by [e, f] = h") {
  for (int lambda : {-3, -2, -1, 0, 1, 4}) {
    ModuleExpr m = ModuleExpr::verma(lambda);
    for (int k = 0; k < 6; ++k) {
      LinearCombination v = single(idx({k}));
      // e f^{k+1} v = f e f^k v + h f^k v, so coefficients satisfy c_{k+1} = c_k + (lambda - 2k).
      auto ef = act(Generator::kE, m, act(Generator::kF, m, v));
      auto fe = act(Generator::kF, m, act(Generator::kE, m, v));
      Rational lhs = ef.count(idx({k})) ? ef.at(idx({k})) : Rational(0);
      Rational rhs = (fe.count(idx({k})) ? fe.at(idx({k})) : Rational(0)) + (lambda - 2 * k);
      CHECK(lhs == rhs);
      CHECK(lhs == Rational((k + 1) * (lambda - k)));
    }
  }
}

TEST_CASE("characters") {
  auto m0 = character(parse_rep("M0"), 3);
  CHECK(m0 == std::map<int, Integer>{{0, 1}, {-2, 1}, {-4, 1}, {-6, 1}});
  CHECK(character(parse_rep("L1"), 5) == std::map<int, Integer>{{1, 1}, {-1, 1}});
  CHECK(character(parse_rep("P"), 3) == std::map<int, Integer>{{0, 1}, {-2, 2}, {-4, 2}, {-6, 2}});
  // Additive over sums, convolution over tensors.
  auto lhs = character(parse_rep("(M0 + M-2) x P"), 6);
  auto a = character(parse_rep("M0 x P"), 6), b = character_above(parse_rep("M-2 x P"), -12);
  for (auto& [w, d] : b) a[w] += d;
  CHECK(lhs == a);
  CHECK_THROWS_AS(character(parse_rep("M0"), -1), DomainError);
}

TEST_CASE("singular vectors") {
  CHECK(hwv_count(parse_rep("P"), -2) == 1);
  CHECK(hwv_count(parse_rep("P"), 0) == 1);
  // f v_0 is singular in M0: e f v_0 = h v_0 = 0.
  CHECK(hwv_count(parse_rep("M0"), -2) == 1);
  CHECK(hwv_count(parse_rep("M0"), -4) == 0);
  const int expected[] = {1, 2, 1, 1, 1, 1};
  for (int k = 0; k < 6; ++k) CHECK(hwv_count(parse_rep("M0 x M0"), -2 * k) == expected[k]);
  CHECK(hwv_count(parse_rep("M-2 x M-2"), -4) == 1);
  CHECK(hwv_count(parse_rep("M-2 x M-2"), -6) == 1);
  CHECK(hwv_count(parse_rep("(M0 + M-2)^2"), -2) == 4);
}

TEST_CASE("pure tensor summands") {
  auto parts = pure_tensor_summands(parse_rep("(M0 + M-2)^2 x P x L0"));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].as_expr() == parse_rep("M0 x M-1 x L1"));
  CHECK(parts[0].multiplicity == 2);
  CHECK(parts[1].as_expr() == parse_rep("M-1 x M-2 x L1"));
  auto merged = pure_tensor_summands(parse_rep("M0 x M-2 + M-2 x M0"));
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].multiplicity == 2);
  CHECK(pure_tensor_summands(parse_rep("L0 x L0"))[0].as_expr() == parse_rep("L0"));
}
