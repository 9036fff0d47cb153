#include <doctest.h>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"
#include "casimir/monodromy.hpp"
#include "support.hpp"

using namespace casimir;
using casimir::test::B;
using casimir::test::Q;

namespace {

QSeries H(std::initializer_list<std::pair<const char*, long>> terms, long order) {
  QSeries::TermMap m;
  for (auto [e, c] : terms) m[HalfInt::parse(e)] = c;
  return QSeries(m, order);
}

std::vector<Eigen> eig(std::initializer_list<std::array<long, 3>> rows) {
  std::vector<Eigen> out;
  for (auto r : rows) out.push_back({Integer(r[0]), int(r[1]), int(r[2])});
  return out;
}

}  // namespace

TEST_CASE("spectral data") {
  CHECK(spectral(parse_rep("P"), -4).eigen == eig({{-8, 2, 2}}));
  CHECK(spectral(parse_rep("M0"), -4).eigen == eig({{-8, 1, 1}}));
  CHECK(spectral(parse_rep("M0 x M0"), -4).eigen == eig({{-8, 2, 1}, {-4, 1, 1}}));
  CHECK(spectral(parse_rep("P x P"), -4).eigen == eig({{-8, 4, 2}, {-4, 4, 1}}));
  CHECK(spectral(parse_rep("M0 x P"), -4).eigen == eig({{-8, 3, 2}, {-4, 2, 1}}));
  SpectralData d = spectral(parse_rep("P x P x M0"), -6);
  int total = 0;
  for (const auto& e : d.eigen) {
    total += e.multiplicity;
    CHECK(e.block_size <= e.multiplicity);
  }
  CHECK(std::size_t(total) == d.dimension);
  CHECK_THROWS_AS(spectral(RatMatrix{{0, 1}, {2, 0}}), UnsupportedInputError);
  RatMatrix half(1, 1);
  half(0, 0) = Rational(1, 2);
  CHECK_THROWS_AS(spectral(half), UnsupportedInputError);
}

TEST_CASE("characteristic polynomial and integer roots") {
  RatMatrix m{{-8, 0, 0}, {-4, -4, -4}, {0, 0, -8}};
  // (t + 4)(t + 8)^2 = t^3 + 20 t^2 + 128 t + 256
  CHECK(characteristic_polynomial(m) == std::vector<Integer>{256, 128, 20, 1});
  auto roots = integer_roots(characteristic_polynomial(m), gershgorin_radius(m));
  CHECK(roots == std::vector<std::pair<Integer, int>>{{-8, 2}, {-4, 1}});
  CHECK(integer_roots({0, 0, 1}, 1) == std::vector<std::pair<Integer, int>>{{0, 2}});
}

TEST_CASE("monodromy matrices") {
  ModuleExpr p = parse_rep("P");
  RatMatrix k = kappa_matrix(p, -2).entries;
  MonodromyMatrix m = monodromy_matrix(p, -2, 1).conjugated(jordan_2x2(k).s);
  CHECK(m.at(0, 0) == MonodromyEntry{{HalfInt(1), MuPoly::constant(1)}});
  CHECK(m.at(0, 1) == MonodromyEntry{{HalfInt(1), MuPoly({0, -2})}});
  CHECK(m.at(1, 0).empty());
  CHECK(m.at(1, 1) == MonodromyEntry{{HalfInt(1), MuPoly::constant(1)}});
  for (int kk = 0; kk < 5; ++kk) {
    for (int l = 1; l <= 3; ++l) {
      MonodromyMatrix v = monodromy_matrix(parse_rep("M0"), -2 * kk, l);
      CHECK(v.at(0, 0) == MonodromyEntry{{HalfInt(l * kk * kk), MuPoly::constant(1)}});
    }
  }
  CHECK(monodromy_matrix(parse_rep("L0"), 0, 4).at(0, 0) == MonodromyEntry{{HalfInt(0), MuPoly::constant(1)}});
  CHECK_THROWS_AS(monodromy_matrix(p, -2, 0), DomainError);
  CHECK_THROWS_AS(monodromy_matrix(p, -2, -1), DomainError);
  MonodromyEntry tr = monodromy_matrix(p, -6, 2).trace();
  CHECK(tr == MonodromyEntry{{HalfInt(18), MuPoly::constant(2)}});
  CHECK(monodromy_matrix(p, -4, 1) * monodromy_matrix(p, -4, 1) == monodromy_matrix(p, -4, 2));
}

TEST_CASE("flat sections") {
  ModuleExpr p = parse_rep("P");
  for (int kk = 1; kk <= 4; ++kk) {
    RatMatrix k = kappa_matrix(p, -2 * kk).entries;
    FlatSectionExpr psi = flat_sections_of(k);
    REQUIRE(psi.terms.size() == 2);
    CHECK(psi.terms[0].c == -2 * kk * kk);
    CHECK(psi.terms[0].j == 0);
    CHECK(psi.terms[0].matrix == RatMatrix::identity(2));
    CHECK(psi.terms[1].j == 1);
    CHECK(psi.terms[1].matrix == k + Rational(2 * kk * kk) * RatMatrix::identity(2));
    CHECK(satisfies_flat_section_equation(psi, k));
    CHECK(formal_equal(continue_around_origin(psi), apply(monodromy_of(k, 1), psi)));
    // A wrong monodromy is detected.
    CHECK_FALSE(formal_equal(continue_around_origin(psi), apply(monodromy_of(k, 2), psi)));
  }
  FlatSectionExpr m0 = flat_sections(parse_rep("M0"), -6);
  REQUIRE(m0.terms.size() == 1);
  CHECK(m0.terms[0].c == -18);
  FlatSectionExpr l0 = flat_sections(parse_rep("L0"), 0);
  REQUIRE(l0.terms.size() == 1);
  CHECK(l0.terms[0].c == 0);
  FlatSectionExpr broken = flat_sections_of(kappa_matrix(p, -2).entries);
  broken.terms[1].matrix(0, 0) += 1;
  CHECK_FALSE(satisfies_flat_section_equation(broken, kappa_matrix(p, -2).entries));
}

TEST_CASE("trace_series against the brute-force oracle") {
  struct Case {
    const char* rep;
    long order;
    QSeries expected;
  };
  const Case cases[] = {
      {"M0", 5, Q({{0, 1}, {1, 1}, {4, 1}}, 5)},
      {"M-2", 5, Q({{1, 1}, {4, 1}}, 5)},
      {"P", 10, Q({{0, 1}, {1, 2}, {4, 2}, {9, 2}}, 10)},
      {"M0 x M0", 10, Q({{0, 1}, {1, 2}, {2, 1}, {3, 1}, {4, 3}, {5, 1}, {6, 1}, {7, 2}, {8, 1}, {9, 3}}, 10)},
      {"M0 x P", 10, Q({{0, 1}, {1, 3}, {2, 2}, {3, 2}, {4, 5}, {5, 2}, {6, 2}, {7, 4}, {8, 2}, {9, 5}}, 10)},
      {"P x P", 10, Q({{0, 1}, {1, 4}, {2, 4}, {3, 4}, {4, 8}, {5, 4}, {6, 4}, {7, 8}, {8, 4}, {9, 8}}, 10)},
      {"M0 x M0 x M-2", 8, Q({{1, 1}, {2, 2}, {3, 3}, {4, 5}, {5, 5}, {6, 6}, {7, 9}}, 8)},
      {"M-1", 6, H({{"1/2", 1}, {"5/2", 1}}, 6)},
      {"M-1 x M-1", 6, Q({{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 1}}, 6)},
      {"L1", 3, H({{"-1/2", 2}}, 3)},
      {"L0", 3, Q({{0, 1}}, 3)},
  };
  for (const auto& c : cases) {
    CAPTURE(c.rep);
    CHECK(trace_series(parse_rep(c.rep), 1, c.order) == c.expected);
    CHECK(trace_series(parse_rep(c.rep), 1, c.order, TraceMethod::kCharpoly) == c.expected);
  }
  CHECK(trace_series(parse_rep("P x P"), 1, 4) == Q({{0, 1}, {1, 4}, {2, 4}, {3, 4}}, 4));
  CHECK(trace_series(parse_rep("M0 x M0"), 1, 5) == Q({{0, 1}, {1, 2}, {2, 1}, {3, 1}, {4, 3}}, 5));
}

TEST_CASE("ladder and charpoly agree on mixed expressions") {
  for (const char* rep : {"(M0 + M-2)^2 x P", "P x M-1 x L1", "M-3 x P + L1 x L1", "(P + M0) x (M-2 + L0)",
                          "M-3 x L2"}) {
    CAPTURE(rep);
    ModuleExpr e = parse_rep(rep);
    CHECK(trace_series(e, 1, 9) == trace_series(e, 1, 9, TraceMethod::kCharpoly));
    CHECK(trace_series(e, 2, 11) == trace_series(e, 2, 11, TraceMethod::kCharpoly));
  }
}

TEST_CASE("trace laws") {
  ModuleExpr a = parse_rep("P x M0"), b = parse_rep("M-1 x M-2");
  CHECK(trace_series(ModuleExpr::direct_sum({a, b}), 1, 12) == trace_series(a, 1, 12) + trace_series(b, 1, 12));
  CHECK(trace_series(a, 3, 30) == trace_series(a, 1, 10).substitute_power(3));
  CHECK(trace_series(ModuleExpr::power(a, 3), 1, 12) == Rational(3) * trace_series(a, 1, 12));
  CHECK(trace_series(parse_rep("P x M-2"), 1, 15) == trace_series(parse_rep("(M0 + M-2) x M-2"), 1, 15));
}

TEST_CASE("trace_series rejects what it cannot bound") {
  CHECK_THROWS_AS(trace_series(parse_rep("M0"), 0, 5), DomainError);
  // Top weight 1: the eigenvalue at the top gives a negative exponent.
  CHECK_THROWS_AS(trace_series(parse_rep("M1"), 1, 5), InvariantError);
  CHECK_THROWS_AS(trace_series(parse_rep("M0 x L1"), 1, 5), InvariantError);
  CHECK(trace_series(parse_rep("M0"), 1, 0).is_zero());
}

TEST_CASE("trace_deformed") {
  CHECK(trace_deformed(parse_rep("M0"), 1, 10) == B({{0, 0, 1}, {1, 1, 1}, {4, 2, 1}, {9, 3, 1}}, 10));
  CHECK(trace_deformed(parse_rep("P"), 1, 10) == B({{0, 0, 1}, {1, 1, 2}, {4, 2, 2}, {9, 3, 2}}, 10));
  CHECK(trace_deformed(parse_rep("M-2"), 1, 5) == B({{1, 1, 1}, {4, 2, 1}}, 5));
  CHECK(trace_deformed(parse_rep("M-2"), 2, 10) == B({{2, 2, 1}, {8, 4, 1}}, 10));
  CHECK(trace_deformed(parse_rep("P x M0"), 1, 12).at_x_equals_one() == trace_series(parse_rep("P x M0"), 1, 12));
  CHECK_THROWS_AS(trace_deformed(parse_rep("M-1"), 1, 5), UnsupportedInputError);
  CHECK_THROWS_AS(trace_deformed(parse_rep("L2"), 1, 5), UnsupportedInputError);
}

TEST_CASE("trace_via_decomposition") {
  QSeries t = trace_via_decomposition({1, 1}, {0, 0}, 1, 1, 30);
  CHECK(t.coefficient(4) == 3);
  CHECK(t == trace_series(parse_rep("M0 x M0"), 1, 30));
  CHECK(trace_via_decomposition({2, 3}, {1, 1}, 1, 1, 1) == Q({{0, 6}}, 1));
  CHECK(trace_via_decomposition({1, 0, 2}, {1, 2, 0}, 2, 2, 20) ==
        trace_series(appell_lerch_module({1, 0, 2}, {1, 2, 0}), 2, 20));
  CHECK_THROWS_AS(trace_via_decomposition({1, 1}, {0, 0}, 2, 1, 5), DomainError);
}

TEST_CASE("appell_lerch_module") {
  CHECK(appell_lerch_module({1, 1}, {0, 1}) == parse_rep("M0 x (M0 + M-2)"));
  CHECK(appell_lerch_module({2, 0}, {1, 3}, {0, 1}) == parse_rep("(M0^2 + M-2) x (M-2^3 + P)"));
  CHECK(appell_lerch_module({0}, {0}, {1}) == parse_rep("P"));
  CHECK_THROWS_AS(appell_lerch_module({0, 1}, {0, 1}), DomainError);
}

TEST_CASE("jordan_2x2") {
  JordanForm a = jordan_2x2(RatMatrix{{-4, 2}, {-2, 0}});
  CHECK(a.j == RatMatrix{{-2, 2}, {0, -2}});
  CHECK(a.s == RatMatrix{{1, 0}, {1, 1}});
  JordanForm b = jordan_2x2(RatMatrix{{-12, 2}, {-8, -4}});
  CHECK(b.j == RatMatrix{{-8, 2}, {0, -8}});
  CHECK(b.s == RatMatrix{{1, 0}, {2, 1}});
  JordanForm c = jordan_2x2(RatMatrix{{3, 0}, {0, 5}});
  CHECK(c.j == RatMatrix{{3, 0}, {0, 5}});
  CHECK(c.s == RatMatrix::identity(2));
  JordanForm d = jordan_2x2(RatMatrix{{1, 2}, {3, 2}});
  CHECK(d.j == RatMatrix{{-1, 0}, {0, 4}});
  CHECK(RatMatrix{{1, 2}, {3, 2}} * d.s == d.s * d.j);
  JordanForm e = jordan_2x2(RatMatrix{{5, 0}, {7, 5}});
  CHECK(e.j == RatMatrix{{5, 2}, {0, 5}});
  CHECK(RatMatrix{{5, 0}, {7, 5}} * e.s == e.s * e.j);
  CHECK_THROWS_AS(jordan_2x2(RatMatrix{{0, 1}, {2, 0}}), UnsupportedInputError);
  CHECK_THROWS_AS(jordan_2x2(RatMatrix{{0, -1}, {1, 0}}), UnsupportedInputError);
  CHECK_THROWS_AS(jordan_2x2(RatMatrix{{1}}), DomainError);
}
