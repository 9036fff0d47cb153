#include "casimir/verify.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"
#include "casimir/monodromy.hpp"
#include "casimir/series.hpp"
#include "casimir/sl2_rep.hpp"

namespace casimir {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

void fail(CheckReport& r, const std::string& witness) {
  if (r.status != CheckStatus::kFail) {
    r.status = CheckStatus::kFail;
    r.witness = witness;
  }
}

std::string list_str(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

// Records the first coefficient where two series differ below n.
bool same_series(CheckReport& r, const std::string& context, const std::string& left_name,
                 const QSeries& left, const std::string& right_name, const QSeries& right,
                 HalfInt n) {
  if (auto e = first_difference(left, right, n)) {
    fail(r, context + ": coefficient of q^" + e->str() + ": " + left_name + "=" +
                to_string(left.coefficient(*e)) + ", " + right_name + "=" +
                to_string(right.coefficient(*e)));
    return false;
  }
  return true;
}

bool same_series(CheckReport& r, const std::string& context, const std::string& left_name,
                 const BiSeries& left, const std::string& right_name, const BiSeries& right,
                 HalfInt n) {
  if (auto e = first_difference(left, right, n)) {
    fail(r, context + ": coefficient of q^" + e->q.str() + " x^" + std::to_string(e->x) + ": " +
                left_name + "=" + to_string(left.coefficient(*e)) + ", " + right_name + "=" +
                to_string(right.coefficient(*e)));
    return false;
  }
  return true;
}

std::string matrix_str(const RatMatrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational v = m(r, c);
      out += (c ? ", " : "") + (v.get_den() == 1 ? v.get_num().get_str() : v.get_str());
    }
    out += "]";
  }
  return out + "]";
}

bool flat_section_consistent(const RatMatrix& kappa) {
  FlatSectionExpr psi = flat_sections_of(kappa);
  return satisfies_flat_section_equation(psi, kappa) &&
         formal_equal(continue_around_origin(psi), apply(monodromy_of(kappa, 1), psi));
}

QSeries atom_series(const std::string& atom, int loops, HalfInt order) {
  if (atom == "L0") return order > HalfInt(0) ? QSeries::one(order) : QSeries(order);
  if (atom == "M0") return partial_theta(PartialThetaKind::kM0, loops, order).at_x_equals_one();
  if (atom == "M-2") return partial_theta(PartialThetaKind::kMminus2, loops, order).at_x_equals_one();
  return jacobi_theta(loops, order);
}

}  // namespace

CheckReport merge_reports(const std::string& name, const std::vector<CheckReport>& parts) {
  CheckReport out;
  out.name = name;
  for (const auto& p : parts) {
    const std::string prefix = p.name == name ? "" : p.name + ": ";
    if (!out.coverage.empty()) out.coverage += "; ";
    out.coverage += p.coverage;
    out.seconds += p.seconds;
    if (p.status == CheckStatus::kFail) {
      fail(out, prefix + p.witness);
    } else if (p.status == CheckStatus::kInconclusive && out.status == CheckStatus::kPass) {
      out.status = CheckStatus::kInconclusive;
      out.witness = prefix + p.witness;
    }
    if (!out.seed) out.seed = p.seed;
    for (const auto& f : p.facts) out.facts.emplace_back(p.name + "." + f.first, f.second);
  }
  return out;
}

// ---- Jordan blocks of kappa on P ----

CheckReport check_theorem1(int k_max, const std::function<RatMatrix(int)>& kappa_source) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  Stopwatch clock;
  CheckReport r;
  r.name = "theorem1";
  r.coverage = "k=1.." + std::to_string(k_max);
  for (long k = 1; k <= k_max && r.status == CheckStatus::kPass; ++k) {
    RatMatrix m = kappa_source(static_cast<int>(k));
    RatMatrix expected{{-2 * k * (k + 1), 2}, {-2 * k * k, -2 * k * (k - 1)}};
    if (m.rows() != 2 || m.cols() != 2) {
      fail(r, "k=" + std::to_string(k) + ": weight space has dimension " + std::to_string(m.rows()));
      break;
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        if (m(i, j) != expected(i, j)) {
          fail(r, "k=" + std::to_string(k) + ": kappa entry (" + std::to_string(i) + "," +
                      std::to_string(j) + ") = " + to_string(m(i, j)) + ", expected " +
                      to_string(expected(i, j)));
        }
      }
    }
    if (r.status != CheckStatus::kPass) break;
    JordanForm jf = jordan_2x2(m);
    RatMatrix j_expected{{-2 * k * k, 2}, {0, -2 * k * k}};
    if (!(jf.j == j_expected) || !(m * jf.s == jf.s * jf.j)) {
      fail(r, "k=" + std::to_string(k) + ": Jordan form " + matrix_str(jf.j) + ", expected " +
                  matrix_str(j_expected));
      break;
    }
    // Jordan chain: v = f^k v x u_1 + k f^{k-1} v x u_{-1} = (1, k) is the
    // eigenvector and (kappa - c) e_2 = 2 v.
    RatMatrix v{{1}, {k}};
    RatMatrix e2{{0}, {1}};
    RatMatrix shifted = m - Rational(-2 * k * k) * RatMatrix::identity(2);
    if (!(shifted * v).is_zero() || !(shifted * e2 == Rational(2) * v)) {
      fail(r, "k=" + std::to_string(k) + ": (1, k), (0, 1) is not a Jordan chain");
    }
  }
  r.seconds = clock.seconds();
  return r;
}

CheckReport check_theorem1(int k_max) {
  const ModuleExpr p = ModuleExpr::big_p();
  return check_theorem1(k_max, [&](int k) { return kappa_matrix(p, -2 * k).entries; });
}

// ---- atom traces ----

CheckReport check_table1(int loops, HalfInt order) {
  Stopwatch clock;
  CheckReport r;
  r.name = "table1";
  r.coverage = "l=" + std::to_string(loops) + ", q-order " + order.str() + ", L0 M0 M-2 P";
  for (std::string atom : {"L0", "M0", "M-2", "P"}) {
    ModuleExpr expr = parse_rep(atom);
    QSeries trace = trace_series(expr, loops, order);
    if (!trace.has_integer_exponents()) fail(r, atom + ": half-integer exponent in the trace");
    same_series(r, atom, "trace", trace, "closed form", atom_series(atom, loops, order), order);

    const int top = expr.top_weight();
    const int depths = atom == "L0" ? 1 : 4;
    for (int d = 0; d < depths; ++d) {
      const int w = top - 2 * d;
      RatMatrix kappa = kappa_matrix(expr, w).entries;
      if (!flat_section_consistent(kappa)) {
        fail(r, atom + " weight " + std::to_string(w) + ": flat sections and monodromy disagree");
      }
      // Monodromy column: q^{l k^2} for Verma weight spaces, q^{l k^2} [[1, -2 l mu], [0, 1]]
      // on P(-2k) in the Jordan basis.
      MonodromyMatrix m = monodromy_of(kappa, loops);
      if (atom == "P" && d > 0) m = m.conjugated(jordan_2x2(kappa).s);
      const std::int64_t k = atom == "M-2" ? d + 1 : d;
      const HalfInt q_exp = HalfInt(std::int64_t(loops) * k * k);
      bool ok = m.at(0, 0).size() == 1 && m.at(0, 0).count(q_exp) &&
                m.at(0, 0).at(q_exp) == MuPoly::constant(1);
      if (atom == "P" && d > 0) {
        ok = ok && m.at(1, 1).size() == 1 && m.at(1, 1).count(q_exp) &&
             m.at(1, 1).at(q_exp) == MuPoly::constant(1) && m.at(1, 0).empty() &&
             m.at(0, 1).size() == 1 && m.at(0, 1).count(q_exp) &&
             m.at(0, 1).at(q_exp) == MuPoly({Rational(0), Rational(-2 * loops)});
      }
      if (!ok) {
        fail(r, atom + " weight " + std::to_string(w) + ": monodromy entry (0,0) is " +
                    to_display_string(m.at(0, 0)) + ", expected q^" + q_exp.str());
      }
    }
  }
  r.seconds = clock.seconds();
  return r;
}

// ---- two-factor rows and samples ----

namespace {

struct AppellLerchCase {
  std::string label;
  ModuleExpr expr;
  std::vector<int> alphas;
  std::vector<int> betas;
};

// Ladder trace, decomposition and closed form below `order`; the trace from
// factored kappa matrices joins them below `charpoly_order`.
void compare_three_paths(CheckReport& r, const AppellLerchCase& c, int loops, HalfInt order,
                         HalfInt charpoly_order = 0) {
  const int p = static_cast<int>(c.alphas.size()) - 1;
  QSeries matrix = trace_series(c.expr, loops, order);
  if (charpoly_order > HalfInt(0)) {
    HalfInt n = min(order, charpoly_order);
    same_series(r, c.label, "charpoly trace", trace_series(c.expr, loops, n, TraceMethod::kCharpoly),
                "ladder trace", matrix.truncated(n), n);
  }
  QSeries fast = trace_via_decomposition(c.alphas, c.betas, p, loops, order);
  QSeries closed = partial_appell_lerch({c.alphas, c.betas, p, loops}, order);
  same_series(r, c.label, "matrix trace", matrix, "decomposition", fast, order) &&
      same_series(r, c.label, "decomposition", fast, "Appell-Lerch", closed, order) &&
      same_series(r, c.label, "matrix trace", matrix, "Appell-Lerch", closed, order);
}

int draw_factor_count(SeededRng& rng, int max_p) { return rng.uniform(1, max_p); }

void draw_ab(SeededRng& rng, int size, int max_mult, std::vector<int>& a, std::vector<int>& b) {
  a.assign(static_cast<std::size_t>(size), 0);
  b.assign(static_cast<std::size_t>(size), 0);
  for (int i = 0; i < size; ++i) {
    do {
      a[static_cast<std::size_t>(i)] = rng.uniform(0, max_mult);
      b[static_cast<std::size_t>(i)] = rng.uniform(0, max_mult);
    } while (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)] == 0);
  }
}

using AlphaBeta = std::pair<std::vector<int>, std::vector<int>>;

// Distinct (alpha, beta) draws; repeats are skipped so the sample count is real coverage.
std::vector<AlphaBeta> draw_configurations(const SampleOptions& samples) {
  SeededRng rng(samples.seed);
  std::vector<AlphaBeta> out;
  for (int attempt = 0; int(out.size()) < samples.samples && attempt < 100 * samples.samples; ++attempt) {
    int p = draw_factor_count(rng, samples.max_p);
    AlphaBeta ab;
    draw_ab(rng, p + 1, samples.max_multiplicity, ab.first, ab.second);
    if (std::find(out.begin(), out.end(), ab) == out.end()) out.push_back(std::move(ab));
  }
  return out;
}

}  // namespace

CheckReport check_table2(int loops, HalfInt order, const SampleOptions& samples) {
  Stopwatch clock;
  CheckReport r;
  r.name = "table2";
  r.seed = samples.seed;
  const std::vector<AppellLerchCase> rows = {
      {"M0 x M0", parse_rep("M0 x M0"), {1, 1}, {0, 0}},
      {"M0 x P", parse_rep("M0 x P"), {1, 1}, {0, 1}},
      {"P x P", parse_rep("P x P"), {1, 1}, {1, 1}},
  };
  for (const auto& row : rows) compare_three_paths(r, row, loops, order, order);
  std::string sampled;
  for (const auto& [a, b] : draw_configurations(samples)) {
    AppellLerchCase c{"alpha=" + list_str(a) + " beta=" + list_str(b), appell_lerch_module(a, b), a, b};
    sampled += (sampled.empty() ? "" : " ") + list_str(a) + list_str(b);
    compare_three_paths(r, c, loops, samples.order, 8);
  }
  r.coverage = "l=" + std::to_string(loops) + ", rows M0xM0 M0xP PxP to q-order " + order.str() +
               ", " + std::to_string(samples.samples) + " sampled (alpha)(beta) to q-order " +
               samples.order.str() + " (charpoly path to 8): " + sampled;
  r.seconds = clock.seconds();
  return r;
}

// ---- compare one expression ----

namespace {

struct FactorCounts {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
};

void count_term(const ModuleExpr& term, FactorCounts& f) {
  int mult = 1;
  const ModuleExpr* atom = &term;
  if (term.kind() == ModuleExpr::Kind::kPower) {
    mult = term.param();
    atom = &term.children()[0];
  }
  if (atom->kind() == ModuleExpr::Kind::kVerma && atom->param() == 0) {
    f.alpha += mult;
  } else if (atom->kind() == ModuleExpr::Kind::kVerma && atom->param() == -2) {
    f.beta += mult;
  } else if (atom->kind() == ModuleExpr::Kind::kBigP) {
    f.gamma += mult;
  } else if (atom->kind() == ModuleExpr::Kind::kIrr && atom->param() == 0 && mult == 1 &&
             term.kind() != ModuleExpr::Kind::kPower) {
    f.alpha = -1;  // marker for L0, handled by the caller
  } else {
    throw UnsupportedInputError("compare supports tensor products of sums of M0, M-2 and P (or L0 alone); found " +
                                atom->to_string());
  }
}

FactorCounts count_factor(const ModuleExpr& factor) {
  FactorCounts f;
  if (factor.kind() == ModuleExpr::Kind::kDirectSum) {
    for (const auto& t : factor.children()) {
      if (t.kind() == ModuleExpr::Kind::kIrr) {
        throw UnsupportedInputError("compare does not accept L0 inside a sum");
      }
      count_term(t, f);
    }
  } else {
    count_term(factor, f);
  }
  return f;
}

}  // namespace

CheckReport check_expression(const ModuleExpr& expr, int loops, HalfInt order) {
  Stopwatch clock;
  CheckReport r;
  r.name = "compare";
  r.coverage = expr.to_string() + ", l=" + std::to_string(loops) + ", q-order " + order.str();
  std::vector<ModuleExpr> factors =
      expr.kind() == ModuleExpr::Kind::kTensor ? expr.children() : std::vector<ModuleExpr>{expr};
  std::vector<int> a, b, g;
  for (const auto& f : factors) {
    FactorCounts c = count_factor(f);
    if (c.alpha < 0) {
      if (factors.size() != 1) throw UnsupportedInputError("compare accepts L0 only on its own");
      QSeries trace = trace_series(expr, loops, order);
      same_series(r, "L0", "trace", trace, "closed form", atom_series("L0", loops, order), order);
      r.seconds = clock.seconds();
      return r;
    }
    a.push_back(c.alpha);
    b.push_back(c.beta);
    g.push_back(c.gamma);
  }
  const bool has_p = std::any_of(g.begin(), g.end(), [](int x) { return x > 0; });
  std::vector<int> a2(a.size()), b2(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a2[i] = a[i] + g[i];
    b2[i] = b[i] + g[i];
  }
  const std::string label = expr.to_string();
  if (factors.size() == 1) {
    QSeries trace = trace_series(expr, loops, order);
    QSeries expected = Rational(a[0]) * atom_series("M0", loops, order) +
                       Rational(b[0]) * atom_series("M-2", loops, order) +
                       Rational(g[0]) * atom_series("P", loops, order);
    same_series(r, label, "trace", trace, "closed form", expected, order);
  } else {
    if (has_p) {
      // The P factors are compared through M0 + M-2 as well.
      QSeries lhs = trace_series(expr, loops, order);
      QSeries rhs = trace_series(appell_lerch_module(a2, b2), loops, order);
      same_series(r, label, "trace", lhs, "trace with P -> M0 + M-2", rhs, order);
    }
    compare_three_paths(r, {label, expr, a2, b2}, loops, order);
  }
  r.seconds = clock.seconds();
  return r;
}

// ---- partial thetas ----

CheckReport check_partial_thetas(int loops, HalfInt order) {
  Stopwatch clock;
  CheckReport r;
  r.name = "partial-thetas";
  r.coverage = "l=" + std::to_string(loops) + ", q-order " + order.str() + ", L0 M0 M-2 P";
  const std::pair<const char*, PartialThetaKind> kinds[] = {
      {"L0", PartialThetaKind::kL0},
      {"M0", PartialThetaKind::kM0},
      {"M-2", PartialThetaKind::kMminus2},
      {"P", PartialThetaKind::kP},
  };
  for (const auto& [atom, kind] : kinds) {
    ModuleExpr expr = parse_rep(atom);
    BiSeries deformed = trace_deformed(expr, loops, order);
    same_series(r, atom, "deformed trace", deformed, "partial theta",
                partial_theta(kind, loops, order), order);
    same_series(r, std::string(atom) + " at x=1", "deformed trace", deformed.at_x_equals_one(),
                "trace", trace_series(expr, loops, order), order);
  }
  r.seconds = clock.seconds();
  return r;
}

// ---- multiplicities ----

CheckReport check_multiplicities(const std::vector<int>& alphas, const std::vector<int>& betas,
                                 int p, int max_k) {
  Stopwatch clock;
  CheckReport r;
  r.name = "multiplicities";
  r.coverage = "alpha=" + list_str(alphas) + " beta=" + list_str(betas) + ", k=0.." +
               std::to_string(max_k);
  auto a = verma_multiplicities(alphas, betas, p, max_k);
  ModuleExpr expr = appell_lerch_module(alphas, betas);
  for (int k = 0; k <= max_k; ++k) {
    Integer count = hwv_count(expr, -2 * k);
    if (count != a[static_cast<std::size_t>(k)]) {
      fail(r, r.coverage + ": weight " + std::to_string(-2 * k) + ": hwv_count=" +
                  to_string(count) + ", a_k=" + to_string(a[static_cast<std::size_t>(k)]));
      break;
    }
  }
  r.seconds = clock.seconds();
  return r;
}

CheckReport check_multiplicity_samples(int max_k, const SampleOptions& samples) {
  std::vector<CheckReport> parts;
  for (const auto& [a, b] : draw_configurations(samples)) {
    parts.push_back(check_multiplicities(a, b, static_cast<int>(a.size()) - 1, max_k));
  }
  CheckReport r = merge_reports("multiplicities", parts);
  r.seed = samples.seed;
  return r;
}

// ---- replacing P by M0 + M-2 ----

CheckReport test_conjecture1(const std::vector<int>& alphas, const std::vector<int>& betas,
                             const std::vector<int>& gammas, int loops, HalfInt order) {
  if (alphas.size() != betas.size() || alphas.size() != gammas.size() || alphas.empty()) {
    throw DomainError("alphas, betas and gammas must be non-empty lists of equal length");
  }
  Stopwatch clock;
  CheckReport r;
  r.name = "conjecture1";
  std::vector<int> a2 = alphas, b2 = betas;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    a2[i] += gammas[i];
    b2[i] += gammas[i];
  }
  ModuleExpr f = appell_lerch_module(alphas, betas, gammas);
  ModuleExpr f_prime = appell_lerch_module(a2, b2);
  r.coverage = f.to_string() + " vs " + f_prime.to_string() + ", l=" + std::to_string(loops) +
               ", q-order " + order.str();
  same_series(r, f.to_string(), "F", trace_series(f, loops, order), "F'",
              trace_series(f_prime, loops, order), order);
  r.seconds = clock.seconds();
  return r;
}

CheckReport test_conjecture1_samples(int loops, const SampleOptions& samples) {
  SeededRng rng(samples.seed);
  std::vector<CheckReport> parts;
  for (int i = 0; i < samples.samples; ++i) {
    const int size = rng.uniform(1, samples.max_p) + 1;
    std::vector<int> a(static_cast<std::size_t>(size)), b(a.size()), g(a.size());
    bool any_p = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
      do {
        a[j] = rng.uniform(0, samples.max_multiplicity);
        b[j] = rng.uniform(0, samples.max_multiplicity);
        g[j] = rng.uniform(0, samples.max_multiplicity);
      } while (a[j] + b[j] + g[j] == 0);
      any_p = any_p || g[j] > 0;
    }
    if (!any_p) g[static_cast<std::size_t>(rng.uniform(0, size - 1))] = 1;
    parts.push_back(test_conjecture1(a, b, g, loops, samples.order));
  }
  CheckReport r = merge_reports("conjecture1", parts);
  r.seed = samples.seed;
  return r;
}

// ---- zeta ----

namespace {

// Bound for the integral of t^alpha e^{-b t} over [T, inf).
double upper_tail(double alpha, double b, double t) {
  if (alpha <= 0) return std::pow(t, alpha) * std::exp(-b * t) / b;
  if (b * t > 2 * alpha) return std::pow(t, alpha) * std::exp(-b * t) / (b - alpha / t);
  return std::tgamma(alpha + 1) / std::pow(b, alpha + 1);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

CheckReport zeta_mellin_check(const ZetaCheckParams& params) {
  const double s = params.s;
  if (!(s > 1)) throw DomainError("zeta check needs s > 1 for absolute convergence");
  if (params.loops < 1) throw DomainError("loop count must be positive");
  if (!(params.t_min > 0) || !(params.t_min < params.t_max) || !std::isfinite(params.t_max)) {
    throw DomainError("need 0 < t_min < t_max < inf");
  }
  if (params.n_max < 1 || params.panels < 1 || !(params.tolerance > 0)) {
    throw DomainError("n_max, panels and tolerance must be positive");
  }
  Stopwatch clock;
  const double pi = std::numbers::pi;
  const double l = params.loops;
  const double alpha = s / 2 - 1;

  auto integrand = [&](double t) {
    double sum = 0;
    for (int n = 1; n <= params.n_max; ++n) {
      double term = std::exp(-4 * pi * l * double(n) * n * t);
      sum += term;
      if (term < 1e-20 * sum) break;
    }
    return std::pow(t, alpha) * sum;
  };

  // Composite Gauss-Legendre on geometric panels; the 20- and 30-point rules
  // differ by an estimate of the quadrature error.
  const double ratio = std::pow(params.t_max / params.t_min, 1.0 / params.panels);
  double coarse = 0, fine = 0;
  double a = params.t_min;
  for (int i = 0; i < params.panels; ++i) {
    double b = i + 1 == params.panels ? params.t_max : a * ratio;
    coarse += boost::math::quadrature::gauss<double, 20>::integrate(integrand, a, b);
    fine += boost::math::quadrature::gauss<double, 30>::integrate(integrand, a, b);
    a = b;
  }

  // On [0, t_min] theta inversion gives sum_{n>=1} e^{-pi a n^2} = ((a^{-1/2} - 1) + O(a^{-1/2} e^{-pi/a})) / 2
  // with a = 4 l t.
  const double head = 0.5 / std::sqrt(4 * l) * std::pow(params.t_min, (s - 1) / 2) / ((s - 1) / 2) -
                      0.5 * std::pow(params.t_min, s / 2) / (s / 2);
  const double eps_head = std::exp(-pi / (4 * l * params.t_min));
  const double head_error = eps_head / (1 - eps_head) / std::sqrt(4 * l) *
                            std::pow(params.t_min, (s - 1) / 2) / ((s - 1) / 2);

  // Terms n > n_max on [t_min, inf).
  const double beta_min = 4 * pi * l * params.t_min;
  const double n1 = params.n_max + 1.0;
  const double truncation_error =
      upper_tail(alpha, 4 * pi * l * n1 * n1, params.t_min) /
      (1 - std::exp(-beta_min * (2 * params.n_max + 3)));

  // All terms on [t_max, inf).
  const double tail_error =
      upper_tail(alpha, 4 * pi * l, params.t_max) / (1 - std::exp(-12 * pi * l * params.t_max));

  const double quadrature_error = std::abs(fine - coarse);
  const double integral = head + fine;
  const double rounding = 1e-14 * std::abs(integral) * params.panels;
  const double budget = head_error + truncation_error + tail_error + quadrature_error + rounding;

  const double reference =
      std::tgamma(s / 2) * std::pow(4 * pi * l, -s / 2) * std::riemann_zeta(s);
  const double difference = std::abs(std::abs(integral) - reference);

  CheckReport r;
  r.name = "zeta";
  r.coverage = "s=" + num(s) + ", l=" + std::to_string(params.loops) + ", t in [" +
               num(params.t_min) + ", " + num(params.t_max) + "], n_max=" +
               std::to_string(params.n_max) + ", tol=" + num(params.tolerance);
  r.facts = {{"integral", num(integral)},
             {"reference", num(reference)},
             {"difference", num(difference)},
             {"error_budget", num(budget)},
             {"quadrature_error", num(quadrature_error)},
             {"head_term", num(head)}};
  if (budget > params.tolerance) {
    r.status = CheckStatus::kInconclusive;
    r.witness = "error budget " + num(budget) + " exceeds tolerance " + num(params.tolerance);
  } else if (difference > params.tolerance) {
    fail(r, "|integral| = " + num(std::abs(integral)) + ", reference = " + num(reference) +
                ", difference " + num(difference));
  }
  r.seconds = clock.seconds();
  return r;
}

// ---- structural invariants ----

std::string to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::kCommutators: return "commutators";
    case InvariantKind::kWeightPreservation: return "weight-preservation";
    case InvariantKind::kMuFreeTrace: return "mu-free-trace";
    case InvariantKind::kPowerLaw: return "power-law";
    case InvariantKind::kFlatSections: return "flat-sections";
    case InvariantKind::kSubstitution: return "substitution";
  }
  return "?";
}

namespace {

ModuleExpr random_expr(SeededRng& rng, const std::vector<std::string>& atoms, int budget) {
  int roll = budget <= 0 ? 0 : rng.uniform(0, 9);
  if (roll < 5) return parse_rep(atoms[static_cast<std::size_t>(rng.uniform(0, int(atoms.size()) - 1))]);
  if (roll < 8) {
    std::vector<ModuleExpr> legs;
    int n = rng.uniform(2, 3);
    for (int i = 0; i < n; ++i) legs.push_back(random_expr(rng, atoms, budget - 1));
    return ModuleExpr::tensor(legs);
  }
  if (roll < 9) {
    return ModuleExpr::direct_sum(
        {random_expr(rng, atoms, budget - 1), random_expr(rng, atoms, budget - 1)});
  }
  return ModuleExpr::power(random_expr(rng, atoms, budget - 1), 2);
}

const std::vector<std::string> kAllAtoms = {"M0", "M-1", "M-2", "M1", "M-3", "L0", "L1", "L2", "P"};
// Atoms whose pure tensors all have top weight <= 0 (trace cutoff applies).
const std::vector<std::string> kTraceAtoms = {"M0", "M-1", "M-2", "P", "L0"};

// A random expression with a nonempty weight space of dimension at most max_dim.
std::pair<ModuleExpr, int> random_weight_space(SeededRng& rng, std::size_t max_dim) {
  for (;;) {
    ModuleExpr e = random_expr(rng, kAllAtoms, 2);
    int w = e.top_weight() - 2 * rng.uniform(0, 3);
    std::size_t dim = weight_space(e, w).size();
    if (dim > 0 && dim <= max_dim) return {e, w};
  }
}

LinearCombination minus(LinearCombination a, const LinearCombination& b) {
  for (const auto& [k, v] : b) {
    a[k] -= v;
    if (a[k] == 0) a.erase(k);
  }
  return a;
}

LinearCombination scaled(LinearCombination a, const Rational& c) {
  if (c == 0) return {};
  for (auto& [k, v] : a) v *= c;
  return a;
}

std::string describe(const ModuleExpr& e, int w) {
  return e.to_string() + " at weight " + std::to_string(w);
}

}  // namespace

CheckReport check_invariant(InvariantKind kind, int cases, std::uint64_t seed) {
  Stopwatch clock;
  CheckReport r;
  r.name = "invariant:" + to_string(kind);
  r.seed = seed;
  r.coverage = to_string(kind) + ": " + std::to_string(cases) + " random cases";
  SeededRng rng(seed);
  for (int i = 0; i < cases && r.status == CheckStatus::kPass; ++i) {
    switch (kind) {
      case InvariantKind::kCommutators:
      case InvariantKind::kWeightPreservation: {
        auto [e, w] = random_weight_space(rng, 64);
        auto basis = weight_space(e, w);
        const BasisIndex& v = basis[static_cast<std::size_t>(rng.uniform(0, int(basis.size()) - 1))];
        LinearCombination one{{v, Rational(1)}};
        auto E = [&](const LinearCombination& x) { return act(Generator::kE, e, x); };
        auto F = [&](const LinearCombination& x) { return act(Generator::kF, e, x); };
        auto H = [&](const LinearCombination& x) { return act(Generator::kH, e, x); };
        if (kind == InvariantKind::kCommutators) {
          bool ok = minus(E(F(one)), F(E(one))) == H(one) &&
                    minus(H(E(one)), E(H(one))) == scaled(E(one), 2) &&
                    minus(H(F(one)), F(H(one))) == scaled(F(one), -2);
          if (!ok) fail(r, describe(e, w) + ", vector " + basis_label(e, v));
        } else {
          for (const auto& [idx, c] : apply_kappa(e, one)) {
            if (weight_of(e, idx) != w) {
              fail(r, describe(e, w) + ": kappa(" + basis_label(e, v) + ") reaches weight " +
                          std::to_string(weight_of(e, idx)));
            }
          }
        }
        break;
      }
      case InvariantKind::kMuFreeTrace:
      case InvariantKind::kPowerLaw:
      case InvariantKind::kFlatSections: {
        auto [e, w] = random_weight_space(rng, 6);
        RatMatrix kappa = kappa_matrix(e, w).entries;
        if (kind == InvariantKind::kMuFreeTrace) {
          int l = rng.uniform(1, 3);
          MonodromyEntry tr = monodromy_of(kappa, l).trace();
          MonodromyEntry expected;
          for (const auto& ev : spectral(kappa).eigen) {
            expected[HalfInt::from_twice(-l * ev.value.get_si())] = MuPoly::constant(ev.multiplicity);
          }
          if (tr != expected) {
            fail(r, describe(e, w) + ": trace " + to_display_string(tr));
          }
        } else if (kind == InvariantKind::kPowerLaw) {
          int l1 = rng.uniform(1, 2), l2 = rng.uniform(1, 2);
          if (!(monodromy_of(kappa, l1) * monodromy_of(kappa, l2) == monodromy_of(kappa, l1 + l2))) {
            fail(r, describe(e, w) + ": M^" + std::to_string(l1) + " M^" + std::to_string(l2) +
                        " != M^" + std::to_string(l1 + l2));
          }
        } else if (!flat_section_consistent(kappa)) {
          fail(r, describe(e, w) + ": flat-section identity fails");
        }
        break;
      }
      case InvariantKind::kSubstitution: {
        ModuleExpr e = random_expr(rng, kTraceAtoms, 2);
        int l = rng.uniform(2, 3);
        HalfInt n = rng.uniform(1, 6);
        QSeries base = trace_series(e, 1, n);
        QSeries direct = trace_series(e, l, n * l);
        same_series(r, e.to_string() + " l=" + std::to_string(l), "trace(l)", direct,
                    "trace(1) at q^l", base.substitute_power(l), n * l);
        break;
      }
    }
  }
  r.seconds = clock.seconds();
  return r;
}

// ---- named checks ----

std::vector<std::string> check_names() {
  return {"theorem1",       "table1",     "table2", "partial-thetas",
          "multiplicities", "conjecture1", "zeta",   "invariants"};
}

CheckReport run_named_check(const std::string& name, const NamedCheckOptions& o) {
  SampleOptions samples;
  if (o.seed) samples.seed = *o.seed;
  auto loops_list = [&](std::vector<int> defaults) {
    return o.loops ? std::vector<int>{*o.loops} : defaults;
  };
  std::vector<CheckReport> parts;
  if (name == "theorem1") return check_theorem1(100);
  if (name == "table1") {
    for (int l : loops_list({1, 2, 3})) parts.push_back(check_table1(l, o.order.value_or(40)));
  } else if (name == "table2") {
    for (int l : loops_list({1})) parts.push_back(check_table2(l, o.order.value_or(30), samples));
  } else if (name == "partial-thetas") {
    for (int l : loops_list({1, 2})) parts.push_back(check_partial_thetas(l, o.order.value_or(25)));
  } else if (name == "multiplicities") {
    parts.push_back(check_multiplicity_samples(10, samples));
  } else if (name == "conjecture1") {
    for (int l : loops_list({1})) {
      HalfInt order = o.order.value_or(25);
      parts.push_back(test_conjecture1({0}, {0}, {1}, l, order));
      parts.push_back(test_conjecture1({1, 0}, {0, 0}, {0, 1}, l, order));
      SampleOptions s = samples;
      if (o.order) s.order = *o.order;
      parts.push_back(test_conjecture1_samples(l, s));
    }
  } else if (name == "zeta") {
    for (auto [s, l] : {std::pair{2.0, 1}, {4.0, 1}, {2.0, 2}}) {
      ZetaCheckParams p;
      p.s = s;
      p.loops = o.loops.value_or(l);
      parts.push_back(zeta_mellin_check(p));
    }
  } else if (name == "invariants") {
    for (auto kind : {InvariantKind::kCommutators, InvariantKind::kWeightPreservation,
                      InvariantKind::kMuFreeTrace, InvariantKind::kPowerLaw,
                      InvariantKind::kFlatSections, InvariantKind::kSubstitution}) {
      parts.push_back(check_invariant(kind, 1000, o.seed.value_or(samples.seed)));
    }
  } else {
    throw DomainError("unknown check '" + name + "'");
  }
  return merge_reports(name, parts);
}

}  // namespace casimir
