#include "casimir/closed_forms.hpp"

#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_loops(int loops) {
  if (loops <= 0) {
    throw DomainError("loop count must be positive (the formal trace converges only for l > 0), got " +
                      std::to_string(loops));
  }
}

void check_shape(const std::vector<int>& alphas, const std::vector<int>& betas, int p) {
  if (p < 1) throw DomainError("p must be at least 1, got " + std::to_string(p));
  if (alphas.size() != static_cast<std::size_t>(p) + 1 || betas.size() != alphas.size()) {
    throw DomainError("expected " + std::to_string(p + 1) + " alphas and betas, got " +
                      std::to_string(alphas.size()) + " and " + std::to_string(betas.size()));
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < 0 || betas[i] < 0) throw DomainError("alphas and betas must be non-negative");
    if (alphas[i] + betas[i] < 1) {
      throw DomainError("factor " + std::to_string(i) + " has alpha + beta = 0 (zero module)");
    }
  }
}

}  // namespace

void AppellLerchParams::validate() const {
  check_shape(alphas, betas, p);
  require_loops(loops);
}

std::string to_string(PartialThetaKind kind) {
  switch (kind) {
    case PartialThetaKind::kL0: return "L0";
    case PartialThetaKind::kM0: return "M0";
    case PartialThetaKind::kMminus2: return "M-2";
    case PartialThetaKind::kP: return "P";
  }
  return "?";
}

PartialThetaKind parse_partial_theta_kind(const std::string& name) {
  if (name == "L0") return PartialThetaKind::kL0;
  if (name == "M0") return PartialThetaKind::kM0;
  if (name == "M-2" || name == "Mminus2") return PartialThetaKind::kMminus2;
  if (name == "P") return PartialThetaKind::kP;
  throw DomainError("unknown partial theta kind '" + name + "' (expected L0, M0, M-2 or P)");
}

QSeries jacobi_theta(int loops, HalfInt order) {
  require_loops(loops);
  QSeries out(order);
  for (std::int64_t k = 0; HalfInt(loops * k * k) < order; ++k) {
    out.add_term(loops * k * k, Rational(k == 0 ? 1 : 2));
  }
  return out;
}

BiSeries partial_theta(PartialThetaKind kind, int loops, HalfInt order) {
  require_loops(loops);
  BiSeries out(order);
  if (kind == PartialThetaKind::kL0) {
    out.add_term({0, 0}, Rational(1));
    return out;
  }
  std::int64_t first = kind == PartialThetaKind::kMminus2 ? 1 : 0;
  Rational weight = kind == PartialThetaKind::kP ? Rational(2) : Rational(1);
  if (kind == PartialThetaKind::kP) {
    out.add_term({0, 0}, Rational(1));
    first = 1;
  }
  for (std::int64_t k = first; HalfInt(loops * k * k) < order; ++k) {
    out.add_term({loops * k * k, static_cast<int>(loops * k)}, weight);
  }
  return out;
}

QSeries partial_appell_lerch(const AppellLerchParams& params, HalfInt order) {
  params.validate();
  const int l = params.loops;
  QSeries total(order);
  // Summand n has lowest exponent l n^2, so n with l n^2 >= order cannot
  // contribute below the order.
  for (std::int64_t n = 0; HalfInt(l * n * n) < order; ++n) {
    HalfInt base = l * n * n;
    HalfInt local = order - base;  // order needed before the shift by q^{l n^2}
    const int step = static_cast<int>(l * (2 * n + 1));
    QSeries summand = QSeries::one(local);
    for (std::size_t i = 0; i < params.alphas.size(); ++i) {
      QSeries factor(local);
      factor.add_term(0, Rational(params.alphas[i]));
      factor.add_term(step, Rational(params.betas[i]));
      summand = summand * factor;
    }
    QSeries inverse = geometric(step, local);
    for (int j = 0; j < params.p; ++j) summand = summand * inverse;
    total = total + summand.shifted(base);
  }
  return total;
}

void ConeWindow::validate() const {
  if (!(q_min <= 0 && 0 <= q_max)) throw DomainError("cone window needs q_min <= 0 <= q_max");
  if (x2_max < 0) throw DomainError("cone window needs x2_max >= 0");
}

ConeSeries appell_lerch_cone(const ConeWindow& window) {
  window.validate();
  ConeSeries out{window, {}};
  // v^T B v = (v1 + v2)^2 - v2^2, so for fixed v2 the admissible s = v1 + v2
  // satisfy s^2 <= q_max + v2^2.
  for (std::int64_t v2 = 0; v2 <= window.x2_max; ++v2) {
    std::int64_t bound = static_cast<std::int64_t>(window.q_max) + v2 * v2;
    auto s_max = static_cast<std::int64_t>(std::sqrt(static_cast<double>(bound)));
    while (s_max * s_max > bound) --s_max;
    while ((s_max + 1) * (s_max + 1) <= bound) ++s_max;
    for (std::int64_t s = -s_max; s <= s_max; ++s) {
      std::int64_t v1 = s - v2;
      std::int64_t form = v1 * v1 + 2 * v1 * v2;
      if (form < window.q_min || form > window.q_max) continue;
      out.terms[{static_cast<int>(form), static_cast<int>(v1), static_cast<int>(v2)}] += 1;
    }
  }
  return out;
}

std::vector<Integer> verma_multiplicities(const std::vector<int>& alphas,
                                          const std::vector<int>& betas, int p, int max_k) {
  check_shape(alphas, betas, p);
  if (max_k < 0) throw DomainError("multiplicity cutoff must be non-negative");
  const std::size_t len = static_cast<std::size_t>(max_k) + 1;
  std::vector<Integer> coeffs(len, 0);
  coeffs[0] = 1;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t k = len; k-- > 0;) {
      coeffs[k] = coeffs[k] * alphas[i] + (k > 0 ? coeffs[k - 1] * betas[i] : Integer(0));
    }
  }
  // Division by (1 - y) is a running prefix sum.
  for (int j = 0; j < p; ++j) {
    for (std::size_t k = 1; k < len; ++k) coeffs[k] += coeffs[k - 1];
  }
  return coeffs;
}

}  // namespace casimir
