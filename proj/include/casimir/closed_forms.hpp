#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "casimir/rational.hpp"
#include "casimir/series.hpp"

namespace casimir {

/// Parameters of the one-sided Appell-Lerch sum
///   sum_{n>=0} q^{l n^2} prod_{i=0}^{p} (alpha_i + beta_i q^{l(2n+1)}) / (1 - q^{l(2n+1)})^p.
///
/// alpha_i, beta_i are non-negative with alpha_i + beta_i >= 1, so beta_i = 0
/// rows (e.g. M0 x M0) are admitted.
struct AppellLerchParams {
  std::vector<int> alphas;
  std::vector<int> betas;
  int p = 1;
  int loops = 1;

  /// Throws DomainError on shape or sign violations.
  void validate() const;
};

/// Which partial theta series to generate.
enum class PartialThetaKind { kL0, kM0, kMminus2, kP };

std::string to_string(PartialThetaKind kind);
PartialThetaKind parse_partial_theta_kind(const std::string& name);

/// Sum_{k in Z} q^{l k^2} up to `order`.
QSeries jacobi_theta(int loops, HalfInt order);

/// The four deformed traces: 1; sum_{k>=0} q^{lk^2} x^{lk};
/// sum_{k>=1} q^{lk^2} x^{lk}; 1 + 2 sum_{k>=1} q^{lk^2} x^{lk}.
BiSeries partial_theta(PartialThetaKind kind, int loops, HalfInt order);

/// Expanded through geometric series; exact below `order`.
QSeries partial_appell_lerch(const AppellLerchParams& params, HalfInt order);

/// Finite window of the lattice cone {v in Z^2 : v_2 >= 0} for the form
/// v^T B v = v_1^2 + 2 v_1 v_2, B = [[1,1],[1,0]].
struct ConeWindow {
  int q_min = 0;
  int q_max = 0;
  int x2_max = 0;

  void validate() const;
};

/// Key of a three-variable term q^a x1^b x2^c.
struct ConeExponent {
  int q = 0;
  int x1 = 0;
  int x2 = 0;
  auto operator<=>(const ConeExponent&) const = default;
};

/// Windowed part of sum_{v in cone} q^{v^T B v} x1^{v1} x2^{v2}.
struct ConeSeries {
  ConeWindow window;
  std::map<ConeExponent, Integer> terms;
};

ConeSeries appell_lerch_cone(const ConeWindow& window);

/// Coefficients a_0..a_K of prod_i (alpha_i + beta_i y) / (1 - y)^p.
std::vector<Integer> verma_multiplicities(const std::vector<int>& alphas,
                                          const std::vector<int>& betas, int p, int max_k);

}  // namespace casimir
