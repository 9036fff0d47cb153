#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "casimir/matrix.hpp"
#include "casimir/module_expr.hpp"
#include "casimir/rational.hpp"

namespace casimir {

enum class CheckStatus { kPass, kFail, kInconclusive };
std::string to_string(CheckStatus s);

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string coverage;
  /// Location and both values of the first discrepancy; set whenever status is kFail.
  std::string witness;
  double seconds = 0;
  std::optional<std::uint64_t> seed;
  /// Extra labelled values (numerical results, error budgets).
  std::vector<std::pair<std::string, std::string>> facts;

  bool passed() const { return status == CheckStatus::kPass; }
};

/// mt19937_64 with a plain modulo mapping, so sampled configurations are
/// identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish integer in [lo, hi].
  int uniform(int lo, int hi) { return lo + static_cast<int>(engine_() % std::uint64_t(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

/// kappa on P(-2k) and its Jordan form for k = 1..k_max, plus the stated
/// generalized eigenvector f^k v x u_1 + k f^{k-1} v x u_{-1}.
CheckReport check_theorem1(int k_max);
/// Same, reading the matrix for each k from `kappa_source` (harness self-tests).
CheckReport check_theorem1(int k_max, const std::function<RatMatrix(int)>& kappa_source);

/// Traces of L0, M0, M-2 and P against their theta series, and the
/// flat-section/monodromy identity on the first few weight spaces of each.
CheckReport check_table1(int loops, HalfInt order);

struct SampleOptions {
  std::uint64_t seed = 20240501;
  int samples = 5;
  HalfInt order = 15;
  int max_p = 2;
  int max_multiplicity = 2;
};

/// Matrix trace, multiplicity fast path and partial Appell-Lerch sum agree
/// for M0 x M0, M0 x P, P x P to `order` and for sampled (alpha, beta).
CheckReport check_table2(int loops, HalfInt order, const SampleOptions& samples = {});

/// Compares one expression of the form tensor_i (M0^a_i + M-2^b_i + P^c_i)
/// against the closed forms it is expected to equal. Throws
/// UnsupportedInputError for other shapes.
CheckReport check_expression(const ModuleExpr& expr, int loops, HalfInt order);

/// Deformed traces of the four atoms against the partial theta series.
CheckReport check_partial_thetas(int loops, HalfInt order);

/// hwv_count at weight -2k against a_k for k <= max_k.
CheckReport check_multiplicities(const std::vector<int>& alphas, const std::vector<int>& betas,
                                 int p, int max_k);
CheckReport check_multiplicity_samples(int max_k, const SampleOptions& samples = {});

/// trace(tensor F_i) vs trace(tensor F'_i) with F_i = M0^a + M-2^b + P^c and
/// F'_i = M0^{a+c} + M-2^{b+c}.
CheckReport test_conjecture1(const std::vector<int>& alphas, const std::vector<int>& betas,
                             const std::vector<int>& gammas, int loops, HalfInt order);
CheckReport test_conjecture1_samples(int loops, const SampleOptions& samples = {});

struct ZetaCheckParams {
  double s = 2;
  int loops = 1;
  double t_min = 1e-4;
  double t_max = 10;
  int n_max = 200;
  int panels = 60;
  double tolerance = 1e-6;
};

/// Numerical integral of t^{s/2-1} sum_{n>=1} e^{-4 pi l n^2 t} over t > 0
/// compared in modulus with Gamma(s/2) (4 pi l)^{-s/2} zeta(s).
/// Throws DomainError for s <= 1 or malformed parameters.
CheckReport zeta_mellin_check(const ZetaCheckParams& params);

/// Randomized structural properties, `cases` samples each.
enum class InvariantKind {
  kCommutators,
  kWeightPreservation,
  kMuFreeTrace,
  kPowerLaw,
  kFlatSections,
  kSubstitution,
};
std::string to_string(InvariantKind kind);
CheckReport check_invariant(InvariantKind kind, int cases, std::uint64_t seed);

/// Names accepted by run_named_check.
std::vector<std::string> check_names();

/// Overrides for the defaults of a named check.
struct NamedCheckOptions {
  std::optional<int> loops;
  std::optional<HalfInt> order;
  std::optional<std::uint64_t> seed;
};
/// Throws DomainError for an unknown name.
CheckReport run_named_check(const std::string& name, const NamedCheckOptions& options = {});

/// Folds several reports into one: the worst status wins, the first witness is kept.
CheckReport merge_reports(const std::string& name, const std::vector<CheckReport>& parts);

}  // namespace casimir
