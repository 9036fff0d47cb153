#pragma once

#include <map>
#include <string>
#include <vector>

#include "casimir/matrix.hpp"
#include "casimir/module_expr.hpp"
#include "casimir/rational.hpp"

namespace casimir {

/// Flattened, tree-shaped index of a basis vector of a ModuleExpr.
///
/// Layout mirrors the expression: a Verma atom contributes its depth k
/// (vector f^k v_lambda), L_n contributes j (vector f^j u_n, weight n - 2j),
/// P contributes (k, j) of M_{-1} x L_1, a direct sum or power contributes
/// the branch number followed by the branch's own slots, and a tensor product
/// concatenates its legs.
struct BasisIndex {
  std::vector<int> slots;
  auto operator<=>(const BasisIndex&) const = default;
};

enum class Generator { kE, kF, kH };

using LinearCombination = std::map<BasisIndex, Rational>;

/// Generator action on a basis vector. Verma: h f^k v = (lambda - 2k) f^k v,
/// f f^k v = f^{k+1} v, e f^k v = k(lambda - k + 1) f^{k-1} v; L_n uses the
/// same formulas truncated at j = n; tensors follow the Leibniz rule.
/// Throws IndexError when `v` does not fit the shape of `expr`.
LinearCombination act(Generator g, const ModuleExpr& expr, const BasisIndex& v);
LinearCombination act(Generator g, const ModuleExpr& expr, const LinearCombination& v);

/// kappa = ef + fe, evaluated as a composition of generator actions.
LinearCombination apply_kappa(const ModuleExpr& expr, const LinearCombination& v);

int weight_of(const ModuleExpr& expr, const BasisIndex& v);

/// Canonically ordered basis of the weight-w subspace: lexicographic over the
/// flattened (branch, leg weight) tuple, left to right, ascending. For
/// P(-2k) this yields (f^k v_{-1} x u_1, f^{k-1} v_{-1} x u_{-1}).
std::vector<BasisIndex> weight_space(const ModuleExpr& expr, int w);

/// kappa restricted to one weight subspace; entries(i, j) is the coefficient
/// of basis[i] in kappa(basis[j]).
struct WeightMatrix {
  int weight = 0;
  std::vector<BasisIndex> basis;
  RatMatrix entries;
};

/// Throws DomainError when the weight space is empty.
WeightMatrix kappa_matrix(const ModuleExpr& expr, int w);

/// Matrix of a generator from V(w) to V(w + 2), V(w - 2) or V(w) in canonical bases.
RatMatrix generator_matrix(Generator g, const ModuleExpr& expr, int w);

/// Weight multiplicities for every weight w >= top_weight - 2*depth.
std::map<int, Integer> character(const ModuleExpr& expr, int depth);

/// Multiplicities for weights >= min_weight.
std::map<int, Integer> character_above(const ModuleExpr& expr, int min_weight);

/// dim ker(e : V(w) -> V(w+2)), the number of independent singular vectors of weight w.
Integer hwv_count(const ModuleExpr& expr, int w);

/// Readable label such as "f^2 v_{-1} x u_{1}".
std::string basis_label(const ModuleExpr& expr, const BasisIndex& v);

/// One summand of the distributed form: a tensor product of Verma and
/// irreducible atoms with legs in canonical order, and its multiplicity.
struct PureTensor {
  std::vector<ModuleExpr> atoms;
  Integer multiplicity;

  ModuleExpr as_expr() const;
  bool has_verma_leg() const;
};

/// Distributes tensor products over direct sums and merges isomorphic
/// summands (legs sorted, L0 legs dropped). The module is the direct sum of
/// the returned pure tensors with their multiplicities.
std::vector<PureTensor> pure_tensor_summands(const ModuleExpr& expr);

}  // namespace casimir
