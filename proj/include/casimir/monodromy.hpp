#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "casimir/matrix.hpp"
#include "casimir/module_expr.hpp"
#include "casimir/rational.hpp"
#include "casimir/series.hpp"
#include "casimir/sl2_rep.hpp"

namespace casimir {

struct Eigen {
  Integer value;
  int multiplicity = 0;
  int block_size = 0;
  friend bool operator==(const Eigen&, const Eigen&) = default;
};

/// Generalized eigenstructure of kappa on one weight space, eigenvalues ascending.
struct SpectralData {
  int weight = 0;
  std::size_t dimension = 0;
  std::vector<Eigen> eigen;
};

/// Exact spectrum of an integer matrix: characteristic polynomial, integer
/// roots, and Jordan block sizes from ranks of (A - cI)^m.
SpectralData spectral(const RatMatrix& a);
SpectralData spectral(const ModuleExpr& expr, int w);

/// Finite sum of q^a * p_a(mu).
using MonodromyEntry = std::map<HalfInt, MuPoly>;

class MonodromyMatrix {
 public:
  MonodromyMatrix(std::size_t n, int loops) : n_(n), loops_(loops), entries_(n * n) {}

  std::size_t size() const { return n_; }
  int loops() const { return loops_; }
  MonodromyEntry& at(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const MonodromyEntry& at(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  /// Sum of diagonal entries, zero terms dropped.
  MonodromyEntry trace() const;
  /// Coefficient matrix of q^a mu^i.
  RatMatrix coefficient(HalfInt a, int i) const;
  /// Every (q exponent, mu degree) that carries a nonzero coefficient somewhere.
  std::vector<std::pair<HalfInt, int>> support() const;

  /// S^{-1} M S.
  MonodromyMatrix conjugated(const RatMatrix& s) const;

  friend MonodromyMatrix operator*(const MonodromyMatrix& a, const MonodromyMatrix& b);
  friend bool operator==(const MonodromyMatrix&, const MonodromyMatrix&) = default;

 private:
  void normalize();
  std::size_t n_;
  int loops_;
  std::vector<MonodromyEntry> entries_;
};

std::string to_display_string(const MonodromyEntry& e);

/// Spectral projections and nilpotent parts of a matrix with integer spectrum.
struct SpectralDecomposition {
  struct Part {
    Integer eigenvalue;
    RatMatrix projection;  // P_c
    RatMatrix nilpotent;   // N_c = (A - cI) P_c
    int block_size = 0;
  };
  std::vector<Part> parts;
};
SpectralDecomposition spectral_decomposition(const RatMatrix& a);

/// exp(-l mu kappa) on V(w), with q = e^{2 mu}. Throws DomainError for l <= 0.
MonodromyMatrix monodromy_matrix(const ModuleExpr& expr, int w, int loops);
MonodromyMatrix monodromy_of(const RatMatrix& kappa, int loops);

/// Sum over terms of z^{-c hbar} (-hbar ln z)^j / j! * matrix.
struct FlatSectionTerm {
  Integer c;
  int j = 0;
  RatMatrix matrix;
};
struct FlatSectionExpr {
  std::vector<FlatSectionTerm> terms;
};

/// z^{-hbar kappa} on V(w), as a term list.
FlatSectionExpr flat_sections(const ModuleExpr& expr, int w);
FlatSectionExpr flat_sections_of(const RatMatrix& kappa);

/// z d/dz Psi + hbar kappa Psi = 0 and Psi(1) = I, checked coefficientwise.
bool satisfies_flat_section_equation(const FlatSectionExpr& psi, const RatMatrix& kappa);

/// Formal symbols: z^{-c hbar}, q-power, mu-degree, log-degree.
struct FormalKey {
  Integer c;
  HalfInt q;
  int mu = 0;
  int log = 0;
  bool operator<(const FormalKey& o) const {
    if (int r = cmp(c, o.c); r != 0) return r < 0;
    return std::tie(q, mu, log) < std::tie(o.q, o.mu, o.log);
  }
};
using FormalMatrixSum = std::map<FormalKey, RatMatrix>;

/// Psi after ln z -> ln z + 2 pi i, expanded in q = e^{2 mu}, mu = 2 pi i hbar.
FormalMatrixSum continue_around_origin(const FlatSectionExpr& psi);
/// M * Psi in the same formal symbols.
FormalMatrixSum apply(const MonodromyMatrix& m, const FlatSectionExpr& psi);
bool formal_equal(const FormalMatrixSum& a, const FormalMatrixSum& b);

enum class TraceMethod { kLadder, kCharpoly };

/// sum_w tr exp(-l mu kappa)|_{V(w)} below q-order N.
///
/// Weights are visited per pure-tensor summand from its top weight down; at
/// depth d every exponent is asserted to be >= l*d, so the walk stops once
/// l*d >= N. Finite-dimensional summands are enumerated completely.
/// kLadder derives each weight's spectrum from the previous one (f is
/// injective when a Verma leg is present); kCharpoly factors kappa directly.
QSeries trace_series(const ModuleExpr& expr, int loops, HalfInt order,
                     TraceMethod method = TraceMethod::kLadder);

/// Same trace with weight w additionally graded by x^{-l w / 2}.
/// Throws UnsupportedInputError for odd or positive weights.
BiSeries trace_deformed(const ModuleExpr& expr, int loops, HalfInt order,
                        TraceMethod method = TraceMethod::kLadder);

/// sum_{n,k} a_k q^{l(n^2 + (2n+1)k)} from the Verma multiplicities of
/// the tensor product of (M0^alpha_i + M-2^beta_i).
QSeries trace_via_decomposition(const std::vector<int>& alphas, const std::vector<int>& betas,
                                int p, int loops, HalfInt order);

/// The tensor product of (M0^alpha_i + M-2^beta_i [+ P^gamma_i]); zero multiplicities are omitted.
ModuleExpr appell_lerch_module(const std::vector<int>& alphas, const std::vector<int>& betas,
                               const std::vector<int>& gammas = {});

struct JordanForm {
  RatMatrix j;
  RatMatrix s;  // m = s j s^{-1}
};
/// 2x2 Jordan form; a nontrivial block is normalized to off-diagonal 2.
/// Throws UnsupportedInputError for irrational eigenvalues.
JordanForm jordan_2x2(const RatMatrix& m);

}  // namespace casimir
