#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace casimir {

/// Expression tree of sl(2) modules built from Verma modules M_lambda,
/// irreducible L_n (dimension n+1), the big module P = M_{-1} x L_1, direct
/// sums, tensor products and direct-sum multiplicities (A^m = A + ... + A).
///
/// Values are immutable and cheap to copy (shared nodes).
class ModuleExpr {
 public:
  enum class Kind { kVerma, kIrr, kBigP, kDirectSum, kTensor, kPower };

  static ModuleExpr verma(int lambda);
  static ModuleExpr irr(int n);
  static ModuleExpr big_p();
  static ModuleExpr direct_sum(std::vector<ModuleExpr> parts);
  static ModuleExpr tensor(std::vector<ModuleExpr> legs);
  static ModuleExpr power(ModuleExpr base, int multiplicity);

  Kind kind() const { return node_->kind; }
  /// lambda for kVerma, n for kIrr, multiplicity for kPower.
  int param() const { return node_->param; }
  const std::vector<ModuleExpr>& children() const { return node_->children; }
  bool is_atom() const {
    return kind() == Kind::kVerma || kind() == Kind::kIrr || kind() == Kind::kBigP;
  }

  /// P as the tensor product it stands for.
  ModuleExpr desugared() const;

  /// Highest weight occurring in the module.
  int top_weight() const;
  /// Lowest weight, or nullopt for infinite-dimensional modules.
  std::optional<int> bottom_weight() const;
  bool is_finite_dimensional() const { return bottom_weight().has_value(); }

  /// Canonical text in the expression grammar; re-parses to an identical tree.
  std::string to_string() const;

  friend bool operator==(const ModuleExpr& a, const ModuleExpr& b);

 private:
  struct Node {
    Kind kind;
    int param = 0;
    std::vector<ModuleExpr> children;
  };
  explicit ModuleExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Parses the representation grammar
///   expr := term ("+" term)* ; term := factor ("x" factor)* ;
///   factor := atom ("^" nat)? ; atom := "M" int | "L" nat | "P" | "(" expr ")"
/// Throws ParseError with line/column and the expected-token set.
ModuleExpr parse_rep(const std::string& text);

}  // namespace casimir
