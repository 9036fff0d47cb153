#include "casimir/module_expr.hpp"

#include <algorithm>

#include "casimir/errors.hpp"

namespace casimir {

ModuleExpr ModuleExpr::verma(int lambda) {
  return ModuleExpr(std::make_shared<const Node>(Node{Kind::kVerma, lambda, {}}));
}

ModuleExpr ModuleExpr::irr(int n) {
  if (n < 0) throw DomainError("L_n needs n >= 0, got " + std::to_string(n));
  return ModuleExpr(std::make_shared<const Node>(Node{Kind::kIrr, n, {}}));
}

ModuleExpr ModuleExpr::big_p() {
  return ModuleExpr(std::make_shared<const Node>(Node{Kind::kBigP, 0, {}}));
}

ModuleExpr ModuleExpr::direct_sum(std::vector<ModuleExpr> parts) {
  if (parts.empty()) throw DomainError("direct sum needs at least one summand");
  return ModuleExpr(std::make_shared<const Node>(Node{Kind::kDirectSum, 0, std::move(parts)}));
}

ModuleExpr ModuleExpr::tensor(std::vector<ModuleExpr> legs) {
  if (legs.empty()) throw DomainError("tensor product needs at least one factor");
  return ModuleExpr(std::make_shared<const Node>(Node{Kind::kTensor, 0, std::move(legs)}));
}

ModuleExpr ModuleExpr::power(ModuleExpr base, int multiplicity) {
  if (multiplicity < 1) {
    throw DomainError("multiplicity must be at least 1, got " + std::to_string(multiplicity));
  }
  return ModuleExpr(
      std::make_shared<const Node>(Node{Kind::kPower, multiplicity, {std::move(base)}}));
}

ModuleExpr ModuleExpr::desugared() const {
  if (kind() != Kind::kBigP) return *this;
  static const ModuleExpr p = tensor({verma(-1), irr(1)});
  return p;
}

int ModuleExpr::top_weight() const {
  switch (kind()) {
    case Kind::kVerma:
    case Kind::kIrr: return param();
    case Kind::kBigP: return 0;
    case Kind::kPower: return children()[0].top_weight();
    case Kind::kDirectSum: {
      int top = children()[0].top_weight();
      for (const auto& c : children()) top = std::max(top, c.top_weight());
      return top;
    }
    case Kind::kTensor: {
      int top = 0;
      for (const auto& c : children()) top += c.top_weight();
      return top;
    }
  }
  return 0;
}

std::optional<int> ModuleExpr::bottom_weight() const {
  switch (kind()) {
    case Kind::kVerma:
    case Kind::kBigP: return std::nullopt;
    case Kind::kIrr: return -param();
    case Kind::kPower: return children()[0].bottom_weight();
    case Kind::kDirectSum: {
      std::optional<int> bottom;
      for (const auto& c : children()) {
        auto b = c.bottom_weight();
        if (!b) return std::nullopt;
        bottom = bottom ? std::min(*bottom, *b) : *b;
      }
      return bottom;
    }
    case Kind::kTensor: {
      int bottom = 0;
      for (const auto& c : children()) {
        auto b = c.bottom_weight();
        if (!b) return std::nullopt;
        bottom += *b;
      }
      return bottom;
    }
  }
  return std::nullopt;
}

std::string ModuleExpr::to_string() const {
  auto wrap = [](const ModuleExpr& e, bool needs) {
    return needs ? "(" + e.to_string() + ")" : e.to_string();
  };
  switch (kind()) {
    case Kind::kVerma: return "M" + std::to_string(param());
    case Kind::kIrr: return "L" + std::to_string(param());
    case Kind::kBigP: return "P";
    case Kind::kPower: {
      const ModuleExpr& base = children()[0];
      return wrap(base, !base.is_atom()) + "^" + std::to_string(param());
    }
    case Kind::kDirectSum: {
      std::string out;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += " + ";
        out += wrap(children()[i], children()[i].kind() == Kind::kDirectSum);
      }
      return out;
    }
    case Kind::kTensor: {
      std::string out;
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += " x ";
        Kind k = children()[i].kind();
        out += wrap(children()[i], k == Kind::kDirectSum || k == Kind::kTensor);
      }
      return out;
    }
  }
  return "";
}

bool operator==(const ModuleExpr& a, const ModuleExpr& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.param() == b.param() && a.children() == b.children();
}

}  // namespace casimir
