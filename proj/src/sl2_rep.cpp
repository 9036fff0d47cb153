#include "casimir/sl2_rep.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

using Kind = ModuleExpr::Kind;
using Slots = std::vector<int>;
using Terms = std::vector<std::pair<Slots, Rational>>;

[[noreturn]] void bad_index(const ModuleExpr& expr) {
  throw IndexError("basis index does not match the shape of " + expr.to_string());
}

// Number of slots the subexpression occupies starting at `pos`.
std::size_t encoded_length(const ModuleExpr& expr, const Slots& s, std::size_t pos) {
  switch (expr.kind()) {
    case Kind::kVerma:
    case Kind::kIrr: return 1;
    case Kind::kBigP: return 2;
    case Kind::kDirectSum:
    case Kind::kPower: {
      if (pos >= s.size()) bad_index(expr);
      int branch = s[pos];
      int count = expr.kind() == Kind::kPower ? expr.param() : int(expr.children().size());
      if (branch < 0 || branch >= count) bad_index(expr);
      const ModuleExpr& child =
          expr.kind() == Kind::kPower ? expr.children()[0] : expr.children()[branch];
      return 1 + encoded_length(child, s, pos + 1);
    }
    case Kind::kTensor: {
      std::size_t len = 0;
      for (const auto& leg : expr.children()) len += encoded_length(leg, s, pos + len);
      return len;
    }
  }
  return 0;
}

void check_atom_slot(const ModuleExpr& expr, int k) {
  if (k < 0) bad_index(expr);
  if (expr.kind() == Kind::kIrr && k > expr.param()) bad_index(expr);
}

int weight_at(const ModuleExpr& expr, const Slots& s, std::size_t pos) {
  if (pos >= s.size()) bad_index(expr);
  switch (expr.kind()) {
    case Kind::kVerma:
    case Kind::kIrr:
      check_atom_slot(expr, s[pos]);
      return expr.param() - 2 * s[pos];
    case Kind::kBigP: return weight_at(expr.desugared(), s, pos);
    case Kind::kDirectSum:
    case Kind::kPower: {
      encoded_length(expr, s, pos);  // validates the branch
      const ModuleExpr& child =
          expr.kind() == Kind::kPower ? expr.children()[0] : expr.children()[s[pos]];
      return weight_at(child, s, pos + 1);
    }
    case Kind::kTensor: {
      int w = 0;
      std::size_t offset = pos;
      for (const auto& leg : expr.children()) {
        w += weight_at(leg, s, offset);
        offset += encoded_length(leg, s, offset);
      }
      return w;
    }
  }
  return 0;
}

// Action on the subexpression at [pos, pos + len): returns replacement slot
// ranges (same length) with coefficients.
Terms act_at(Generator g, const ModuleExpr& expr, const Slots& s, std::size_t pos) {
  switch (expr.kind()) {
    case Kind::kVerma:
    case Kind::kIrr: {
      const int top = expr.param();
      const int k = s[pos];
      check_atom_slot(expr, k);
      switch (g) {
        case Generator::kH: {
          if (top - 2 * k == 0) return {};
          return {{{k}, Rational(top - 2 * k)}};
        }
        case Generator::kF:
          if (expr.kind() == Kind::kIrr && k == top) return {};
          return {{{k + 1}, Rational(1)}};
        case Generator::kE: {
          long coeff = static_cast<long>(k) * (top - k + 1);
          if (k == 0 || coeff == 0) return {};
          return {{{k - 1}, Rational(coeff)}};
        }
      }
      return {};
    }
    case Kind::kBigP: return act_at(g, expr.desugared(), s, pos);
    case Kind::kDirectSum:
    case Kind::kPower: {
      encoded_length(expr, s, pos);
      const int branch = s[pos];
      const ModuleExpr& child =
          expr.kind() == Kind::kPower ? expr.children()[0] : expr.children()[branch];
      Terms inner = act_at(g, child, s, pos + 1);
      for (auto& [slots, c] : inner) slots.insert(slots.begin(), branch);
      return inner;
    }
    case Kind::kTensor: {
      const std::size_t total = encoded_length(expr, s, pos);
      Terms out;
      std::size_t offset = pos;
      for (const auto& leg : expr.children()) {
        const std::size_t len = encoded_length(leg, s, offset);
        for (auto& [leg_slots, c] : act_at(g, leg, s, offset)) {
          Slots full(s.begin() + long(pos), s.begin() + long(pos + total));
          std::copy(leg_slots.begin(), leg_slots.end(), full.begin() + long(offset - pos));
          out.emplace_back(std::move(full), std::move(c));
        }
        offset += len;
      }
      return out;
    }
  }
  return {};
}

// All slot vectors of the subexpression with weight exactly w.
std::vector<Slots> enumerate(const ModuleExpr& expr, int w) {
  switch (expr.kind()) {
    case Kind::kVerma:
    case Kind::kIrr: {
      const int top = expr.param();
      if (w > top || (top - w) % 2 != 0) return {};
      if (expr.kind() == Kind::kIrr && w < -top) return {};
      return {{(top - w) / 2}};
    }
    case Kind::kBigP: return enumerate(expr.desugared(), w);
    case Kind::kDirectSum:
    case Kind::kPower: {
      std::vector<Slots> out;
      int count = expr.kind() == Kind::kPower ? expr.param() : int(expr.children().size());
      for (int b = 0; b < count; ++b) {
        const ModuleExpr& child =
            expr.kind() == Kind::kPower ? expr.children()[0] : expr.children()[b];
        for (auto& inner : enumerate(child, w)) {
          inner.insert(inner.begin(), b);
          out.push_back(std::move(inner));
        }
      }
      return out;
    }
    case Kind::kTensor: {
      const auto& legs = expr.children();
      std::vector<int> tops(legs.size());
      for (std::size_t i = 0; i < legs.size(); ++i) tops[i] = legs[i].top_weight();
      std::vector<Slots> out;
      // Recursive distribution of w over the legs.
      std::vector<int> suffix_top(legs.size() + 1, 0);
      for (std::size_t i = legs.size(); i-- > 0;) suffix_top[i] = suffix_top[i + 1] + tops[i];
      std::function<void(std::size_t, int, Slots&)> rec = [&](std::size_t i, int rest, Slots& acc) {
        if (i + 1 == legs.size()) {
          for (auto& tail : enumerate(legs[i], rest)) {
            Slots full = acc;
            full.insert(full.end(), tail.begin(), tail.end());
            out.push_back(std::move(full));
          }
          return;
        }
        int lo = rest - suffix_top[i + 1];
        if (auto b = legs[i].bottom_weight()) lo = std::max(lo, *b);
        for (int wi = lo; wi <= tops[i]; ++wi) {
          for (auto& part : enumerate(legs[i], wi)) {
            std::size_t mark = acc.size();
            acc.insert(acc.end(), part.begin(), part.end());
            rec(i + 1, rest - wi, acc);
            acc.resize(mark);
          }
        }
      };
      Slots acc;
      rec(0, w, acc);
      return out;
    }
  }
  return {};
}

// Sort key: branch numbers and leg weights in slot order.
void sort_key(const ModuleExpr& expr, const Slots& s, std::size_t pos, std::vector<int>& key) {
  switch (expr.kind()) {
    case Kind::kVerma:
    case Kind::kIrr: key.push_back(expr.param() - 2 * s[pos]); return;
    case Kind::kBigP: sort_key(expr.desugared(), s, pos, key); return;
    case Kind::kDirectSum:
    case Kind::kPower: {
      key.push_back(s[pos]);
      const ModuleExpr& child =
          expr.kind() == Kind::kPower ? expr.children()[0] : expr.children()[s[pos]];
      sort_key(child, s, pos + 1, key);
      return;
    }
    case Kind::kTensor: {
      std::size_t offset = pos;
      for (const auto& leg : expr.children()) {
        sort_key(leg, s, offset, key);
        offset += encoded_length(leg, s, offset);
      }
      return;
    }
  }
}

void label_at(const ModuleExpr& expr, const Slots& s, std::size_t pos, std::string& out) {
  auto lowering = [](int k) {
    if (k == 0) return std::string();
    if (k == 1) return std::string("f ");
    return "f^" + std::to_string(k) + " ";
  };
  switch (expr.kind()) {
    case Kind::kVerma:
      out += lowering(s[pos]) + "v_{" + std::to_string(expr.param()) + "}";
      return;
    case Kind::kIrr:
      if (expr.param() == 1) {
        out += s[pos] == 0 ? "u_{1}" : "u_{-1}";
      } else {
        out += lowering(s[pos]) + "u_{" + std::to_string(expr.param()) + "}";
      }
      return;
    case Kind::kBigP: label_at(expr.desugared(), s, pos, out); return;
    case Kind::kDirectSum:
    case Kind::kPower: {
      out += "[" + std::to_string(s[pos]) + "] ";
      const ModuleExpr& child =
          expr.kind() == Kind::kPower ? expr.children()[0] : expr.children()[s[pos]];
      label_at(child, s, pos + 1, out);
      return;
    }
    case Kind::kTensor: {
      std::size_t offset = pos;
      bool first = true;
      for (const auto& leg : expr.children()) {
        if (!first) out += " x ";
        first = false;
        bool wrap = leg.kind() == Kind::kDirectSum || leg.kind() == Kind::kPower;
        if (wrap) out += "(";
        label_at(leg, s, offset, out);
        if (wrap) out += ")";
        offset += encoded_length(leg, s, offset);
      }
      return;
    }
  }
}

void validate_index(const ModuleExpr& expr, const BasisIndex& v) {
  if (encoded_length(expr, v.slots, 0) != v.slots.size()) bad_index(expr);
  weight_at(expr, v.slots, 0);
}

}  // namespace

LinearCombination act(Generator g, const ModuleExpr& expr, const BasisIndex& v) {
  validate_index(expr, v);
  LinearCombination out;
  for (auto& [slots, c] : act_at(g, expr, v.slots, 0)) {
    auto [it, inserted] = out.emplace(BasisIndex{std::move(slots)}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

LinearCombination act(Generator g, const ModuleExpr& expr, const LinearCombination& v) {
  LinearCombination out;
  for (const auto& [idx, c] : v) {
    for (const auto& [target, coeff] : act(g, expr, idx)) {
      Rational add = c * coeff;
      auto [it, inserted] = out.emplace(target, add);
      if (!inserted) {
        it->second += add;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

LinearCombination apply_kappa(const ModuleExpr& expr, const LinearCombination& v) {
  LinearCombination ef = act(Generator::kE, expr, act(Generator::kF, expr, v));
  LinearCombination fe = act(Generator::kF, expr, act(Generator::kE, expr, v));
  for (const auto& [idx, c] : fe) {
    auto [it, inserted] = ef.emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) ef.erase(it);
    }
  }
  return ef;
}

int weight_of(const ModuleExpr& expr, const BasisIndex& v) {
  validate_index(expr, v);
  return weight_at(expr, v.slots, 0);
}

std::vector<BasisIndex> weight_space(const ModuleExpr& expr, int w) {
  std::vector<std::pair<std::vector<int>, BasisIndex>> keyed;
  for (auto& slots : enumerate(expr, w)) {
    std::vector<int> key;
    sort_key(expr, slots, 0, key);
    keyed.emplace_back(std::move(key), BasisIndex{std::move(slots)});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BasisIndex> out;
  out.reserve(keyed.size());
  for (auto& [key, idx] : keyed) out.push_back(std::move(idx));
  return out;
}

namespace {

RatMatrix matrix_between(const std::vector<BasisIndex>& from, const std::vector<BasisIndex>& to,
                         const std::function<LinearCombination(const BasisIndex&)>& op) {
  std::map<BasisIndex, std::size_t> row_of;
  for (std::size_t i = 0; i < to.size(); ++i) row_of.emplace(to[i], i);
  RatMatrix m(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    for (const auto& [idx, c] : op(from[j])) {
      auto it = row_of.find(idx);
      if (it == row_of.end()) throw InvariantError("operator left the target weight space");
      m(it->second, j) = c;
    }
  }
  return m;
}

}  // namespace

WeightMatrix kappa_matrix(const ModuleExpr& expr, int w) {
  std::vector<BasisIndex> basis = weight_space(expr, w);
  if (basis.empty()) {
    throw DomainError("weight " + std::to_string(w) + " does not occur in " + expr.to_string());
  }
  RatMatrix m = matrix_between(basis, basis, [&](const BasisIndex& v) {
    return apply_kappa(expr, LinearCombination{{v, Rational(1)}});
  });
  return {w, std::move(basis), std::move(m)};
}

RatMatrix generator_matrix(Generator g, const ModuleExpr& expr, int w) {
  int shift = g == Generator::kE ? 2 : g == Generator::kF ? -2 : 0;
  return matrix_between(weight_space(expr, w), weight_space(expr, w + shift),
                        [&](const BasisIndex& v) { return act(g, expr, v); });
}

std::map<int, Integer> character_above(const ModuleExpr& expr, int min_weight) {
  std::map<int, Integer> out;
  switch (expr.kind()) {
    case Kind::kVerma:
      for (int w = expr.param(); w >= min_weight; w -= 2) out[w] = 1;
      return out;
    case Kind::kIrr:
      for (int w = expr.param(); w >= std::max(min_weight, -expr.param()); w -= 2) out[w] = 1;
      return out;
    case Kind::kBigP: return character_above(expr.desugared(), min_weight);
    case Kind::kPower:
      for (auto& [w, d] : character_above(expr.children()[0], min_weight)) out[w] = d * expr.param();
      return out;
    case Kind::kDirectSum:
      for (const auto& c : expr.children()) {
        for (auto& [w, d] : character_above(c, min_weight)) out[w] += d;
      }
      return out;
    case Kind::kTensor: {
      const auto& legs = expr.children();
      int total_top = expr.top_weight();
      out[0] = 1;
      int acc_top = 0;
      for (const auto& leg : legs) {
        // Weights of this leg below min_weight - (tops of the other legs) cannot
        // contribute above min_weight.
        int leg_min = min_weight - (total_top - leg.top_weight());
        std::map<int, Integer> leg_char = character_above(leg, leg_min);
        std::map<int, Integer> next;
        for (const auto& [wa, da] : out) {
          for (const auto& [wb, db] : leg_char) {
            next[wa + wb] += da * db;
          }
        }
        acc_top += leg.top_weight();
        // Drop partial weights that can no longer reach min_weight.
        int remaining_top = total_top - acc_top;
        for (auto it = next.begin(); it != next.end();) {
          it = (it->first + remaining_top < min_weight) ? next.erase(it) : std::next(it);
        }
        out = std::move(next);
      }
      for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
      }
      return out;
    }
  }
  return out;
}

std::map<int, Integer> character(const ModuleExpr& expr, int depth) {
  if (depth < 0) throw DomainError("character depth must be non-negative");
  return character_above(expr, expr.top_weight() - 2 * depth);
}

Integer hwv_count(const ModuleExpr& expr, int w) {
  // e preserves every direct summand, so the kernel splits over summands.
  Integer total = 0;
  for (const auto& summand : pure_tensor_summands(expr)) {
    ModuleExpr t = summand.as_expr();
    std::size_t dim = weight_space(t, w).size();
    if (dim == 0) continue;
    std::size_t rank = generator_matrix(Generator::kE, t, w).rank();
    total += summand.multiplicity * static_cast<long>(dim - rank);
  }
  return total;
}

std::string basis_label(const ModuleExpr& expr, const BasisIndex& v) {
  validate_index(expr, v);
  std::string out;
  label_at(expr, v.slots, 0, out);
  return out;
}

ModuleExpr PureTensor::as_expr() const {
  return atoms.size() == 1 ? atoms[0] : ModuleExpr::tensor(atoms);
}

bool PureTensor::has_verma_leg() const {
  return std::any_of(atoms.begin(), atoms.end(),
                     [](const ModuleExpr& a) { return a.kind() == Kind::kVerma; });
}

namespace {

using Summands = std::vector<std::pair<std::vector<ModuleExpr>, Integer>>;

Summands distribute(const ModuleExpr& expr) {
  switch (expr.kind()) {
    case Kind::kVerma:
    case Kind::kIrr: return {{{expr}, Integer(1)}};
    case Kind::kBigP: return {{{ModuleExpr::verma(-1), ModuleExpr::irr(1)}, Integer(1)}};
    case Kind::kPower: {
      Summands inner = distribute(expr.children()[0]);
      for (auto& [atoms, m] : inner) m *= expr.param();
      return inner;
    }
    case Kind::kDirectSum: {
      Summands out;
      for (const auto& c : expr.children()) {
        Summands part = distribute(c);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case Kind::kTensor: {
      Summands acc{{{}, Integer(1)}};
      for (const auto& leg : expr.children()) {
        Summands part = distribute(leg);
        Summands next;
        for (const auto& [a_atoms, a_m] : acc) {
          for (const auto& [b_atoms, b_m] : part) {
            std::vector<ModuleExpr> atoms = a_atoms;
            atoms.insert(atoms.end(), b_atoms.begin(), b_atoms.end());
            next.emplace_back(std::move(atoms), a_m * b_m);
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

// Vermas first (highest lambda first), then irreducibles by dimension.
std::pair<int, int> atom_rank(const ModuleExpr& a) {
  return a.kind() == Kind::kVerma ? std::pair{0, -a.param()} : std::pair{1, a.param()};
}

}  // namespace

std::vector<PureTensor> pure_tensor_summands(const ModuleExpr& expr) {
  std::map<std::vector<std::pair<int, int>>, PureTensor> merged;
  for (auto& [atoms, m] : distribute(expr)) {
    std::vector<ModuleExpr> kept;
    for (auto& a : atoms) {
      if (!(a.kind() == Kind::kIrr && a.param() == 0)) kept.push_back(a);
    }
    if (kept.empty()) kept.push_back(ModuleExpr::irr(0));
    std::sort(kept.begin(), kept.end(),
              [](const ModuleExpr& a, const ModuleExpr& b) { return atom_rank(a) < atom_rank(b); });
    std::vector<std::pair<int, int>> key;
    for (const auto& a : kept) key.push_back(atom_rank(a));
    auto [it, inserted] = merged.try_emplace(key, PureTensor{kept, Integer(0)});
    it->second.multiplicity += m;
  }
  std::vector<PureTensor> out;
  for (auto& [key, t] : merged) out.push_back(std::move(t));
  return out;
}

}  // namespace casimir
