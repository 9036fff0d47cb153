#include "casimir/series.hpp"

#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(TermMap terms, HalfInt order) : order_(order) {
  for (auto& [e, c] : terms) {
    if (e < order_ && c != 0) terms_.emplace(e, std::move(c));
  }
}

QSeries QSeries::monomial(const Rational& coefficient, HalfInt exponent, HalfInt order) {
  QSeries s(order);
  s.add_term(exponent, coefficient);
  return s;
}

Rational QSeries::coefficient(HalfInt e) const {
  if (e >= order_) {
    throw PrecisionError("coefficient of q^" + e.str() + " requested from a series known below q^" +
                         order_.str());
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

QSeries QSeries::truncated(HalfInt n) const {
  if (n > order_) {
    throw PrecisionError("cannot extend a series of order " + order_.str() + " to order " + n.str());
  }
  QSeries out(n);
  for (const auto& [e, c] : terms_) {
    if (e >= n) break;
    out.terms_.emplace(e, c);
  }
  return out;
}

QSeries QSeries::substitute_power(int l) const {
  if (l < 1) throw DomainError("substitution q -> q^l needs l >= 1");
  QSeries out(order_ * l);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e * l, c);
  return out;
}

QSeries QSeries::shifted(HalfInt shift) const {
  QSeries out(order_ + shift);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + shift, c);
  return out;
}

bool QSeries::has_integer_exponents() const {
  for (const auto& [e, c] : terms_) {
    if (!e.is_integer()) return false;
  }
  return true;
}

void QSeries::add_term(HalfInt e, const Rational& c) {
  if (e >= order_ || c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  QSeries out = a.truncated(min(a.order(), b.order()));
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  QSeries out = a.truncated(min(a.order(), b.order()));
  for (const auto& [e, c] : b.terms()) out.add_term(e, -c);
  return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  // Unknown tail of one factor times the lowest known term of the other
  // lands at order + lowest, which only undercuts min order when a factor
  // carries negative exponents.
  auto lowest = [](const QSeries& s) {
    return s.terms().empty() ? s.order() : s.terms().begin()->first;
  };
  HalfInt order = min(a.order(), b.order());
  order = min(order, a.order() + min(lowest(b), HalfInt(0)));
  order = min(order, b.order() + min(lowest(a), HalfInt(0)));
  QSeries out(order);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      HalfInt e = ea + eb;
      if (e >= order) break;
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

QSeries operator*(const Rational& c, const QSeries& a) {
  QSeries out(a.order());
  for (const auto& [e, v] : a.terms()) out.add_term(e, c * v);
  return out;
}

QSeries geometric(int m, HalfInt order) {
  if (m <= 0) throw DomainError("geometric series needs a positive step, got " + std::to_string(m));
  QSeries out(order);
  for (std::int64_t j = 0; HalfInt(j * m) < order; ++j) out.add_term(j * m, Rational(1));
  return out;
}

bool series_eq(const QSeries& a, const QSeries& b, HalfInt n) {
  return !first_difference(a, b, n).has_value();
}

std::optional<HalfInt> first_difference(const QSeries& a, const QSeries& b, HalfInt n) {
  if (n > a.order() || n > b.order()) {
    throw PrecisionError("comparison to order " + n.str() + " exceeds series orders " +
                         a.order().str() + " and " + b.order().str());
  }
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (true) {
    bool a_live = ia != a.terms().end() && ia->first < n;
    bool b_live = ib != b.terms().end() && ib->first < n;
    if (!a_live && !b_live) return std::nullopt;
    if (!b_live || (a_live && ia->first < ib->first)) return ia->first;
    if (!a_live || ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
}

namespace {

std::string coefficient_text(const Rational& c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
}

void append_term(std::ostringstream& os, bool first, const Rational& c, const std::string& monomial) {
  Rational magnitude = abs(c);
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (monomial.empty()) {
    os << coefficient_text(magnitude);
  } else if (magnitude == 1) {
    os << monomial;
  } else {
    os << coefficient_text(magnitude) << "*" << monomial;
  }
}

std::string power(const char* var, const std::string& exp) {
  if (exp == "0") return "";
  if (exp == "1") return var;
  return std::string(var) + "^" + (exp[0] == '-' || exp.find('/') != std::string::npos ? "(" + exp + ")" : exp);
}

}  // namespace

std::string to_display_string(const QSeries& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    append_term(os, first, c, power("q", e.str()));
    first = false;
  }
  if (!first) os << " + ";
  os << "O(" << power("q", s.order().str()) << ")";
  if (s.order() == 0) os.str("O(1)");
  return os.str();
}

// --------------------------------------------------------------- BiSeries

BiSeries::BiSeries(TermMap terms, HalfInt q_order) : q_order_(q_order) {
  for (auto& [e, c] : terms) add_term(e, c);
}

Rational BiSeries::coefficient(BiExponent e) const {
  if (e.q >= q_order_) {
    throw PrecisionError("coefficient at q^" + e.q.str() + " beyond q-order " + q_order_.str());
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void BiSeries::add_term(BiExponent e, const Rational& c) {
  if (e.x < 0) throw DomainError("negative x-exponent in a two-variable series");
  if (e.q >= q_order_ || c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BiSeries BiSeries::truncated(HalfInt n) const {
  if (n > q_order_) throw PrecisionError("cannot extend a two-variable series beyond its q-order");
  BiSeries out(n);
  for (const auto& [e, c] : terms_) {
    if (e.q < n) out.terms_.emplace(e, c);
  }
  return out;
}

QSeries BiSeries::at_x_equals_one() const {
  QSeries out(q_order_);
  for (const auto& [e, c] : terms_) out.add_term(e.q, c);
  return out;
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  BiSeries out = a.truncated(min(a.q_order(), b.q_order()));
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  HalfInt order = min(a.q_order(), b.q_order());
  BiSeries out(order);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      out.add_term({ea.q + eb.q, ea.x + eb.x}, ca * cb);
    }
  }
  return out;
}

bool series_eq(const BiSeries& a, const BiSeries& b, HalfInt n) {
  return !first_difference(a, b, n).has_value();
}

std::optional<BiExponent> first_difference(const BiSeries& a, const BiSeries& b, HalfInt n) {
  if (n > a.q_order() || n > b.q_order()) {
    throw PrecisionError("comparison to q-order " + n.str() + " exceeds series orders");
  }
  BiSeries ta = a.truncated(n);
  BiSeries tb = b.truncated(n);
  auto ia = ta.terms().begin();
  auto ib = tb.terms().begin();
  while (ia != ta.terms().end() || ib != tb.terms().end()) {
    if (ib == tb.terms().end() || (ia != ta.terms().end() && ia->first < ib->first)) return ia->first;
    if (ia == ta.terms().end() || ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

std::string to_display_string(const BiSeries& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    std::string mono = power("q", e.q.str());
    std::string xs = power("x", std::to_string(e.x));
    if (!mono.empty() && !xs.empty()) mono += "*";
    mono += xs;
    append_term(os, first, c, mono);
    first = false;
  }
  if (!first) os << " + ";
  os << "O(" << power("q", s.q_order().str()) << ")";
  return os.str();
}

// ----------------------------------------------------------------- MuPoly

MuPoly::MuPoly(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  normalize();
}

void MuPoly::normalize() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Rational MuPoly::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coefficients_.size())) return Rational(0);
  return coefficients_[k];
}

MuPoly operator+(const MuPoly& a, const MuPoly& b) {
  std::vector<Rational> c(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(int(i)) + b.coefficient(int(i));
  return MuPoly(std::move(c));
}

MuPoly operator-(const MuPoly& a, const MuPoly& b) { return a + Rational(-1) * b; }

MuPoly operator*(const MuPoly& a, const MuPoly& b) {
  if (a.is_zero() || b.is_zero()) return MuPoly();
  std::vector<Rational> c(a.coefficients().size() + b.coefficients().size() - 1);
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients().size(); ++j) {
      c[i + j] += a.coefficients()[i] * b.coefficients()[j];
    }
  }
  return MuPoly(std::move(c));
}

MuPoly operator*(const Rational& c, const MuPoly& a) {
  std::vector<Rational> out(a.coefficients());
  for (auto& v : out) v *= c;
  return MuPoly(std::move(out));
}

std::string to_display_string(const MuPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const Rational& c = p.coefficients()[k];
    if (c == 0) continue;
    append_term(os, first, c, power("mu", std::to_string(k)));
    first = false;
  }
  return os.str();
}

}  // namespace casimir
