#include "casimir/monodromy.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_loops(int loops) {
  if (loops <= 0) throw DomainError("loop count must be positive, got " + std::to_string(loops));
}

long small(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw UnsupportedInputError(std::string(what) + " out of machine range");
  return z.get_si();
}

RatMatrix shifted_identity(const RatMatrix& a, const Integer& c) {
  RatMatrix b = a;
  for (std::size_t i = 0; i < a.rows(); ++i) b(i, i) -= Rational(c);
  return b;
}

std::vector<std::pair<Integer, int>> eigenvalues(const RatMatrix& a) {
  if (!a.is_square()) throw DomainError("kappa matrix must be square");
  if (!a.is_integral()) throw UnsupportedInputError("kappa matrix has non-integer entries");
  auto roots = integer_roots(characteristic_polynomial(a), gershgorin_radius(a));
  int total = 0;
  for (const auto& [c, m] : roots) total += m;
  if (static_cast<std::size_t>(total) != a.rows()) {
    throw InvariantError("eigenvalue multiplicities do not add up to the dimension");
  }
  return roots;
}

}  // namespace

SpectralData spectral(const RatMatrix& a) {
  SpectralData out;
  out.dimension = a.rows();
  const std::size_t n = a.rows();
  for (const auto& [c, m] : eigenvalues(a)) {
    RatMatrix b = shifted_identity(a, c);
    RatMatrix power = b;
    int s = 1;
    while (power.rank() != n - static_cast<std::size_t>(m)) {
      power = power * b;
      if (++s > m) throw InvariantError("generalized eigenspace rank did not stabilize");
    }
    out.eigen.push_back({c, m, s});
  }
  return out;
}

SpectralData spectral(const ModuleExpr& expr, int w) {
  SpectralData out = spectral(kappa_matrix(expr, w).entries);
  out.weight = w;
  return out;
}

// ---- monodromy matrices ----

MonodromyEntry MonodromyMatrix::trace() const {
  MonodromyEntry out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (const auto& [a, p] : at(i, i)) out[a] = out[a] + p;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

RatMatrix MonodromyMatrix::coefficient(HalfInt a, int i) const {
  RatMatrix out(n_, n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      const auto& e = at(r, c);
      if (auto it = e.find(a); it != e.end()) out(r, c) = it->second.coefficient(i);
    }
  }
  return out;
}

std::vector<std::pair<HalfInt, int>> MonodromyMatrix::support() const {
  std::vector<std::pair<HalfInt, int>> out;
  for (const auto& e : entries_) {
    for (const auto& [a, p] : e) {
      for (int i = 0; i <= p.degree(); ++i) {
        if (p.coefficient(i) != 0) out.emplace_back(a, i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void MonodromyMatrix::normalize() {
  for (auto& e : entries_) std::erase_if(e, [](const auto& kv) { return kv.second.is_zero(); });
}

MonodromyMatrix MonodromyMatrix::conjugated(const RatMatrix& s) const {
  RatMatrix s_inv = s.inverse();
  MonodromyMatrix out(n_, loops_);
  for (const auto& [a, i] : support()) {
    RatMatrix c = s_inv * coefficient(a, i) * s;
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t col = 0; col < n_; ++col) {
        if (c(r, col) == 0) continue;
        std::vector<Rational> coeffs(static_cast<std::size_t>(i) + 1);
        coeffs[static_cast<std::size_t>(i)] = c(r, col);
        auto& slot = out.at(r, col)[a];
        slot = slot + MuPoly(std::move(coeffs));
      }
    }
  }
  out.normalize();
  return out;
}

MonodromyMatrix operator*(const MonodromyMatrix& a, const MonodromyMatrix& b) {
  if (a.n_ != b.n_) throw DomainError("monodromy matrix sizes differ");
  MonodromyMatrix out(a.n_, a.loops_ + b.loops_);
  for (std::size_t r = 0; r < a.n_; ++r) {
    for (std::size_t c = 0; c < a.n_; ++c) {
      auto& target = out.at(r, c);
      for (std::size_t k = 0; k < a.n_; ++k) {
        for (const auto& [ea, pa] : a.at(r, k)) {
          for (const auto& [eb, pb] : b.at(k, c)) {
            auto& slot = target[ea + eb];
            slot = slot + pa * pb;
          }
        }
      }
    }
  }
  out.normalize();
  return out;
}

std::string to_display_string(const MonodromyEntry& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [a, p] : e) {
    if (!out.empty()) out += " + ";
    std::string poly = to_display_string(p);
    std::string qpart = a == HalfInt(0) ? "" : a == HalfInt(1) ? "q" : "q^" + a.str();
    if (qpart.empty()) {
      out += poly;
    } else if (poly == "1") {
      out += qpart;
    } else {
      out += qpart + "*(" + poly + ")";
    }
  }
  return out;
}

SpectralDecomposition spectral_decomposition(const RatMatrix& a) {
  const std::size_t n = a.rows();
  auto roots = eigenvalues(a);
  std::vector<RatMatrix> bases;
  for (const auto& [c, m] : roots) {
    RatMatrix k = shifted_identity(a, c).power(static_cast<unsigned>(m)).kernel();
    if (k.cols() != static_cast<std::size_t>(m)) {
      throw InvariantError("generalized eigenspace has the wrong dimension");
    }
    bases.push_back(std::move(k));
  }
  RatMatrix s_inv = RatMatrix::hstack(bases).inverse();
  SpectralDecomposition out;
  std::size_t offset = 0;
  for (std::size_t idx = 0; idx < roots.size(); ++idx) {
    const auto& [c, m] = roots[idx];
    RatMatrix rows(static_cast<std::size_t>(m), n);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      for (std::size_t col = 0; col < n; ++col) rows(r, col) = s_inv(offset + r, col);
    }
    offset += static_cast<std::size_t>(m);
    RatMatrix projection = bases[idx] * rows;
    RatMatrix nilpotent = shifted_identity(a, c) * projection;
    int block = 1;
    for (RatMatrix p = nilpotent; !p.is_zero(); p = p * nilpotent) ++block;
    out.parts.push_back({c, std::move(projection), std::move(nilpotent), block});
  }
  return out;
}

MonodromyMatrix monodromy_of(const RatMatrix& kappa, int loops) {
  require_loops(loops);
  const std::size_t n = kappa.rows();
  MonodromyMatrix out(n, loops);
  for (const auto& part : spectral_decomposition(kappa).parts) {
    const HalfInt a = HalfInt::from_twice(-loops * small(part.eigenvalue, "eigenvalue"));
    RatMatrix power = part.projection;
    for (int j = 0; j < part.block_size; ++j) {
      // (-l mu)^j / j!
      Rational scale = Rational(j % 2 == 0 ? 1 : -1) / factorial(static_cast<unsigned>(j));
      for (int t = 0; t < j; ++t) scale *= loops;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          if (power(r, c) == 0) continue;
          std::vector<Rational> coeffs(static_cast<std::size_t>(j) + 1);
          coeffs[static_cast<std::size_t>(j)] = scale * power(r, c);
          auto& slot = out.at(r, c)[a];
          slot = slot + MuPoly(std::move(coeffs));
        }
      }
      power = part.nilpotent * power;
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      std::erase_if(out.at(r, c), [](const auto& kv) { return kv.second.is_zero(); });
    }
  }
  return out;
}

MonodromyMatrix monodromy_matrix(const ModuleExpr& expr, int w, int loops) {
  require_loops(loops);
  return monodromy_of(kappa_matrix(expr, w).entries, loops);
}

// ---- flat sections ----

FlatSectionExpr flat_sections_of(const RatMatrix& kappa) {
  FlatSectionExpr out;
  for (const auto& part : spectral_decomposition(kappa).parts) {
    RatMatrix power = part.projection;
    for (int j = 0; j < part.block_size; ++j) {
      out.terms.push_back({part.eigenvalue, j, power});
      power = part.nilpotent * power;
    }
  }
  return out;
}

FlatSectionExpr flat_sections(const ModuleExpr& expr, int w) {
  return flat_sections_of(kappa_matrix(expr, w).entries);
}

bool satisfies_flat_section_equation(const FlatSectionExpr& psi, const RatMatrix& kappa) {
  const std::size_t n = kappa.rows();
  std::map<Integer, std::map<int, RatMatrix>, std::less<>> by_c;
  for (const auto& t : psi.terms) {
    if (t.matrix.rows() != n || t.matrix.cols() != n) return false;
    auto& slot = by_c[t.c];
    if (!slot.emplace(t.j, t.matrix).second) return false;
  }
  RatMatrix initial(n, n);
  for (auto& [c, terms] : by_c) {
    if (auto it = terms.find(0); it != terms.end()) initial = initial + it->second;
    // Coefficient of z^{-c hbar} L^j / j! (L = -hbar ln z) in z Psi' + hbar kappa Psi,
    // divided by hbar: (kappa - c) A_j - A_{j+1}.
    int top = terms.rbegin()->first;
    for (int j = 0; j <= top; ++j) {
      RatMatrix a = terms.count(j) ? terms.at(j) : RatMatrix(n, n);
      RatMatrix next = terms.count(j + 1) ? terms.at(j + 1) : RatMatrix(n, n);
      if (!(shifted_identity(kappa, c) * a - next).is_zero()) return false;
    }
  }
  return initial == RatMatrix::identity(n);
}

namespace {

void accumulate(FormalMatrixSum& sum, const FormalKey& key, const RatMatrix& m) {
  auto [it, inserted] = sum.emplace(key, m);
  if (!inserted) it->second = it->second + m;
}

}  // namespace

FormalMatrixSum continue_around_origin(const FlatSectionExpr& psi) {
  FormalMatrixSum out;
  for (const auto& t : psi.terms) {
    // z^{-c hbar} picks up e^{-c mu} = q^{-c/2}; L -> L - mu.
    HalfInt a = HalfInt::from_twice(-small(t.c, "eigenvalue"));
    for (int i = 0; i <= t.j; ++i) {
      Rational scale = Rational(i % 2 == 0 ? 1 : -1) / factorial(static_cast<unsigned>(i));
      accumulate(out, {t.c, a, i, t.j - i}, scale * t.matrix);
    }
  }
  return out;
}

FormalMatrixSum apply(const MonodromyMatrix& m, const FlatSectionExpr& psi) {
  FormalMatrixSum out;
  for (const auto& [a, i] : m.support()) {
    RatMatrix coeff = m.coefficient(a, i);
    for (const auto& t : psi.terms) accumulate(out, {t.c, a, i, t.j}, coeff * t.matrix);
  }
  return out;
}

bool formal_equal(const FormalMatrixSum& a, const FormalMatrixSum& b) {
  auto strip = [](const FormalMatrixSum& s) {
    std::vector<std::pair<FormalKey, const RatMatrix*>> out;
    for (const auto& [k, m] : s) {
      if (!m.is_zero()) out.emplace_back(k, &m);
    }
    return out;
  };
  auto sa = strip(a);
  auto sb = strip(b);
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].first < sb[i].first || sb[i].first < sa[i].first) return false;
    if (!(*sa[i].second == *sb[i].second)) return false;
  }
  return true;
}

// ---- traces ----

namespace {

using Multiset = std::map<Integer, Integer>;
// Receives (weight, eigenvalue, count).
using SpectrumSink = std::function<void(int, const Integer&, const Integer&)>;

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CASIMIR_TRACE_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

Multiset charpoly_spectrum(const ModuleExpr& t, int w) {
  Multiset out;
  if (weight_space(t, w).empty()) return out;
  for (const auto& [c, m] : eigenvalues(kappa_matrix(t, w).entries)) out[c] += m;
  return out;
}

void check_bound(const Multiset& spectrum, int depth, int w) {
  for (const auto& [c, count] : spectrum) {
    if (-c < 2 * depth) {
      throw InvariantError("eigenvalue " + to_string(c) + " at weight " + std::to_string(w) +
                           " violates the cutoff bound -c/2 >= depth " + std::to_string(depth));
    }
  }
}

void walk_pure_tensor(const PureTensor& summand, int loops, HalfInt order, TraceMethod method,
                      const SpectrumSink& sink) {
  ModuleExpr t = summand.as_expr();
  const int top = t.top_weight();
  auto emit = [&](int w, const Multiset& spectrum) {
    for (const auto& [c, count] : spectrum) sink(w, c, count * summand.multiplicity);
  };

  if (auto bottom = t.bottom_weight()) {
    for (int w = top; w >= *bottom; w -= 2) emit(w, charpoly_spectrum(t, w));
    return;
  }

  // Depths d with l*d < order.
  int max_depth = -1;
  while (HalfInt(static_cast<std::int64_t>(loops) * (max_depth + 1)) < order) ++max_depth;
  if (max_depth < 0) return;

  if (method == TraceMethod::kLadder) {
    if (!summand.has_verma_leg()) throw InvariantError("ladder needs a Verma leg");
    auto dims = character_above(t, top - 2 * max_depth);
    Multiset spectrum;
    Integer previous_dim = 0;
    for (int d = 0; d <= max_depth; ++d) {
      const int w = top - 2 * d;
      // kappa f = f (kappa + 2h - 2): the image of V(w+2) carries the shifted
      // spectrum, the cokernel of f carries kappa = h = w.
      Multiset next;
      for (const auto& [c, count] : spectrum) next[c + 2 * w + 2] += count;
      Integer dim = dims.count(w) ? dims.at(w) : Integer(0);
      Integer fresh = dim - previous_dim;
      if (fresh < 0) throw InvariantError("f is not injective at weight " + std::to_string(w));
      if (fresh > 0) next[w] += fresh;
      spectrum = std::move(next);
      previous_dim = dim;
      check_bound(spectrum, d, w);
      emit(w, spectrum);
    }
    return;
  }

  std::vector<Multiset> spectra(static_cast<std::size_t>(max_depth) + 1);
  std::atomic<int> next_depth{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int d = next_depth++; d <= max_depth; d = next_depth++) {
      try {
        spectra[static_cast<std::size_t>(d)] = charpoly_spectrum(t, top - 2 * d);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned n_workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(max_depth) + 1);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (int d = 0; d <= max_depth; ++d) {
    check_bound(spectra[static_cast<std::size_t>(d)], d, top - 2 * d);
    emit(top - 2 * d, spectra[static_cast<std::size_t>(d)]);
  }
}

void walk(const ModuleExpr& expr, int loops, HalfInt order, TraceMethod method,
          const SpectrumSink& sink) {
  require_loops(loops);
  for (const auto& summand : pure_tensor_summands(expr)) {
    walk_pure_tensor(summand, loops, order, method, sink);
  }
}

HalfInt exponent(const Integer& c, int loops) {
  return HalfInt::from_twice(-static_cast<std::int64_t>(loops) * small(c, "eigenvalue"));
}

}  // namespace

QSeries trace_series(const ModuleExpr& expr, int loops, HalfInt order, TraceMethod method) {
  QSeries out(order);
  walk(expr, loops, order, method, [&](int, const Integer& c, const Integer& count) {
    out.add_term(exponent(c, loops), Rational(count));
  });
  return out;
}

BiSeries trace_deformed(const ModuleExpr& expr, int loops, HalfInt order, TraceMethod method) {
  BiSeries out(order);
  walk(expr, loops, order, method, [&](int w, const Integer& c, const Integer& count) {
    if (w % 2 != 0) {
      throw UnsupportedInputError("deformed trace needs even weights, found " + std::to_string(w));
    }
    if (w > 0) {
      throw UnsupportedInputError("deformed trace needs non-positive weights, found " +
                                  std::to_string(w));
    }
    out.add_term({exponent(c, loops), -loops * w / 2}, Rational(count));
  });
  return out;
}

QSeries trace_via_decomposition(const std::vector<int>& alphas, const std::vector<int>& betas,
                                int p, int loops, HalfInt order) {
  AppellLerchParams{alphas, betas, p, loops}.validate();
  QSeries out(order);
  int max_k = 0;
  while (HalfInt(static_cast<std::int64_t>(loops) * (max_k + 1)) < order) ++max_k;
  auto a = verma_multiplicities(alphas, betas, p, max_k);
  // M_{-2k} contributes q^{l(n^2 + (2n+1)k)} at depth n.
  for (std::int64_t n = 0; HalfInt(loops * n * n) < order; ++n) {
    for (std::int64_t k = 0; k <= max_k; ++k) {
      HalfInt e = HalfInt(loops * (n * n + (2 * n + 1) * k));
      if (!(e < order)) break;
      out.add_term(e, Rational(a[static_cast<std::size_t>(k)]));
    }
  }
  return out;
}

ModuleExpr appell_lerch_module(const std::vector<int>& alphas, const std::vector<int>& betas,
                               const std::vector<int>& gammas) {
  if (alphas.size() != betas.size() || (!gammas.empty() && gammas.size() != alphas.size())) {
    throw DomainError("alphas, betas and gammas must have the same length");
  }
  if (alphas.empty()) throw DomainError("at least one factor is required");
  std::vector<ModuleExpr> factors;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    std::vector<ModuleExpr> parts;
    auto add = [&](ModuleExpr atom, int mult) {
      if (mult < 0) throw DomainError("multiplicities must be non-negative");
      if (mult == 1) parts.push_back(atom);
      if (mult > 1) parts.push_back(ModuleExpr::power(atom, mult));
    };
    add(ModuleExpr::verma(0), alphas[i]);
    add(ModuleExpr::verma(-2), betas[i]);
    if (!gammas.empty()) add(ModuleExpr::big_p(), gammas[i]);
    if (parts.empty()) throw DomainError("factor " + std::to_string(i) + " is the zero module");
    factors.push_back(parts.size() == 1 ? parts[0] : ModuleExpr::direct_sum(parts));
  }
  return factors.size() == 1 ? factors[0] : ModuleExpr::tensor(factors);
}

// ---- 2x2 Jordan form ----

namespace {

bool rational_sqrt(const Rational& r, Rational& root) {
  if (r < 0) return false;
  Integer num = r.get_num();
  Integer den = r.get_den();
  Integer sn = sqrt(num);
  Integer sd = sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  root = Rational(sn, sd);
  root.canonicalize();
  return true;
}

}  // namespace

JordanForm jordan_2x2(const RatMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DomainError("jordan_2x2 needs a 2x2 matrix");
  if (m(0, 1) == 0 && m(1, 0) == 0) return {m, RatMatrix::identity(2)};
  Rational tr = m(0, 0) + m(1, 1);
  Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Rational disc = tr * tr - 4 * det;
  Rational root;
  if (!rational_sqrt(disc, root)) {
    throw UnsupportedInputError("eigenvalues of the matrix are not rational");
  }
  if (disc == 0) {
    Rational c = tr / 2;
    RatMatrix b = m;
    b(0, 0) -= c;
    b(1, 1) -= c;
    // v2 outside the kernel, v1 = (m - c) v2 / 2 so that m v2 = c v2 + 2 v1.
    std::size_t pick = (b(0, 1) != 0 || b(1, 1) != 0) ? 1 : 0;
    RatMatrix s(2, 2);
    s(0, 1) = pick == 0 ? 1 : 0;
    s(1, 1) = pick == 1 ? 1 : 0;
    s(0, 0) = b(0, pick) / 2;
    s(1, 0) = b(1, pick) / 2;
    RatMatrix j{{0, 2}, {0, 0}};
    j(0, 0) = c;
    j(1, 1) = c;
    return {j, s};
  }
  Rational c1 = (tr - root) / 2;
  Rational c2 = (tr + root) / 2;
  RatMatrix s(2, 2);
  for (int col = 0; col < 2; ++col) {
    Rational c = col == 0 ? c1 : c2;
    RatMatrix b = m;
    b(0, 0) -= c;
    b(1, 1) -= c;
    RatMatrix k = b.kernel();
    s(0, static_cast<std::size_t>(col)) = k(0, 0);
    s(1, static_cast<std::size_t>(col)) = k(1, 0);
  }
  RatMatrix j(2, 2);
  j(0, 0) = c1;
  j(1, 1) = c2;
  return {j, s};
}

}  // namespace casimir
