#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"
#include "casimir/json_io.hpp"
#include "casimir/monodromy.hpp"
#include "casimir/sl2_rep.hpp"
#include "casimir/verify.hpp"

using namespace casimir;

namespace {

enum class Format { kPlain, kJson, kCsv };

struct Options {
  std::string rep;
  int loops = 1;
  std::string order = "20";
  int weight = 0;
  int depth = 10;
  std::string family;
  std::string kind = "M0";
  std::string method = "ladder";
  std::vector<int> alphas, betas, gammas;
  int p = -1;
  double s = 2;
  double tol = 1e-6;
  double t_min = 1e-4, t_max = 10;
  int n_max = 200, panels = 60;
  std::uint64_t seed = SampleOptions{}.seed;
  bool seed_given = false;
  int q_min = 0, q_max = 0, x2_max = 0;
  std::string matrix;
  std::vector<std::string> checks;
  bool all = false;
  bool allow_inconclusive = false;
  std::string format = "plain";
};

Format format_of(const Options& o) {
  if (o.format == "json") return Format::kJson;
  if (o.format == "csv") return Format::kCsv;
  return Format::kPlain;
}

HalfInt order_of(const Options& o) { return HalfInt::parse(o.order); }

void print_json(const Json& j) { std::cout << j.dump() << "\n"; }

void emit(const Options& o, const QSeries& s) {
  switch (format_of(o)) {
    case Format::kJson: print_json(to_json(s)); break;
    case Format::kCsv:
      std::cout << "exponent,numerator,denominator\n";
      for (const auto& [e, c] : s.terms()) {
        std::cout << e.str() << "," << c.get_num().get_str() << "," << c.get_den().get_str() << "\n";
      }
      break;
    case Format::kPlain: std::cout << to_display_string(s) << "\n"; break;
  }
}

void emit(const Options& o, const BiSeries& s) {
  switch (format_of(o)) {
    case Format::kJson: print_json(to_json(s)); break;
    case Format::kCsv:
      std::cout << "q_exponent,x_exponent,numerator,denominator\n";
      for (const auto& [e, c] : s.terms()) {
        std::cout << e.q.str() << "," << e.x << "," << c.get_num().get_str() << ","
                  << c.get_den().get_str() << "\n";
      }
      break;
    case Format::kPlain: std::cout << to_display_string(s) << "\n"; break;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// Exit status for a set of reports.
int emit_reports(const Options& o, const std::vector<CheckReport>& reports, bool as_array) {
  switch (format_of(o)) {
    case Format::kJson: {
      if (as_array) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        print_json(arr);
      } else {
        print_json(to_json(reports.at(0)));
      }
      break;
    }
    case Format::kCsv:
      std::cout << "name,status,coverage,witness,seconds\n";
      for (const auto& r : reports) {
        std::cout << csv_field(r.name) << "," << to_string(r.status) << "," << csv_field(r.coverage)
                  << "," << csv_field(r.witness) << "," << r.seconds << "\n";
      }
      break;
    case Format::kPlain:
      for (const auto& r : reports) {
        std::cout << to_string(r.status) << "  " << r.name << "  (" << r.coverage << ")\n";
        if (!r.witness.empty()) std::cout << "    " << r.witness << "\n";
        for (const auto& [k, v] : r.facts) std::cout << "    " << k << " = " << v << "\n";
      }
      break;
  }
  for (const auto& r : reports) {
    if (r.status == CheckStatus::kFail) return 1;
    if (r.status == CheckStatus::kInconclusive && !o.allow_inconclusive) return 1;
  }
  return 0;
}

std::string matrix_plain(const RatMatrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << m(r, c).get_str();
    out << "]\n";
  }
  return out.str();
}

void emit_matrix_csv(const RatMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::cout << (c ? "," : "") << m(r, c).get_str();
    std::cout << "\n";
  }
}

RatMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Rational> values;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      auto b = cell.find_first_not_of(" \t");
      auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw DomainError("empty matrix entry in '" + text + "'");
      values.push_back(parse_rational(cell.substr(b, e - b + 1)));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DomainError("empty matrix");
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DomainError("ragged matrix '" + text + "'");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

int p_of(const Options& o) {
  int p = static_cast<int>(o.alphas.size()) - 1;
  if (o.p >= 0 && o.p != p) {
    throw DomainError("--p " + std::to_string(o.p) + " does not match " +
                      std::to_string(o.alphas.size()) + " alphas");
  }
  return p;
}

TraceMethod method_of(const Options& o) {
  return o.method == "charpoly" ? TraceMethod::kCharpoly : TraceMethod::kLadder;
}

// ---- subcommands ----

int run_trace(const Options& o) {
  emit(o, trace_series(parse_rep(o.rep), o.loops, order_of(o), method_of(o)));
  return 0;
}

int run_trace_deformed(const Options& o) {
  emit(o, trace_deformed(parse_rep(o.rep), o.loops, order_of(o), method_of(o)));
  return 0;
}

int run_closed_form(const Options& o) {
  if (o.family == "jacobi-theta") {
    emit(o, jacobi_theta(o.loops, order_of(o)));
  } else if (o.family == "partial-theta") {
    emit(o, partial_theta(parse_partial_theta_kind(o.kind), o.loops, order_of(o)));
  } else if (o.family == "appell-lerch-partial") {
    emit(o, partial_appell_lerch({o.alphas, o.betas, p_of(o), o.loops}, order_of(o)));
  } else {
    ConeSeries c = appell_lerch_cone({o.q_min, o.q_max, o.x2_max});
    switch (format_of(o)) {
      case Format::kJson: print_json(to_json(c)); break;
      case Format::kCsv:
        std::cout << "q_exponent,x1_exponent,x2_exponent,coefficient\n";
        for (const auto& [e, v] : c.terms) {
          std::cout << e.q << "," << e.x1 << "," << e.x2 << "," << v.get_str() << "\n";
        }
        break;
      case Format::kPlain:
        for (const auto& [e, v] : c.terms) {
          std::cout << v.get_str() << " * q^" << e.q << " x1^" << e.x1 << " x2^" << e.x2 << "\n";
        }
        break;
    }
  }
  return 0;
}

int run_character(const Options& o) {
  ModuleExpr expr = parse_rep(o.rep);
  auto ch = character(expr, o.depth);
  switch (format_of(o)) {
    case Format::kJson: {
      Json terms = Json::array();
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) terms.push_back({it->first, it->second.get_str()});
      print_json(Json{{"rep", expr.to_string()}, {"depth", o.depth}, {"weights", std::move(terms)}});
      break;
    }
    case Format::kCsv:
      std::cout << "weight,dimension\n";
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) std::cout << it->first << "," << it->second.get_str() << "\n";
      break;
    case Format::kPlain:
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
        std::cout << "weight " << it->first << ": " << it->second.get_str() << "\n";
      }
      break;
  }
  return 0;
}

int run_spectral(const Options& o) {
  ModuleExpr expr = parse_rep(o.rep);
  WeightMatrix km = kappa_matrix(expr, o.weight);
  SpectralData d = spectral(km.entries);
  d.weight = o.weight;
  switch (format_of(o)) {
    case Format::kJson: {
      Json j = to_json(d);
      j["kappa"] = to_json(expr, km);
      print_json(j);
      break;
    }
    case Format::kCsv:
      std::cout << "eigenvalue,multiplicity,block_size\n";
      for (const auto& e : d.eigen) std::cout << e.value.get_str() << "," << e.multiplicity << "," << e.block_size << "\n";
      break;
    case Format::kPlain:
      std::cout << "weight " << o.weight << ", dimension " << d.dimension << "\nbasis:\n";
      for (const auto& b : km.basis) std::cout << "  " << basis_label(expr, b) << "\n";
      std::cout << "kappa:\n" << matrix_plain(km.entries);
      for (const auto& e : d.eigen) {
        std::cout << "eigenvalue " << e.value.get_str() << ": multiplicity " << e.multiplicity
                  << ", largest Jordan block " << e.block_size << "\n";
      }
      break;
  }
  return 0;
}

int run_jordan(const Options& o) {
  RatMatrix m;
  if (!o.matrix.empty()) {
    m = parse_matrix(o.matrix);
  } else {
    if (o.rep.empty()) throw DomainError("jordan needs --matrix or --rep with --weight");
    m = kappa_matrix(parse_rep(o.rep), o.weight).entries;
  }
  JordanForm jf = jordan_2x2(m);
  switch (format_of(o)) {
    case Format::kJson:
      print_json(Json{{"matrix", to_json(m)}, {"jordan", to_json(jf.j)}, {"basis_change", to_json(jf.s)}});
      break;
    case Format::kCsv:
      emit_matrix_csv(jf.j);
      emit_matrix_csv(jf.s);
      break;
    case Format::kPlain:
      std::cout << "J:\n" << matrix_plain(jf.j) << "S (columns are the Jordan basis):\n" << matrix_plain(jf.s);
      break;
  }
  return 0;
}

int run_flat_section(const Options& o) {
  ModuleExpr expr = parse_rep(o.rep);
  WeightMatrix km = kappa_matrix(expr, o.weight);
  FlatSectionExpr psi = flat_sections_of(km.entries);
  MonodromyMatrix m = monodromy_of(km.entries, o.loops);
  const bool ode = satisfies_flat_section_equation(psi, km.entries);
  const bool continuation = formal_equal(continue_around_origin(psi), apply(monodromy_of(km.entries, 1), psi));
  switch (format_of(o)) {
    case Format::kJson: {
      Json j{{"kappa", to_json(expr, km)},
             {"flat_sections", to_json(psi)},
             {"monodromy", to_json(m)},
             {"ode_identity", ode},
             {"continuation_identity", continuation}};
      print_json(j);
      break;
    }
    case Format::kCsv:
      std::cout << "c,j,row,column,value\n";
      for (const auto& t : psi.terms) {
        for (std::size_t r = 0; r < t.matrix.rows(); ++r) {
          for (std::size_t c = 0; c < t.matrix.cols(); ++c) {
            if (t.matrix(r, c) != 0) {
              std::cout << t.c.get_str() << "," << t.j << "," << r << "," << c << "," << t.matrix(r, c).get_str() << "\n";
            }
          }
        }
      }
      break;
    case Format::kPlain:
      std::cout << "Psi = sum of z^{-c hbar} (-hbar ln z)^j / j! * A\n";
      for (const auto& t : psi.terms) {
        std::cout << "c = " << t.c.get_str() << ", j = " << t.j << ", A =\n" << matrix_plain(t.matrix);
      }
      std::cout << "monodromy (l = " << o.loops << "):\n";
      for (std::size_t r = 0; r < m.size(); ++r) {
        std::cout << "  [";
        for (std::size_t c = 0; c < m.size(); ++c) std::cout << (c ? ", " : "") << to_display_string(m.at(r, c));
        std::cout << "]\n";
      }
      std::cout << "flat-section equation: " << (ode ? "holds" : "FAILS") << "\n";
      std::cout << "continuation = monodromy * Psi: " << (continuation ? "holds" : "FAILS") << "\n";
      break;
  }
  return ode && continuation ? 0 : 4;
}

int run_multiplicities(const Options& o) {
  const int p = p_of(o);
  auto a = verma_multiplicities(o.alphas, o.betas, p, o.depth);
  switch (format_of(o)) {
    case Format::kJson: {
      Json arr = Json::array();
      for (const auto& x : a) arr.push_back(x.get_str());
      print_json(Json{{"alphas", o.alphas}, {"betas", o.betas}, {"p", p}, {"a", std::move(arr)}});
      break;
    }
    case Format::kCsv:
      std::cout << "k,a_k\n";
      for (std::size_t k = 0; k < a.size(); ++k) std::cout << k << "," << a[k].get_str() << "\n";
      break;
    case Format::kPlain:
      for (std::size_t k = 0; k < a.size(); ++k) std::cout << "a_" << k << " = " << a[k].get_str() << "\n";
      break;
  }
  return 0;
}

int run_compare(const Options& o) {
  return emit_reports(o, {check_expression(parse_rep(o.rep), o.loops, order_of(o))}, false);
}

int run_conjecture(const Options& o) {
  return emit_reports(o, {test_conjecture1(o.alphas, o.betas, o.gammas, o.loops, order_of(o))}, false);
}

int run_zeta(const Options& o) {
  ZetaCheckParams p;
  p.s = o.s;
  p.loops = o.loops;
  p.tolerance = o.tol;
  p.t_min = o.t_min;
  p.t_max = o.t_max;
  p.n_max = o.n_max;
  p.panels = o.panels;
  return emit_reports(o, {zeta_mellin_check(p)}, false);
}

int run_verify(const Options& o, const CLI::App& sub) {
  std::vector<std::string> names = o.all ? check_names() : o.checks;
  if (names.empty()) throw CLI::ValidationError("verify needs --check NAME or --all");
  NamedCheckOptions opts;
  if (sub.count("--loops")) opts.loops = o.loops;
  if (sub.count("--order")) opts.order = order_of(o);
  if (o.seed_given) opts.seed = o.seed;
  std::vector<CheckReport> reports;
  for (const auto& n : names) reports.push_back(run_named_check(n, opts));
  return emit_reports(o, reports, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy traces of the sl(2) Casimir connection and their theta-series closed forms"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"plain", "json", "csv"}));
  };
  auto add_rep = [&](CLI::App* s, bool required) {
    auto opt = s->add_option("--rep", o.rep, "Representation expression, e.g. \"(M0 + M-2)^2 x P\"");
    if (required) opt->required();
  };
  auto add_loops = [&](CLI::App* s) { s->add_option("--loops", o.loops, "Loop count l >= 1"); };
  auto add_order = [&](CLI::App* s) { s->add_option("--order", o.order, "q-order N (integer or half-integer)"); };
  auto add_ab = [&](CLI::App* s) {
    s->add_option("--alphas", o.alphas, "Comma list alpha_0..alpha_p")->delimiter(',');
    s->add_option("--betas", o.betas, "Comma list beta_0..beta_p")->delimiter(',');
    s->add_option("--p", o.p, "p (defaults to the number of alphas minus one)");
  };

  auto* trace = app.add_subcommand("trace", "Monodromy trace series chi(q, l, V)");
  add_rep(trace, true);
  add_loops(trace);
  add_order(trace);
  trace->add_option("--method", o.method, "Spectrum method")->check(CLI::IsMember({"ladder", "charpoly"}));
  add_format(trace);

  auto* deformed = app.add_subcommand("trace-deformed", "Deformed trace chi(q, x, l, V)");
  add_rep(deformed, true);
  add_loops(deformed);
  add_order(deformed);
  deformed->add_option("--method", o.method, "Spectrum method")->check(CLI::IsMember({"ladder", "charpoly"}));
  add_format(deformed);

  auto* closed = app.add_subcommand("closed-form", "Theta-type closed forms");
  closed->add_option("--family", o.family, "Series family")
      ->required()
      ->check(CLI::IsMember({"jacobi-theta", "partial-theta", "appell-lerch-partial", "appell-lerch-cone"}));
  closed->add_option("--kind", o.kind, "Partial theta kind: L0, M0, M-2 or P");
  add_loops(closed);
  add_order(closed);
  add_ab(closed);
  closed->add_option("--q-min", o.q_min, "Cone window: smallest q exponent");
  closed->add_option("--q-max", o.q_max, "Cone window: largest q exponent");
  closed->add_option("--x2-max", o.x2_max, "Cone window: largest x2 exponent");
  add_format(closed);

  auto* character_cmd = app.add_subcommand("character", "Weight multiplicities");
  add_rep(character_cmd, true);
  character_cmd->add_option("--depth", o.depth, "Number of lowering steps below the top weight");
  add_format(character_cmd);

  auto* spectral_cmd = app.add_subcommand("spectral", "Kappa matrix and Jordan type on one weight space");
  add_rep(spectral_cmd, true);
  spectral_cmd->add_option("--weight", o.weight, "Weight w")->required();
  add_format(spectral_cmd);

  auto* jordan = app.add_subcommand("jordan", "Jordan form of a 2x2 matrix");
  add_rep(jordan, false);
  jordan->add_option("--weight", o.weight, "Weight w (with --rep)");
  jordan->add_option("--matrix", o.matrix, "Matrix as \"a,b;c,d\"");
  add_format(jordan);

  auto* flat = app.add_subcommand("flat-section", "Flat sections and monodromy on one weight space");
  add_rep(flat, true);
  flat->add_option("--weight", o.weight, "Weight w")->required();
  add_loops(flat);
  add_format(flat);

  auto* mult = app.add_subcommand("multiplicities", "Verma multiplicities a_k");
  add_ab(mult);
  mult->add_option("--depth", o.depth, "Largest k");
  add_format(mult);

  auto* compare = app.add_subcommand("compare", "Check a trace against its closed forms");
  add_rep(compare, true);
  add_loops(compare);
  add_order(compare);
  add_format(compare);

  auto* conj = app.add_subcommand("conjecture", "Compare traces of F and F' with P replaced by M0 + M-2");
  add_ab(conj);
  conj->add_option("--gammas", o.gammas, "Comma list gamma_0..gamma_p")->delimiter(',');
  add_loops(conj);
  add_order(conj);
  add_format(conj);

  auto* zeta = app.add_subcommand("zeta-check", "Numerical Mellin transform against zeta(s)");
  zeta->add_option("--s", o.s, "Real s > 1");
  add_loops(zeta);
  zeta->add_option("--tol", o.tol, "Tolerance");
  zeta->add_option("--t-min", o.t_min, "Lower quadrature limit");
  zeta->add_option("--t-max", o.t_max, "Upper quadrature limit");
  zeta->add_option("--n-max", o.n_max, "Series cutoff");
  zeta->add_option("--panels", o.panels, "Quadrature panels");
  zeta->add_flag("--allow-inconclusive", o.allow_inconclusive, "Treat inconclusive as success");
  add_format(zeta);

  auto* verify = app.add_subcommand("verify", "Run named checks");
  verify->add_option("--check", o.checks, "Check name (repeatable)")->check(CLI::IsMember(check_names()));
  verify->add_flag("--all", o.all, "Run every check");
  add_loops(verify);
  add_order(verify);
  verify->add_option("--seed", o.seed, "Seed for sampled configurations");
  verify->add_flag("--allow-inconclusive", o.allow_inconclusive, "Treat inconclusive as success");
  add_format(verify);

  try {
    app.parse(argc, argv);
    o.seed_given = verify->count("--seed") > 0;
    if (*trace) return run_trace(o);
    if (*deformed) return run_trace_deformed(o);
    if (*closed) return run_closed_form(o);
    if (*character_cmd) return run_character(o);
    if (*spectral_cmd) return run_spectral(o);
    if (*jordan) return run_jordan(o);
    if (*flat) return run_flat_section(o);
    if (*mult) return run_multiplicities(o);
    if (*compare) return run_compare(o);
    if (*conj) return run_conjecture(o);
    if (*zeta) return run_zeta(o);
    if (*verify) return run_verify(o, *verify);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedInputError& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
