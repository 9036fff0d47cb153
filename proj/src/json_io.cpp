#include "casimir/json_io.hpp"

#include "casimir/errors.hpp"

namespace casimir {

Json to_json(const QSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({e.str(), to_string(c)});
  return Json{{"variable", "q"}, {"order", s.order().str()}, {"terms", std::move(terms)}};
}

Json to_json(const BiSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({e.q.str(), std::to_string(e.x), to_string(c)});
  return Json{{"variables", {"q", "x"}}, {"q_order", s.q_order().str()}, {"terms", std::move(terms)}};
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ModuleExpr& expr, const WeightMatrix& m) {
  Json basis = Json::array();
  for (const auto& b : m.basis) basis.push_back(basis_label(expr, b));
  return Json{{"rep", expr.to_string()},
              {"weight", m.weight},
              {"basis", std::move(basis)},
              {"matrix", to_json(m.entries)}};
}

Json to_json(const SpectralData& d) {
  Json eigen = Json::array();
  for (const auto& e : d.eigen) {
    eigen.push_back(Json{{"eigenvalue", e.value.get_str()},
                         {"multiplicity", e.multiplicity},
                         {"block_size", e.block_size}});
  }
  return Json{{"weight", d.weight}, {"dimension", d.dimension}, {"eigenvalues", std::move(eigen)}};
}

Json to_json(const FlatSectionExpr& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms) {
    terms.push_back(Json{{"c", t.c.get_str()}, {"j", t.j}, {"matrix", to_json(t.matrix)}});
  }
  return Json{{"terms", std::move(terms)}};
}

Json to_json(const MonodromyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size(); ++c) {
      Json entry = Json::array();
      for (const auto& [a, p] : m.at(r, c)) {
        Json coeffs = Json::array();
        for (const auto& x : p.coefficients()) coeffs.push_back(to_string(x));
        entry.push_back({a.str(), std::move(coeffs)});
      }
      row.push_back(std::move(entry));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"loops", m.loops()}, {"entries", std::move(rows)}};
}

Json to_json(const ConeSeries& c) {
  Json terms = Json::array();
  for (const auto& [e, v] : c.terms) terms.push_back({e.q, e.x1, e.x2, v.get_str()});
  return Json{{"variables", {"q", "x1", "x2"}},
              {"window", {{"q_min", c.window.q_min}, {"q_max", c.window.q_max}, {"x2_max", c.window.x2_max}}},
              {"terms", std::move(terms)}};
}

Json to_json(const CheckReport& r) {
  Json j{{"name", r.name},
         {"status", to_string(r.status)},
         {"coverage", r.coverage},
         {"witness", r.witness.empty() ? Json(nullptr) : Json(r.witness)},
         {"seconds", r.seconds}};
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  Json facts = Json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  j["facts"] = std::move(facts);
  return j;
}

QSeries qseries_from_json(const Json& j) {
  try {
    if (j.at("variable") != "q") throw DomainError("expected a q-series");
    QSeries out(HalfInt::parse(j.at("order").get<std::string>()));
    for (const auto& t : j.at("terms")) {
      out.add_term(HalfInt::parse(t.at(0).get<std::string>()),
                   parse_rational(t.at(1).get<std::string>()));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace casimir
