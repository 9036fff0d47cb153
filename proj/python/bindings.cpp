// Values cross the boundary as JSON text; the Python package turns them into Fractions.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "casimir/closed_forms.hpp"
#include "casimir/errors.hpp"
#include "casimir/json_io.hpp"
#include "casimir/monodromy.hpp"
#include "casimir/sl2_rep.hpp"
#include "casimir/verify.hpp"

namespace py = pybind11;
using namespace casimir;

namespace {

TraceMethod method_of(const std::string& name) {
  if (name == "ladder") return TraceMethod::kLadder;
  if (name == "charpoly") return TraceMethod::kCharpoly;
  throw DomainError("unknown method '" + name + "' (expected ladder or charpoly)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Casimir traces on sl(2) modules";

  auto base = py::register_exception<Error>(m, "CasimirError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<IndexError>(m, "IndexError", base.ptr());
  py::register_exception<UnsupportedInputError>(m, "UnsupportedInputError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("canonical_rep", [](const std::string& rep) { return parse_rep(rep).to_string(); });
  m.def(
      "trace",
      [](const std::string& rep, int loops, const std::string& order, const std::string& method) {
        return to_json(trace_series(parse_rep(rep), loops, HalfInt::parse(order), method_of(method))).dump();
      },
      py::arg("rep"), py::arg("loops"), py::arg("order"), py::arg("method") = "ladder");
  m.def(
      "trace_deformed",
      [](const std::string& rep, int loops, const std::string& order) {
        return to_json(trace_deformed(parse_rep(rep), loops, HalfInt::parse(order))).dump();
      },
      py::arg("rep"), py::arg("loops"), py::arg("order"));
  m.def(
      "kappa_matrix",
      [](const std::string& rep, int weight) {
        ModuleExpr e = parse_rep(rep);
        return to_json(e, kappa_matrix(e, weight)).dump();
      },
      py::arg("rep"), py::arg("weight"));
  m.def(
      "spectral", [](const std::string& rep, int weight) { return to_json(spectral(parse_rep(rep), weight)).dump(); },
      py::arg("rep"), py::arg("weight"));
  m.def(
      "monodromy",
      [](const std::string& rep, int weight, int loops) {
        return to_json(monodromy_matrix(parse_rep(rep), weight, loops)).dump();
      },
      py::arg("rep"), py::arg("weight"), py::arg("loops"));
  m.def(
      "jacobi_theta", [](int loops, const std::string& order) { return to_json(jacobi_theta(loops, HalfInt::parse(order))).dump(); },
      py::arg("loops"), py::arg("order"));
  m.def(
      "partial_appell_lerch",
      [](std::vector<int> alphas, std::vector<int> betas, int loops, const std::string& order) {
        int p = static_cast<int>(alphas.size()) - 1;
        return to_json(partial_appell_lerch({alphas, betas, p, loops}, HalfInt::parse(order))).dump();
      },
      py::arg("alphas"), py::arg("betas"), py::arg("loops"), py::arg("order"));
  m.def(
      "verma_multiplicities",
      [](std::vector<int> alphas, std::vector<int> betas, int max_k) {
        std::vector<std::string> out;
        for (const auto& a : verma_multiplicities(alphas, betas, static_cast<int>(alphas.size()) - 1, max_k))
          out.push_back(a.get_str());
        return out;
      },
      py::arg("alphas"), py::arg("betas"), py::arg("max_k"));
  m.def("check_names", &check_names);
  m.def(
      "run_check",
      [](const std::string& name, std::optional<std::uint64_t> seed) {
        NamedCheckOptions o;
        o.seed = seed;
        CheckReport r;
        {
          py::gil_scoped_release release;
          r = run_named_check(name, o);
        }
        return to_json(r).dump();
      },
      py::arg("name"), py::arg("seed") = py::none());
}
