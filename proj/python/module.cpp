#include "cideal/bounds.hpp"
#include "cideal/errors.hpp"
#include "cideal/oracle.hpp"
#include "cideal/serialize.hpp"
#include "cideal/simulate.hpp"
#include "cli.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cideal;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string exact(std::uint64_t u, std::uint64_t m, std::uint64_t n, const std::string& c) {
  return to_json(exact_ideal_probability(Params::make(u, m, n, parse_rational(c)))).dump();
}

std::string bounds(const std::string& u, std::uint64_t m, std::uint64_t n, const std::string& c,
                   const std::string& eps, const std::string& t) {
  const auto report = bound_report(BoundParams::make(BigCount(u), m, n, parse_rational(c),
                                                     parse_rational(eps), parse_rational(t)));
  auto out = to_json(report);
  out["advice"] = to_json(advice_report(report));
  return out.dump();
}

std::string simulate(std::uint64_t u, std::uint64_t m, std::uint64_t n, const std::string& c,
                     std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  return to_json(estimate_ideal_probability(Params::make(u, m, n, parse_rational(c)), trials,
                                            seed, workers))
      .dump();
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"cideal"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(argv, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_cideal, mod) {
  mod.doc() = "Exact counts, bounds and constructions for c-ideal hash families.";
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_RuntimeError);
  mod.attr("schema_version") = kSchemaVersion;
  mod.def("exact", &exact, py::arg("u"), py::arg("m"), py::arg("n"), py::arg("c") = "1");
  mod.def("bounds", &bounds, py::arg("u"), py::arg("m"), py::arg("n"), py::arg("c") = "1",
          py::arg("eps") = "0", py::arg("t") = "2");
  mod.def("simulate", &simulate, py::arg("u"), py::arg("m"), py::arg("n"), py::arg("c") = "1",
          py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("workers") = 1);
  mod.def("run", &run, py::arg("args"), "Runs the command-line tool; returns (code, out, err).");
}
