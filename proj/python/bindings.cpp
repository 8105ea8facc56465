#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kissing/cli.hpp"
#include "kissing/expansion_io.hpp"
#include "kissing/gegenbauer.hpp"
#include "kissing/lpbound.hpp"
#include "kissing/proofcheck.hpp"
#include "kissing/spheregeom.hpp"

namespace py = pybind11;
using namespace kissing;

namespace {

// Rationals cross the boundary as "num/den" strings; the Python side turns
// them into fractions.Fraction.
using Coeffs = std::vector<std::pair<int, std::string>>;

GegenbauerExpansion from_coeffs(int dim, const Coeffs& coeffs) {
  GegenbauerExpansion e(dim);
  for (const auto& [k, c] : coeffs) e.set(k, Rational::parse(c));
  return e;
}

Coeffs to_coeffs(const GegenbauerExpansion& e) {
  Coeffs out;
  for (const auto& [k, c] : e.coeffs()) out.emplace_back(k, c.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact kissing-number certificate tools";

  m.def("paper_coefficients", [] { return to_coeffs(proof::paper_f()); });

  m.def(
      "evaluate",
      [](const Coeffs& coeffs, int dim, const std::string& t) {
        return expansion_to_poly(from_coeffs(dim, coeffs)).eval(Rational::parse(t)).str();
      },
      py::arg("coeffs"), py::arg("dim"), py::arg("t"));

  m.def(
      "gegenbauer_values",
      [](int dim, int kmax, const std::string& t) {
        std::vector<std::string> out;
        for (const auto& v : gegenbauer_values(dim, kmax, Rational::parse(t))) out.push_back(v.str());
        return out;
      },
      py::arg("dim"), py::arg("kmax"), py::arg("t"));

  m.def(
      "verify",
      [](const Coeffs& coeffs, const std::string& threshold) {
        py::gil_scoped_release release;
        const auto c = proof::make_constants(from_coeffs(3, coeffs), Rational::parse(threshold));
        return proof::certificate_json(proof::run_full_verification(c));
      },
      py::arg("coeffs"), py::arg("threshold") = "123/100", "Runs every claim and returns the certificate JSON.");

  m.def(
      "classical_bound",
      [](int dim, const std::string& cos_theta, int degree, int grid, int rounds) -> py::object {
        RefineReport rep;
        {
          py::gil_scoped_release release;
          ClassicalLP model(dim, Rational::parse(cos_theta), degree, grid);
          rep = solve_and_refine(model, rounds);
        }
        if (!rep.certified) return py::none();
        return py::make_tuple(rep.bound->str(), to_coeffs(*rep.f));
      },
      py::arg("dim"), py::arg("cos_theta") = "1/2", py::arg("degree") = 9, py::arg("grid") = 512,
      py::arg("rounds") = 30);

  m.def(
      "positivity_check",
      [](std::size_t trials, std::uint64_t seed, unsigned workers) {
        py::gil_scoped_release release;
        const auto r = positivity_check(trials, seed, 12, 12, workers);
        return std::make_tuple(r.pass(), r.forms_checked, r.min_value.str());
      },
      py::arg("trials"), py::arg("seed") = 7, py::arg("workers") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        CommandOutcome oc;
        {
          py::gil_scoped_release release;
          oc = run_cli(args, out, err);
        }
        return std::make_tuple(oc.exit_code, out.str(), err.str());
      },
      py::arg("args"), "Runs a kissing3 command in-process; returns (exit_code, stdout, stderr).");
}
