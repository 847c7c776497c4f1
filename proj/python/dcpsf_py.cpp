#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <tuple>
#include <vector>

#include "dcpsf/cli.hpp"
#include "dcpsf/errors.hpp"
#include "dcpsf/hermite.hpp"
#include "dcpsf/summation.hpp"
#include "dcpsf/theta.hpp"
#include "dcpsf/transform.hpp"

namespace py = pybind11;
using namespace dcpsf;

namespace {

GaussPoly to_gausspoly(const std::vector<std::tuple<double, int, double>>& terms) {
  std::vector<GaussTerm> out;
  for (const auto& [c, k, alpha] : terms) out.push_back({c, k, alpha});
  return GaussPoly(std::move(out));
}

std::vector<std::tuple<double, int, double>> from_gausspoly(const GaussPoly& f) {
  std::vector<std::tuple<double, int, double>> out;
  for (const auto& t : f.terms()) out.emplace_back(t.c, t.k, t.alpha);
  return out;
}

// A Python callable with decay hints becomes a sampled radial function.
Sampled to_sampled(std::function<double(double)> f, double scale, double rate,
                   std::optional<std::pair<double, double>> hat) {
  Sampled s{std::move(f), {scale, rate}, std::nullopt};
  if (hat) s.hat_decay = DecayHint{hat->first, hat->second};
  return s;
}

py::dict table_rows(const std::vector<TableRow>& rows) {
  std::vector<double> a, n, v;
  for (const auto& r : rows) {
    a.push_back(r.A);
    n.push_back(r.N);
    v.push_back(r.value);
  }
  py::dict d;
  d["A"] = a;
  d["N"] = n;
  d["value"] = v;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dimensional continuation of lattice theta series and Poisson summation";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<InvalidSpec>(m, "InvalidSpec", error.ptr());
  py::register_exception<OffsetMismatch>(m, "OffsetMismatch", error.ptr());
  py::register_exception<ToleranceNotMet>(m, "ToleranceNotMet", error.ptr());
  py::register_exception<IllConditioned>(m, "IllConditioned", error.ptr());

  py::class_<ThetaSpec>(m, "ThetaSpec")
      .def_static("zd", &ThetaSpec::zd, py::arg("d"))
      .def_static("dd", &ThetaSpec::dd, py::arg("d"))
      .def_static("theta4d", &ThetaSpec::theta4d, py::arg("d"))
      .def_static("preset", &ThetaSpec::preset, py::arg("name"), py::arg("d"))
      .def_static("from_json", [](const std::string& s) { return cli::parse_spec(s); })
      .def("to_json", [](const ThetaSpec& s) { return cli::spec_to_json(s); })
      .def_property_readonly("dim", &ThetaSpec::dim)
      .def_property_readonly("unit_scales", &ThetaSpec::unit_scales)
      .def("__eq__", [](const ThetaSpec& a, const ThetaSpec& b) { return a == b; })
      .def("__repr__", [](const ThetaSpec& s) { return "ThetaSpec(" + cli::spec_to_json(s) + ")"; });

  m.def(
      "theta_coeffs",
      [](const ThetaSpec& spec, std::size_t order) {
        const QSeries s = theta::build(spec, order);
        std::vector<double> exps;
        for (std::size_t l = 0; l <= s.trunc_order(); ++l) exps.push_back(s.exponent(l));
        const auto c = s.coeffs();
        return std::make_tuple(exps, std::vector<double>(c.begin(), c.end()), s.denom());
      },
      py::arg("spec"), py::arg("order"),
      "Returns (exponents, coefficients, grid denominator) through relative order `order`.");
  m.def("dual", &theta::dual, py::arg("spec"));
  m.def(
      "jacobi_residual",
      [](int kind, double t) { return theta::jacobi_residual(theta_kind_from_int(kind), t); },
      py::arg("kind"), py::arg("t"));
  m.def(
      "theta",
      [](int kind, double q) { return theta::eval_product(theta_kind_from_int(kind), q); },
      py::arg("kind"), py::arg("q"));
  m.def("coeff_bound", &theta::coeff_bound, py::arg("d"), py::arg("l"));

  m.def(
      "ft_closed",
      [](const std::vector<std::tuple<double, int, double>>& f, double p, double d) {
        return ft_closed(to_gausspoly(f), p, d);
      },
      py::arg("f"), py::arg("p"), py::arg("d"),
      "Transform of sum c r^{2k} e^{-alpha r^2}, f given as [(c, k, alpha), ...].");
  m.def(
      "ft_quadrature",
      [](const std::vector<std::tuple<double, int, double>>& f, double p, double d) {
        const TransformResult r = ft_quadrature(to_gausspoly(f), p, d);
        return std::make_pair(r.value, r.error);
      },
      py::arg("f"), py::arg("p"), py::arg("d"));
  m.def(
      "ft_sampled",
      [](std::function<double(double)> f, double p, double d, double scale, double rate) {
        const TransformResult r = ft_quadrature(to_sampled(std::move(f), scale, rate, {}), p, d);
        return std::make_pair(r.value, r.error);
      },
      py::arg("f"), py::arg("p"), py::arg("d"), py::arg("scale"), py::arg("rate"),
      "Quadrature transform of a callable with |f(r)| <= scale e^{-rate r^2}.");
  m.def(
      "laplacian_d",
      [](const std::vector<std::tuple<double, int, double>>& f, double d, int n) {
        return from_gausspoly(laplacian_d(to_gausspoly(f), d, n));
      },
      py::arg("f"), py::arg("d"), py::arg("n") = 1);
  m.def(
      "eigen_residual",
      [](const std::vector<std::tuple<double, int, double>>& f, double p, double d, int n) {
        return eigen_residual(to_gausspoly(f), p, d, n);
      },
      py::arg("f"), py::arg("p"), py::arg("d"), py::arg("n"));

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("lhs", &VerificationReport::lhs)
      .def_readonly("rhs", &VerificationReport::rhs)
      .def_readonly("residual", &VerificationReport::residual)
      .def_readonly("L_used", &VerificationReport::L_used)
      .def_readonly("L_star_used", &VerificationReport::L_star_used)
      .def_readonly("tail_lhs", &VerificationReport::tail_lhs)
      .def_readonly("tail_rhs", &VerificationReport::tail_rhs)
      .def_readonly("transform_err", &VerificationReport::transform_err)
      .def_readonly("rounding", &VerificationReport::rounding)
      .def_readonly("tol", &VerificationReport::tol)
      .def_readonly("passed", &VerificationReport::pass)
      .def_readonly("experimental", &VerificationReport::experimental)
      .def_property_readonly("table", [](const VerificationReport& r) { return table_rows(r.per_term_table); })
      .def_property_readonly("table_dual", [](const VerificationReport& r) { return table_rows(r.per_term_table_dual); })
      .def("to_json", [](const VerificationReport& r) { return cli::report_to_json(r); })
      .def("__bool__", [](const VerificationReport& r) { return r.pass; });

  m.def(
      "verify",
      [](const ThetaSpec& spec, const std::vector<std::tuple<double, int, double>>& f, double tol,
         std::size_t L_cap, bool table) {
        SummationOptions opts;
        opts.L_cap = L_cap;
        opts.keep_table = table;
        return verify(spec, to_gausspoly(f), tol, {}, opts);
      },
      py::arg("spec"), py::arg("f"), py::arg("tol") = 1e-9, py::arg("L_cap") = 200000,
      py::arg("table") = false, py::call_guard<py::gil_scoped_release>());

  m.def("hermite_h", &hermite_h, py::arg("n"), py::arg("x"));
  m.def("gaussian_hermite_coeff", &gaussian_hermite_coeff, py::arg("alpha"), py::arg("n"));
  m.def("hermite_coeff_quadrature", &hermite_coeff_quadrature, py::arg("f"), py::arg("n"),
        py::arg("abs_tol") = 1e-11);
}
