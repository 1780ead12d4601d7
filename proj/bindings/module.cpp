#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gpbvp/casebook.hpp"
#include "gpbvp/config.hpp"
#include "gpbvp/gp.hpp"

namespace py = pybind11;
using namespace gpbvp;

namespace {

MultiIndex mi(const std::vector<int>& a) { return MultiIndex(a); }

}  // namespace

PYBIND11_MODULE(gpbvp, m) {
  m.doc() = "Meshless probabilistic solver for linear boundary value problems";

  py::register_exception<Error>(m, "GpbvpError");

  py::class_<Expression>(m, "Expression")
      .def_static("parse", [](const std::string& s) { return Expression::parse(s); })
      .def("__call__", [](const Expression& e, const std::vector<double>& x) { return e(x); })
      .def("__str__", &Expression::str)
      .def("min_dimension", &Expression::min_dimension);

  py::class_<SEKernel>(m, "SEKernel")
      .def(py::init<double, std::vector<double>>(), py::arg("signal"), py::arg("lengthscales"))
      .def_static("isotropic", &SEKernel::isotropic, py::arg("signal"), py::arg("lengthscale"),
                  py::arg("dimension"))
      .def_property_readonly("signal", &SEKernel::signal)
      .def_property_readonly("lengthscales", &SEKernel::lengthscales)
      .def("__call__", [](const SEKernel& k, const std::vector<double>& x,
                          const std::vector<double>& xp) { return k(x, xp); })
      .def("derivative",
           [](const SEKernel& k, const std::vector<int>& alpha, const std::vector<int>& beta,
              const std::vector<double>& x, const std::vector<double>& xp) {
             return k.derivative(mi(alpha), mi(beta), x, xp);
           },
           py::arg("alpha"), py::arg("beta"), py::arg("x"), py::arg("xp"));

  py::class_<LinearDiffOperator>(m, "LinearDiffOperator")
      .def(py::init([](int dimension,
                       const std::vector<std::pair<std::vector<int>, std::string>>& terms) {
             std::vector<OperatorTerm> out;
             for (const auto& [alpha, coeff] : terms)
               out.push_back(OperatorTerm{mi(alpha), Expression::parse(coeff)});
             return LinearDiffOperator(dimension, std::move(out));
           }),
           py::arg("dimension"), py::arg("terms"))
      .def_static("identity", &LinearDiffOperator::identity)
      .def_property_readonly("order", &LinearDiffOperator::order)
      .def_property_readonly("dimension", &LinearDiffOperator::dimension);

  py::class_<Domain>(m, "Domain")
      .def_static("interval", &Domain::interval)
      .def_static("unit_disk", &Domain::unit_disk)
      .def_static("star_shaped",
                  [](const std::string& radius) {
                    return Domain::star_shaped(Expression::parse(radius));
                  })
      .def("contains", [](const Domain& d, const std::vector<double>& x) { return d.contains(x); })
      .def("on_boundary", [](const Domain& d, const std::vector<double>& x) {
        return d.on_boundary(x);
      })
      .def_property_readonly("dimension", &Domain::dimension)
      .def_property_readonly("diameter", &Domain::diameter);

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init([](const Domain& domain, const LinearDiffOperator& op,
                       const std::string& source, const std::vector<Point>& interior,
                       const std::vector<std::tuple<Point, LinearDiffOperator, double>>& boundary,
                       const SEKernel& kernel) {
             std::vector<BoundaryDatum> bd;
             for (const auto& [pt, bop, val] : boundary) bd.push_back({pt, bop, val});
             return ProblemSpec(domain, op, Expression::parse(source), interior, std::move(bd),
                                kernel);
           }),
           py::arg("domain"), py::arg("interior_op"), py::arg("source"), py::arg("interior"),
           py::arg("boundary"), py::arg("kernel"))
      .def_property_readonly("interior", &ProblemSpec::interior)
      .def_property_readonly("n_boundary",
                             [](const ProblemSpec& s) { return s.boundary().size(); })
      .def_property_readonly("kernel", &ProblemSpec::kernel)
      .def("with_lengthscale", &ProblemSpec::with_lengthscale)
      .def("__eq__", [](const ProblemSpec& a, const ProblemSpec& b) { return a == b; });

  py::class_<PosteriorField>(m, "PosteriorField")
      .def("mean", [](const PosteriorField& f, const std::vector<double>& x) { return f.mean(x); })
      .def("variance",
           [](const PosteriorField& f, const std::vector<double>& x) { return f.variance(x); })
      .def("covariance",
           [](const PosteriorField& f, const std::vector<double>& x,
              const std::vector<double>& xp) { return f.covariance(x, xp); })
      .def_property_readonly("jitter_used",
                             [](const PosteriorField& f) { return f.system().jitter_used; });

  py::class_<FDReference>(m, "FDReference")
      .def("__call__", [](const FDReference& r, double x) { return r(x); })
      .def_property_readonly("values", &FDReference::values)
      .def_property_readonly("residual", &FDReference::residual);

  m.def("build_case",
        [](const std::string& name, int n_i, int n_b) {
          return build_case(case_from_name(name), n_i, n_b);
        },
        py::arg("name"), py::arg("n_i"), py::arg("n_b"));
  m.def("case_names", []() {
    std::vector<std::string> names;
    for (CaseId id : all_cases()) names.emplace_back(case_name(id));
    return names;
  });
  m.def("case_config_json",
        [](const std::string& name) { return serialize_config(case_config(case_from_name(name))); });
  m.def("load_problem", [](const std::string& path) { return make_problem_spec(load_config(path)); });
  m.def("solve", &solve, py::arg("spec"));
  m.def("log_marginal_likelihood",
        [](const ProblemSpec& spec) { return log_marginal_likelihood(spec); });
  m.def("select_lengthscale",
        [](const ProblemSpec& spec, double ell_min, double ell_max, int count) {
          const LengthscaleSelection sel =
              select_lengthscale(spec, LengthscaleGrid{ell_min, ell_max, count, true});
          std::vector<std::pair<double, double>> profile;
          for (const auto& p : sel.profile) profile.emplace_back(p.ell, p.normalized_likelihood);
          return std::make_pair(sel.best_ell, profile);
        },
        py::arg("spec"), py::arg("ell_min"), py::arg("ell_max"), py::arg("count"));
  m.def("exact_disk_solution",
        [](const std::vector<double>& x) { return exact_disk_solution(x); });
  m.def("fd_solve_heat1d", &fd_solve_heat1d, py::arg("n"), py::arg("source_scale") = 1.0);
}
