#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wkam/mather.hpp"
#include "wkam/oracle.hpp"

namespace py = pybind11;
using namespace wkam;

PYBIND11_MODULE(pywkam, m) {
  m.doc() = "discrete weak KAM toolkit: staggered-lattice Hamilton-Jacobi schemes, "
            "effective Hamiltonians, Mather measures";

  py::enum_<Parity>(m, "Parity").value("even", Parity::even).value("odd", Parity::odd);

  py::class_<GridSpec>(m, "GridSpec")
      .def_static("create", &GridSpec::create, py::arg("d"), py::arg("N"), py::arg("K"))
      .def_readonly("d", &GridSpec::d)
      .def_readonly("N", &GridSpec::N)
      .def_readonly("K", &GridSpec::K)
      .def_readonly("h", &GridSpec::h)
      .def_readonly("tau", &GridSpec::tau)
      .def_readonly("lam", &GridSpec::lambda)
      .def("sites", &GridSpec::sites)
      .def("coords_of",
           [](const GridSpec& g, std::size_t idx) {
             std::vector<int> m(static_cast<std::size_t>(g.d));
             g.coords_of(idx, m);
             return m;
           })
      .def("index_of", [](const GridSpec& g, const std::vector<int>& m) { return g.index_of(m); });

  py::class_<ScalarField>(m, "ScalarField")
      .def_static("zeros", &ScalarField::zeros, py::arg("grid"), py::arg("parity"))
      .def_readonly("parity", &ScalarField::parity)
      .def_readwrite("values", &ScalarField::values)
      .def("at", [](const ScalarField& f, const std::vector<int>& mm) { return f.at(mm); })
      .def("set", [](ScalarField& f, const std::vector<int>& mm, double v) { f.at(mm) = v; });

  py::class_<HamiltonianModel>(m, "HamiltonianModel")
      .def_readonly("name", &HamiltonianModel::name)
      .def_readonly("d", &HamiltonianModel::d)
      .def_readonly("autonomous", &HamiltonianModel::autonomous)
      .def("H", [](const HamiltonianModel& mod, const std::vector<double>& x, double t,
                   const std::vector<double>& p) { return mod.H(x, t, p); })
      .def("L", [](const HamiltonianModel& mod, const std::vector<double>& x, double t,
                   const std::vector<double>& z) { return mod.L(x, t, z); });

  m.def("builtin_model", &builtin_model, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{});

  m.def(
      "step_backward",
      [](const ScalarField& v, double t_k, const std::vector<double>& c,
         const HamiltonianModel& model) { return step_backward_scheme(v, t_k, c, model); },
      py::arg("v"), py::arg("t_k"), py::arg("c"), py::arg("model"));

  m.def(
      "time_one_map",
      [](const ScalarField& v, const std::vector<double>& c, const HamiltonianModel& model) {
        return time_one_map(v, c, model);
      },
      py::arg("v"), py::arg("c"), py::arg("model"));

  py::class_<EffectiveEstimate>(m, "EffectiveEstimate")
      .def_readonly("H_bar", &EffectiveEstimate::H_bar)
      .def_readonly("bracket_lo", &EffectiveEstimate::bracket_lo)
      .def_readonly("bracket_hi", &EffectiveEstimate::bracket_hi)
      .def_readonly("periods", &EffectiveEstimate::periods)
      .def_readonly("converged", &EffectiveEstimate::converged);

  m.def(
      "estimate_effective_hamiltonian",
      [](const std::vector<double>& c, const HamiltonianModel& model, const GridSpec& grid,
         long long max_periods, double tol) {
        return estimate_effective_hamiltonian(c, model, nullptr, max_periods, tol, &grid);
      },
      py::arg("c"), py::arg("model"), py::arg("grid"), py::arg("max_periods") = 20000,
      py::arg("tol") = 1e-10);

  py::class_<PeriodicSolution>(m, "PeriodicSolution")
      .def_readonly("H_bar", &PeriodicSolution::H_bar)
      .def_readonly("bracket_width", &PeriodicSolution::bracket_width)
      .def_readonly("residual", &PeriodicSolution::residual)
      .def_readonly("converged", &PeriodicSolution::converged)
      .def_readonly("iterations", &PeriodicSolution::iterations)
      .def_readonly("levels", &PeriodicSolution::levels);

  m.def(
      "find_periodic_solution",
      [](const std::vector<double>& c, const HamiltonianModel& model, const GridSpec& grid,
         double tol) { return find_periodic_solution(c, model, grid, tol); },
      py::arg("c"), py::arg("model"), py::arg("grid"), py::arg("tol") = 1e-10);

  py::class_<SupportNode>(m, "SupportNode")
      .def_readonly("level", &SupportNode::level)
      .def_readonly("site", &SupportNode::site)
      .def_readonly("mass", &SupportNode::mass)
      .def_readonly("control", &SupportNode::control);

  py::class_<OccupationMeasure>(m, "OccupationMeasure")
      .def_readonly("horizon", &OccupationMeasure::horizon)
      .def_readonly("nodes", &OccupationMeasure::nodes)
      .def_readonly("total_mass", &OccupationMeasure::total_mass);

  py::class_<MatherApproximation>(m, "MatherApproximation")
      .def_readonly("action", &MatherApproximation::action)
      .def_readonly("H_bar", &MatherApproximation::H_bar)
      .def_readonly("defect", &MatherApproximation::defect)
      .def_readonly("defect_bound", &MatherApproximation::defect_bound)
      .def_readonly("converged", &MatherApproximation::converged)
      .def_readonly("measure", &MatherApproximation::measure);

  m.def(
      "mather_measure",
      [](const PeriodicSolution& sol, const HamiltonianModel& model,
         const std::vector<long long>& horizons, double tol) {
        return mather_measure(sol, model, horizons, tol);
      },
      py::arg("solution"), py::arg("model"), py::arg("horizons"), py::arg("tol") = 1e-6);

  m.def(
      "rotation_vector",
      [](const PeriodicSolution& sol, const HamiltonianModel& model, long long horizon) {
        return rotation_vector(sol, model, horizon);
      },
      py::arg("solution"), py::arg("model"), py::arg("horizon"));

  py::class_<CellProblem1D>(m, "CellProblem1D")
      .def_readonly("H_bar", &CellProblem1D::H_bar)
      .def_readonly("c0", &CellProblem1D::c0)
      .def_readonly("max_V", &CellProblem1D::max_V)
      .def_readonly("shock_x", &CellProblem1D::shock_x);

  m.def("cell_problem_1d", &cell_problem_1d, py::arg("model"), py::arg("c"));
}
