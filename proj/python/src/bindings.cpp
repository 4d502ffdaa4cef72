#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hybridgen/cli.hpp"
#include "hybridgen/displaced.hpp"
#include "hybridgen/fidelity.hpp"
#include "hybridgen/oracle.hpp"
#include "hybridgen/schemes.hpp"

namespace py = pybind11;
using namespace hybridgen;

PYBIND11_MODULE(_core, m) {
  m.doc() = "hybridgen native core";

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def_static("from_alpha", &SchemeConfig::from_alpha, py::arg("alpha"), py::arg("t"),
                  py::arg("a0") = Complex{kInvSqrt2}, py::arg("a1") = Complex{kInvSqrt2})
      .def_static("from_beta", &SchemeConfig::from_beta, py::arg("beta"), py::arg("t"),
                  py::arg("a0") = Complex{kInvSqrt2}, py::arg("a1") = Complex{kInvSqrt2})
      .def_static("dual_from_alpha", &SchemeConfig::dual_from_alpha, py::arg("alpha"),
                  py::arg("alpha1"), py::arg("t"), py::arg("a0") = Complex{kInvSqrt2},
                  py::arg("a1") = Complex{kInvSqrt2})
      .def_readwrite("a0", &SchemeConfig::a0)
      .def_readwrite("a1", &SchemeConfig::a1)
      .def_readwrite("herald_max", &SchemeConfig::herald_max)
      .def_readwrite("delta", &SchemeConfig::delta)
      .def_readonly("t", &SchemeConfig::t)
      .def_property_readonly("r", &SchemeConfig::r)
      .def_property_readonly("alpha", &SchemeConfig::alpha)
      .def_property_readonly("beta", &SchemeConfig::beta);

  py::class_<HeraldResult>(m, "HeraldResult")
      .def_readonly("n", &HeraldResult::n)
      .def_readonly("m", &HeraldResult::m)
      .def_readonly("probability", &HeraldResult::probability)
      .def_readonly("fidelity_vs_ideal", &HeraldResult::fidelity_vs_ideal)
      .def_readonly("aux_overlap", &HeraldResult::aux_overlap)
      .def_readonly("flags", &HeraldResult::flags)
      .def_property_readonly("pole", [](const HeraldResult& r) { return (r.flags & kFlagPole) != 0; })
      .def_property_readonly("amplitudes",
                             [](const HeraldResult& r) { return r.state.amplitudes(); })
      .def_property_readonly("dims", [](const HeraldResult& r) { return r.state.dims(); });

  m.def("envelope", &envelope, py::arg("alpha"));
  m.def("matrix_element", &matrix_element, py::arg("l"), py::arg("n"), py::arg("alpha"));
  m.def("coherent_row", &coherent_row, py::arg("n"), py::arg("alpha"));
  m.def("displaced_single_row", &displaced_single_row, py::arg("n"), py::arg("alpha"));

  m.def("success_prob_a", &success_prob_a, py::arg("n"), py::arg("cfg"));
  m.def("success_prob_b", &success_prob_b, py::arg("n"), py::arg("m"), py::arg("cfg"));
  m.def("balanced_config_a", &balanced_config_a, py::arg("n"), py::arg("cfg"));
  m.def("balanced_probability_a", &balanced_probability_a, py::arg("n"), py::arg("alpha"),
        py::arg("beta"));
  m.def("balanced_probability_b", &balanced_probability_b, py::arg("n"), py::arg("m"),
        py::arg("alpha"), py::arg("alpha1"), py::arg("beta"));
  m.def("fig4_total_probability", &fig4_total_probability, py::arg("t"));

  m.def("fidelity_balanced", &fidelity_balanced, py::arg("alpha"), py::arg("t"));
  m.def("fidelity_a_analytic", &fidelity_a_analytic, py::arg("n"), py::arg("cfg"));
  m.def("fidelity_b_analytic", &fidelity_b_analytic, py::arg("n"), py::arg("m"), py::arg("cfg"));
  m.def("fidelity_first_order", &fidelity_first_order, py::arg("n"), py::arg("cfg"));

  m.def("run_scheme_a_exact", &run_scheme_a_exact, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_scheme_b_exact", &run_scheme_b_exact, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "matrix_elements_csv",
      [](int l_max, int n_max, Complex alpha) {
        cli::MatrixElementsParams p{l_max, n_max, alpha};
        return cli::matrix_elements_csv(p);
      },
      py::arg("l_max") = 4, py::arg("n_max") = 40, py::arg("alpha") = Complex{1.0});
  m.def(
      "figures_csv",
      [](const std::string& which) {
        cli::FiguresParams p;
        p.which = which;
        return cli::figures_csv(p);
      },
      py::arg("which") = "all");
  m.def(
      "run_validation",
      [](unsigned seed, int samples) {
        cli::ValidateParams p;
        p.seed = seed;
        p.samples = samples;
        py::list out;
        for (const auto& c : cli::run_validation(p)) {
          py::dict d;
          d["name"] = c.name;
          d["tolerance"] = c.tolerance;
          d["residual"] = c.residual;
          d["pass"] = c.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 20240611u, py::arg("samples") = 50);
}
