#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tau2/suites.hpp"

namespace py = pybind11;
using namespace tau2;

PYBIND11_MODULE(tau2, m) {
  m.doc() = "verification toolkit for the open tau2 chain";
  m.attr("__version__") = kToolVersion;

  py::class_<ModelConfig>(m, "ModelConfig")
      .def_readonly("p", &ModelConfig::p)
      .def_readonly("N", &ModelConfig::N)
      .def_readonly("seed", &ModelConfig::seed)
      .def("eta", &ModelConfig::eta)
      .def("qdim", &ModelConfig::qdim)
      .def("to_json", [](const ModelConfig& c) { return config_to_json(c); })
      .def_static("from_json",
                  [](const std::string& s) { return config_from_json(s); })
      .def("digest", [](const ModelConfig& c) { return config_digest(c); });

  m.def("gen_config", &gen_config, py::arg("seed"), py::arg("p") = 3,
        py::arg("N") = 1);

  m.def("transfer", &transfer, py::arg("cfg"), py::arg("u"));
  m.def(
      "monodromy",
      [](const ModelConfig& c, cplx u, bool hat) {
        return hat ? monodromy_hat(c, u) : monodromy(c, u);
      },
      py::arg("cfg"), py::arg("u"), py::arg("hat") = false);
  m.def("fused_transfer", &fused_transfer, py::arg("twoj"), py::arg("cfg"),
        py::arg("u"));
  m.def("avg_monodromy", &avg_monodromy, py::arg("cfg"), py::arg("u"),
        py::arg("hat") = false);

  m.def("detq_t", &detq_t, py::arg("cfg"), py::arg("u"));
  m.def("detq_t_hat", &detq_t_hat, py::arg("cfg"), py::arg("u"));
  m.def(
      "detq_k_minus",
      [](const ModelConfig& c, cplx u) {
        return detq_k_minus(u, c.boundary, c.eta());
      },
      py::arg("cfg"), py::arg("u"));
  m.def(
      "detq_k_plus",
      [](const ModelConfig& c, cplx u) {
        return detq_k_plus(u, c.boundary, c.eta());
      },
      py::arg("cfg"), py::arg("u"));

  m.def("a_func", &a_func, py::arg("u"), py::arg("cfg"));
  m.def("d_func", &d_func, py::arg("u"), py::arg("cfg"));
  m.def("delta", &delta_fn, py::arg("u"), py::arg("cfg"));
  m.def("c_constant", &c_constant, py::arg("cfg"));

  m.def(
      "bethe_roots",
      [](const ModelConfig& c, int index, double corrupt_c) {
        ScalarContext sc(c);
        Rng rng(c.seed ^ 0x7bc9ULL);
        SpectrumResult sr = eigencurves(c, rng);
        QSolution qs = solve_q(sc, sr, index, rng, corrupt_c);
        return py::make_tuple(qs.roots, qs.tq_residual, qs.max_bae_residual,
                              qs.ok);
      },
      py::arg("cfg"), py::arg("index"), py::arg("corrupt_c") = 1.0,
      "returns (roots, tq_residual, max_bae_residual, ok) for one eigenvalue");

  m.def(
      "run_report",
      [](const ModelConfig& c, const std::string& level, double tol_scale,
         double corrupt_c) {
        SuiteOptions opt;
        opt.level = level;
        opt.tol_scale = tol_scale;
        opt.corrupt_c = corrupt_c;
        return run_suites(c, opt).to_json(true);
      },
      py::arg("cfg"), py::arg("level") = "all", py::arg("tol_scale") = 1.0,
      py::arg("corrupt_c") = 1.0, "runs the verification suites, returns JSON");

  m.def("spectrum_csv", &spectrum_csv, py::arg("cfg"));
  m.def("tq_csv", &tq_csv, py::arg("cfg"), py::arg("corrupt_c") = 1.0);
}
