// pymodule.cpp — thin Python layer over the core library. Structs map to
// classes with read-only fields; nv::Error surfaces as ValueError with the
// kind name in the message.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noisyvoter/dual.hpp"
#include "noisyvoter/dynamics.hpp"
#include "noisyvoter/graph.hpp"
#include "noisyvoter/mixing.hpp"
#include "noisyvoter/patterns.hpp"
#include "noisyvoter/rng.hpp"
#include "noisyvoter/spectral.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "noisy q-voter model: simulation, exact stationary sampling, and spectral predictors";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nv::Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<nv::Graph>(m, "Graph")
      .def_readonly("n", &nv::Graph::n)
      .def_readonly("m", &nv::Graph::m)
      .def_readonly("adj", &nv::Graph::adj)
      .def_readonly("degree", &nv::Graph::degree)
      .def_readonly("pi", &nv::Graph::pi)
      .def_readonly("connected", &nv::Graph::connected)
      .def("__repr__", [](const nv::Graph& g) {
        return "Graph(n=" + std::to_string(g.n) + ", m=" + std::to_string(g.m) + ")";
      });

  py::class_<nv::ColorConfig>(m, "ColorConfig")
      .def(py::init([](int q, std::vector<int> colors) {
             nv::ColorConfig x;
             x.q = q;
             x.colors = std::move(colors);
             return x;
           }),
           py::arg("q"), py::arg("colors"))
      .def_readonly("q", &nv::ColorConfig::q)
      .def_readonly("colors", &nv::ColorConfig::colors)
      .def("__len__", &nv::ColorConfig::n)
      .def("__getitem__", [](const nv::ColorConfig& x, int v) { return x[v]; })
      .def("__eq__", [](const nv::ColorConfig& a, const nv::ColorConfig& b) { return a == b; });

  py::class_<nv::ModelParams>(m, "ModelParams")
      .def(py::init([](double theta, int q) {
             nv::ModelParams p{theta, q};
             nv::check_params(p);
             return p;
           }),
           py::arg("theta"), py::arg("q"))
      .def_readonly("theta", &nv::ModelParams::theta)
      .def_readonly("q", &nv::ModelParams::q);

  py::class_<nv::Estimate>(m, "Estimate")
      .def_readonly("value", &nv::Estimate::value)
      .def_readonly("se", &nv::Estimate::se)
      .def("__repr__", [](const nv::Estimate& e) {
        return "Estimate(value=" + std::to_string(e.value) + ", se=" + std::to_string(e.se) + ")";
      });

  // graph
  m.def("build_graph", &nv::build_graph, py::arg("n"), py::arg("edges"));
  m.def("torus", &nv::torus, py::arg("side"), py::arg("dim"));
  m.def("ball", &nv::ball, py::arg("g"), py::arg("v"), py::arg("r"));
  m.def("conductance", &nv::conductance, py::arg("g"), py::arg("s"));

  // patterns
  m.def("monochromatic", &nv::monochromatic, py::arg("n"), py::arg("q"), py::arg("color"));
  m.def("alternating", &nv::alternating, py::arg("g"), py::arg("q"));
  m.def("lattice_pattern", &nv::lattice_pattern, py::arg("side"), py::arg("d"), py::arg("q"),
        py::arg("v"));
  m.def("uniform_random", &nv::uniform_random, py::arg("n"), py::arg("q"), py::arg("seed"));
  m.def("check_config", &nv::check_config, py::arg("g"), py::arg("x"));

  // dynamics
  m.def("run_forward", &nv::run_forward, py::arg("g"), py::arg("params"), py::arg("x0"),
        py::arg("t"), py::arg("seed"));

  // dual
  m.def("backward_sample", &nv::backward_sample, py::arg("g"), py::arg("params"), py::arg("x0"),
        py::arg("t"), py::arg("seed"));
  m.def("cftp_sample", &nv::cftp_sample, py::arg("g"), py::arg("params"), py::arg("seed"),
        py::arg("first_horizon_exp") = 0);

  py::class_<nv::CoupledSample>(m, "CoupledSample")
      .def_readonly("xt", &nv::CoupledSample::xt)
      .def_readonly("y", &nv::CoupledSample::y)
      .def_property_readonly("survived", [](const nv::CoupledSample& c) {
        std::vector<bool> out(c.survived.begin(), c.survived.end());
        return out;
      });
  m.def("coupled_sample", &nv::coupled_sample, py::arg("g"), py::arg("params"), py::arg("x0"),
        py::arg("t"), py::arg("seed"));

  py::class_<nv::PairStats>(m, "PairStats")
      .def_readonly("p_meet", &nv::PairStats::p_meet)
      .def_readonly("p_after", &nv::PairStats::p_after);
  m.def("coalescence_probs", &nv::coalescence_probs, py::arg("g"), py::arg("params"), py::arg("u"),
        py::arg("v"), py::arg("t"), py::arg("reps"), py::arg("seed"));

  py::class_<nv::TCorrResult>(m, "TCorrResult")
      .def_readonly("t_corr", &nv::TCorrResult::t_corr)
      .def_readonly("sums", &nv::TCorrResult::sums);
  m.def("estimate_t_corr", &nv::estimate_t_corr, py::arg("g"), py::arg("params"),
        py::arg("t_grid"), py::arg("reps"), py::arg("seed"));

  m.def("stay_prob", &nv::stay_prob, py::arg("g"), py::arg("params"), py::arg("s"), py::arg("t"),
        py::arg("start"), py::arg("reps"), py::arg("seed"));
  m.def("pi_restricted", &nv::pi_restricted, py::arg("g"), py::arg("s"));
  m.def("all_dead_prob", &nv::all_dead_prob, py::arg("g"), py::arg("params"), py::arg("t"),
        py::arg("reps"), py::arg("seed"));
  m.def("estimate_h", &nv::estimate_h, py::arg("g"), py::arg("params"), py::arg("reps"),
        py::arg("seed"));

  // spectral
  py::class_<nv::Spectrum>(m, "Spectrum")
      .def_readonly("n", &nv::Spectrum::n)
      .def_readonly("lambdas", &nv::Spectrum::lambdas)
      .def_readonly("psis", &nv::Spectrum::psis)
      .def_readonly("pi", &nv::Spectrum::pi);
  m.def("eigendecompose", &nv::eigendecompose, py::arg("g"), py::arg("tol") = 1e-11);
  m.def("projections", &nv::projections, py::arg("spectrum"), py::arg("x0"));

  py::class_<nv::AutocorrCurve>(m, "AutocorrCurve")
      .def_readonly("rates", &nv::AutocorrCurve::rates)
      .def_readonly("weights", &nv::AutocorrCurve::weights)
      .def_readonly("n", &nv::AutocorrCurve::n)
      .def_readonly("theta", &nv::AutocorrCurve::theta)
      .def_readonly("q", &nv::AutocorrCurve::q);
  m.def("autocorr_curve", &nv::autocorr_curve, py::arg("spectrum"), py::arg("x0"),
        py::arg("params"));

  py::enum_<nv::Flavor>(m, "Flavor").value("A1", nv::Flavor::A1).value("A2", nv::Flavor::A2);
  m.def("eval_autocorr", &nv::eval_autocorr, py::arg("curve"), py::arg("t"),
        py::arg("flavor") = nv::Flavor::A2);
  m.def("t_x0", &nv::t_x0, py::arg("curve"), py::arg("n_threshold"));

  py::class_<nv::TmixPrediction>(m, "TmixPrediction")
      .def_readonly("value", &nv::TmixPrediction::value)
      .def_readonly("t_x0_value", &nv::TmixPrediction::t_x0_value)
      .def_readonly("noise_value", &nv::TmixPrediction::noise_value)
      .def_readonly("autocorr_branch", &nv::TmixPrediction::autocorr_branch);
  m.def("predicted_tmix", &nv::predicted_tmix, py::arg("curve"), py::arg("n"), py::arg("theta"));

  py::class_<nv::LatticeSpectrum>(m, "LatticeSpectrum")
      .def_readonly("lambda_k", &nv::LatticeSpectrum::lambda_k)
      .def_readonly("lambda_star", &nv::LatticeSpectrum::lambda_star)
      .def_readonly("theta_v", &nv::LatticeSpectrum::theta_v)
      .def_readonly("curve", &nv::LatticeSpectrum::curve)
      .def_readonly("tmix_coefficient", &nv::LatticeSpectrum::tmix_coefficient);
  m.def("lattice_pattern_spectrum", &nv::lattice_pattern_spectrum, py::arg("d"), py::arg("q"),
        py::arg("v"), py::arg("theta"));

  m.def("marginals", &nv::marginals, py::arg("spectrum"), py::arg("x0"), py::arg("params"),
        py::arg("t"));
  m.def("eigenfunction_residual", &nv::eigenfunction_residual, py::arg("g"), py::arg("params"),
        py::arg("spectrum"), py::arg("l"), py::arg("k"), py::arg("x"));

  py::class_<nv::VarianceBounds>(m, "VarianceBounds")
      .def_readonly("formula", &nv::VarianceBounds::formula)
      .def_readonly("lower", &nv::VarianceBounds::lower)
      .def_readonly("upper", &nv::VarianceBounds::upper);
  m.def("stationary_variance", &nv::stationary_variance, py::arg("g"), py::arg("params"),
        py::arg("spectrum"), py::arg("l"), py::arg("k"), py::arg("h"));

  // mixing
  m.def("config_count", &nv::config_count, py::arg("q"), py::arg("n"));
  m.def("encode_config", &nv::encode_config, py::arg("x"));
  m.def("decode_config", &nv::decode_config, py::arg("s"), py::arg("q"), py::arg("n"));

  py::class_<nv::ExactDistribution>(m, "ExactDistribution")
      .def_readonly("q", &nv::ExactDistribution::q)
      .def_readonly("n", &nv::ExactDistribution::n)
      .def_readonly("probs", &nv::ExactDistribution::probs);
  m.def("exact_distribution", &nv::exact_distribution, py::arg("g"), py::arg("params"),
        py::arg("x0"), py::arg("t"), py::arg("tail_tol") = 1e-12);
  m.def("exact_distribution_uniform", &nv::exact_distribution_uniform, py::arg("g"),
        py::arg("params"), py::arg("t"), py::arg("tail_tol") = 1e-12);
  m.def("exact_stationary", &nv::exact_stationary, py::arg("g"), py::arg("params"),
        py::arg("tol") = 1e-12);
  m.def("tv_distance", &nv::tv_distance, py::arg("a"), py::arg("b"));
  m.def("single_site_marginal", &nv::single_site_marginal, py::arg("dist"), py::arg("v"));
  m.def("statistic_r_auto", &nv::statistic_R_auto, py::arg("marg"), py::arg("x"), py::arg("g"));
  m.def("statistic_r_edge", &nv::statistic_R_edge, py::arg("g"), py::arg("marg"), py::arg("x"));
  m.def("empirical_autocorr", &nv::empirical_autocorr, py::arg("g"), py::arg("params"),
        py::arg("x0"), py::arg("t"), py::arg("reps"), py::arg("seed"));

  m.def("substream", &nv::substream, py::arg("seed"), py::arg("k"));
}
