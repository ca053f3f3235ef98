// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crnoma/channel.hpp"
#include "crnoma/closed_form.hpp"
#include "crnoma/config.hpp"
#include "crnoma/error.hpp"
#include "crnoma/montecarlo.hpp"
#include "crnoma/oracle.hpp"
#include "crnoma/random.hpp"
#include "crnoma/records_io.hpp"
#include "crnoma/sweep.hpp"

namespace py = pybind11;
using namespace crnoma;

namespace {

py::dict estimate_dict(const McEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.std_error;
  d["n"] = e.n;
  d["seed"] = e.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core: closed forms, numerical oracle, Monte Carlo and sweeps";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());

  py::enum_<Scheme>(m, "Scheme")
      .value("HSIC_PA", Scheme::HsicPa)
      .value("FSIC_PA", Scheme::FsicPa)
      .value("HSIC_NPA", Scheme::HsicNpa)
      .def("__str__", [](Scheme s) { return std::string(to_string(s)); });

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<int, double, double, double, double>(), py::arg("m"), py::arg("p0"),
           py::arg("ps"), py::arg("r0"), py::arg("rs"))
      .def_static("from_snr_db", &SystemConfig::from_snr_db, py::arg("m"), py::arg("snr_db"),
                  py::arg("rho") = 1.0, py::arg("r0") = 1.0, py::arg("rs") = 1.0)
      .def_property_readonly("m", &SystemConfig::m)
      .def_property_readonly("p0", &SystemConfig::p0)
      .def_property_readonly("ps", &SystemConfig::ps)
      .def_property_readonly("r0", &SystemConfig::r0)
      .def_property_readonly("rs", &SystemConfig::rs)
      .def_property_readonly("alpha0", &SystemConfig::alpha0)
      .def_property_readonly("alpha_s", &SystemConfig::alpha_s)
      .def_property_readonly("alpha1", &SystemConfig::alpha1);

  m.def("outage_hsic_pa_exact", [](const SystemConfig& c) { return outage_hsic_pa_exact(c).value; });
  m.def("outage_hsic_pa_approx1", [](const SystemConfig& c) { return outage_hsic_pa_approx1(c).value; });
  m.def("outage_hsic_pa_approx2", [](const SystemConfig& c) { return outage_hsic_pa_approx2(c).value; });
  m.def("outage_fsic_pa_exact", [](const SystemConfig& c) { return outage_fsic_pa_exact(c).value; });
  m.def("outage_fsic_pa_approx", [](const SystemConfig& c) { return outage_fsic_pa_approx(c).value; });
  m.def("p_type2", [](const SystemConfig& c) { return p_type2(c).value; });
  m.def("p_better", [](const SystemConfig& c) { return p_better(c).value; });
  m.def("p_worse_fsic", [](const SystemConfig& c) { return p_worse_fsic(c).value; });

  m.def("oracle_outage",
        [](Scheme s, const SystemConfig& c, double tol) { return oracle::outage_numeric(s, c, tol).value; },
        py::arg("scheme"), py::arg("config"), py::arg("tol") = oracle::kDefaultTolerance);

  m.def("estimate_outage",
        [](Scheme s, const SystemConfig& c, std::uint64_t n, std::uint64_t seed) {
          McEstimate e;
          {
            py::gil_scoped_release release;
            e = estimate_outage(s, c, n, seed);
          }
          return estimate_dict(e);
        },
        py::arg("scheme"), py::arg("config"), py::arg("n"), py::arg("seed") = 1);
  m.def("estimate_ergodic_rate",
        [](Scheme s, const SystemConfig& c, std::uint64_t n, std::uint64_t seed) {
          return estimate_dict(estimate_ergodic_rate(s, c, n, seed));
        },
        py::arg("scheme"), py::arg("config"), py::arg("n"), py::arg("seed") = 1);
  m.def("estimate_p_type2",
        [](const SystemConfig& c, std::uint64_t n, std::uint64_t seed) {
          return estimate_dict(estimate_p_type2(c, n, seed));
        },
        py::arg("config"), py::arg("n"), py::arg("seed") = 1);
  m.def("estimate_better_worse",
        [](const SystemConfig& c, std::uint64_t n, std::uint64_t seed) {
          const BetterWorse bw = estimate_better_worse(c, n, seed);
          py::dict d;
          d["better"] = estimate_dict(bw.better);
          d["worse"] = estimate_dict(bw.worse);
          d["better_fsic"] = estimate_dict(bw.better_fsic);
          return d;
        },
        py::arg("config"), py::arg("n"), py::arg("seed") = 1);

  m.def("simulate_draw",
        [](Scheme s, const SystemConfig& c, std::uint64_t seed) {
          Philox4x32 rng(seed);
          const ChannelDraw draw = sample_channel(c, rng);
          const ServedOutcome o = evaluate_scheme(s, draw, c);
          py::dict d;
          d["g2"] = draw.g2;
          d["h2"] = draw.h2;
          d["served_index"] = o.served_index;
          d["rate"] = o.rate;
          d["beta"] = o.beta;
          d["stage"] = std::string(to_string(o.stage));
          d["user_type"] = std::string(to_string(o.user_type));
          return d;
        },
        py::arg("scheme"), py::arg("config"), py::arg("seed") = 1);

  m.def("figure_preset_json", [](const std::string& id) { return spec_to_json(figure_preset(id)); },
        "Figure preset as a JSON sweep description");
  m.def("run_sweep_csv",
        [](const std::string& spec_json, int workers) {
          const SweepSpec spec = spec_from_json(spec_json);
          std::vector<SweepRecord> records;
          {
            py::gil_scoped_release release;
            records = run_sweep(spec, workers);
          }
          return to_csv(records);
        },
        py::arg("spec_json"), py::arg("workers") = 0, "Runs a JSON sweep description; returns CSV text");
}
