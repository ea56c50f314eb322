#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fishvia/export.hpp"
#include "fishvia/nash_oracle.hpp"
#include "fishvia/scenario.hpp"
#include "fishvia/simulation.hpp"
#include "fishvia/verification.hpp"
#include "fishvia/viability.hpp"

namespace py = pybind11;
using namespace fishvia;

namespace {

TrajectoryRecord run(const Scenario& s) {
  return simulate(s.econ, s.recruitment(), s.bounds, s.strategy, s.control, s.sim);
}

template <typename F>
std::vector<double> column(const TrajectoryRecord& rec, F f) {
  std::vector<double> out;
  out.reserve(rec.samples.size());
  for (const auto& s : rec.samples) out.push_back(f(s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_fishvia, m) {
  m.doc() = "Negotiated fishery harvests, viability analysis and control simulation";

  py::class_<EconParams>(m, "EconParams")
      .def(py::init<>())
      .def_readwrite("alpha1", &EconParams::alpha1)
      .def_readwrite("alpha2", &EconParams::alpha2)
      .def_readwrite("beta1", &EconParams::beta1)
      .def_readwrite("beta2", &EconParams::beta2)
      .def_readwrite("kappa1", &EconParams::kappa1)
      .def_readwrite("kappa2", &EconParams::kappa2)
      .def_readwrite("price", &EconParams::price);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("econ", &Scenario::econ)
      .def_readwrite("growth", &Scenario::growth)
      .def_readwrite("capacity", &Scenario::capacity)
      .def("set", [](Scenario& s, const std::string& field, const std::string& value) { set_field(s, field, value); })
      .def("serialize", [](const Scenario& s) { return serialize(s); })
      .def_property_readonly("strategy", [](const Scenario& s) { return std::string(to_string(s.strategy)); })
      .def_property_readonly("x_lo", [](const Scenario& s) { return s.bounds.x_lo; })
      .def_property_readonly("h_lo", [](const Scenario& s) { return s.bounds.h_lo; });

  m.def("load_scenario", [](const std::filesystem::path& p) { return load_scenario(p); });
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); });

  m.def("r_hat", &r_hat, py::arg("params"), py::arg("x"));
  m.def(
      "total_harvest",
      [](const EconParams& p, double x, double r) {
        const auto o = total_harvest(p, x, r);
        return py::dict(py::arg("h") = o.h, py::arg("q1") = o.q1, py::arg("q2") = o.q2,
                        py::arg("regime") = std::string(to_string(o.regime)));
      },
      py::arg("params"), py::arg("x"), py::arg("r"));
  m.def(
      "equilibrium",
      [](const EconParams& p, double x, double r) {
        const auto o = equilibrium(p, x, r);
        return py::dict(py::arg("q1") = o.q1, py::arg("q2") = o.q2, py::arg("converged") = o.converged,
                        py::arg("residual") = o.residual);
      },
      py::arg("params"), py::arg("x"), py::arg("r"));

  m.def("check_viability", [](const Scenario& s) {
    const auto v = check_viability_domain(s.econ, s.recruitment(), s.bounds);
    return py::dict(py::arg("viable") = v.viable, py::arg("margin_profitable") = v.margin_profitable,
                    py::arg("margin_sustainable") = v.margin_sustainable,
                    py::arg("margin_reducible") = v.margin_reducible);
  });
  m.def("critical_levels", [](const Scenario& s) {
    const auto lv = critical_levels(s.econ, s.recruitment(), s.bounds);
    return py::dict(py::arg("a") = lv.a, py::arg("b") = lv.b, py::arg("c") = lv.c,
                    py::arg("case_order") = std::string(to_string(lv.case_order)));
  });

  py::class_<TrajectoryRecord>(m, "Trajectory")
      .def_property_readonly("t", [](const TrajectoryRecord& r) { return column(r, [](auto& s) { return s.t; }); })
      .def_property_readonly("x", [](const TrajectoryRecord& r) { return column(r, [](auto& s) { return s.x; }); })
      .def_property_readonly("r", [](const TrajectoryRecord& r) { return column(r, [](auto& s) { return s.r; }); })
      .def_property_readonly("h", [](const TrajectoryRecord& r) { return column(r, [](auto& s) { return s.h; }); })
      .def_property_readonly("events",
                             [](const TrajectoryRecord& r) {
                               std::vector<std::tuple<double, std::string, std::string>> out;
                               for (const auto& e : r.events) out.emplace_back(e.t, std::string(to_string(e.kind)), e.which);
                               return out;
                             })
      .def_readonly("terminal_x", &TrajectoryRecord::terminal_x)
      .def_readonly("mean_h_final_half", &TrajectoryRecord::mean_h_final_half)
      .def_property_readonly("violated", &TrajectoryRecord::violated);

  m.def("simulate", &run, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
  m.def("trajectory_csv", &trajectory_csv);
  m.def("events_json", &events_json);

  m.def(
      "verify",
      [](std::uint64_t seed, long instances) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.instances = instances;
        std::vector<SuiteResult> results;
        {
          py::gil_scoped_release release;
          results = verify_all(opt);
        }
        py::dict out;
        for (const auto& r : results) out[py::str(r.name)] = py::make_tuple(r.passed, r.total, r.ok());
        return out;
      },
      py::arg("seed") = kDefaultSeed, py::arg("instances") = 0);
}
