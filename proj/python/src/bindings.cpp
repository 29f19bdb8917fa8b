/*
 * Copyright 2026 The ringsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ringsim/add_drop.hpp"
#include "ringsim/attenuation.hpp"
#include "ringsim/audit.hpp"
#include "ringsim/core.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/hom.hpp"
#include "ringsim/single_bus.hpp"
#include "ringsim/sweep.hpp"

namespace py = pybind11;
using namespace ringsim;

PYBIND11_MODULE(_ringsim, m) {
  m.doc() = "Lossy ring resonator transfer functions, noise and two-photon statistics.";

  auto base = py::register_exception<Error>(m, "RingsimError");
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<ResonantDivergenceError>(m, "ResonantDivergenceError", base);
  py::register_exception<UnitarityViolation>(m, "UnitarityViolation", base);
  py::register_exception<UndefinedProbabilityError>(m, "UndefinedProbabilityError", base);

  py::class_<CouplerParams>(m, "Coupler")
      .def(py::init<ComplexAmplitude, ComplexAmplitude>(), py::arg("through"), py::arg("cross"))
      .def_static("from_through", &CouplerParams::from_through, py::arg("magnitude"),
                  py::arg("through_phase") = 0.0, py::arg("cross_phase") = 0.0)
      .def_property_readonly("through", &CouplerParams::through)
      .def_property_readonly("cross", &CouplerParams::cross);

  py::class_<RingParams>(m, "Ring")
      .def_static("from_alpha", &RingParams::from_alpha, py::arg("alpha"), py::arg("theta"),
                  py::arg("circumference") = 1.0)
      .def_static("from_theta", &RingParams::from_theta, py::arg("circumference"), py::arg("loss"),
                  py::arg("theta"))
      .def_property_readonly("alpha", &RingParams::alpha)
      .def_property_readonly("theta", &RingParams::theta)
      .def_property_readonly("loss", &RingParams::loss);

  m.def("single_bus", [](const CouplerParams& c, const RingParams& r) {
    const auto s = ovpa_transfer(c, r);
    return py::make_tuple(s.transfer, s.noise_power);
  }, py::arg("coupler"), py::arg("ring"), "Through amplitude and noise power of a single-bus ring.");

  m.def("commutator_sum", [](const CouplerParams& c, const RingParams& r) {
    return commutator_sum_identity(c, r).analytic;
  }, py::arg("coupler"), py::arg("ring"));

  m.def("match_rates", [](double tau, double alpha, double round_trip_time) {
    const auto r = match_rates(tau, alpha, round_trip_time);
    return py::make_tuple(r.gamma_c, r.gamma_int);
  }, py::arg("tau"), py::arg("alpha"), py::arg("round_trip_time"));

  m.def("continuum_commutator", [](double loss, double length) {
    const auto c = continuum_commutator_coefficient(loss, length);
    return py::make_tuple(c.analytic, c.quadrature);
  }, py::arg("loss"), py::arg("length"));

  m.def("add_drop", &make_add_drop, py::arg("tau"), py::arg("eta"), py::arg("alpha"), py::arg("theta"));
  py::class_<AddDropParams>(m, "AddDrop");

  m.def("transfer_matrix", [](const AddDropParams& p) { return Eigen::Matrix2cd(transfer_matrix(p).m); },
        py::arg("params"), "Rows (c, d), columns (a, b).");
  m.def("noise_commutators", [](const AddDropParams& p) {
    return Eigen::Matrix2cd(noise_commutators(transfer_matrix(p)).comm);
  }, py::arg("params"));

  m.def("p11", &p11_from_state, py::arg("params"));
  m.def("p11_closed", &p11_closed, py::arg("params"));
  m.def("coincidence_probability", &coincidence_probability, py::arg("params"));

  m.def("sectors", [](const AddDropParams& p) {
    const SectorDensity d = analyze_two_photon(p).density;
    py::dict out;
    out["p0"] = d.p0;
    out["p1"] = d.p1;
    out["p2"] = d.p2;
    out["rho2"] = Eigen::MatrixXcd(d.rho2);
    out["rho1"] = d.rho1 ? py::cast(Eigen::MatrixXcd(*d.rho1)) : py::none();
    out["entropy_bits"] = entropy_one_photon(d);
    return out;
  }, py::arg("params"), "Sector probabilities and reduced densities for |1_a, 1_b>.");

  m.def("mode_names", &mode_names);
  m.def("_sweep_json", [](const std::string& mode, const std::vector<std::string>& overrides,
                          std::size_t workers) {
    const SweepConfig c = load_config(parse_mode(mode), std::nullopt, overrides);
    SweepTable table;
    {
      py::gil_scoped_release release;
      table = run_sweep(c, workers);
    }
    return render_json(config_echo(c), table);
  }, py::arg("mode"), py::arg("overrides"), py::arg("workers"));

  m.def("audit", [](std::uint64_t seed, std::size_t samples) {
    const AuditReport r = run_audit(seed, samples);
    py::list rows;
    for (const auto& rec : r.records) {
      rows.append(py::make_tuple(rec.identity, rec.max_residual, rec.tolerance, rec.passed()));
    }
    return py::make_tuple(r.passed(), rows);
  }, py::arg("seed") = 0, py::arg("samples") = 1000);
}
