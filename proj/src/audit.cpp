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

#include "ringsim/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "ringsim/add_drop.hpp"
#include "ringsim/attenuation.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/format.hpp"
#include "ringsim/hom.hpp"
#include "ringsim/single_bus.hpp"

namespace ringsim {
namespace {

constexpr std::size_t kInmOrder = 200;
constexpr std::size_t kMaxRedraws = 1000;

CouplerParams random_coupler(PortableRng& rng, double max_magnitude = 1.0) {
  return CouplerParams::from_through(rng.uniform(0.0, max_magnitude), rng.uniform(-kPi, kPi),
                                     rng.uniform(-kPi, kPi));
}

double random_alpha(PortableRng& rng, double lo = 0.05) { return rng.uniform(lo, 1.0); }

// (coupler, ring) with |tau alpha| <= limit.
std::pair<CouplerParams, RingParams> bounded_single_bus(PortableRng& rng, double limit) {
  for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const CouplerParams coupler = random_coupler(rng);
    const RingParams ring = RingParams::from_alpha(random_alpha(rng), rng.uniform(-kPi, kPi));
    if (coupler.through_magnitude() * ring.alpha() <= limit) return {coupler, ring};
  }
  throw NumericalError("could not draw a bounded single-bus sample");
}

AddDropParams random_add_drop(PortableRng& rng, double alpha_lo, double alpha_hi) {
  return {random_coupler(rng), random_coupler(rng),
          RingParams::from_alpha(rng.uniform(alpha_lo, alpha_hi), rng.uniform(-kPi, kPi)),
          std::nullopt};
}

AddDropParams random_real_add_drop(PortableRng& rng, double alpha_lo, double alpha_hi) {
  return make_add_drop(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                       rng.uniform(alpha_lo, alpha_hi), rng.uniform(-kPi, kPi));
}

double max_abs(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

double hermitian_residual(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double density_residual(const Eigen::MatrixXcd& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (rho + rho.adjoint()),
                                                              Eigen::EigenvaluesOnly);
  const double min_eigenvalue = solver.eigenvalues().minCoeff();
  return std::max({std::abs(rho.trace() - 1.0), hermitian_residual(rho),
                   std::max(0.0, -min_eigenvalue)});
}

using Identity = std::function<double(PortableRng&)>;

struct IdentitySpec {
  const char* name;
  double tolerance;
  Identity residual;
};

std::vector<IdentitySpec> identities() {
  return {
      {"continuum_commutator_coefficient", 1e-10,
       [](PortableRng& rng) {
         const auto c = continuum_commutator_coefficient(rng.uniform(0.0, 2.0),
                                                         rng.uniform(0.1, 5.0));
         return std::max(std::abs(c.analytic - 1.0), std::abs(c.quadrature - 1.0));
       }},
      {"piecewise_commutator_coefficient", 1e-10,
       [](PortableRng& rng) {
         std::array<LossSegment, 5> segments;
         for (auto& s : segments) {
           s = {rng.uniform(0.05, 1.0), rng.uniform(0.0, 2.0), rng.uniform(-5.0, 5.0)};
         }
         const auto c = piecewise_commutator_coefficient(segments);
         return std::max(std::abs(c.analytic - 1.0), std::abs(c.quadrature - 1.0));
       }},
      {"commutator_sum_identity", 1e-12,
       [](PortableRng& rng) {
         const auto [coupler, ring] = bounded_single_bus(rng, 0.99);
         const auto sum = commutator_sum_identity(coupler, ring);
         return std::abs(sum.analytic - sum.closed);
       }},
      {"inm_double_sum_order_200", 1e-8,
       [](PortableRng& rng) {
         // The double sum converges like |tau|^{2n}, so |tau| itself is capped.
         const CouplerParams coupler = random_coupler(rng, 0.9);
         const RingParams ring = RingParams::from_alpha(random_alpha(rng), rng.uniform(-kPi, kPi));
         const double brute = inm_bruteforce(coupler, ring, kInmOrder, kInmOrder);
         return std::abs(brute - commutator_sum_identity(coupler, ring).analytic);
       }},
      {"langevin_unitarity", 1e-12,
       [](PortableRng& rng) {
         const LangevinRates rates{rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0), 1.0};
         const auto r = langevin_transfer(rates, rng.uniform(-10.0, 10.0));
         return std::abs(std::norm(r.transfer) + r.noise_power - 1.0);
       }},
      {"match_rates_two_forms", 1e-12,
       [](PortableRng& rng) {
         const double tau = rng.uniform(0.05, 1.0);
         const double alpha = rng.uniform(0.05, 1.0);
         const auto rates = match_rates(tau, alpha, 1.0);
         const auto sd = match_rates_sum_difference(tau, alpha, 1.0);
         const double scale = std::max(1.0, sd.gamma_plus);
         return std::max(std::abs(rates.gamma_plus() - sd.gamma_plus),
                         std::abs(rates.gamma_minus() - sd.gamma_minus)) /
                scale;
       }},
      {"internal_field_consistency", 1e-12,
       [](PortableRng& rng) {
         const auto [coupler, ring] = bounded_single_bus(rng, 0.99);
         const auto fields = rabus_internal_fields(coupler, ring);
         const ComplexAmplitude rebuilt = coupler.through() + coupler.cross() * fields.at_exit;
         return std::abs(rebuilt - ovpa_transfer(coupler, ring).transfer);
       }},
      {"series_tail_bound", 1e-13,
       [](PortableRng& rng) {
         const auto [coupler, ring] = bounded_single_bus(rng, 0.95);
         const auto n = static_cast<std::size_t>(rng.uniform(0.0, 60.0));
         const double gap =
             std::abs(ovpa_transfer_series(coupler, ring, n) - ovpa_transfer(coupler, ring).transfer);
         return std::max(0.0, gap - series_tail_bound(coupler, ring, n));
       }},
      {"noise_commutators_equal_identity_minus_mmdag", 1e-12,
       [](PortableRng& rng) {
         const TransferMatrix2 m = transfer_matrix(random_add_drop(rng, 0.05, 1.0));
         const Eigen::Matrix2cd expected = Eigen::Matrix2cd::Identity() - m.m * m.m.adjoint();
         return max_abs(noise_commutators(m).comm - expected);
       }},
      {"lossless_transfer_unitary", 1e-12,
       [](PortableRng& rng) {
         const TransferMatrix2 m = transfer_matrix(random_real_add_drop(rng, 1.0, 1.0));
         return max_abs(m.m * m.m.adjoint() - Eigen::Matrix2cd::Identity());
       }},
      {"sector_normalization", 1e-10,
       [](PortableRng& rng) {
         const auto d = analyze_two_photon(random_real_add_drop(rng, 0.25, 0.999)).density;
         return std::abs(d.p0 + d.p1 + d.p2 - 1.0);
       }},
      {"vacuum_weight_wick", 1e-8,
       [](PortableRng& rng) {
         const auto d = analyze_two_photon(random_real_add_drop(rng, 0.25, 0.999)).density;
         return std::abs(d.p0_wick - d.p0);
       }},
      {"reduced_density_sanity", 1e-10,
       [](PortableRng& rng) {
         const auto d = analyze_two_photon(random_real_add_drop(rng, 0.25, 0.999)).density;
         double residual = density_residual(d.rho2);
         if (d.rho1) residual = std::max(residual, density_residual(*d.rho1));
         return residual;
       }},
      {"lossless_p11_dual_route", 1e-8,
       [](PortableRng& rng) {
         const AddDropParams params = random_real_add_drop(rng, 1.0, 1.0);
         return std::max(std::abs(p11_closed(params) - p11_from_state(params)),
                         std::abs(p11_closed(params) - p11_lossless_ratio(params)));
       }},
      {"p11_closed_equals_perm_over_det", 1e-8,
       [](PortableRng& rng) {
         const AddDropParams params = random_real_add_drop(rng, 0.25, 1.0);
         const Eigen::Matrix2cd m = transfer_matrix(params).m;
         const double expected = std::norm(permanent2(m) / m.determinant());
         return std::abs(p11_closed(params) - expected) / std::max(1.0, expected);
       }},
      {"one_photon_entropy_bounds", 1e-12,
       [](PortableRng& rng) {
         const auto s = entropy_one_photon(
             analyze_two_photon(random_real_add_drop(rng, 0.25, 0.999)).density);
         if (!s) return 0.0;
         return std::max({0.0, -*s, *s - 1.0});
       }},
      {"lossless_reflection_unimodular", 1e-10,
       [](PortableRng& rng) {
         // Redraw where the c_in quadratic has no real root.
         for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
           const auto count = 2 + static_cast<std::size_t>(rng.uniform(0.0, 2.0));
           std::vector<ResonanceSpec> resonances;
           for (std::size_t j = 0; j < count; ++j) {
             resonances.push_back({rng.uniform(-10.0, 10.0), rng.uniform(0.1, 3.0), 0.0});
           }
           try {
             const ComplexAmplitude r = haus_reflection(resonances, rng.uniform(-15.0, 15.0));
             return std::abs(std::abs(r) - 1.0);
           } catch (const NumericalError&) {
           }
         }
         throw NumericalError("no resonance set with a real c_in root");
       }},
  };
}

}  // namespace

bool AuditReport::passed() const {
  return std::all_of(records.begin(), records.end(),
                     [](const AuditRecord& r) { return r.passed(); });
}

AuditReport run_audit(std::uint64_t seed, std::size_t samples) {
  if (samples == 0) throw ConfigError("audit needs at least one sample");
  AuditReport report;
  report.seed = seed;
  report.samples = samples;
  std::uint64_t stream = 0;
  for (const auto& spec : identities()) {
    // Separate stream per identity so adding one does not shift the others.
    PortableRng rng(seed * 0x9E3779B97F4A7C15ULL + ++stream);
    AuditRecord record{spec.name, samples, 0.0, spec.tolerance};
    for (std::size_t i = 0; i < samples; ++i) {
      double residual = std::numeric_limits<double>::infinity();
      try {
        residual = spec.residual(rng);
      } catch (const Error&) {
      }
      if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
      record.max_residual = std::max(record.max_residual, residual);
    }
    report.records.push_back(record);
  }
  return report;
}

std::string render_audit_csv(const AuditReport& report) {
  std::string out = "# audit: seed=" + std::to_string(report.seed) +
                    " samples=" + std::to_string(report.samples) + "\n";
  out += "identity,samples,max_residual,tolerance,status\n";
  for (const auto& r : report.records) {
    out += r.identity + ',' + std::to_string(r.samples) + ',' + format_double(r.max_residual) +
           ',' + format_double(r.tolerance) + ',' + (r.passed() ? "pass" : "fail") + '\n';
  }
  return out;
}

}  // namespace ringsim
