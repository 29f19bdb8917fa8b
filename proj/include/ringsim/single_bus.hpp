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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ringsim/core.hpp"

namespace ringsim {

/// Through amplitude A_{a->c} of a single-bus ring and the power carried by
/// its noise operator, 1 - |A|^2.
struct SingleBusResponse {
  ComplexAmplitude transfer;
  double noise_power = 0.0;
};

/// Closed-form transfer (tau - alpha e^{i theta}) / (1 - tau* alpha e^{i theta}).
SingleBusResponse ovpa_transfer(const CouplerParams& coupler, const RingParams& ring);

/// tau - |kappa|^2 alpha e^{i theta} sum_{n=0}^{n_max} (tau* alpha e^{i theta})^n
ComplexAmplitude ovpa_transfer_series(const CouplerParams& coupler, const RingParams& ring,
                                      std::size_t n_max);

/// |kappa|^2 alpha |tau alpha|^{n_max+1} / (1 - |tau alpha|)
double series_tail_bound(const CouplerParams& coupler, const RingParams& ring,
                         std::size_t n_max);

/// Ring fields just after the input junction (P) and just before it (Q) for a
/// unit input amplitude.
struct InternalFields {
  ComplexAmplitude at_entry;  // a_P
  ComplexAmplitude at_exit;   // a_Q
};

InternalFields rabus_internal_fields(const CouplerParams& coupler, const RingParams& ring);

/// Coupling and internal decay rates of a single-mode cavity.
struct LangevinRates {
  double gamma_c = 0.0;          // 1/s
  double gamma_int = 0.0;        // 1/s
  double round_trip_time = 0.0;  // s

  double gamma_plus() const noexcept { return 0.5 * (gamma_c + gamma_int); }
  double gamma_minus() const noexcept { return 0.5 * (gamma_c - gamma_int); }
};

/// (gamma_- + i delta) / (gamma_+ - i delta) with noise power
/// gamma_c gamma_int / (gamma_+^2 + delta^2).
SingleBusResponse langevin_transfer(const LangevinRates& rates, double delta);

/// Rates that reproduce the ring response to second order in detuning.
LangevinRates match_rates(double tau_magnitude, double alpha, double round_trip_time);

/// gamma_+ and gamma_- from the sum/difference form, for cross-checking the
/// gamma_c / gamma_int form returned by match_rates.
struct SumDifferenceRates {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
};
SumDifferenceRates match_rates_sum_difference(double tau_magnitude, double alpha,
                                              double round_trip_time);

struct PowerComparisonRow {
  double detuning = 0.0;  // rad/s
  double ovpa = 0.0;
  double langevin = 0.0;
  double relative_difference = 0.0;  // |ovpa - langevin| / langevin
};

/// Through power of the ring at theta = arg(tau) + T_R delta next to the
/// Lorentzian (gamma_-^2 + delta^2) / (gamma_+^2 + delta^2) with matched rates.
std::vector<PowerComparisonRow> power_ratio_comparison(const CouplerParams& coupler,
                                                       const RingParams& ring,
                                                       double round_trip_time,
                                                       std::span<const double> detunings);

/// Detunings with |delta T_R| log-spaced over [1e-4, pi], both signs,
/// ascending.  Returns 2 * points_per_sign values.
std::vector<double> detuning_grid(std::size_t points_per_sign, double round_trip_time);

/// Noise-operator commutator coefficient written two ways.
struct CommutatorSum {
  double analytic = 0.0;  // |kappa|^2 (1 - alpha^2) / |1 - |tau| alpha e^{i theta'}|^2
  double closed = 0.0;    // 1 - |A_{a->c}|^2
};

CommutatorSum commutator_sum_identity(const CouplerParams& coupler, const RingParams& ring);

/// Overlap of the noise picked up on n and on m extra circulations:
/// |kappa|^4 x^n conj(x)^m (alpha^{|n-m|} - alpha^{n+m+2}), x = tau* e^{i theta}.
ComplexAmplitude inm_term(const CouplerParams& coupler, const RingParams& ring, std::size_t n,
                          std::size_t m);

/// Truncated sum over 0 <= n <= n_max, 0 <= m <= m_max of I_{n,m}, arranged as
/// the diagonal plus twice the real part of the lower triangle.  Terms without
/// a mirrored partner inside the box contribute their real part.
double inm_bruteforce(const CouplerParams& coupler, const RingParams& ring, std::size_t n_max,
                      std::size_t m_max);

/// Diagonal part |kappa|^4 sum_{n<=n_max} |tau|^{2n} (1 - alpha^{2(n+1)}).
double inm_diagonal_sum(const CouplerParams& coupler, const RingParams& ring,
                        std::size_t n_max);

struct ResonanceSpec {
  double omega_0 = 0.0;    // rad/s
  double gamma_c = 0.0;    // 1/s
  double gamma_int = 0.0;  // 1/s
};

/// L_j = gamma_c / (gamma_+ - i (omega - omega_0)).
ComplexAmplitude complex_lorentzian(const ResonanceSpec& resonance, double omega);

/// Constant background c_in making a lossless multi-resonance reflection
/// unimodular.  All gamma_int must be zero.
double solve_cin(std::span<const ResonanceSpec> resonances, double omega);

/// Cavity reflection coefficient.  One resonance gives the exact
/// (gamma_- + i delta) / (gamma_+ - i delta); several use c_in + sum_j L_j with
/// c_in taken from the lossless copies of the resonances.
ComplexAmplitude haus_reflection(std::span<const ResonanceSpec> resonances, double omega);

}  // namespace ringsim
