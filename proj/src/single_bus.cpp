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

#include "ringsim/single_bus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ringsim/errors.hpp"

namespace ringsim {
namespace {

constexpr double kResonantTolerance = 1e-14;

// Transfer with the coupler phase factored out; x = theta - arg(tau).
//   e^{i arg tau} (|tau| - alpha e^{ix}) / (1 - |tau| alpha e^{ix})
ComplexAmplitude rotated_transfer(double tau_magnitude, double tau_phase, double alpha,
                                  double x) {
  const ComplexAmplitude em1 = unit_phasor_minus_one(x);
  const double loop = tau_magnitude * alpha;
  const ComplexAmplitude numerator = (tau_magnitude - alpha) - alpha * em1;
  const ComplexAmplitude denominator = (1.0 - loop) - loop * em1;
  if (std::abs(denominator) < kResonantTolerance) {
    throw ResonantDivergenceError(
        "1 - tau* alpha e^{i theta} vanishes: lossless ring with unit through coupling");
  }
  return std::polar(1.0, tau_phase) * numerator / denominator;
}

ComplexAmplitude transfer_amplitude(const CouplerParams& coupler, const RingParams& ring) {
  return rotated_transfer(coupler.through_magnitude(), coupler.through_phase(), ring.alpha(),
                          ring.theta() - coupler.through_phase());
}

double clamp_unit(double value) { return std::clamp(value, 0.0, 1.0); }

void check_positive_rates(double gamma_c, double gamma_int) {
  if (!(gamma_c >= 0.0) || !(gamma_int >= 0.0) || !std::isfinite(gamma_c) ||
      !std::isfinite(gamma_int)) {
    throw DomainError("decay rates must be finite and non-negative");
  }
}

}  // namespace

SingleBusResponse ovpa_transfer(const CouplerParams& coupler, const RingParams& ring) {
  const ComplexAmplitude transfer = transfer_amplitude(coupler, ring);
  return {transfer, clamp_unit(1.0 - std::norm(transfer))};
}

ComplexAmplitude ovpa_transfer_series(const CouplerParams& coupler, const RingParams& ring,
                                      std::size_t n_max) {
  const ComplexAmplitude loop = std::conj(coupler.through()) * ring.round_trip();
  return coupler.through() -
         coupler.cross_power() * ring.round_trip() * geometric_sum_truncated(loop, n_max);
}

double series_tail_bound(const CouplerParams& coupler, const RingParams& ring,
                         std::size_t n_max) {
  const double modulus = coupler.through_magnitude() * ring.alpha();
  return coupler.cross_power() * ring.alpha() * geometric_tail_bound(modulus, n_max);
}

InternalFields rabus_internal_fields(const CouplerParams& coupler, const RingParams& ring) {
  const double x = ring.theta() - coupler.through_phase();
  const double loop = coupler.through_magnitude() * ring.alpha();
  const ComplexAmplitude denominator = (1.0 - loop) - loop * unit_phasor_minus_one(x);
  if (std::abs(denominator) < kResonantTolerance) {
    throw ResonantDivergenceError("internal ring field diverges at tau* alpha e^{i theta} = 1");
  }
  const ComplexAmplitude at_entry = -std::conj(coupler.cross()) / denominator;
  return {at_entry, at_entry * ring.round_trip()};
}

SingleBusResponse langevin_transfer(const LangevinRates& rates, double delta) {
  check_positive_rates(rates.gamma_c, rates.gamma_int);
  const double gp = rates.gamma_plus();
  const double gm = rates.gamma_minus();
  if (gp == 0.0 && delta == 0.0) {
    throw UndefinedProbabilityError("Langevin transfer undefined at gamma_+ = 0, delta = 0");
  }
  const ComplexAmplitude transfer = ComplexAmplitude(gm, delta) / ComplexAmplitude(gp, -delta);
  const double noise = rates.gamma_c * rates.gamma_int / (gp * gp + delta * delta);
  return {transfer, noise};
}

LangevinRates match_rates(double tau_magnitude, double alpha, double round_trip_time) {
  if (!(tau_magnitude > 0.0 && tau_magnitude <= 1.0)) {
    throw DomainError("match_rates needs 0 < |tau| <= 1");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("match_rates needs 0 < alpha <= 1");
  }
  if (!(round_trip_time > 0.0) || !std::isfinite(round_trip_time)) {
    throw DomainError("round-trip time must be positive");
  }
  const double root = std::sqrt(alpha * tau_magnitude);
  return {(1.0 + alpha) * (1.0 - tau_magnitude) / (root * round_trip_time),
          (1.0 - alpha) * (1.0 + tau_magnitude) / (root * round_trip_time), round_trip_time};
}

SumDifferenceRates match_rates_sum_difference(double tau_magnitude, double alpha,
                                              double round_trip_time) {
  // Same validation as the gamma_c / gamma_int form.
  (void)match_rates(tau_magnitude, alpha, round_trip_time);
  const double root = std::sqrt(alpha * tau_magnitude);
  return {(1.0 - alpha * tau_magnitude) / (root * round_trip_time),
          (alpha - tau_magnitude) / (root * round_trip_time)};
}

std::vector<PowerComparisonRow> power_ratio_comparison(const CouplerParams& coupler,
                                                       const RingParams& ring,
                                                       double round_trip_time,
                                                       std::span<const double> detunings) {
  const double tau = coupler.through_magnitude();
  const LangevinRates rates = match_rates(tau, ring.alpha(), round_trip_time);
  const double gp = rates.gamma_plus();
  const double gm = rates.gamma_minus();

  std::vector<PowerComparisonRow> rows;
  rows.reserve(detunings.size());
  for (double delta : detunings) {
    const ComplexAmplitude a =
        rotated_transfer(tau, coupler.through_phase(), ring.alpha(), round_trip_time * delta);
    const double ovpa = std::norm(a);
    const double langevin = (gm * gm + delta * delta) / (gp * gp + delta * delta);
    const double diff = std::abs(ovpa - langevin);
    double relative = 0.0;
    if (langevin > 0.0) {
      relative = diff / langevin;
    } else if (diff > 0.0) {
      relative = std::numeric_limits<double>::infinity();
    }
    rows.push_back({delta, ovpa, langevin, relative});
  }
  return rows;
}

std::vector<double> detuning_grid(std::size_t points_per_sign, double round_trip_time) {
  if (points_per_sign < 2) {
    throw DomainError("detuning grid needs at least two points per sign");
  }
  if (!(round_trip_time > 0.0)) {
    throw DomainError("round-trip time must be positive");
  }
  const double lo = std::log(1e-4);
  const double hi = std::log(kPi);
  std::vector<double> positive(points_per_sign);
  for (std::size_t i = 0; i < points_per_sign; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points_per_sign - 1);
    positive[i] = std::exp(lo + t * (hi - lo)) / round_trip_time;
  }
  positive.back() = kPi / round_trip_time;
  std::vector<double> grid;
  grid.reserve(2 * points_per_sign);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) grid.push_back(-*it);
  grid.insert(grid.end(), positive.begin(), positive.end());
  return grid;
}

CommutatorSum commutator_sum_identity(const CouplerParams& coupler, const RingParams& ring) {
  const double tau = coupler.through_magnitude();
  const double alpha = ring.alpha();
  if (!(tau * alpha < 1.0)) {
    throw ResonantDivergenceError("commutator sum needs |tau alpha| < 1");
  }
  const double x = ring.theta() - coupler.through_phase();
  const double half = std::sin(0.5 * x);
  // |1 - r e^{ix}|^2 = (1 - r)^2 + 4 r sin^2(x/2)
  const double loop = tau * alpha;
  const double denominator = (1.0 - loop) * (1.0 - loop) + 4.0 * loop * half * half;
  const double analytic =
      coupler.cross_power() * (1.0 - alpha) * (1.0 + alpha) / denominator;
  return {analytic, ovpa_transfer(coupler, ring).noise_power};
}

ComplexAmplitude inm_term(const CouplerParams& coupler, const RingParams& ring, std::size_t n,
                          std::size_t m) {
  const ComplexAmplitude x = std::conj(coupler.through()) * std::polar(1.0, ring.theta());
  const double alpha = ring.alpha();
  const double gap = static_cast<double>(n > m ? n - m : m - n);
  const double overlap =
      std::pow(alpha, gap) - std::pow(alpha, static_cast<double>(n + m + 2));
  const double k2 = coupler.cross_power();
  return k2 * k2 * std::pow(x, static_cast<double>(n)) *
         std::pow(std::conj(x), static_cast<double>(m)) * overlap;
}

double inm_bruteforce(const CouplerParams& coupler, const RingParams& ring, std::size_t n_max,
                      std::size_t m_max) {
  const ComplexAmplitude x = std::conj(coupler.through()) * std::polar(1.0, ring.theta());
  const double alpha = ring.alpha();
  const std::size_t top = std::max(n_max, m_max);

  // Power tables: x^n, alpha^k for k up to 2 top + 2.
  std::vector<ComplexAmplitude> x_pow(top + 1);
  std::vector<double> a_pow(2 * top + 3);
  x_pow[0] = 1.0;
  for (std::size_t i = 1; i <= top; ++i) x_pow[i] = x_pow[i - 1] * x;
  a_pow[0] = 1.0;
  for (std::size_t i = 1; i < a_pow.size(); ++i) a_pow[i] = a_pow[i - 1] * alpha;

  auto term = [&](std::size_t n, std::size_t m) {
    const std::size_t gap = n > m ? n - m : m - n;
    return x_pow[n] * std::conj(x_pow[m]) * (a_pow[gap] - a_pow[n + m + 2]);
  };

  double diagonal = 0.0;
  double off = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t m = 0; m <= m_max; ++m) {
      if (n == m) {
        diagonal += term(n, m).real();
      } else if (m < n) {
        // I_{m,n} = conj(I_{n,m}) pairs with it when (m, n) is inside the box.
        off += (n <= m_max ? 2.0 : 1.0) * term(n, m).real();
      } else if (m > n_max) {
        off += term(n, m).real();
      }
    }
  }
  const double k2 = coupler.cross_power();
  return k2 * k2 * (diagonal + off);
}

double inm_diagonal_sum(const CouplerParams& coupler, const RingParams& ring,
                        std::size_t n_max) {
  const double t2 = std::norm(coupler.through());
  const double a2 = ring.alpha() * ring.alpha();
  double sum = 0.0;
  double t_pow = 1.0;
  double a_pow = a2;
  for (std::size_t n = 0; n <= n_max; ++n) {
    sum += t_pow * (1.0 - a_pow);
    t_pow *= t2;
    a_pow *= a2;
  }
  const double k2 = coupler.cross_power();
  return k2 * k2 * sum;
}

ComplexAmplitude complex_lorentzian(const ResonanceSpec& resonance, double omega) {
  check_positive_rates(resonance.gamma_c, resonance.gamma_int);
  const double gp = 0.5 * (resonance.gamma_c + resonance.gamma_int);
  const double delta = omega - resonance.omega_0;
  if (gp == 0.0 && delta == 0.0) {
    throw UndefinedProbabilityError("Lorentzian undefined at zero width and zero detuning");
  }
  return resonance.gamma_c / ComplexAmplitude(gp, -delta);
}

double solve_cin(std::span<const ResonanceSpec> resonances, double omega) {
  if (resonances.empty()) {
    throw DomainError("solve_cin needs at least one resonance");
  }
  std::vector<ComplexAmplitude> lorentzians;
  lorentzians.reserve(resonances.size());
  for (const auto& resonance : resonances) {
    if (resonance.gamma_int != 0.0) {
      throw DomainError("solve_cin assumes lossless resonances (gamma_int = 0)");
    }
    lorentzians.push_back(complex_lorentzian(resonance, omega));
  }
  double s = 0.0;
  double cross = 0.0;
  for (std::size_t j = 0; j < lorentzians.size(); ++j) {
    s += std::norm(lorentzians[j]);
    for (std::size_t k = 0; k < lorentzians.size(); ++k) {
      if (j != k) cross += (lorentzians[j] * std::conj(lorentzians[k])).real();
    }
  }
  // u = c + 1:  u^2 + (S - 2) u + X = 0
  if (cross == 0.0) {
    return -1.0;
  }
  const double b = s - 2.0;
  const double discriminant = b * b - 4.0 * cross;
  if (discriminant < 0.0) {
    throw NumericalError("c_in quadratic has no real root (discriminant " +
                         std::to_string(discriminant) + ")");
  }
  const double sign = b >= 0.0 ? 1.0 : -1.0;
  const double u_big = -0.5 * (b + sign * std::sqrt(discriminant));
  if (u_big == 0.0) {
    throw NumericalError("c_in quadratic is degenerate (discriminant " +
                         std::to_string(discriminant) + ")");
  }
  // Root of smaller magnitude, the one continuous with c_in = -1.
  return cross / u_big - 1.0;
}

ComplexAmplitude haus_reflection(std::span<const ResonanceSpec> resonances, double omega) {
  if (resonances.empty()) {
    throw DomainError("haus_reflection needs at least one resonance");
  }
  if (resonances.size() == 1) {
    const auto& r = resonances.front();
    check_positive_rates(r.gamma_c, r.gamma_int);
    const double gp = 0.5 * (r.gamma_c + r.gamma_int);
    const double gm = 0.5 * (r.gamma_c - r.gamma_int);
    const double delta = omega - r.omega_0;
    if (gp == 0.0 && delta == 0.0) {
      throw UndefinedProbabilityError("reflection undefined at zero width and zero detuning");
    }
    return ComplexAmplitude(gm, delta) / ComplexAmplitude(gp, -delta);
  }
  std::vector<ResonanceSpec> lossless(resonances.begin(), resonances.end());
  for (auto& r : lossless) r.gamma_int = 0.0;
  ComplexAmplitude r = solve_cin(lossless, omega);
  for (const auto& resonance : resonances) r += complex_lorentzian(resonance, omega);
  return r;
}

}  // namespace ringsim
