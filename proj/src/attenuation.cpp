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

#include "ringsim/attenuation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringsim/errors.hpp"

namespace ringsim {
namespace {

void check_loss_and_length(double loss, double length) {
  if (!(loss >= 0.0) || !std::isfinite(loss)) {
    throw DomainError("loss Gamma must be finite and non-negative");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("length must be finite and positive");
  }
}

double splitter_reflectivity(const BeamSplitterChain& chain) {
  check_loss_and_length(chain.loss, chain.length);
  if (chain.splitters == 0) {
    throw DomainError("a beam-splitter chain needs at least one splitter");
  }
  const double reflectivity =
      chain.loss * chain.length / static_cast<double>(chain.splitters);
  if (reflectivity > 1.0) {
    throw ReflectivityRangeError("per-splitter reflectivity Gamma*L/N = " +
                                 std::to_string(reflectivity) +
                                 " exceeds 1; use N >= Gamma*L splitters");
  }
  return reflectivity;
}

// Gamma * int_0^L e^{-Gamma z} dz by Simpson.
double noise_integral_quadrature(double loss, double length, std::size_t panels) {
  if (loss == 0.0) {
    return 0.0;
  }
  return loss * simpson([loss](double z) { return std::exp(-loss * z); }, 0.0, length, panels);
}

}  // namespace

ComplexAmplitude splitter_transmission(const BeamSplitterChain& chain) {
  const double reflectivity = splitter_reflectivity(chain);
  const double n = static_cast<double>(chain.splitters);
  return std::polar(std::sqrt(1.0 - reflectivity), chain.beta * chain.length / n);
}

ComplexAmplitude discrete_transmission(const BeamSplitterChain& chain) {
  const double reflectivity = splitter_reflectivity(chain);
  const double n = static_cast<double>(chain.splitters);
  // |T|^N = exp(N/2 * log(1 - |R|^2)), kept accurate for large N.
  const double magnitude =
      reflectivity == 1.0 ? 0.0 : std::exp(0.5 * n * std::log1p(-reflectivity));
  return std::polar(magnitude, chain.beta * chain.length);
}

double discrete_commutator_coefficient(const BeamSplitterChain& chain) {
  const double reflectivity = splitter_reflectivity(chain);
  const double transmissivity = 1.0 - reflectivity;
  // Horner accumulation of sum_{r=1}^{N} |T|^{2(N-r)}.
  double noise_sum = 0.0;
  double attenuation = 1.0;
  for (std::size_t r = 0; r < chain.splitters; ++r) {
    noise_sum += attenuation;
    attenuation *= transmissivity;
  }
  return attenuation + reflectivity * noise_sum;
}

std::size_t simpson_panels(double loss, double length, double target) {
  check_loss_and_length(loss, length);
  if (!(target > 0.0)) {
    throw DomainError("quadrature error target must be positive");
  }
  if (loss == 0.0) {
    return 2;
  }
  // |E| <= L h^4 max|f''''| / 180 with f = Gamma e^{-Gamma z}, max|f''''| = Gamma^5.
  const double h = std::pow(180.0 * target / (length * std::pow(loss, 5.0)), 0.25);
  const double panels = std::ceil(length / h);
  auto n = static_cast<std::size_t>(
      std::clamp(panels, 2.0, static_cast<double>(kMaxQuadraturePanels)));
  return n + (n % 2);
}

CommutatorCoefficient continuum_commutator_coefficient(double loss, double length) {
  return continuum_commutator_coefficient(loss, length, simpson_panels(loss, length));
}

CommutatorCoefficient continuum_commutator_coefficient(double loss, double length,
                                                       std::size_t panels) {
  check_loss_and_length(loss, length);
  const double attenuation = std::exp(-loss * length);
  // Gamma int_0^L e^{-Gamma z} dz = 1 - e^{-Gamma L}
  const double noise = -std::expm1(-loss * length);
  return {attenuation + noise, attenuation + noise_integral_quadrature(loss, length, panels)};
}

CommutatorCoefficient piecewise_commutator_coefficient(std::span<const LossSegment> segments) {
  if (segments.empty()) {
    throw DomainError("piecewise commutator needs at least one segment");
  }
  for (const auto& segment : segments) {
    check_loss_and_length(segment.loss, segment.length);
  }
  // Walk backwards so `tail` is the attenuation of every later segment.
  CommutatorCoefficient total{0.0, 0.0};
  double tail = 1.0;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    const double gamma = it->loss;
    const double length = it->length;
    const double analytic = -std::expm1(-gamma * length);
    // Gamma int_0^{L_i} e^{-Gamma (L_i - z)} dz
    const double quadrature =
        gamma == 0.0 ? 0.0
                     : gamma * simpson(
                                   [gamma, length](double z) {
                                     return std::exp(-gamma * (length - z));
                                   },
                                   0.0, length, simpson_panels(gamma, length));
    total.analytic += tail * analytic;
    total.quadrature += tail * quadrature;
    tail *= std::exp(-gamma * length);
  }
  total.analytic += tail;
  total.quadrature += tail;
  return total;
}

ComplexAmplitude piecewise_transmission(std::span<const LossSegment> segments) {
  if (segments.empty()) {
    throw DomainError("piecewise transmission needs at least one segment");
  }
  double log_magnitude = 0.0;
  double phase = 0.0;
  for (const auto& segment : segments) {
    check_loss_and_length(segment.loss, segment.length);
    log_magnitude -= 0.5 * segment.loss * segment.length;
    phase += segment.beta * segment.length;
  }
  return std::polar(std::exp(log_magnitude), phase);
}

double langevin_noise_norm(double loss, double length) {
  check_loss_and_length(loss, length);
  return std::sqrt(-std::expm1(-loss * length));
}

}  // namespace ringsim
