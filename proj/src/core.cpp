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

#include "ringsim/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringsim/errors.hpp"

namespace ringsim {

bool is_finite(ComplexAmplitude z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

ComplexAmplitude unit_phasor_minus_one(double theta) noexcept {
  // cos(theta) - 1 = -2 sin^2(theta / 2)
  const double half_sine = std::sin(0.5 * theta);
  return {-2.0 * half_sine * half_sine, std::sin(theta)};
}

CouplerParams::CouplerParams(ComplexAmplitude through, ComplexAmplitude cross)
    : through_(through), cross_(cross) {
  if (!is_finite(through) || !is_finite(cross)) {
    throw DomainError("coupler amplitudes must be finite");
  }
  if (std::abs(power_residual()) > kPowerTolerance) {
    throw DomainError("coupler violates |through|^2 + |cross|^2 = 1 (residual " +
                      std::to_string(power_residual()) + ")");
  }
}

CouplerParams CouplerParams::from_through(double magnitude, double through_phase,
                                          double cross_phase) {
  if (!(magnitude >= 0.0 && magnitude <= 1.0)) {
    throw DomainError("through magnitude must lie in [0, 1]");
  }
  const double cross_magnitude = std::sqrt((1.0 - magnitude) * (1.0 + magnitude));
  return CouplerParams(std::polar(magnitude, through_phase),
                       std::polar(cross_magnitude, cross_phase));
}

double CouplerParams::power_residual() const noexcept {
  return std::norm(through_) + std::norm(cross_) - 1.0;
}

RingParams RingParams::from_theta(double circumference, double loss, double theta) {
  if (!std::isfinite(theta)) {
    throw DomainError("round-trip phase must be finite");
  }
  return RingParams(circumference, loss, theta, alpha_from_loss(loss, circumference));
}

RingParams RingParams::from_beta(double circumference, double loss, double beta) {
  return from_theta(circumference, loss, beta * circumference);
}

RingParams RingParams::from_alpha(double alpha, double theta, double circumference) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  if (!(circumference > 0.0) || !std::isfinite(theta)) {
    throw DomainError("circumference must be positive and theta finite");
  }
  const double loss = alpha == 1.0 ? 0.0 : -2.0 * std::log(alpha) / circumference;
  return RingParams(circumference, loss, theta, alpha);
}

ComplexAmplitude RingParams::round_trip() const noexcept {
  return std::polar(alpha_, theta_);
}

RingParams RingParams::with_theta(double theta) const {
  if (!std::isfinite(theta)) {
    throw DomainError("round-trip phase must be finite");
  }
  return RingParams(circumference_, loss_, theta, alpha_);
}

double alpha_from_loss(double loss, double length) {
  if (!(loss >= 0.0) || !std::isfinite(loss)) {
    throw DomainError("loss Gamma must be finite and non-negative");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("length must be finite and positive");
  }
  return std::exp(-0.5 * loss * length);
}

double propagation_constant(double refractive_index, double omega) {
  return refractive_index * omega / kSpeedOfLight;
}

ComplexAmplitude geometric_sum(ComplexAmplitude x) {
  if (!(std::abs(x) < 1.0)) {
    throw DivergenceError("geometric series diverges for |x| >= 1");
  }
  return 1.0 / (1.0 - x);
}

ComplexAmplitude geometric_sum_truncated(ComplexAmplitude x, std::size_t n_max) {
  ComplexAmplitude sum = 0.0;
  ComplexAmplitude term = 1.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    sum += term;
    term *= x;
  }
  return sum;
}

double geometric_tail_bound(double modulus, std::size_t n_max) {
  if (!(modulus >= 0.0 && modulus < 1.0)) {
    throw DivergenceError("tail bound requires 0 <= |x| < 1");
  }
  return std::pow(modulus, static_cast<double>(n_max) + 1.0) / (1.0 - modulus);
}

std::size_t truncation_order(double modulus, double tolerance, std::size_t cap) {
  if (!(tolerance > 0.0)) {
    throw DomainError("truncation tolerance must be positive");
  }
  if (!(modulus >= 0.0 && modulus < 1.0)) {
    throw DivergenceError("truncation order requires 0 <= |x| < 1");
  }
  if (modulus == 0.0) {
    return 0;
  }
  // r^{n+1} < tol (1 - r)  <=>  n + 1 > log(tol (1 - r)) / log(r)
  const double needed = std::log(tolerance * (1.0 - modulus)) / std::log(modulus);
  const double order = std::max(0.0, std::ceil(needed));
  if (order > static_cast<double>(cap)) {
    throw TruncationError("series needs " + std::to_string(order) +
                          " terms, above the cap of " + std::to_string(cap));
  }
  auto n = static_cast<std::size_t>(order);
  while (n > 0 && geometric_tail_bound(modulus, n - 1) < tolerance) {
    --n;
  }
  while (geometric_tail_bound(modulus, n) >= tolerance) {
    if (++n > cap) {
      throw TruncationError("series needs more than " + std::to_string(cap) + " terms");
    }
  }
  return n;
}

}  // namespace ringsim
