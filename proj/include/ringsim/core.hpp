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

#include <complex>
#include <cstddef>

namespace ringsim {

/// Carrier for every mode amplitude in the library.
using ComplexAmplitude = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

bool is_finite(ComplexAmplitude z) noexcept;

/// e^{i theta} - 1 evaluated without cancellation near theta = 0.
ComplexAmplitude unit_phasor_minus_one(double theta) noexcept;

/// Through/cross amplitude pair of a single waveguide-ring junction.
///
/// The same type describes the input coupler (tau, kappa) and the drop
/// coupler (eta, gamma) of an add/drop ring.  Construction enforces
/// |through|^2 + |cross|^2 = 1 to within kPowerTolerance.
class CouplerParams {
 public:
  static constexpr double kPowerTolerance = 1e-12;

  CouplerParams(ComplexAmplitude through, ComplexAmplitude cross);

  /// Builds a coupler from a real through magnitude in [0, 1]; the cross
  /// magnitude follows from power conservation.
  static CouplerParams from_through(double magnitude, double through_phase = 0.0,
                                    double cross_phase = 0.0);

  ComplexAmplitude through() const noexcept { return through_; }
  ComplexAmplitude cross() const noexcept { return cross_; }
  double through_magnitude() const noexcept { return std::abs(through_); }
  double through_phase() const noexcept { return std::arg(through_); }
  double cross_power() const noexcept { return std::norm(cross_); }
  double power_residual() const noexcept;

 private:
  ComplexAmplitude through_;
  ComplexAmplitude cross_;
};

/// Ring of circumference L with distributed power loss Gamma and round-trip
/// phase theta.  alpha = exp(-Gamma L / 2) is the round-trip amplitude factor.
class RingParams {
 public:
  static RingParams from_theta(double circumference, double loss, double theta);
  /// theta = beta * L (constant index, no material dispersion).
  static RingParams from_beta(double circumference, double loss, double beta);
  /// Figure convention: the loss is specified by alpha directly.  alpha = 1
  /// gives Gamma = 0 exactly.
  static RingParams from_alpha(double alpha, double theta, double circumference = 1.0);

  double circumference() const noexcept { return circumference_; }
  double loss() const noexcept { return loss_; }
  double theta() const noexcept { return theta_; }
  double alpha() const noexcept { return alpha_; }

  /// alpha * e^{i theta}
  ComplexAmplitude round_trip() const noexcept;

  RingParams with_theta(double theta) const;

 private:
  RingParams(double circumference, double loss, double theta, double alpha)
      : circumference_(circumference), loss_(loss), theta_(theta), alpha_(alpha) {}

  double circumference_;
  double loss_;
  double theta_;
  double alpha_;
};

/// exp(-Gamma L / 2); throws DomainError for Gamma < 0 or L <= 0.
double alpha_from_loss(double loss, double length);

/// beta = n omega / c.
double propagation_constant(double refractive_index, double omega);

/// 1 / (1 - x); throws DivergenceError when |x| >= 1.
ComplexAmplitude geometric_sum(ComplexAmplitude x);

/// sum_{n=0}^{n_max} x^n.
ComplexAmplitude geometric_sum_truncated(ComplexAmplitude x, std::size_t n_max);

/// |x|^{n_max+1} / (1 - |x|): bound on |geometric_sum - geometric_sum_truncated|.
double geometric_tail_bound(double modulus, std::size_t n_max);

inline constexpr std::size_t kDefaultTruncationCap = 100000;

/// Smallest n_max with geometric_tail_bound(modulus, n_max) < tolerance.
/// Throws TruncationError when that exceeds `cap`.
std::size_t truncation_order(double modulus, double tolerance = 1e-10,
                             std::size_t cap = kDefaultTruncationCap);

}  // namespace ringsim
