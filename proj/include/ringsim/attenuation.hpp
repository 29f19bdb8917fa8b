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

#include <cmath>
#include <cstddef>
#include <span>

#include "ringsim/core.hpp"

namespace ringsim {

/// N identical fictitious beam splitters modelling distributed loss over a
/// length L.  Each splitter has |R|^2 = Gamma L / N, so N >= Gamma L.
struct BeamSplitterChain {
  std::size_t splitters = 1;
  double loss = 0.0;    // Gamma, 1/m
  double length = 1.0;  // L, m
  double beta = 0.0;    // rad/m
};

/// One piece of a ring with its own loss and propagation constant.
struct LossSegment {
  double length = 1.0;  // m
  double loss = 0.0;    // 1/m
  double beta = 0.0;    // rad/m
};

/// Output-field commutator coefficient computed twice: in closed form and
/// by composite Simpson quadrature of the noise integral.
struct CommutatorCoefficient {
  double analytic = 0.0;
  double quadrature = 0.0;
};

/// Error target used to size Simpson quadratures.
inline constexpr double kQuadratureErrorTarget = 1e-11;
inline constexpr std::size_t kMaxQuadraturePanels = std::size_t{1} << 24;

/// Single-splitter transmission T = (1 - Gamma L / N)^{1/2} e^{i beta L / N}.
ComplexAmplitude splitter_transmission(const BeamSplitterChain& chain);

/// T^N, the transmission of the whole chain.
ComplexAmplitude discrete_transmission(const BeamSplitterChain& chain);

/// |T|^{2N} + |R|^2 sum_{r=1}^{N} |T|^{2(N-r)}, summed term by term.
double discrete_commutator_coefficient(const BeamSplitterChain& chain);

/// Composite Simpson rule with an even number of panels.
template <typename F>
double simpson(F&& f, double a, double b, std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < panels; ++i) {
    const double value = f(a + h * static_cast<double>(i));
    if (i % 2 == 1) {
      odd += value;
    } else {
      even += value;
    }
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Panels needed so the Simpson error bound for Gamma * int_0^L e^{-Gamma z}
/// stays below `target`.
std::size_t simpson_panels(double loss, double length, double target = kQuadratureErrorTarget);

/// e^{-Gamma L} + Gamma int_0^L e^{-Gamma z} dz, which equals one.
CommutatorCoefficient continuum_commutator_coefficient(double loss, double length);
CommutatorCoefficient continuum_commutator_coefficient(double loss, double length,
                                                       std::size_t panels);

/// Commutator coefficient of a ring built from consecutive segments: the
/// product of all attenuations plus, for every segment, its own noise
/// integral attenuated by all segments that follow it.
CommutatorCoefficient piecewise_commutator_coefficient(std::span<const LossSegment> segments);

/// prod_i e^{i xi_i L_i} with xi = beta + i Gamma / 2.
ComplexAmplitude piecewise_transmission(std::span<const LossSegment> segments);

/// sqrt(1 - e^{-Gamma L}), the Langevin noise amplitude of an attenuated beam.
double langevin_noise_norm(double loss, double length);

}  // namespace ringsim
