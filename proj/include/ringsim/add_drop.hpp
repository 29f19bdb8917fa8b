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

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "ringsim/core.hpp"

namespace ringsim {

/// Loss and phase of the two half-rings between the junctions.  "plus" runs
/// from the input junction to the drop junction, "minus" back again.
struct HalfRingSplit {
  double alpha_plus = 1.0;
  double alpha_minus = 1.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;

  /// alpha_+- = sqrt(alpha), theta_+- = theta / 2.
  static HalfRingSplit symmetric(const RingParams& ring);
};

/// Ring coupled to two buses: input coupler (tau, kappa) on the a/c bus and
/// drop coupler (eta, gamma) on the b/d bus.
struct AddDropParams {
  CouplerParams input_coupler;
  CouplerParams drop_coupler;
  RingParams ring;
  std::optional<HalfRingSplit> split;  // symmetric when empty

  /// Validates an explicit split against alpha and theta at 1e-12.
  HalfRingSplit resolved_split() const;
};

/// Real couplers and a ring set by alpha directly.
AddDropParams make_add_drop(double tau, double eta, double alpha, double theta);

/// Rows are outputs (c, d), columns inputs (a, b).
struct TransferMatrix2 {
  Eigen::Matrix2cd m;

  ComplexAmplitude a_to_c() const { return m(0, 0); }
  ComplexAmplitude b_to_c() const { return m(0, 1); }
  ComplexAmplitude a_to_d() const { return m(1, 0); }
  ComplexAmplitude b_to_d() const { return m(1, 1); }
};

/// [F_i, F_j^dagger] for i, j in (c, d).
struct NoiseCommutatorMatrix {
  Eigen::Matrix2cd comm;
};

/// Coefficients of (f_a, f_b) in the collective noise operators F_c and F_d.
struct NoiseCouplings {
  std::array<ComplexAmplitude, 2> f_c;
  std::array<ComplexAmplitude, 2> f_d;
};

TransferMatrix2 transfer_matrix(const AddDropParams& params);

NoiseCouplings noise_coupling_vectors(const AddDropParams& params);

/// I - M M^dagger.  Throws UnitarityViolation when a diagonal entry leaves
/// [-1e-12, 1 + 1e-12].
NoiseCommutatorMatrix noise_commutators(const TransferMatrix2& transfer);

/// conj(M^{-1}).  Throws SingularMatrixError when |det M| < 1e-14.
Eigen::Matrix2cd inverse_conjugate(const Eigen::Matrix2cd& m);

ComplexAmplitude permanent2(const Eigen::Matrix2cd& m);

}  // namespace ringsim
