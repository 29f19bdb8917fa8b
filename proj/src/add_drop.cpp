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

#include "ringsim/add_drop.hpp"

#include <cmath>
#include <string>

#include "ringsim/errors.hpp"

namespace ringsim {
namespace {

constexpr double kSplitTolerance = 1e-12;
constexpr double kResonantTolerance = 1e-14;
constexpr double kSingularTolerance = 1e-14;
constexpr double kDiagonalSlack = 1e-12;

}  // namespace

HalfRingSplit HalfRingSplit::symmetric(const RingParams& ring) {
  const double root = std::sqrt(ring.alpha());
  const double half = 0.5 * ring.theta();
  return {root, root, half, half};
}

HalfRingSplit AddDropParams::resolved_split() const {
  if (!split) {
    return HalfRingSplit::symmetric(ring);
  }
  const HalfRingSplit& s = *split;
  if (!(s.alpha_plus > 0.0 && s.alpha_plus <= 1.0 && s.alpha_minus > 0.0 &&
        s.alpha_minus <= 1.0)) {
    throw DomainError("half-ring attenuations must lie in (0, 1]");
  }
  if (std::abs(s.alpha_plus * s.alpha_minus - ring.alpha()) > kSplitTolerance) {
    throw DomainError("half-ring split must satisfy alpha_+ alpha_- = alpha");
  }
  if (std::abs(s.theta_plus + s.theta_minus - ring.theta()) > kSplitTolerance) {
    throw DomainError("half-ring split must satisfy theta_+ + theta_- = theta");
  }
  return s;
}

AddDropParams make_add_drop(double tau, double eta, double alpha, double theta) {
  return {CouplerParams::from_through(tau), CouplerParams::from_through(eta),
          RingParams::from_alpha(alpha, theta), std::nullopt};
}

TransferMatrix2 transfer_matrix(const AddDropParams& params) {
  const ComplexAmplitude tau = params.input_coupler.through();
  const ComplexAmplitude kappa = params.input_coupler.cross();
  const ComplexAmplitude eta = params.drop_coupler.through();
  const ComplexAmplitude gamma = params.drop_coupler.cross();
  const double alpha = params.ring.alpha();
  const double theta = params.ring.theta();
  const HalfRingSplit split = params.resolved_split();

  // e^{i theta} = 1 + em1 keeps D accurate near resonance.
  const ComplexAmplitude em1 = unit_phasor_minus_one(theta);
  const ComplexAmplitude loop = std::conj(tau) * std::conj(eta) * alpha;
  const ComplexAmplitude denominator = (1.0 - loop) - loop * em1;
  if (std::abs(denominator) < kResonantTolerance) {
    throw ResonantDivergenceError("1 - tau* eta* alpha e^{i theta} vanishes");
  }

  const ComplexAmplitude a_to_c = ((tau - std::conj(eta) * alpha) - std::conj(eta) * alpha * em1);
  const ComplexAmplitude b_to_d = ((eta - std::conj(tau) * alpha) - std::conj(tau) * alpha * em1);
  const ComplexAmplitude b_to_c =
      -std::conj(gamma) * kappa * std::polar(split.alpha_minus, split.theta_minus);
  const ComplexAmplitude a_to_d =
      -std::conj(kappa) * gamma * std::polar(split.alpha_plus, split.theta_plus);

  TransferMatrix2 result;
  result.m << a_to_c, b_to_c, a_to_d, b_to_d;
  result.m /= denominator;
  return result;
}

NoiseCouplings noise_coupling_vectors(const AddDropParams& params) {
  const ComplexAmplitude tau = params.input_coupler.through();
  const ComplexAmplitude kappa = params.input_coupler.cross();
  const ComplexAmplitude eta = params.drop_coupler.through();
  const ComplexAmplitude gamma = params.drop_coupler.cross();
  const ComplexAmplitude prefactor(0.0, -std::sqrt(params.ring.loss()));
  NoiseCouplings couplings;
  couplings.f_c = {prefactor * std::norm(kappa) * std::conj(eta),
                   prefactor * std::conj(gamma) * kappa};
  couplings.f_d = {prefactor * std::conj(kappa) * gamma,
                   prefactor * std::norm(gamma) * std::conj(tau)};
  return couplings;
}

NoiseCommutatorMatrix noise_commutators(const TransferMatrix2& transfer) {
  const Eigen::Matrix2cd& m = transfer.m;
  NoiseCommutatorMatrix result;
  const double cc = 1.0 - (std::norm(m(0, 0)) + std::norm(m(0, 1)));
  const double dd = 1.0 - (std::norm(m(1, 0)) + std::norm(m(1, 1)));
  const ComplexAmplitude cd =
      -(m(0, 0) * std::conj(m(1, 0)) + m(0, 1) * std::conj(m(1, 1)));
  for (double diagonal : {cc, dd}) {
    if (diagonal < -kDiagonalSlack || diagonal > 1.0 + kDiagonalSlack || !std::isfinite(diagonal)) {
      throw UnitarityViolation("noise commutator diagonal " + std::to_string(diagonal) +
                               " outside [0, 1]: transfer matrix is not a contraction");
    }
  }
  result.comm << cc, cd, std::conj(cd), dd;
  return result;
}

Eigen::Matrix2cd inverse_conjugate(const Eigen::Matrix2cd& m) {
  const ComplexAmplitude det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (std::abs(det) < kSingularTolerance) {
    throw SingularMatrixError("transfer matrix is singular (|det| = " +
                              std::to_string(std::abs(det)) + ")");
  }
  Eigen::Matrix2cd inverse;
  inverse << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  inverse /= det;
  return inverse.conjugate();
}

ComplexAmplitude permanent2(const Eigen::Matrix2cd& m) {
  return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
}

}  // namespace ringsim
