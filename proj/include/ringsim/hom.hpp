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
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ringsim/add_drop.hpp"

namespace ringsim {

/// Probability below which the one-photon sector counts as empty.
inline constexpr double kSectorThreshold = 1e-12;

/// Input creation operators in terms of output ones: a_j^dagger carries
/// creation(j, i) on output mode i.  Rows (a, b), columns (c, d).  Equals the
/// transpose of the transfer matrix, which is conj(M^{-1}) when M is unitary.
Eigen::Matrix2cd creation_map(const Eigen::Matrix2cd& transfer);

/// Gram matrix [F_i, F_j^dagger] of the environment operators attached to the
/// output modes in the unitary dilation of M: (M M^dagger)^{-1} - I.
/// Throws UnitarityViolation for a non-contraction and SingularMatrixError for
/// singular M.
NoiseCommutatorMatrix environment_commutators(const TransferMatrix2& transfer);

/// Output of |1_a, 1_b> split by the number of photons left in (c, d).
struct TwoPhotonOutputState {
  /// |2,0>, |1,1>, |0,2>
  std::array<ComplexAmplitude, 3> two_photon;
  /// One-photon state (|1,0>, |0,1>) attached to F_c^dagger.
  std::array<ComplexAmplitude, 2> branch_c;
  /// One-photon state attached to F_d^dagger.
  std::array<ComplexAmplitude, 2> branch_d;
  /// Symmetric coefficients e_ij of F_i^dagger F_j^dagger in the vacuum part.
  Eigen::Matrix2cd environment;
};

TwoPhotonOutputState output_state(const Eigen::Matrix2cd& creation);

struct SectorDensity {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  /// <Phi^(2)|Phi^(2)> by Wick contraction, independent of p0 = 1 - p1 - p2.
  double p0_wick = 0.0;
  Eigen::Matrix3cd rho2 = Eigen::Matrix3cd::Zero();
  std::optional<Eigen::Matrix2cd> rho1;
};

/// Traces out the environment.  Throws ConsistencyError when a sector weight
/// is below -1e-10.
SectorDensity reduce_density(const TwoPhotonOutputState& state,
                             const NoiseCommutatorMatrix& environment);

/// sum e*_ij e_kl (G_ik G_jl + G_il G_jk)
double vacuum_weight_wick(const Eigen::Matrix2cd& environment_coefficients,
                          const Eigen::Matrix2cd& gram);

struct TwoPhotonAnalysis {
  TransferMatrix2 transfer;
  Eigen::Matrix2cd creation;
  NoiseCommutatorMatrix environment;
  TwoPhotonOutputState state;
  SectorDensity density;
};

TwoPhotonAnalysis analyze_two_photon(const AddDropParams& params);

/// Coincidence ratio in closed form with r = 2 Re(tau eta e^{-i theta}).
/// Algebraically this is |Perm M / det M|^2.  Throws DomainError when the
/// denominator vanishes.
double p11_closed(const AddDropParams& params);

/// Lossless squared-ratio form
/// ((|tau|^2 + |eta|^2 - r - |kappa gamma|^2) / (... + |kappa gamma|^2))^2.
double p11_lossless_ratio(const AddDropParams& params);

/// <1,1| rho2 |1,1>, the coincidence probability given that both photons
/// stay in (c, d).  Throws UndefinedProbabilityError when p2 = 0.
double p11_from_state(const AddDropParams& params);

/// Same quantity from a creation map.
double p11_conditional(const Eigen::Matrix2cd& creation);

/// Unconditional coincidence probability p2 * P11 = |Perm|^2.
double coincidence_probability(const AddDropParams& params);

/// -sum lambda log2 lambda.  Eigenvalues in [-1e-10, 0) are clipped to zero;
/// more negative ones throw ConsistencyError.
double von_neumann_entropy_bits(const Eigen::Matrix2cd& rho);

/// S^(1), or nullopt when the one-photon sector is empty.
std::optional<double> entropy_one_photon(const SectorDensity& density);

struct GridAxis {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 1;

  double at(std::size_t i) const;
};

struct CouplingGrid {
  GridAxis tau{0.0, 1.0, 101};
  GridAxis eta{0.0, 1.0, 101};
  GridAxis theta{-kPi, kPi, 201};

  std::size_t size() const { return tau.count * eta.count * theta.count; }
};

enum class P11Route { state, closed };

struct GridPoint {
  double tau = 0.0;
  double eta = 0.0;
  double theta = 0.0;
  double value = 0.0;
};

struct HommRegion {
  std::vector<GridPoint> points;  // row-major over (tau, eta, theta)
  std::size_t grid_points = 0;
  std::size_t undefined_points = 0;

  double fraction() const;
};

/// Grid points with P11 <= threshold.  Points where P11 is undefined are
/// counted and skipped.
HommRegion homm_region(const CouplingGrid& grid, double alpha, double threshold,
                       P11Route route, std::size_t workers);

/// S^(1) at every grid point, nullopt where undefined.  Row-major.
std::vector<std::optional<double>> entropy_grid(const CouplingGrid& grid, double alpha,
                                                std::size_t workers);

struct EntropyLevelSets {
  double alpha = 0.0;
  std::size_t defined_points = 0;
  std::size_t undefined_points = 0;
  std::vector<double> levels;
  /// Fraction of defined points with S^(1) >= level.
  std::vector<double> fractions;
};

EntropyLevelSets entropy_level_sets(std::span<const std::optional<double>> values, double alpha,
                                    std::span<const double> levels);

}  // namespace ringsim
