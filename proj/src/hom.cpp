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

#include "ringsim/hom.hpp"

#include <cmath>
#include <string>

#include "ringsim/errors.hpp"
#include "ringsim/parallel.hpp"

namespace ringsim {
namespace {

constexpr double kSingularTolerance = 1e-14;
constexpr double kNegativeSlack = 1e-10;
constexpr double kDegenerateDenominator = 1e-24;

double check_weight(double value, const char* name) {
  if (value < -kNegativeSlack || !std::isfinite(value)) {
    throw ConsistencyError(std::string("sector weight ") + name + " = " +
                           std::to_string(value) + " is not a probability");
  }
  return value;
}

Eigen::Vector2cd as_vector(const std::array<ComplexAmplitude, 2>& v) {
  return Eigen::Vector2cd(v[0], v[1]);
}

struct CouplerPowers {
  double t2, e2, k2, g2, r;
};

CouplerPowers coupler_powers(const AddDropParams& params) {
  const ComplexAmplitude tau = params.input_coupler.through();
  const ComplexAmplitude eta = params.drop_coupler.through();
  return {std::norm(tau), std::norm(eta), params.input_coupler.cross_power(),
          params.drop_coupler.cross_power(),
          2.0 * (tau * eta * std::polar(1.0, -params.ring.theta())).real()};
}

std::optional<double> p11_at(double tau, double eta, double alpha, double theta, P11Route route) {
  try {
    const AddDropParams params = make_add_drop(tau, eta, alpha, theta);
    return route == P11Route::closed ? p11_closed(params) : p11_from_state(params);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<double> entropy_at(double tau, double eta, double alpha, double theta) {
  try {
    return entropy_one_photon(analyze_two_photon(make_add_drop(tau, eta, alpha, theta)).density);
  } catch (const Error&) {
    return std::nullopt;
  }
}

template <typename F>
std::vector<std::optional<double>> evaluate_grid(const CouplingGrid& grid, std::size_t workers,
                                                 F&& at) {
  if (grid.size() == 0) {
    throw DomainError("coupling grid is empty");
  }
  std::vector<std::optional<double>> values(grid.size());
  const std::size_t per_tau = grid.eta.count * grid.theta.count;
  parallel_for(values.size(), workers, [&](std::size_t index) {
    const std::size_t i = index / per_tau;
    const std::size_t j = (index / grid.theta.count) % grid.eta.count;
    const std::size_t k = index % grid.theta.count;
    values[index] = at(grid.tau.at(i), grid.eta.at(j), grid.theta.at(k));
  });
  return values;
}

}  // namespace

Eigen::Matrix2cd creation_map(const Eigen::Matrix2cd& transfer) { return transfer.transpose(); }

NoiseCommutatorMatrix environment_commutators(const TransferMatrix2& transfer) {
  const NoiseCommutatorMatrix loss = noise_commutators(transfer);
  const Eigen::Matrix2cd& m = transfer.m;
  const ComplexAmplitude det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (std::abs(det) < kSingularTolerance) {
    throw SingularMatrixError("environment Gram matrix undefined for singular M (|det| = " +
                              std::to_string(std::abs(det)) + ")");
  }
  const Eigen::Matrix2cd gram = m * m.adjoint();
  // (M M^dagger)^{-1} - I = (M M^dagger)^{-1} (I - M M^dagger)
  Eigen::Matrix2cd k = gram.inverse() * loss.comm;
  k = 0.5 * (k + k.adjoint()).eval();
  return {k};
}

TwoPhotonOutputState output_state(const Eigen::Matrix2cd& creation) {
  const ComplexAmplitude perm = permanent2(creation);
  const ComplexAmplitude cc = creation(0, 0) * creation(1, 0);
  const ComplexAmplitude dd = creation(0, 1) * creation(1, 1);
  const double root2 = std::sqrt(2.0);

  TwoPhotonOutputState state;
  state.two_photon = {root2 * cc, perm, root2 * dd};
  state.branch_c = {-2.0 * cc, -perm};
  state.branch_d = {-perm, -2.0 * dd};
  state.environment << cc, 0.5 * perm, 0.5 * perm, dd;
  return state;
}

double vacuum_weight_wick(const Eigen::Matrix2cd& e, const Eigen::Matrix2cd& g) {
  ComplexAmplitude sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          sum += std::conj(e(i, j)) * e(k, l) * (g(i, k) * g(j, l) + g(i, l) * g(j, k));
  return sum.real();
}

SectorDensity reduce_density(const TwoPhotonOutputState& state,
                             const NoiseCommutatorMatrix& environment) {
  const Eigen::Matrix2cd& g = environment.comm;
  SectorDensity density;

  const Eigen::Vector3cd psi(state.two_photon[0], state.two_photon[1], state.two_photon[2]);
  density.p2 = psi.squaredNorm();
  if (density.p2 > 0.0) {
    density.rho2 = psi * psi.adjoint() / density.p2;
  }

  const std::array<Eigen::Vector2cd, 2> branch{as_vector(state.branch_c),
                                               as_vector(state.branch_d)};
  Eigen::Matrix2cd rho1 = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rho1 += branch[i] * branch[j].adjoint() * g(j, i);
  rho1 = 0.5 * (rho1 + rho1.adjoint()).eval();
  density.p1 = check_weight(rho1.trace().real(), "p1");
  if (density.p1 > kSectorThreshold) {
    density.rho1 = rho1 / density.p1;
  }

  density.p0 = check_weight(1.0 - density.p1 - density.p2, "p0");
  density.p0_wick = vacuum_weight_wick(state.environment, g);
  return density;
}

TwoPhotonAnalysis analyze_two_photon(const AddDropParams& params) {
  TwoPhotonAnalysis analysis;
  analysis.transfer = transfer_matrix(params);
  analysis.creation = creation_map(analysis.transfer.m);
  analysis.environment = environment_commutators(analysis.transfer);
  analysis.state = output_state(analysis.creation);
  analysis.density = reduce_density(analysis.state, analysis.environment);
  return analysis;
}

double p11_closed(const AddDropParams& params) {
  const auto [t2, e2, k2, g2, r] = coupler_powers(params);
  const double a = params.ring.alpha();
  const double base = (t2 + a * a * e2 - a * r) * (e2 + a * a * t2 - a * r) + a * a * k2 * k2 * g2 * g2;
  const double mixed = a * k2 * g2 * ((1.0 + a * a) * r - 2.0 * a * (t2 + e2));
  const double denominator = base - mixed;
  if (std::abs(denominator) < kDegenerateDenominator) {
    throw DomainError("closed-form P11 denominator vanishes at these parameters");
  }
  return (base + mixed) / denominator;
}

double p11_lossless_ratio(const AddDropParams& params) {
  const auto [t2, e2, k2, g2, r] = coupler_powers(params);
  const double denominator = t2 + e2 - r + k2 * g2;
  if (std::abs(denominator) < 1e-12) {
    throw DomainError("lossless P11 ratio denominator vanishes at these parameters");
  }
  const double ratio = (t2 + e2 - r - k2 * g2) / denominator;
  return ratio * ratio;
}

double p11_conditional(const Eigen::Matrix2cd& creation) {
  const TwoPhotonOutputState state = output_state(creation);
  const double p2 = std::norm(state.two_photon[0]) + std::norm(state.two_photon[1]) +
                    std::norm(state.two_photon[2]);
  if (!(p2 > 0.0)) {
    throw UndefinedProbabilityError("no weight in the two-photon sector");
  }
  return std::norm(state.two_photon[1]) / p2;
}

double p11_from_state(const AddDropParams& params) {
  return p11_conditional(creation_map(transfer_matrix(params).m));
}

double coincidence_probability(const AddDropParams& params) {
  return std::norm(permanent2(creation_map(transfer_matrix(params).m)));
}

double von_neumann_entropy_bits(const Eigen::Matrix2cd& rho) {
  const Eigen::Matrix2cd hermitian = 0.5 * (rho + rho.adjoint());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(hermitian,
                                                              Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue decomposition failed");
  }
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < -kNegativeSlack) {
      throw ConsistencyError("density matrix has eigenvalue " + std::to_string(lambda));
    }
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

std::optional<double> entropy_one_photon(const SectorDensity& density) {
  if (!density.rho1) return std::nullopt;
  return von_neumann_entropy_bits(*density.rho1);
}

double GridAxis::at(std::size_t i) const {
  if (count <= 1) return start;
  if (i + 1 == count) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

double HommRegion::fraction() const {
  return grid_points == 0 ? 0.0
                          : static_cast<double>(points.size()) / static_cast<double>(grid_points);
}

HommRegion homm_region(const CouplingGrid& grid, double alpha, double threshold,
                       P11Route route, std::size_t workers) {
  const auto values = evaluate_grid(grid, workers, [&](double tau, double eta, double theta) {
    return p11_at(tau, eta, alpha, theta, route);
  });
  HommRegion region;
  region.grid_points = values.size();
  const std::size_t per_tau = grid.eta.count * grid.theta.count;
  for (std::size_t index = 0; index < values.size(); ++index) {
    if (!values[index]) {
      ++region.undefined_points;
      continue;
    }
    if (*values[index] <= threshold) {
      region.points.push_back({grid.tau.at(index / per_tau),
                               grid.eta.at((index / grid.theta.count) % grid.eta.count),
                               grid.theta.at(index % grid.theta.count), *values[index]});
    }
  }
  return region;
}

std::vector<std::optional<double>> entropy_grid(const CouplingGrid& grid, double alpha,
                                                std::size_t workers) {
  return evaluate_grid(grid, workers, [&](double tau, double eta, double theta) {
    return entropy_at(tau, eta, alpha, theta);
  });
}

EntropyLevelSets entropy_level_sets(std::span<const std::optional<double>> values, double alpha,
                                    std::span<const double> levels) {
  EntropyLevelSets sets;
  sets.alpha = alpha;
  sets.levels.assign(levels.begin(), levels.end());
  std::vector<std::size_t> above(levels.size(), 0);
  for (const auto& value : values) {
    if (!value) {
      ++sets.undefined_points;
      continue;
    }
    ++sets.defined_points;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      if (*value >= levels[l]) ++above[l];
    }
  }
  sets.fractions.reserve(levels.size());
  for (std::size_t count : above) {
    sets.fractions.push_back(sets.defined_points == 0
                                 ? 0.0
                                 : static_cast<double>(count) /
                                       static_cast<double>(sets.defined_points));
  }
  return sets;
}

}  // namespace ringsim
