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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "../oracles.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/single_bus.hpp"

using namespace ringsim;

TEST_SUITE("single_bus") {
  TEST_CASE("closed form matches explicit circulation") {
    for (double tau : {0.0, 0.3, 0.8, 0.97}) {
      for (double alpha : {0.5, 0.9, 1.0}) {
        for (double theta : {-2.0, 0.0, 0.3, 3.0}) {
          if (tau == 0.97 && alpha == 1.0) continue;
          const auto c = CouplerParams::from_through(tau, 0.4, -0.7);
          const auto r = RingParams::from_alpha(alpha, theta);
          const auto ref = oracle::circulate_single_bus(c.through(), c.cross(), alpha, theta, 3000);
          CHECK(std::abs(ovpa_transfer(c, r).transfer - ref) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("lossless ring only shifts the phase") {
    for (double theta : {-3.0, -0.1, 0.0, 1.0, 2.5}) {
      for (double tau : {0.1, 0.5, 0.99}) {
        const auto a = ovpa_transfer(CouplerParams::from_through(tau), RingParams::from_alpha(1.0, theta));
        CHECK(std::abs(std::abs(a.transfer) - 1.0) < 1e-13);
        CHECK(a.noise_power < 1e-13);
      }
    }
  }

  TEST_CASE("critical coupling extinguishes the through port") {
    const auto a = ovpa_transfer(CouplerParams::from_through(0.9), RingParams::from_alpha(0.9, 0.0));
    CHECK(std::abs(a.transfer) < 1e-15);
    CHECK(a.noise_power == doctest::Approx(1.0));
  }

  TEST_CASE("degenerate lossless point raises") {
    CHECK_THROWS_AS(ovpa_transfer(CouplerParams::from_through(1.0), RingParams::from_alpha(1.0, 0.0)),
                    ResonantDivergenceError);
    CHECK_THROWS_AS(rabus_internal_fields(CouplerParams::from_through(1.0), RingParams::from_alpha(1.0, 0.0)),
                    ResonantDivergenceError);
  }

  TEST_CASE("series truncation and its bound") {
    const auto c = CouplerParams::from_through(0.8);
    const auto r = RingParams::from_alpha(0.9, 0.3);
    const ComplexAmplitude e = r.round_trip();
    CHECK(std::abs(ovpa_transfer_series(c, r, 0) - (0.8 - 0.36 * e)) < 1e-15);
    const ComplexAmplitude closed = ovpa_transfer(c, r).transfer;
    for (std::size_t n : {0u, 5u, 20u, 80u}) {
      CHECK(std::abs(ovpa_transfer_series(c, r, n) - closed) <= series_tail_bound(c, r, n) + 1e-15);
    }
    const auto n = truncation_order(0.8 * 0.9);
    CHECK(std::abs(ovpa_transfer_series(c, r, n) - closed) < 1e-10);
  }

  TEST_CASE("alternating partial sums bracket the closed form at theta = pi") {
    const auto c = CouplerParams::from_through(0.9);
    const auto r = RingParams::from_alpha(0.9, kPi);
    const double closed = ovpa_transfer(c, r).transfer.real();
    for (std::size_t n = 0; n < 30; n += 2) {
      const double even = ovpa_transfer_series(c, r, n).real();
      const double odd = ovpa_transfer_series(c, r, n + 1).real();
      CHECK(std::min(even, odd) <= closed + 1e-15);
      CHECK(std::max(even, odd) >= closed - 1e-15);
    }
  }

  TEST_CASE("coupler phase factors out of the transfer") {
    const double phase = 0.7;
    const auto c = CouplerParams::from_through(0.6, phase, 1.9);
    for (double theta : {-1.0, 0.2, 2.0}) {
      const auto r = RingParams::from_alpha(0.85, theta);
      const ComplexAmplitude e = std::polar(1.0, theta - phase);
      const ComplexAmplitude rotated = std::polar(1.0, phase) * (0.6 - 0.85 * e) / (1.0 - 0.6 * 0.85 * e);
      CHECK(std::abs(ovpa_transfer(c, r).transfer - rotated) < 1e-12);
    }
  }

  TEST_CASE("internal fields") {
    const auto decoupled = rabus_internal_fields(CouplerParams::from_through(1.0), RingParams::from_alpha(0.9, 0.2));
    CHECK(std::abs(decoupled.at_entry) == 0.0);

    const double tau = 0.7;
    const auto f = rabus_internal_fields(CouplerParams::from_through(tau), RingParams::from_alpha(1.0, 0.0));
    CHECK(std::norm(f.at_entry) == doctest::Approx((1 + tau) / (1 - tau)));

    const auto c = CouplerParams::from_through(0.55, -0.3, 0.8);
    const auto r = RingParams::from_alpha(0.77, 1.4);
    const auto g = rabus_internal_fields(c, r);
    CHECK(std::abs(c.through() + c.cross() * g.at_exit - ovpa_transfer(c, r).transfer) < 1e-12);
    CHECK(std::abs(g.at_exit - g.at_entry * r.round_trip()) < 1e-15);
  }

  TEST_CASE("langevin transfer") {
    const LangevinRates lossless{2.0, 0.0, 1.0};
    for (double d : {-3.0, 0.0, 0.5}) CHECK(std::abs(std::abs(langevin_transfer(lossless, d).transfer) - 1.0) < 1e-15);
    CHECK(std::abs(langevin_transfer({1.5, 1.5, 1.0}, 0.0).transfer) == 0.0);
    const auto r = langevin_transfer({2.0, 1.0, 1.0}, 0.5);
    // (0.5 + 0.5i) / (1.5 - 0.5i)
    CHECK(std::abs(r.transfer - ComplexAmplitude(0.5, 0.5) / ComplexAmplitude(1.5, -0.5)) < 1e-15);
    CHECK(r.noise_power == doctest::Approx(2.0 / 2.5));
    CHECK(std::abs(std::norm(r.transfer) + r.noise_power - 1.0) < 1e-12);
    CHECK_THROWS_AS(langevin_transfer({0.0, 0.0, 1.0}, 0.0), UndefinedProbabilityError);
    CHECK_THROWS_AS(langevin_transfer({-1.0, 0.0, 1.0}, 0.0), DomainError);
  }

  TEST_CASE("rate matching") {
    const auto zero = match_rates(1.0, 1.0, 1.0);
    CHECK(zero.gamma_c == 0.0);
    CHECK(zero.gamma_int == 0.0);

    const auto r = match_rates(0.8, 0.9, 2.0);
    const auto sd = match_rates_sum_difference(0.8, 0.9, 2.0);
    CHECK(std::abs(r.gamma_plus() - sd.gamma_plus) < 1e-12);
    CHECK(std::abs(r.gamma_minus() - sd.gamma_minus) < 1e-12);
    CHECK(r.gamma_c * 2.0 == doctest::Approx(1.9 * 0.2 / std::sqrt(0.72)));

    // weak loss: gamma_c T ~ Gamma_tau L, gamma_int T ~ Gamma L
    const double gl = 1e-3;
    const double gtl = 5e-4;
    const auto w = match_rates(std::exp(-0.5 * gtl), std::exp(-0.5 * gl), 1.0);
    CHECK(std::abs(w.gamma_c - gtl) / gtl < 1e-3);
    CHECK(std::abs(w.gamma_int - gl) / gl < 1e-3);

    CHECK_THROWS_AS(match_rates(0.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(match_rates(0.5, 0.0, 1.0), DomainError);
  }

  TEST_CASE("power comparison near resonance") {
    const auto c = CouplerParams::from_through(0.99);
    const auto ring = RingParams::from_alpha(0.99, 0.0);
    const double t = 1e-12;
    const std::vector<double> d{0.0, 1e-3 / t, kPi / 2 / t};
    const auto rows = power_ratio_comparison(c, ring, t, d);
    CHECK(rows[0].ovpa < 1e-30);
    CHECK(rows[0].langevin == 0.0);
    CHECK(rows[1].relative_difference < 1e-4);
    CHECK(rows[2].relative_difference > 100.0 * rows[1].relative_difference);

    // off critical coupling the delta = 0 powers agree exactly
    const auto off = power_ratio_comparison(CouplerParams::from_through(0.9), RingParams::from_alpha(0.97, 0.0), t,
                                            std::vector<double>{0.0});
    CHECK(off[0].relative_difference < 1e-12);
  }

  TEST_CASE("detuning grid") {
    const auto g = detuning_grid(5, 2.0);
    REQUIRE(g.size() == 10);
    CHECK(g.front() == doctest::Approx(-kPi / 2.0));
    CHECK(g[5] == doctest::Approx(0.5e-4));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    for (std::size_t i = 0; i < 5; ++i) CHECK(g[i] == -g[9 - i]);
  }

  TEST_CASE("commutator sum identity") {
    const auto lossless = commutator_sum_identity(CouplerParams::from_through(0.6), RingParams::from_alpha(1.0, 0.4));
    CHECK(lossless.analytic == 0.0);
    CHECK(lossless.closed < 1e-15);

    const auto full = commutator_sum_identity(CouplerParams::from_through(0.0), RingParams::from_alpha(0.8, 1.0));
    CHECK(full.analytic == doctest::Approx(0.36));
    CHECK(full.closed == doctest::Approx(0.36));

    const auto c = CouplerParams(std::polar(0.8, 0.2), std::sqrt(0.36));
    const auto s = commutator_sum_identity(c, RingParams::from_alpha(0.9, 0.3));
    CHECK(std::abs(s.analytic - s.closed) < 1e-12);
  }

  TEST_CASE("I_nm terms against quadrature of the overlap integral") {
    const ComplexAmplitude tau = std::polar(0.7, -0.4);
    const auto c = CouplerParams(tau, std::sqrt(0.51));
    const auto r = RingParams::from_alpha(0.85, 1.1);
    for (auto [n, m] : std::vector<std::pair<int, int>>{{0, 0}, {3, 1}, {1, 3}, {5, 5}, {7, 2}}) {
      const ComplexAmplitude ref = oracle::inm_quadrature(tau, 0.85, 1.1, n, m);
      CHECK(std::abs(inm_term(c, r, n, m) - ref) < 1e-11);
    }
    CHECK(std::abs(inm_term(c, r, 2, 5) - std::conj(inm_term(c, r, 5, 2))) < 1e-15);
  }

  TEST_CASE("truncated double sum") {
    const auto c = CouplerParams::from_through(0.8);
    const auto r = RingParams::from_alpha(0.9, 0.3);
    CHECK(std::abs(inm_bruteforce(c, r, 200, 200) - commutator_sum_identity(c, r).analytic) < 1e-8);

    // diagonal partial sums
    double diagonal = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) diagonal += inm_term(c, r, n, n).real();
    CHECK(inm_diagonal_sum(c, r, 10) == doctest::Approx(diagonal).epsilon(1e-14));

    // sum over a box is the sum of its terms
    double box = 0.0;
    for (int n = 0; n <= 6; ++n)
      for (int m = 0; m <= 3; ++m) box += inm_term(c, r, n, m).real();
    CHECK(inm_bruteforce(c, r, 6, 3) == doctest::Approx(box).epsilon(1e-13));

    CHECK(inm_bruteforce(c, RingParams::from_alpha(1.0, 0.3), 50, 50) == 0.0);

    // convergence follows |tau|^{2n}
    const double e1 = std::abs(inm_bruteforce(c, r, 20, 20) - commutator_sum_identity(c, r).analytic);
    const double e2 = std::abs(inm_bruteforce(c, r, 40, 40) - commutator_sum_identity(c, r).analytic);
    CHECK(e2 < e1 * std::pow(0.8, 30));
  }

  TEST_CASE("reflection of a single resonance") {
    const std::vector<ResonanceSpec> lossless{{10.0, 2.0, 0.0}};
    for (double w : {5.0, 10.0, 12.0}) CHECK(std::abs(std::abs(haus_reflection(lossless, w)) - 1.0) < 1e-15);
    const std::vector<ResonanceSpec> critical{{10.0, 1.0, 1.0}};
    CHECK(std::abs(haus_reflection(critical, 10.0)) == 0.0);
    CHECK(solve_cin(lossless, 3.0) == -1.0);
    // single resonance equals -1 + L
    const std::vector<ResonanceSpec> lossy{{0.0, 2.0, 0.5}};
    CHECK(std::abs(haus_reflection(lossy, 0.7) - (-1.0 + complex_lorentzian(lossy[0], 0.7))) < 1e-15);
    CHECK_THROWS_AS(haus_reflection(std::vector<ResonanceSpec>{}, 0.0), DomainError);
  }

  TEST_CASE("well separated doublet") {
    const std::vector<ResonanceSpec> pair{{0.0, 1.0, 0.0}, {2000.0, 1.0, 0.0}};
    const double w = 0.3;
    CHECK(std::abs(solve_cin(pair, w) + 1.0) < 1e-3);
    const ComplexAmplitude r2 = haus_reflection(pair, w);
    CHECK(std::abs(std::abs(r2) - 1.0) < 1e-12);
    const std::vector<ResonanceSpec> single{{0.0, 1.0, 0.0}};
    CHECK(std::abs(r2 - haus_reflection(single, w)) / std::abs(haus_reflection(single, w)) < 1e-2);

    const std::vector<ResonanceSpec> lossy{{0.0, 1.0, 0.3}, {2000.0, 1.0, 0.3}};
    const std::vector<ResonanceSpec> lossy_single{{0.0, 1.0, 0.3}};
    CHECK(std::abs(haus_reflection(lossy, w) - haus_reflection(lossy_single, w)) /
              std::abs(haus_reflection(lossy_single, w)) <
          1e-2);
  }

  TEST_CASE("closely spaced doublet") {
    const std::vector<ResonanceSpec> pair{{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}};
    const double w = -3.0;
    const double c = solve_cin(pair, w);
    CHECK(std::abs(c + 1.0) > 1e-3);
    CHECK(std::abs(std::abs(haus_reflection(pair, w)) - 1.0) < 1e-12);
    CHECK_THROWS_AS(solve_cin(std::vector<ResonanceSpec>{{0.0, 1.0, 0.2}}, 0.0), DomainError);
  }

  TEST_CASE("c_in quadratic without a real root") {
    // both Lorentzians near |L|^2 = 1 and in phase
    const std::vector<ResonanceSpec> pair{{0.0, 1.0, 0.0}, {0.01, 1.0, 0.0}};
    try {
      solve_cin(pair, 0.5);
      FAIL("expected a numerical error");
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("discriminant") != std::string::npos);
    }
  }
}
