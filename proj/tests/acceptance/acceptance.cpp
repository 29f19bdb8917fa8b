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

// Acceptance checks.  One line per criterion:
//   [PASS|FAIL] <n> <title> :: <measurements>
// Exit status is nonzero when any line fails.  Optional argv[1]: path of the
// ringsim executable, used for the end-to-end determinism check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "ringsim/add_drop.hpp"
#include "ringsim/attenuation.hpp"
#include "ringsim/audit.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/hom.hpp"
#include "ringsim/parallel.hpp"
#include "ringsim/single_bus.hpp"
#include "ringsim/sweep.hpp"

using namespace ringsim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", v);
  return buffer;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 1
Outcome commutator_sum() {
  PortableRng rng(101);
  Stopwatch clock;
  double worst = 0.0;
  std::size_t samples = 0;
  while (samples < 1000) {
    const auto coupler = CouplerParams::from_through(rng.uniform(), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
    const auto ring = RingParams::from_alpha(rng.uniform(1e-3, 1.0), rng.uniform(-kPi, kPi));
    if (coupler.through_magnitude() * ring.alpha() > 0.99) continue;
    ++samples;
    const double analytic = commutator_sum_identity(coupler, ring).analytic;
    worst = std::max(worst, std::abs(analytic - (1.0 - std::norm(ovpa_transfer(coupler, ring).transfer))));
  }
  const double t = clock.seconds();
  return {worst <= 1e-12 && t < 1.0, "max residual " + sci(worst) + " (tol 1e-12), " + sci(t) + " s"};
}

// 2
Outcome brute_force() {
  PortableRng rng(202);
  Stopwatch clock;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    // |tau| <= 0.9 bounds the truncation error of the double sum
    const auto coupler = CouplerParams::from_through(rng.uniform(0.0, 0.9), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
    const auto ring = RingParams::from_alpha(rng.uniform(1e-3, 1.0), rng.uniform(-kPi, kPi));
    worst = std::max(worst, std::abs(inm_bruteforce(coupler, ring, 200, 200) -
                                     commutator_sum_identity(coupler, ring).analytic));
  }
  const double t = clock.seconds();
  // diagnostic only: the double sum converges like |tau|^(2n), so |tau| near 1
  // with small alpha is still truncated at order 200
  double wide = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mag = rng.uniform();
    const double alpha = rng.uniform(1e-3, 1.0) * std::min(1.0, 0.9 / std::max(mag, 1e-12));
    const auto coupler = CouplerParams::from_through(mag, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
    const auto ring = RingParams::from_alpha(alpha, rng.uniform(-kPi, kPi));
    wide = std::max(wide, std::abs(inm_bruteforce(coupler, ring, 200, 200) -
                                   commutator_sum_identity(coupler, ring).analytic));
  }
  return {worst <= 1e-8 && t < 10.0, "max |truncated - closed| " + sci(worst) + " (tol 1e-8, |tau| <= 0.9), " +
                                         sci(t) + " s; unscored, |tau alpha| <= 0.9 with |tau| up to 1: " + sci(wide)};
}

// 3
Outcome attenuation_unitarity() {
  PortableRng rng(303);
  double continuum = 0.0;
  double piecewise = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = continuum_commutator_coefficient(rng.uniform(0.0, 3.0), rng.uniform(0.05, 5.0));
    continuum = std::max({continuum, std::abs(c.analytic - 1.0), std::abs(c.quadrature - 1.0)});
    std::vector<LossSegment> segments(5);
    for (auto& s : segments) s = {rng.uniform(0.05, 1.0), rng.uniform(0.0, 3.0), rng.uniform(-5.0, 5.0)};
    const auto p = piecewise_commutator_coefficient(segments);
    piecewise = std::max({piecewise, std::abs(p.analytic - 1.0), std::abs(p.quadrature - 1.0)});
  }
  double worst_rate_gap = 0.0;
  std::string rates;
  for (int i = 0; i < 20; ++i) {
    const double gamma = rng.uniform(0.1, 3.0);
    const double length = rng.uniform(0.1, 3.0);
    const double exact = std::exp(-gamma * length);
    std::vector<double> err;
    for (std::size_t n : {100u, 1000u, 10000u}) {
      err.push_back(std::abs(std::norm(discrete_transmission({n, gamma, length, 0.0})) - exact));
    }
    const double r1 = std::log10(err[0] / err[1]);
    const double r2 = std::log10(err[1] / err[2]);
    worst_rate_gap = std::max({worst_rate_gap, std::abs(r1 - 1.0), std::abs(r2 - 1.0)});
    if (i == 0) rates = sci(r1) + ", " + sci(r2);
  }
  const bool pass = continuum <= 1e-10 && piecewise <= 1e-10 && worst_rate_gap <= 0.1;
  return {pass, "continuum " + sci(continuum) + ", piecewise " + sci(piecewise) +
                    " (tol 1e-10); chain order per decade " + rates + ", max |order - 1| " + sci(worst_rate_gap)};
}

// 4
Outcome langevin_agreement() {
  const auto coupler = CouplerParams::from_through(0.99);
  const auto ring = RingParams::from_alpha(0.99, 0.0);
  const double t = 1e-12;
  const std::vector<double> probe{-1e-3 / t, 1e-3 / t};
  double rel = 0.0;
  for (const auto& row : power_ratio_comparison(coupler, ring, t, probe)) rel = std::max(rel, row.relative_difference);

  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(std::pow(10.0, -4.0 + 2.0 * i / 20.0) / t);
  std::vector<double> lx, ly;
  for (const auto& row : power_ratio_comparison(coupler, ring, t, grid)) {
    lx.push_back(std::log(row.detuning * t));
    ly.push_back(std::log(std::abs(row.ovpa - row.langevin)));
  }
  const double s = slope(lx, ly);
  return {rel <= 1e-4 && s >= 3.5,
          "relative difference at |dT|=1e-3 " + sci(rel) + " (tol 1e-4); residual log-log slope " + sci(s) + " (min 3.5)"};
}

// 5
Outcome weak_loss() {
  PortableRng rng(505);
  double worst_c = 0.0;
  double worst_int = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double gl = std::pow(10.0, rng.uniform(-6.0, -3.0));
    const double gtl = std::pow(10.0, rng.uniform(-6.0, -3.0));
    const auto r = match_rates(std::exp(-0.5 * gtl), std::exp(-0.5 * gl), 1.0);
    worst_c = std::max(worst_c, std::abs(r.gamma_c - gtl) / gtl);
    worst_int = std::max(worst_int, std::abs(r.gamma_int - gl) / gl);
  }
  return {worst_c <= 1e-3 && worst_int <= 1e-3,
          "max relative error gamma_c " + sci(worst_c) + ", gamma_int " + sci(worst_int) + " (tol 1e-3)"};
}

// 6
Outcome lossless_dip() {
  const double s = std::sqrt(0.5);
  const AddDropParams top = make_add_drop(s, s, 1.0, 0.0);
  double worst_value = std::abs(p11_closed(top) - 1.0);
  double worst_routes = std::abs(p11_closed(top) - p11_from_state(top));
  for (double sign : {-1.0, 1.0}) {
    const AddDropParams dip = make_add_drop(s, s, 1.0, sign * std::acos(0.75));
    worst_value = std::max({worst_value, std::abs(p11_closed(dip)), std::abs(p11_from_state(dip))});
    worst_routes = std::max(worst_routes, std::abs(p11_closed(dip) - p11_from_state(dip)));
  }
  worst_value = std::max(worst_value, std::abs(p11_from_state(top) - 1.0));
  return {worst_value <= 1e-10 && worst_routes <= 1e-8,
          "max |P11 - target| " + sci(worst_value) + " (tol 1e-10); route gap " + sci(worst_routes) + " (tol 1e-8)"};
}

// 7
Outcome manifold_breakup() {
  Stopwatch clock;
  const CouplingGrid grid;  // 101 x 101 x 201
  std::vector<double> fractions;
  std::string listing;
  for (double alpha : {1.0, 0.95, 0.90, 0.85, 0.80, 0.75}) {
    const HommRegion region = homm_region(grid, alpha, 1e-3, P11Route::state, worker_count());
    fractions.push_back(region.fraction());
    listing += (listing.empty() ? "" : ", ") + sci(region.fraction());
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < fractions.size(); ++i) decreasing = decreasing && fractions[i] < fractions[i - 1];
  const double t = clock.seconds();
  return {decreasing && t < 60.0, "fractions " + listing + "; " + sci(t) + " s"};
}

// 8
Outcome density_sanity() {
  PortableRng rng(808);
  double norm = 0.0;
  double shape = 0.0;
  double wick = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AddDropParams p = make_add_drop(rng.uniform(), rng.uniform(), rng.uniform(0.05, 0.999), rng.uniform(-kPi, kPi));
    const SectorDensity d = analyze_two_photon(p).density;
    norm = std::max(norm, std::abs(d.p0 + d.p1 + d.p2 - 1.0));
    auto check = [&](const Eigen::MatrixXcd& rho) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
      shape = std::max({shape, std::abs(rho.trace() - 1.0), (rho - rho.adjoint()).cwiseAbs().maxCoeff(),
                        std::max(0.0, -s.eigenvalues().minCoeff())});
    };
    check(d.rho2);
    if (d.rho1) check(*d.rho1);
    if (i % 20 == 0) wick = std::max(wick, std::abs(d.p0_wick - d.p0));
  }
  return {norm <= 1e-10 && shape <= 1e-10 && wick <= 1e-8,
          "max |p0+p1+p2-1| " + sci(norm) + " (tol 1e-10); trace/hermitian/PSD " + sci(shape) +
              " (tol 1e-10); Wick p0 on 50 points " + sci(wick) + " (tol 1e-8)"};
}

// 9
Outcome entropy_bounds() {
  const CouplingGrid grid{{0.0, 1.0, 21}, {0.0, 1.0, 21}, {-kPi, kPi, 41}};
  const std::vector<double> levels{0.99, 0.95, 0.75, 0.50, 0.25, 0.10};
  double outside = 0.0;
  bool monotone = true;
  std::size_t defined = 0;
  for (double alpha : {0.95, 0.75, 0.50, 0.25}) {
    const auto values = entropy_grid(grid, alpha, worker_count());
    for (const auto& v : values) {
      if (!v) continue;
      ++defined;
      outside = std::max({outside, -*v, *v - 1.0});
    }
    const auto sets = entropy_level_sets(values, alpha, levels);
    for (std::size_t i = 1; i < levels.size(); ++i) monotone = monotone && sets.fractions[i] >= sets.fractions[i - 1];
  }
  return {outside <= 0.0 && monotone && defined > 0,
          "defined points " + std::to_string(defined) + ", max excursion outside [0,1] " + sci(outside) +
              ", level-set fractions monotone: " + (monotone ? "yes" : "no")};
}

// 10
Outcome noise_consistency() {
  PortableRng rng(1010);
  double entrywise = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AddDropParams p{CouplerParams::from_through(rng.uniform(), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)),
                          CouplerParams::from_through(rng.uniform(), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)),
                          RingParams::from_alpha(rng.uniform(0.01, 1.0), rng.uniform(-kPi, kPi)), std::nullopt};
    const TransferMatrix2 m = transfer_matrix(p);
    const Eigen::Matrix2cd expected = Eigen::Matrix2cd::Identity() - m.m * m.m.adjoint();
    entrywise = std::max(entrywise, (noise_commutators(m).comm - expected).cwiseAbs().maxCoeff());
  }
  double lossless = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TransferMatrix2 m = transfer_matrix(make_add_drop(rng.uniform(), rng.uniform(), 1.0, rng.uniform(-kPi, kPi)));
    lossless = std::max(lossless, noise_commutators(m).comm.cwiseAbs().maxCoeff());
  }
  double limit = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto c = CouplerParams::from_through(rng.uniform(0.0, 0.95));
    const auto ring = RingParams::from_alpha(rng.uniform(0.1, 1.0), rng.uniform(-kPi, kPi));
    const double g = 1e-10;
    const TransferMatrix2 m = transfer_matrix({c, CouplerParams(std::sqrt(1.0 - g * g), g), ring, std::nullopt});
    limit = std::max(limit, std::abs(noise_commutators(m).comm(0, 0).real() - ovpa_transfer(c, ring).noise_power));
  }
  return {entrywise <= 1e-12 && lossless <= 1e-12 && limit <= 1e-8,
          "entrywise " + sci(entrywise) + " (tol 1e-12), lossless " + sci(lossless) + " (tol 1e-12), gamma->0 " +
              sci(limit) + " (tol 1e-8)"};
}

// Perm(M) = 0 for real couplers on theta in {0, pi}:
//   tau eta (1 + alpha^2) +- alpha (kappa^2 gamma^2 - tau^2 - eta^2) = 0
double manifold_eta(double tau, double alpha, double sign) {
  auto f = [&](double eta) {
    const double k2 = 1.0 - tau * tau;
    const double g2 = 1.0 - eta * eta;
    return tau * eta * (1.0 + alpha * alpha) + sign * alpha * (k2 * g2 - tau * tau - eta * eta);
  };
  double lo = 0.0;
  double hi = 1.0;
  if (f(lo) * f(hi) > 0) return -1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// 11
Outcome superposition_destruction() {
  std::vector<AddDropParams> points;
  const double s = std::sqrt(0.5);
  points.push_back(make_add_drop(s, s, 1.0, std::acos(0.75)));
  points.push_back(make_add_drop(s, s, 1.0, -std::acos(0.75)));
  for (double alpha : {1.0, 0.95, 0.8, 0.6}) {
    for (double tau : {0.2, 0.4, 0.5, 0.6}) {
      for (double sign : {1.0, -1.0}) {
        const double eta = manifold_eta(tau, alpha, sign);
        // a root at eta = 1 decouples the drop bus and leaves no branch to test
        if (eta < 0 || eta > 1.0 - 1e-6) continue;
        points.push_back(make_add_drop(tau, eta, alpha, sign > 0 ? 0.0 : kPi));
      }
    }
  }
  std::size_t used = 0;
  double worst = 0.0;
  for (const auto& p : points) {
    const Eigen::Matrix2cd creation = creation_map(transfer_matrix(p).m);
    if (std::abs(permanent2(creation)) > 1e-10) continue;
    ++used;
    const auto st = output_state(creation);
    worst = std::max({worst, std::abs(st.branch_c[1]) / std::abs(st.branch_c[0]),
                      std::abs(st.branch_d[0]) / std::abs(st.branch_d[1])});
  }
  return {used >= 10 && worst <= 1e-9,
          std::to_string(used) + " manifold points, max minor/major branch ratio " + sci(worst) + " (tol 1e-9)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 12
Outcome cli_determinism(const char* executable) {
  std::string detail;
  bool pass = true;
  // library path: same bytes for 1 and 4 workers
  for (const auto mode : {SweepMode::homm_grid, SweepMode::entropy_grid}) {
    const SweepConfig c = load_config(mode, std::nullopt, mode == SweepMode::homm_grid
                                                              ? std::vector<std::string>{"tau=[0,1,41]", "eta=[0,1,41]", "theta=[-3.141592653589793,3.141592653589793,81]"}
                                                              : std::vector<std::string>{});
    const bool same = render_csv(config_echo(c), run_sweep(c, 1)) == render_csv(config_echo(c), run_sweep(c, 4));
    pass = pass && same;
    detail += mode_name(c.mode) + (same ? " identical" : " DIFFERS") + "; ";
  }
  const AuditReport audit = run_audit(0, 1000);
  pass = pass && audit.passed();
  detail += std::string("audit ") + (audit.passed() ? "passes" : "FAILS");

  if (executable != nullptr) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ringsim_acceptance";
    fs::create_directories(dir);
    auto run = [&](const std::string& threads, const std::string& out) {
      const std::string cmd = "RINGSIM_THREADS=" + threads + " \"" + executable + "\" homm-grid --out \"" +
                              (dir / out).string() + "\"";
      return std::system(cmd.c_str());
    };
    const int a = run("1", "one.csv");
    const int b = run("4", "four.csv");
    const bool same = a == 0 && b == 0 && slurp(dir / "one.csv") == slurp(dir / "four.csv");
    const std::string audit_cmd = std::string("\"") + executable + "\" audit --seed 0 --samples 1000 --out \"" +
                                  (dir / "audit.csv").string() + "\"";
    const int audit_status = std::system(audit_cmd.c_str());
    pass = pass && same && audit_status == 0;
    detail += std::string("; CLI homm-grid 1 vs 4 workers ") + (same ? "byte-identical" : "DIFFERS") +
              ", CLI audit exit " + std::to_string(audit_status);
    fs::remove_all(dir);
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const char* executable = argc > 1 ? argv[1] : nullptr;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"commutator-sum identity", commutator_sum},
      {"brute-force double sum", brute_force},
      {"attenuation unitarity", attenuation_unitarity},
      {"Langevin agreement near resonance", langevin_agreement},
      {"weak-loss rate limits", weak_loss},
      {"lossless HOM dip", lossless_dip},
      {"loss degrades the manifold", manifold_breakup},
      {"density-matrix sanity", density_sanity},
      {"entropy bounds and ordering", entropy_bounds},
      {"noise-commutator consistency", noise_consistency},
      {"superposition destruction at the manifold", superposition_destruction},
      {"CLI determinism", [&] { return cli_determinism(executable); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %s :: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
