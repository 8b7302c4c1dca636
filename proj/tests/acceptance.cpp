// Copyright 2026 The gaussblto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   acceptance CLI_BINARY STATE_DIR WORK_DIR

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gaussblto/gaussblto.hpp"
#include "test_oracles.hpp"

using namespace gaussblto;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GaussianState zero_mean(const Matrix &v) { return GaussianState(Vector::Zero(v.rows()), v); }

GaussianState single(double a, double b) {
  Matrix v = Matrix::Zero(2, 2);
  v(0, 0) = a;
  v(1, 1) = b;
  return zero_mean(v);
}

Matrix tms_matrix(double a, double c) {
  Matrix v(4, 4);
  v << a, 0, c, 0, 0, a, 0, -c, c, 0, a, 0, 0, -c, 0, a;
  return v;
}

Matrix asymmetric_example() {
  Matrix v(4, 4);
  v << 4, 0, 1.73, 0, 0, 4, 0, -1.73, 1.73, 0, 2.4, 0, 0, -1.73, 0, 4;
  return v;
}

double max_diff(const Vector &a, const Vector &b) { return (a - b).cwiseAbs().maxCoeff(); }

// 1. Monotone-law soundness.
Outcome soundness() {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  double slowest = 0.0;
  for (double eta : {1.2, 2.0, 5.0}) {
    VerifyConfig cfg;
    cfg.max_modes = 3;
    cfg.min_ancillas = 1;
    cfg.max_ancillas = 3;
    cfg.eta = eta;
    cfg.n_trials = 1000;
    cfg.seed = 20261015;
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = verify_on_random_channels(cfg);
    slowest = std::max(slowest, seconds_since(t0));
    worst = std::min(worst, report.worst_margin);
    violations += report.violations.size();
  }
  return {violations == 0 && worst >= -1e-8 && slowest < 60.0,
          "3 x 1000 pairs, violations " + std::to_string(violations) + ", worst margin " + fmt(worst) +
              ", slowest batch " + fmt(slowest) + " s"};
}

// 2. Thermal fixed point.
Outcome thermal_fixed_point() {
  Rng rng(2);
  double mean_err = 0.0, cov_err = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int m = 1 + t % 4;
    std::uniform_int_distribution<int> anc(0, 4);
    const int a = anc(rng);
    std::uniform_int_distribution<int> out(1, m + a);
    const double eta = 1.0 + 0.013 * (t % 400);
    const auto s = apply(random_channel(m, a, out(rng), eta, rng), thermal_state(m, eta));
    mean_err = std::max(mean_err, s.mean().norm());
    cov_err = std::max(cov_err, max_abs(s.cov() - eta * Matrix::Identity(s.cov().rows(), s.cov().cols())));
  }
  return {mean_err < 1e-10 && cov_err < 1e-9, "max |mean| " + fmt(mean_err) + ", max |cov - eta I| " + fmt(cov_err)};
}

// 3. Example-state spectra.
Outcome example_numbers() {
  double err = 0.0;
  auto tau = [](const GaussianState &s) { return principal_directional_temperatures(s); };
  err = std::max(err, max_diff(tau(single(3, 1)), (Vector(2) << 3, 1).finished()));
  err = std::max(err, max_diff(tau(single(3, 4.0 / 3.0)), (Vector(2) << 3, 4.0 / 3.0).finished()));
  err = std::max(err, max_diff(tau(single(3, 2.5)), (Vector(2) << 3, 2.5).finished()));
  err = std::max(err, max_diff(tau(zero_mean(tms_matrix(4, 3.7))), (Vector(4) << 7.7, 7.7, 0.3, 0.3).finished()));
  err = std::max(err, max_diff(tau(zero_mean(tms_matrix(4, 1.6))), (Vector(4) << 5.6, 5.6, 2.4, 2.4).finished()));
  const Vector br = tau(zero_mean(asymmetric_example()));
  err = std::max(err, max_diff(br, oracle::jacobi_eigenvalues(asymmetric_example())));
  err = std::max(err, max_diff(br, (Vector(4) << 5.73, 5.1060167890131503246, 2.27, 1.2939832109868496754).finished()));
  const auto bl = zero_mean(tms_matrix(4, 3.7));
  const Vector nu = symplectic_spectrum(bl.cov());
  err = std::max(err, max_diff(nu, Vector::Constant(2, std::sqrt(2.31))));
  err = std::max(err, max_diff(nu, oracle::symplectic_eigenvalues(bl.cov())));
  const Vector mu = principal_mode_temperatures(bl);
  err = std::max(err, max_diff(mu, Vector::Constant(2, 4.0)));
  err = std::max(err, max_diff(mu, oracle::mode_temperatures_real(bl.cov())));
  return {err < 1e-9, "max deviation " + fmt(err)};
}

// 4. Single-mode reach line.
Outcome single_mode_line() {
  const auto rho = single(3, 1);
  ReachConfig cfg;
  cfg.eta = 2.0;
  cfg.m_anc_max = 3;
  cfg.n_samples = 10000;
  cfg.seed = 4;
  const auto samples = sample_reachable(rho, cfg);
  const Segment seg{{3, 1}, {2, 2}};
  double worst = 0.0;
  for (const auto &s : samples) worst = std::max(worst, segment_distance({s.tau1, s.tau2}, seg));
  const double area = polygon_area(convex_hull(sample_points(samples)));
  return {worst < 1e-6 && area < 1e-10, "max distance " + fmt(worst) + ", hull area " + fmt(area)};
}

// 5. Two-mode reach region and squeezing-to-heat conversion.
Outcome two_mode_region() {
  const auto rho = zero_mean(tms_matrix(4, 3.7));
  ReachConfig cfg;
  cfg.eta = 2.0;
  cfg.m_anc_max = 3;
  cfg.n_samples = 10000;
  cfg.seed = 5;
  const auto samples = sample_reachable(rho, cfg);
  const double area = polygon_area(convex_hull(sample_points(samples)));
  auto grid = theorem_bound_region(rho, cfg.eta, GridSpec{0.0, 8.0, 0.0, 4.0, 200});
  mark_samples(grid, rho, samples);
  SqueezedDemoConfig demo;
  demo.r = 0.5;
  demo.eta = 2.0;
  demo.n_samples = 10000;
  demo.seed = 55;
  const auto res = squeezed_thermal_demo(demo);
  return {area > 0.0 && grid.escapes == 0 && res.reaches_hotter_thermal,
          "hull area " + fmt(area) + ", escapes " + std::to_string(grid.escapes) + ", hottest isotropic " +
              fmt(res.hottest_isotropic) + " vs eta 2"};
}

// 6. Decomposition round trips and interlacing.
Outcome decompositions() {
  Rng rng(6);
  double w_err = 0.0, bm_err = 0.0;
  int interlace_ok = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.5);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 4;
    const auto s = random_state(m, rng);
    const auto w = williamson(s.cov());
    w_err = std::max(w_err, max_abs(w.S * thermal_diagonal(w.nu) * w.S.transpose() - s.cov()));

    Vector r(m);
    for (int k = 0; k < m; ++k) r(k) = unit(rng);
    const Matrix sym = random_orthogonal_symplectic(m, rng).matrix() * squeezing_diagonal(r) *
                       random_orthogonal_symplectic(m, rng).matrix();
    const auto bm = bloch_messiah(sym);
    bm_err = std::max(bm_err, max_abs(bm.O1.matrix() * squeezing_diagonal(bm.r) * bm.O2.matrix() - sym));

    const int mm = 2 + t % 3;
    const auto big = random_state(mm, rng);
    std::uniform_int_distribution<int> pick(0, mm - 1);
    const int drop = pick(rng);
    std::vector<Eigen::Index> keep;
    for (int k = 0; k < mm; ++k) {
      if (k != drop) keep.insert(keep.end(), {2 * k, 2 * k + 1});
    }
    const Vector full = symplectic_spectrum(big.cov());
    const Vector part = symplectic_spectrum(big.cov()(keep, keep));
    bool ok = true;
    for (Eigen::Index j = 0; j < part.size(); ++j) ok &= part(j) >= full(j) - 1e-9;
    interlace_ok += ok;
  }
  return {w_err < 1e-9 && bm_err < 1e-9 && interlace_ok == 200,
          "Williamson " + fmt(w_err) + ", Bloch-Messiah " + fmt(bm_err) + ", interlacing " + std::to_string(interlace_ok) +
              "/200"};
}

// 7. Super-thermal symplectic increase.
Outcome symplectic_witness() {
  WitnessSearchConfig cfg;
  cfg.eta = 2.0;
  cfg.n_trials = 100000;
  cfg.seed = 7;
  const auto squeezed = find_superthermal_symplectic_increase(cfg);
  cfg.allow_squeezing = false;
  const auto plain = find_superthermal_symplectic_increase(cfg);
  const bool found = squeezed.witness && squeezed.witness->increase > 1e-6;
  std::string detail = found ? "squeezed witness at trial " + std::to_string(squeezed.witness->trial) + ", increase " +
                                   fmt(squeezed.witness->increase)
                             : "no squeezed witness in 1e5 trials";
  detail += "; unsqueezed inputs (exploratory): " +
            (plain.witness ? "witness at trial " + std::to_string(plain.witness->trial)
                           : "0 witnesses in " + std::to_string(plain.trials_run) + " trials");
  return {found, detail};
}

// 8. Relative entropy against the photon-number oracle.
Outcome relative_entropy() {
  const double closed = rel_ent_athermality(thermal_state(1, 1.5), 2.0);
  const double fock = oracle::fock_thermal_relative_entropy(0.25, 0.5, 60);
  double self = 0.0;
  for (double eta : {1.2, 2.0, 5.0}) {
    for (int m = 1; m <= 3; ++m) self = std::max(self, std::abs(rel_ent_athermality(thermal_state(m, eta), eta)));
  }
  return {std::abs(closed - fock) < 1e-6 && self <= 1e-12,
          "|closed - Fock| " + fmt(std::abs(closed - fock)) + ", max S(gamma||gamma) " + fmt(self)};
}

// 9. SNR structure and the MSNR cross-check.
Outcome snr_structure() {
  Rng rng(9);
  double quad_err = 0.0, tail = 0.0, msnr1 = 0.0, msnr2 = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + t % 3;
    const auto s = random_state(m, rng);
    const Vector snr = snr_spectrum(s);
    const double quad = s.mean().dot(s.cov().ldlt().solve(s.mean()));
    quad_err = std::max(quad_err, std::abs(snr(0) * snr(0) - quad) / std::max(1.0, quad));
    if (snr.size() > 1) tail = std::max(tail, snr.tail(snr.size() - 1).maxCoeff());
    const auto rep = msnr_spectrum(s, 100000, derive_seed(9, static_cast<std::uint64_t>(t)));
    msnr1 = std::max(msnr1, std::abs(rep.estimate(0) - snr(0)));
    if (m > 1) msnr2 = std::max(msnr2, rep.estimate(1));
  }
  return {quad_err < 1e-10 && tail <= 1e-10 && msnr1 < 1e-6 && msnr2 <= 1e-3,
          "SNR1^2 rel err " + fmt(quad_err) + ", max SNR_k>=2 " + fmt(tail) + ", |MSNR1 - SNR1| " + fmt(msnr1) +
              ", max MSNR2 estimate " + fmt(msnr2)};
}

// 10. Byte-identical CLI output across repeated seeded runs.
std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome determinism(const std::string &cli, const fs::path &data, const fs::path &work) {
  fs::create_directories(work);
  const std::string tl = (data / "single_3_1.json").string();
  const std::string bl = (data / "two_mode_c3.7.json").string();
  const std::string q = "\"";
  struct Cmd {
    std::string name, args, out_file;
  };
  const std::vector<Cmd> cmds{
      {"analyze", "analyze " + q + bl + q + " --eta 2", ""},
      {"certify", "certify " + q + tl + q + " " + q + bl + q + " --eta 2", ""},
      {"decompose", "decompose " + q + bl + q, ""},
      {"gen-channel", "gen-channel --m-in 2 --m-anc 2 --eta 2 --m-out 1 --seed 10", "channel.json"},
      {"reach-csv", "reach " + q + bl + q + " --eta 2 --samples 2000 --anc-max 3 --seed 10 --grid 0,8,0,4,40", "reach.csv"},
      {"reach-json", "reach " + q + bl + q + " --eta 2 --samples 500 --anc-max 2 --seed 11 --format json --grid 0,8,0,4,20",
       "reach.json"},
  };
  int identical = 0;
  std::string failed;
  for (const auto &c : cmds) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path stdout_file = work / (c.name + "_" + std::to_string(run) + ".out");
      const fs::path file = work / (std::to_string(run) + "_" + (c.out_file.empty() ? "none" : c.out_file));
      std::string cmd = q + cli + q + " " + c.args;
      if (!c.out_file.empty()) cmd += " --out " + q + file.string() + q;
      if (c.name == "reach-csv" && run == 1) cmd += " --threads 3";
      cmd += " > " + q + stdout_file.string() + q + " 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      outputs[run] = std::to_string(rc) + "\n" + slurp(stdout_file) + (c.out_file.empty() ? "" : slurp(file));
    }
    if (outputs[0] == outputs[1] && outputs[0].size() > 4) {
      ++identical;
    } else {
      failed += " " + c.name;
    }
  }
  return {identical == static_cast<int>(cmds.size()),
          std::to_string(identical) + "/" + std::to_string(cmds.size()) + " commands byte-identical" +
              (failed.empty() ? "" : "; differing:" + failed)};
}

}  // namespace

int main(int argc, char **argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance CLI_BINARY STATE_DIR WORK_DIR\n";
    return 1;
  }
  const std::string cli = argv[1];
  const fs::path data = argv[2], work = argv[3];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 monotone-law soundness", soundness},
      {"2 thermal fixed point", thermal_fixed_point},
      {"3 example-state spectra", example_numbers},
      {"4 single-mode reach line", single_mode_line},
      {"5 two-mode reach region", two_mode_region},
      {"6 decomposition round trips", decompositions},
      {"7 super-thermal symplectic witness", symplectic_witness},
      {"8 relative entropy cross-check", relative_entropy},
      {"9 SNR structure", snr_structure},
      {"10 CLI determinism", [&] { return determinism(cli, data, work); }},
  };
  int failures = 0;
  for (const auto &[name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << " [" << fmt(seconds_since(t0)) << " s]"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
