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

/**
 * @file certify.hpp
 *
 * Necessary conditions for a BLTO to map rho to sigma.
 *
 * The thermalization laws for tau and mu are checked in their merged form:
 * with enough thermal ancillas, the k-th largest value of sigma may not
 * exceed the k-th largest value of (rho's spectrum merged with eta, eta, ...),
 * i.e. max(tau_k(rho), eta); symmetrically the k-th smallest value of sigma
 * may not fall below min(tau_k^up(rho), eta). This family is equivalent to
 * "no more super/sub-thermal values, and each one closer to eta", but yields
 * a continuous margin. Symplectic eigenvalues obey only the sub-thermal half.
 *
 * A law fails only when violated by more than `tol`. Passing every law means
 * NotExcluded, never "allowed": the conditions are necessary, not sufficient.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gaussblto/blto.hpp"
#include "gaussblto/core.hpp"
#include "gaussblto/monotones.hpp"
#include "gaussblto/parallel.hpp"
#include "gaussblto/symcore.hpp"

namespace gaussblto {

inline constexpr double kCertifyTol = 1e-8;

namespace law {
inline constexpr const char *kDirectional = "L1-directional";
inline constexpr const char *kMode = "L2-mode";
inline constexpr const char *kSymplecticSub = "L3-symplectic-sub";
inline constexpr const char *kMoment = "L4-moment";
inline constexpr const char *kSnr = "L5-snr";
inline constexpr const char *kFreeEnergy = "L6-free-energy";
}  // namespace law

/// lhs <= rhs, with slack = rhs - lhs.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct LawCount {
  std::string name;
  int rho = 0;
  int sigma = 0;
};

struct LawResult {
  std::string law;
  bool passed = true;
  bool skipped = false;
  double margin = 0.0;
  std::vector<Inequality> detail;
  std::vector<LawCount> counts;
  std::string note;
};

enum class Verdict { Forbidden, NotExcluded };

inline constexpr std::string_view to_string(Verdict v) {
  return v == Verdict::Forbidden ? "Forbidden" : "NotExcluded";
}

struct TransitionVerdict {
  std::vector<LawResult> laws;
  Verdict verdict = Verdict::NotExcluded;
  double eta = 1.0;
  double tol = kCertifyTol;

  const LawResult *find(std::string_view id) const {
    for (const auto &l : laws) {
      if (l.law == id) return &l;
    }
    return nullptr;
  }
  double worst_margin() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto &l : laws) {
      if (!l.skipped) w = std::min(w, l.margin);
    }
    return w;
  }
};

/// Everything certify needs from one state.
struct MonotoneSummary {
  int modes = 0;
  Vector tau;   // descending
  Vector mu;    // descending
  Vector nu;    // ascending
  Vector snr;   // descending
  Vector msnr;  // descending, analytic
  double moment = 0.0;
  RelativeEntropy rel;
};

inline MonotoneSummary summarize(const GaussianState &s, double eta) {
  MonotoneSummary out;
  out.modes = s.modes();
  out.tau = principal_directional_temperatures(s);
  out.mu = principal_mode_temperatures(s);
  out.nu = symplectic_spectrum(s.cov());
  out.snr = snr_spectrum(s);
  out.msnr = Vector::Zero(s.modes());
  out.msnr(0) = out.snr(0);
  out.moment = moment_norm(s);
  out.rel = rel_ent_athermality_report(s, eta);
  return out;
}

namespace detail {

inline void finish(LawResult &r, double tol) {
  r.margin = std::numeric_limits<double>::infinity();
  for (const auto &q : r.detail) r.margin = std::min(r.margin, q.slack);
  if (r.detail.empty()) r.margin = 0.0;
  r.passed = r.margin >= -tol;
}

inline void push(LawResult &r, std::string name, double lhs, double rhs) {
  r.detail.push_back({std::move(name), lhs, rhs, rhs - lhs});
}

inline std::string indexed(const char *sym, std::size_t k) { return std::string(sym) + "[" + std::to_string(k + 1) + "]"; }

// Super- and sub-thermal halves of a thermalization law on a spectrum.
inline LawResult thermalization_law(const char *id, const char *sym, const Vector &rho_desc, const Vector &sigma_desc,
                                    double eta, double tol) {
  LawResult r;
  r.law = id;
  const auto nr = static_cast<std::size_t>(rho_desc.size());
  const auto ns = static_cast<std::size_t>(sigma_desc.size());
  for (std::size_t k = 0; k < ns; ++k) {
    const double bound = k < nr ? std::max(rho_desc(static_cast<Eigen::Index>(k)), eta) : eta;
    push(r, indexed(sym, k) + "(sigma) <= max(" + indexed(sym, k) + "(rho), eta)",
         sigma_desc(static_cast<Eigen::Index>(k)), bound);
  }
  const Vector rho_up = rho_desc.reverse();
  const Vector sigma_up = sigma_desc.reverse();
  for (std::size_t k = 0; k < ns; ++k) {
    const double bound = k < nr ? std::min(rho_up(static_cast<Eigen::Index>(k)), eta) : eta;
    push(r, "min(" + indexed(sym, k) + "_up(rho), eta) <= " + indexed(sym, k) + "_up(sigma)", bound,
         sigma_up(static_cast<Eigen::Index>(k)));
  }
  const auto cr = classify(rho_desc, eta, tol);
  const auto cs = classify(sigma_desc, eta, tol);
  r.counts.push_back({"k_super", cr.k_super, cs.k_super});
  r.counts.push_back({"k_sub", cr.k_sub, cs.k_sub});
  finish(r, tol);
  return r;
}

inline LawResult symplectic_sub_law(const Vector &rho_up, const Vector &sigma_up, double eta, double tol) {
  LawResult r;
  r.law = law::kSymplecticSub;
  const auto nr = static_cast<std::size_t>(rho_up.size());
  for (std::size_t j = 0; j < static_cast<std::size_t>(sigma_up.size()); ++j) {
    const double bound = j < nr ? std::min(rho_up(static_cast<Eigen::Index>(j)), eta) : eta;
    push(r, "min(" + indexed("nu", j) + "(rho), eta) <= " + indexed("nu", j) + "(sigma)", bound,
         sigma_up(static_cast<Eigen::Index>(j)));
  }
  const auto cr = classify(rho_up, eta, tol);
  const auto cs = classify(sigma_up, eta, tol);
  r.counts.push_back({"k_sub", cr.k_sub, cs.k_sub});
  finish(r, tol);
  return r;
}

inline LawResult moment_law(const MonotoneSummary &rho, const MonotoneSummary &sigma, double tol) {
  LawResult r;
  r.law = law::kMoment;
  push(r, "|<x>_sigma|^2 <= |<x>_rho|^2", sigma.moment, rho.moment);
  finish(r, tol);
  return r;
}

inline LawResult snr_law(const MonotoneSummary &rho, const MonotoneSummary &sigma, double tol) {
  LawResult r;
  r.law = law::kSnr;
  auto padded = [](const Vector &v, Eigen::Index k) { return k < v.size() ? v(k) : 0.0; };
  for (Eigen::Index k = 0; k < sigma.snr.size(); ++k) {
    push(r, indexed("SNR", static_cast<std::size_t>(k)) + "(sigma) <= " + indexed("SNR", static_cast<std::size_t>(k)) + "(rho)",
         sigma.snr(k), padded(rho.snr, k));
  }
  for (Eigen::Index k = 0; k < sigma.msnr.size(); ++k) {
    push(r, indexed("MSNR", static_cast<std::size_t>(k)) + "(sigma) <= " + indexed("MSNR", static_cast<std::size_t>(k)) + "(rho)",
         sigma.msnr(k), padded(rho.msnr, k));
  }
  finish(r, tol);
  return r;
}

inline LawResult free_energy_law(const MonotoneSummary &rho, const MonotoneSummary &sigma, double eta, double tol) {
  LawResult r;
  r.law = law::kFreeEnergy;
  if (!(eta > 1.0)) {
    r.skipped = true;
    r.passed = true;
    r.margin = 0.0;
    r.note = "undefined reference: relative entropy to a pure (eta = 1) bath state";
    return r;
  }
  push(r, "S(sigma||gamma) <= S(rho||gamma)", sigma.rel.value, rho.rel.value);
  finish(r, tol);
  return r;
}

}  // namespace detail

struct LawSelection {
  bool directional = true;
  bool mode = true;
  bool symplectic = true;
  bool moment = true;
  bool snr = true;
  bool free_energy = true;
};

inline TransitionVerdict certify_summaries(const MonotoneSummary &rho, const MonotoneSummary &sigma, double eta,
                                           double tol = kCertifyTol, const LawSelection &which = {}) {
  TransitionVerdict v;
  v.eta = eta;
  v.tol = tol;
  if (which.directional) v.laws.push_back(detail::thermalization_law(law::kDirectional, "tau", rho.tau, sigma.tau, eta, tol));
  if (which.mode) v.laws.push_back(detail::thermalization_law(law::kMode, "mu", rho.mu, sigma.mu, eta, tol));
  if (which.symplectic) v.laws.push_back(detail::symplectic_sub_law(rho.nu, sigma.nu, eta, tol));
  if (which.moment) v.laws.push_back(detail::moment_law(rho, sigma, tol));
  if (which.snr) v.laws.push_back(detail::snr_law(rho, sigma, tol));
  if (which.free_energy) v.laws.push_back(detail::free_energy_law(rho, sigma, eta, tol));
  v.verdict = Verdict::NotExcluded;
  for (const auto &l : v.laws) {
    if (!l.skipped && !l.passed) v.verdict = Verdict::Forbidden;
  }
  return v;
}

inline TransitionVerdict certify_transition(const GaussianState &rho, const GaussianState &sigma, double eta,
                                            double tol = kCertifyTol) {
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "certify_transition: eta must be >= 1");
  require_valid(rho);
  require_valid(sigma);
  return certify_summaries(summarize(rho, eta), summarize(sigma, eta), eta, tol);
}

// Empirical soundness harness.

struct VerifyConfig {
  int max_modes = 3;
  int min_ancillas = 0;
  int max_ancillas = 3;
  double eta = 2.0;
  std::size_t n_trials = 1000;
  std::uint64_t seed = 0;
  double tol = kCertifyTol;
  bool thermal_inputs = false;  ///< use thermal(m, eta) inputs instead of random states
  int threads = 1;
};

struct Violation {
  std::size_t trial = 0;
  std::string law;
  double margin = 0.0;
};

struct VerificationReport {
  std::size_t trials = 0;
  std::vector<Violation> violations;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst_law;
  std::size_t worst_trial = 0;
};

struct TrialCase {
  GaussianState rho;
  BltoChannel channel;
};

/// The (state, channel) pair used by trial `index` of a seeded run.
inline TrialCase verification_case(const VerifyConfig &cfg, std::size_t index) {
  Rng rng(derive_seed(cfg.seed, index));
  std::uniform_int_distribution<int> pick_m(1, cfg.max_modes);
  std::uniform_int_distribution<int> pick_anc(cfg.min_ancillas, cfg.max_ancillas);
  const int m = pick_m(rng);
  const int anc = pick_anc(rng);
  std::uniform_int_distribution<int> pick_out(1, m + anc);
  const int m_out = pick_out(rng);
  GaussianState rho = cfg.thermal_inputs ? thermal_state(m, cfg.eta) : random_state(m, rng);
  BltoChannel channel = random_channel(m, anc, m_out, cfg.eta, rng);
  return {std::move(rho), std::move(channel)};
}

inline VerificationReport verify_on_random_channels(const VerifyConfig &cfg) {
  if (cfg.max_modes < 1 || cfg.min_ancillas < 0 || cfg.max_ancillas < cfg.min_ancillas) fail(ErrorKind::Domain, "verify_on_random_channels: bad mode limits");
  std::vector<TransitionVerdict> verdicts(cfg.n_trials);
  parallel_for(cfg.n_trials, cfg.threads, [&](std::size_t i) {
    const auto trial = verification_case(cfg, i);
    const auto sigma = apply(trial.channel, trial.rho);
    verdicts[i] = certify_summaries(summarize(trial.rho, cfg.eta), summarize(sigma, cfg.eta), cfg.eta, cfg.tol);
  });
  VerificationReport report;
  report.trials = cfg.n_trials;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    for (const auto &l : verdicts[i].laws) {
      if (l.skipped) continue;
      if (l.margin < report.worst_margin) {
        report.worst_margin = l.margin;
        report.worst_law = l.law;
        report.worst_trial = i;
      }
      if (!l.passed) report.violations.push_back({i, l.law, l.margin});
    }
  }
  return report;
}

// Search for super-thermal symplectic eigenvalues that grow under a BLTO.

/// Largest amount by which a super-thermal symplectic eigenvalue of sigma
/// exceeds max(nu_k(rho), eta), comparing both spectra in descending order.
inline double superthermal_symplectic_increase(const Vector &rho_nu_up, const Vector &sigma_nu_up, double eta) {
  const Vector rho_desc = rho_nu_up.reverse();
  const Vector sigma_desc = sigma_nu_up.reverse();
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < sigma_desc.size(); ++k) {
    const double bound = k < rho_desc.size() ? std::max(rho_desc(k), eta) : eta;
    worst = std::max(worst, sigma_desc(k) - bound);
  }
  return worst;
}

struct WitnessSearchConfig {
  double eta = 2.0;
  std::size_t n_trials = 100000;
  std::uint64_t seed = 0;
  bool allow_squeezing = true;  ///< false restricts inputs to V >= I
  int max_ancillas = 2;
  double threshold = 1e-6;
  int threads = 1;
};

struct SymplecticWitness {
  std::size_t trial = 0;
  GaussianState rho;
  BltoChannel channel;
  Vector nu_before;  // ascending
  Vector nu_after;   // ascending
  double increase = 0.0;
};

struct WitnessSearchResult {
  std::size_t trials_run = 0;
  std::optional<SymplecticWitness> witness;
};

/// Random two-mode input for trial `index`: either a general squeezed state
/// or one with V >= I (no squeezing below vacuum in any direction).
inline TrialCase witness_case(const WitnessSearchConfig &cfg, std::size_t index) {
  Rng rng(derive_seed(cfg.seed, index));
  std::optional<GaussianState> rho;
  if (cfg.allow_squeezing) {
    rho = random_state(2, rng, RandomStateOptions{1.5, 2.0 * cfg.eta, 0.0});
  } else {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix g(4, 4);
    for (int j = 0; j < 4; ++j) {
      for (int i = 0; i < 4; ++i) g(i, j) = normal(rng);
    }
    const double scale = std::sqrt(cfg.eta) * unit(rng);
    rho = GaussianState(Vector::Zero(4), Matrix::Identity(4, 4) + scale * scale * g * g.transpose());
  }
  std::uniform_int_distribution<int> pick_anc(0, cfg.max_ancillas);
  const int anc = pick_anc(rng);
  std::uniform_int_distribution<int> pick_out(1, 2 + anc);
  const int m_out = pick_out(rng);
  BltoChannel channel = random_channel(2, anc, m_out, cfg.eta, rng);
  return {std::move(*rho), std::move(channel)};
}

inline WitnessSearchResult find_superthermal_symplectic_increase(const WitnessSearchConfig &cfg) {
  if (!(cfg.eta > 1.0)) fail(ErrorKind::Domain, "find_superthermal_symplectic_increase: eta must be > 1");
  WitnessSearchResult result;
  constexpr std::size_t kBatch = 4096;
  for (std::size_t start = 0; start < cfg.n_trials; start += kBatch) {
    const std::size_t count = std::min(kBatch, cfg.n_trials - start);
    std::vector<double> increase(count);
    parallel_for(count, cfg.threads, [&](std::size_t i) {
      const auto trial = witness_case(cfg, start + i);
      const auto sigma = apply(trial.channel, trial.rho);
      increase[i] = superthermal_symplectic_increase(symplectic_spectrum(trial.rho.cov()),
                                                     symplectic_spectrum(sigma.cov()), cfg.eta);
    });
    for (std::size_t i = 0; i < count; ++i) {
      if (increase[i] > cfg.threshold) {
        auto trial = witness_case(cfg, start + i);
        const auto sigma = apply(trial.channel, trial.rho);
        result.trials_run = start + i + 1;
        result.witness = SymplecticWitness{start + i,
                                           trial.rho,
                                           trial.channel,
                                           symplectic_spectrum(trial.rho.cov()),
                                           symplectic_spectrum(sigma.cov()),
                                           increase[i]};
        return result;
      }
    }
    result.trials_run = start + count;
  }
  return result;
}

}  // namespace gaussblto
