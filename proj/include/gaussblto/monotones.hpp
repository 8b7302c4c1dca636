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
 * @file monotones.hpp
 *
 * Resource monotones and generalized temperatures of Gaussian states under
 * bosonic linear thermal operations.
 *
 *  - principal directional temperatures tau: eigenvalues of V;
 *  - principal mode temperatures mu: eigenvalues of the complex embedding of
 *    W = (V + Omega V Omega^T) / 2 (each a doubly degenerate eigenvalue of W);
 *  - symplectic eigenvalues nu;
 *  - directional SNRs: square roots of the eigenvalues of
 *    R = V^{-1/2} <x> <x>^T V^{-1/2} (rank one, so only SNR_1 can be nonzero);
 *  - mode SNRs: min-max over symplectic (passively isolable) subspaces;
 *  - first-moment norm, relative entropy to the bath state, and the total
 *    squeezing of the canonical Williamson + Bloch-Messiah preparation.
 */

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gaussblto/core.hpp"
#include "gaussblto/decomp.hpp"
#include "gaussblto/symcore.hpp"

namespace gaussblto {

inline Vector principal_directional_temperatures(const GaussianState &s) { return eigenvalues_desc(s.cov()); }

inline Matrix mode_matrix(const Matrix &v) {
  const Matrix omega = symplectic_form(static_cast<int>(v.rows() / 2));
  return 0.5 * (v + omega * v * omega.transpose());
}

namespace detail {

struct ModeEig {
  Vector values;   // descending
  CMatrix vectors; // column k pairs with values(k)
};

inline ModeEig mode_eig(const Matrix &v, bool vectors) {
  const Matrix w = mode_matrix(v);
  CMatrix wc;
  try {
    wc = complex_embed(w, kAlgTol);
  } catch (const Error &e) {
    fail(ErrorKind::Structure, std::string("principal_mode_temperatures: internal consistency: ") + e.what());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(wc, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  ModeEig out;
  out.values = solver.eigenvalues().reverse();
  if (vectors) out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace detail

/// Mode temperatures, descending. The paired real spectrum of W is checked
/// against the complex-embedded one as a sanity test.
inline Vector principal_mode_temperatures(const GaussianState &s) {
  const auto eig = detail::mode_eig(s.cov(), false);
  const Vector w_real = eigenvalues_desc(mode_matrix(s.cov()));
  const double scale = std::max(1.0, w_real.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (std::abs(w_real(2 * k) - w_real(2 * k + 1)) > kPhysTol * scale ||
        std::abs(w_real(2 * k) - eig.values(k)) > kPhysTol * scale) {
      fail(ErrorKind::Structure, "principal_mode_temperatures: W spectrum is not doubly degenerate");
    }
  }
  return eig.values;
}

/// Passive matrix M isolating the principal modes: the state M V M^T has
/// single-mode blocks whose mean principal temperatures are mu, descending.
inline OrthogonalSymplecticMatrix mode_temperature_basis(const GaussianState &s) {
  const auto eig = detail::mode_eig(s.cov(), true);
  return OrthogonalSymplecticMatrix(real_from_complex(CMatrix(eig.vectors.adjoint())), kPhysTol);
}

/// Square roots of the eigenvalues of R = V^{-1/2} x x^T V^{-1/2}, descending.
/// R = w w^T has rank one, so its spectrum is (|w|^2, 0, ..., 0) exactly.
inline Vector snr_spectrum(const GaussianState &s) {
  const Matrix inv_half = spd_power(s.cov(), -0.5, "snr_spectrum");
  Vector out = Vector::Zero(s.mean().size());
  out(0) = (inv_half * s.mean()).norm();
  return out;
}

inline double moment_norm(const GaussianState &s) { return s.mean().squaredNorm(); }

struct MsnrReport {
  Vector analytic;  ///< (SNR_1, 0, ..., 0), length m
  Vector estimate;  ///< Monte-Carlo min-max estimate, length m
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_deviation = 0.0;  ///< max_k |analytic_k - estimate_k|
};

namespace detail {

// Largest squared SNR over the real span of the complex columns of z.
class SubspaceSnr {
 public:
  SubspaceSnr(const GaussianState &s, Eigen::Index complex_dim)
      : v_(s.cov()), mean_(s.mean()), b_(s.cov().rows(), 2 * complex_dim), vb_(s.cov().rows(), 2 * complex_dim),
        g_(2 * complex_dim, 2 * complex_dim), proj_(2 * complex_dim), ldlt_(2 * complex_dim) {}

  double operator()(const CMatrix &z) {
    const auto n = z.rows();
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double re = z(i, j).real(), im = z(i, j).imag();
        b_(2 * i, 2 * j) = re;
        b_(2 * i + 1, 2 * j) = im;
        b_(2 * i, 2 * j + 1) = -im;
        b_(2 * i + 1, 2 * j + 1) = re;
      }
    }
    vb_.noalias() = v_ * b_;
    g_.noalias() = b_.transpose() * vb_;
    proj_.noalias() = b_.transpose() * mean_;
    ldlt_.compute(g_);
    return proj_.dot(ldlt_.solve(proj_));
  }

 private:
  const Matrix &v_;
  const Vector &mean_;
  Matrix b_, vb_, g_;
  Vector proj_;
  Eigen::LDLT<Matrix> ldlt_;
};

inline CMatrix gaussian_complex(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

inline CMatrix orthonormal_columns(const CMatrix &z) {
  Eigen::HouseholderQR<CMatrix> qr(z);
  return qr.householderQ() * CMatrix::Identity(z.rows(), z.cols());
}

}  // namespace detail

/// Mode SNRs. Analytic values: MSNR_1 = SNR_1 (the only 2m-dimensional
/// symplectic subspace is the whole space) and MSNR_k = 0 for k >= 2, since
/// the complex orthogonal complement of the mean carries no signal. The
/// estimate minimizes, for each k, the largest SNR within l = m - k + 1 mode
/// subspaces: half of the samples are Haar-random subspaces, the rest are
/// random perturbations of the incumbent with an adaptive step.
inline MsnrReport msnr_spectrum(const GaussianState &s, std::size_t samples, std::uint64_t seed) {
  const Vector snr = snr_spectrum(s);
  const int m = s.modes();
  MsnrReport report;
  report.analytic = Vector::Zero(m);
  report.analytic(0) = snr(0);
  report.estimate = Vector::Zero(m);
  report.samples = samples;
  report.seed = seed;
  if (samples == 0) {
    report.estimate.setConstant(std::numeric_limits<double>::quiet_NaN());
    report.max_deviation = std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  const std::size_t global = std::max<std::size_t>(1, samples / 2);
  for (int k = 1; k <= m; ++k) {
    const int dim = m - k + 1;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    detail::SubspaceSnr value(s, dim);
    double best = std::numeric_limits<double>::infinity();
    CMatrix best_z;
    for (std::size_t i = 0; i < global; ++i) {
      CMatrix z = detail::orthonormal_columns(detail::gaussian_complex(m, dim, rng));
      const double f = value(z);
      if (f < best) {
        best = f;
        best_z = std::move(z);
      }
    }
    if (dim < m) {
      double step = 0.3;
      for (std::size_t i = global; i < samples; ++i) {
        CMatrix z = detail::orthonormal_columns(best_z + step * detail::gaussian_complex(m, dim, rng));
        const double f = value(z);
        if (f < best) {
          best = f;
          best_z = std::move(z);
          step = std::min(1.0, step * 1.5);
        } else {
          step = std::max(1e-12, step * 0.95);
        }
      }
    }
    report.estimate(k - 1) = std::sqrt(std::max(0.0, best));
  }
  report.max_deviation = (report.analytic - report.estimate).cwiseAbs().maxCoeff();
  return report;
}

/// Von Neumann entropy contribution of a thermal mode with symplectic eigenvalue nu (nats).
inline double entropy_g(double nu) {
  if (nu <= 1.0) return 0.0;
  const double a = 0.5 * (nu + 1.0);
  const double b = 0.5 * (nu - 1.0);
  return a * std::log(a) - b * std::log(b);
}

enum class RelEntStatus { Finite, Infinite };

struct RelativeEntropy {
  RelEntStatus status = RelEntStatus::Finite;
  double value = 0.0;  ///< meaningful when status == Finite
};

namespace detail {

inline double von_neumann_entropy(const GaussianState &s) {
  const Vector nu = symplectic_spectrum(s.cov());
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    if (nu(k) < 1.0 - kPhysTol) {
      fail(ErrorKind::InvalidState, "rel_ent_athermality: symplectic eigenvalue below 1 (" +
                                        std::to_string(nu(k)) + ")");
    }
    entropy += entropy_g(nu(k));
  }
  return entropy;
}

inline Vector mode_occupations(const GaussianState &s) {
  Vector n(s.modes());
  const Matrix &v = s.cov();
  const Vector &x = s.mean();
  for (int k = 0; k < s.modes(); ++k) {
    n(k) = (v(2 * k, 2 * k) + v(2 * k + 1, 2 * k + 1) + x(2 * k) * x(2 * k) + x(2 * k + 1) * x(2 * k + 1)) / 4.0 - 0.5;
  }
  return n;
}

}  // namespace detail

/// S(rho || gamma_eta^{(x)m}) in nats; requires eta > 1 (full-rank reference).
inline double rel_ent_athermality(const GaussianState &s, double eta) {
  if (!(eta > 1.0)) {
    fail(ErrorKind::ReferenceRank, "rel_ent_athermality: reference thermal state must have eta > 1");
  }
  const double nbar = 0.5 * (eta - 1.0);
  const double log_ratio = std::log1p(1.0 / nbar);  // ln((nbar + 1) / nbar)
  const Vector occ = detail::mode_occupations(s);
  double cross = 0.0;  // -Tr[rho ln gamma]
  for (Eigen::Index k = 0; k < occ.size(); ++k) cross += std::log1p(nbar) + occ(k) * log_ratio;
  return std::max(0.0, cross - detail::von_neumann_entropy(s));
}

/// Relative entropy that also covers the zero-temperature bath: at eta = 1
/// the reference is the vacuum, so the value is 0 for the vacuum and
/// infinite otherwise.
inline RelativeEntropy rel_ent_athermality_report(const GaussianState &s, double eta, double tol = kPhysTol) {
  if (eta > 1.0) return {RelEntStatus::Finite, rel_ent_athermality(s, eta)};
  if (eta < 1.0) fail(ErrorKind::UnphysicalTemperature, "rel_ent_athermality: eta must be >= 1");
  const bool is_vacuum = s.mean().cwiseAbs().maxCoeff() <= tol &&
                         max_abs(s.cov() - Matrix::Identity(s.cov().rows(), s.cov().cols())) <= tol;
  if (is_vacuum) return {RelEntStatus::Finite, 0.0};
  return {RelEntStatus::Infinite, std::numeric_limits<double>::infinity()};
}

inline double squeezing_unitary_formation(const GaussianState &s) {
  const auto w = williamson(s.cov());
  return bloch_messiah(w.S).r.sum();
}

struct Classification {
  std::vector<double> super;  ///< values > eta + tol, descending
  std::vector<double> sub;    ///< values < eta - tol, ascending
  int k_super = 0;
  int k_sub = 0;
};

inline Classification classify(const Vector &values, double eta, double tol = kPhysTol) {
  Classification c;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > eta + tol) c.super.push_back(values(i));
    if (values(i) < eta - tol) c.sub.push_back(values(i));
  }
  std::sort(c.super.begin(), c.super.end(), std::greater<>());
  std::sort(c.sub.begin(), c.sub.end());
  c.k_super = static_cast<int>(c.super.size());
  c.k_sub = static_cast<int>(c.sub.size());
  return c;
}

struct ThermalProfile {
  double eta = 1.0;
  Vector tau;   ///< descending, 2m
  Vector mu;    ///< descending, m
  Vector nu;    ///< ascending, m
  Vector snr;   ///< descending, 2m
  Vector msnr;  ///< descending, m (analytic)
  double moment_norm = 0.0;
  std::optional<double> rel_ent_athermality;  ///< absent when undefined or infinite
  RelEntStatus rel_ent_status = RelEntStatus::Finite;
  double squeezing_unitary_formation = 0.0;
  int k_super = 0;     ///< tau above eta
  int k_sub = 0;       ///< tau below eta
  int k_sp_super = 0;  ///< mu above eta
  int k_sp_sub = 0;    ///< mu below eta
};

inline ThermalProfile profile(const GaussianState &s, double eta, double tol = kPhysTol) {
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "profile: eta must be >= 1");
  require_valid(s, tol);
  ThermalProfile p;
  p.eta = eta;
  p.tau = principal_directional_temperatures(s);
  p.mu = principal_mode_temperatures(s);
  p.nu = symplectic_spectrum(s.cov());
  p.snr = snr_spectrum(s);
  p.msnr = Vector::Zero(s.modes());
  p.msnr(0) = p.snr(0);
  p.moment_norm = moment_norm(s);
  const auto rel = rel_ent_athermality_report(s, eta, tol);
  p.rel_ent_status = rel.status;
  if (rel.status == RelEntStatus::Finite) p.rel_ent_athermality = rel.value;
  p.squeezing_unitary_formation = squeezing_unitary_formation(s);
  const auto ct = classify(p.tau, eta, tol);
  const auto cm = classify(p.mu, eta, tol);
  p.k_super = ct.k_super;
  p.k_sub = ct.k_sub;
  p.k_sp_super = cm.k_super;
  p.k_sp_sub = cm.k_sub;
  return p;
}

}  // namespace gaussblto
