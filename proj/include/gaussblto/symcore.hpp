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
 * @file symcore.hpp
 *
 * Phase-space primitives for bosonic Gaussian states.
 *
 * Conventions used throughout the library:
 *  - quadratures are interleaved, x = (q1, p1, q2, p2, ..., qm, pm);
 *  - units have hbar = 2, so the vacuum covariance matrix is the identity;
 *  - the symplectic form is the block diagonal of [[0, 1], [-1, 0]].
 *
 * A passive linear unitary acts on phase space through a real matrix that is
 * both orthogonal and symplectic. Such matrices are exactly the real
 * representations of complex unitaries under the map
 * x_j + i p_j  <->  (x_j, p_j), which is also how they are sampled here.
 */

#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "gaussblto/core.hpp"

namespace gaussblto {

inline Matrix symplectic_form(int n) {
  if (n < 1) fail(ErrorKind::InvalidDimension, "symplectic_form: mode count must be >= 1");
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

/// First moments and covariance matrix of an m-mode Gaussian state.
///
/// Construction checks shapes, finiteness and symmetry of the covariance; it
/// does not check the uncertainty relation (see validate_state), so that
/// unphysical matrices can still be represented and diagnosed.
class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() == 0 || cov_.rows() % 2 != 0) {
      fail(ErrorKind::Shape, "GaussianState: covariance must be a non-empty 2m x 2m matrix");
    }
    if (mean_.size() != cov_.rows()) {
      fail(ErrorKind::Shape, "GaussianState: mean length must equal covariance dimension 2m");
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
      fail(ErrorKind::Shape, "GaussianState: non-finite entries");
    }
    const double defect = max_abs(cov_ - cov_.transpose());
    if (defect > kAlgTol * std::max(1.0, max_abs(cov_))) {
      fail(ErrorKind::Structure, "GaussianState: covariance is not symmetric (defect " +
                                     std::to_string(defect) + ")");
    }
    cov_ = (0.5 * (cov_ + cov_.transpose())).eval();
  }

  int modes() const { return static_cast<int>(cov_.rows() / 2); }
  const Vector &mean() const { return mean_; }
  const Matrix &cov() const { return cov_; }

 private:
  Vector mean_;
  Matrix cov_;
};

struct ValidityReport {
  double symmetry_defect = 0.0;
  /// Smallest eigenvalue of the Hermitian matrix V + i Omega.
  double min_uncertainty_eigenvalue = 0.0;
  bool valid = false;
};

/// Uncertainty-relation check via the eigenvalues of V + i Omega; works for
/// near-singular V where symplectic eigenvalues are ill-conditioned.
inline ValidityReport validate_state(const GaussianState &s, double tol = kPhysTol) {
  const Matrix &v = s.cov();
  ValidityReport report;
  report.symmetry_defect = max_abs(v - v.transpose());
  const CMatrix h = v.cast<Complex>() + Complex(0.0, 1.0) * symplectic_form(s.modes()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  report.min_uncertainty_eigenvalue = solver.eigenvalues().minCoeff();
  report.valid = report.symmetry_defect <= tol && report.min_uncertainty_eigenvalue >= -tol;
  return report;
}

inline void require_valid(const GaussianState &s, double tol = kPhysTol) {
  const auto report = validate_state(s, tol);
  if (report.symmetry_defect > tol) {
    fail(ErrorKind::InvalidState, "state violates covariance symmetry (defect " +
                                      std::to_string(report.symmetry_defect) + ")");
  }
  if (!report.valid) {
    fail(ErrorKind::InvalidState,
         "state violates the uncertainty relation V + i*Omega >= 0 (min eigenvalue " +
             std::to_string(report.min_uncertainty_eigenvalue) + ")");
  }
}

inline GaussianState thermal_state(int m, double eta) {
  if (m < 1) fail(ErrorKind::InvalidDimension, "thermal_state: mode count must be >= 1");
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "thermal_state: eta must be >= 1");
  return GaussianState(Vector::Zero(2 * m), eta * Matrix::Identity(2 * m, 2 * m));
}

inline GaussianState vacuum_state(int m) { return thermal_state(m, 1.0); }

/// Thermal level coth(x) for x = hbar*omega / (k_B T); returns 1 at zero temperature.
inline double eta_from_energy_ratio(double x) {
  if (!(x > 0.0)) fail(ErrorKind::Domain, "eta_from_energy_ratio: ratio must be > 0");
  if (std::isinf(x)) return 1.0;
  // coth(x) = 1 + 2 / (e^{2x} - 1), accurate for both small and large x.
  return 1.0 + 2.0 / std::expm1(2.0 * x);
}

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K

/// Thermal level for a mode of angular frequency omega (rad/s) at temperature T (K).
inline double eta_from_temperature(double omega, double temperature) {
  if (!(omega > 0.0)) fail(ErrorKind::Domain, "eta_from_temperature: omega must be > 0");
  if (!(temperature >= 0.0)) fail(ErrorKind::Domain, "eta_from_temperature: temperature must be >= 0");
  if (temperature == 0.0) return 1.0;
  return eta_from_energy_ratio(kHbar * omega / (kBoltzmann * temperature));
}

inline GaussianState direct_sum(const GaussianState &a, const GaussianState &b) {
  const auto na = a.cov().rows();
  const auto nb = b.cov().rows();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

/// State after the phase-space map x -> S x (S symplectic).
inline GaussianState transform(const GaussianState &s, const Matrix &symplectic) {
  if (symplectic.rows() != s.cov().rows() || symplectic.cols() != s.cov().cols()) {
    fail(ErrorKind::Shape, "transform: matrix dimension does not match state");
  }
  return GaussianState(symplectic * s.mean(), symplectic * s.cov() * symplectic.transpose());
}

// Real <-> complex isomorphism: (r_{j,x}, r_{j,p}) <-> r_{j,x} + i r_{j,p}.

inline CVector complex_embed(const Vector &r) {
  if (r.size() % 2 != 0) fail(ErrorKind::Shape, "complex_embed: vector length must be even");
  const auto n = r.size() / 2;
  CVector out(n);
  for (Eigen::Index j = 0; j < n; ++j) out(j) = Complex(r(2 * j), r(2 * j + 1));
  return out;
}

inline Vector real_from_complex(const CVector &z) {
  Vector out(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    out(2 * j) = z(j).real();
    out(2 * j + 1) = z(j).imag();
  }
  return out;
}

/// Largest deviation of a 2n x 2n matrix from the block structure
/// [[R, -I], [I, R]] (with I = 0 on diagonal blocks) required by the complex
/// embedding of Hermitian operators.
inline double embedding_structure_defect(const Matrix &w) {
  double defect = 0.0;
  const auto n = w.rows() / 2;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = w(2 * i, 2 * j), b = w(2 * i, 2 * j + 1);
      const double c = w(2 * i + 1, 2 * j), d = w(2 * i + 1, 2 * j + 1);
      defect = std::max({defect, std::abs(a - d), std::abs(b + c)});
      if (i == j) defect = std::max({defect, std::abs(b), std::abs(c)});
    }
  }
  return defect;
}

/// Maps W with 2x2 blocks [[R, -I], [I, R]] to the n x n complex matrix R + iI.
inline CMatrix complex_embed(const Matrix &w, double tol = kAlgTol) {
  if (w.rows() != w.cols() || w.rows() % 2 != 0) {
    fail(ErrorKind::Shape, "complex_embed: matrix must be square with even dimension");
  }
  const double defect = embedding_structure_defect(w);
  if (defect > tol * std::max(1.0, max_abs(w))) {
    fail(ErrorKind::Structure, "complex_embed: block structure violated (defect " +
                                   std::to_string(defect) + ")");
  }
  const auto n = w.rows() / 2;
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = 0.5 * (w(2 * i, 2 * j) + w(2 * i + 1, 2 * j + 1));
      const double im = 0.5 * (w(2 * i + 1, 2 * j) - w(2 * i, 2 * j + 1));
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

/// Real 2n x 2n representation of an n x n complex matrix.
inline Matrix real_from_complex(const CMatrix &z) {
  const auto n = z.rows();
  const auto k = z.cols();
  Matrix out(2 * n, 2 * k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double re = z(i, j).real(), im = z(i, j).imag();
      out(2 * i, 2 * j) = re;
      out(2 * i, 2 * j + 1) = -im;
      out(2 * i + 1, 2 * j) = im;
      out(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return out;
}

inline double orthogonality_defect(const Matrix &m) {
  return max_abs(m.transpose() * m - Matrix::Identity(m.cols(), m.cols()));
}

inline double symplecticity_defect(const Matrix &m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const Matrix omega = symplectic_form(static_cast<int>(m.rows() / 2));
  return max_abs(m.transpose() * omega * m - omega);
}

/// Phase-space action of a passive linear unitary on n modes.
class OrthogonalSymplecticMatrix {
 public:
  explicit OrthogonalSymplecticMatrix(Matrix m, double tol = kAlgTol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0 || m_.rows() % 2 != 0) {
      fail(ErrorKind::Shape, "OrthogonalSymplecticMatrix: must be a non-empty 2n x 2n matrix");
    }
    const double orth = orthogonality_defect(m_);
    if (orth > tol) {
      fail(ErrorKind::Structure,
           "OrthogonalSymplecticMatrix: not orthogonal (defect " + std::to_string(orth) + ")");
    }
    const double symp = symplecticity_defect(m_);
    if (symp > tol) {
      fail(ErrorKind::Structure,
           "OrthogonalSymplecticMatrix: not symplectic (defect " + std::to_string(symp) + ")");
    }
  }

  static OrthogonalSymplecticMatrix identity(int n) {
    return OrthogonalSymplecticMatrix(Matrix::Identity(2 * n, 2 * n));
  }

  int modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix &matrix() const { return m_; }

  OrthogonalSymplecticMatrix operator*(const OrthogonalSymplecticMatrix &rhs) const {
    if (rhs.modes() != modes()) fail(ErrorKind::Shape, "OrthogonalSymplecticMatrix: mode mismatch");
    return OrthogonalSymplecticMatrix(m_ * rhs.m_);
  }

  OrthogonalSymplecticMatrix transpose() const { return OrthogonalSymplecticMatrix(m_.transpose()); }

 private:
  Matrix m_;
};

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
inline CMatrix haar_unitary(int n, Rng &rng) {
  if (n < 1) fail(ErrorKind::InvalidDimension, "haar_unitary: n must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix &r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

inline OrthogonalSymplecticMatrix random_orthogonal_symplectic(int n, Rng &rng) {
  return OrthogonalSymplecticMatrix(real_from_complex(haar_unitary(n, rng)));
}

inline OrthogonalSymplecticMatrix random_orthogonal_symplectic(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal_symplectic(n, rng);
}

/// Single-mode squeezer diag(e^r, e^-r) on mode i of an n-mode system.
inline Matrix single_mode_squeezer(int n, int i, double r) {
  if (i < 0 || i >= n) fail(ErrorKind::Index, "single_mode_squeezer: mode index out of range");
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  s(2 * i, 2 * i) = std::exp(r);
  s(2 * i + 1, 2 * i + 1) = std::exp(-r);
  return s;
}

/// Two-mode squeezed thermal state: blocks [[a I, c Z], [c Z, a I]] with
/// a = eta cosh 2r, c = eta sinh 2r and Z = diag(1, -1).
inline GaussianState two_mode_squeezed_thermal(double eta, double r) {
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "two_mode_squeezed_thermal: eta must be >= 1");
  const double a = eta * std::cosh(2.0 * r);
  const double c = eta * std::sinh(2.0 * r);
  Matrix v = Matrix::Zero(4, 4);
  v.diagonal().setConstant(a);
  v(0, 2) = v(2, 0) = c;
  v(1, 3) = v(3, 1) = -c;
  return GaussianState(Vector::Zero(4), v);
}

struct RandomStateOptions {
  double max_squeezing = 1.0;      ///< squeezing parameters drawn from [0, max_squeezing]
  double max_thermal_level = 4.0;  ///< symplectic eigenvalues drawn from [1, max_thermal_level]
  double mean_scale = 1.0;         ///< first moments drawn from N(0, mean_scale^2)
};

/// Random valid state O1 Z O2 (thermal) O2^T Z O1^T with a random displacement.
inline GaussianState random_state(int m, Rng &rng, const RandomStateOptions &opts = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix o1 = random_orthogonal_symplectic(m, rng).matrix();
  const Matrix o2 = random_orthogonal_symplectic(m, rng).matrix();
  Matrix z = Matrix::Identity(2 * m, 2 * m);
  Vector d(2 * m);
  for (int k = 0; k < m; ++k) {
    const double r = opts.max_squeezing * unit(rng);
    const double nu = 1.0 + (opts.max_thermal_level - 1.0) * unit(rng);
    z(2 * k, 2 * k) = std::exp(r);
    z(2 * k + 1, 2 * k + 1) = std::exp(-r);
    d(2 * k) = d(2 * k + 1) = nu;
  }
  const Matrix s = o1 * z * o2;
  Vector mean(2 * m);
  for (int j = 0; j < 2 * m; ++j) mean(j) = opts.mean_scale * normal(rng);
  return GaussianState(std::move(mean), s * d.asDiagonal() * s.transpose());
}

}  // namespace gaussblto
