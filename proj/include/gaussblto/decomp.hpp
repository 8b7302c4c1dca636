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
 * @file decomp.hpp
 *
 * Symmetric eigen-decomposition, symplectic spectrum, Williamson normal form
 * and the Bloch-Messiah (Euler) factorization of symplectic matrices.
 *
 * Together, Williamson and Bloch-Messiah give the canonical preparation of a
 * Gaussian state: thermal modes at the symplectic eigenvalues, a passive
 * unitary O2, single-mode squeezers, and a second passive unitary O1.
 */

#pragma once

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gaussblto/core.hpp"
#include "gaussblto/symcore.hpp"

namespace gaussblto {

struct SymEig {
  Vector values;   ///< descending
  Matrix vectors;  ///< column k pairs with values(k)
};

inline void require_symmetric(const Matrix &v, double tol, const char *who) {
  if (v.rows() != v.cols() || v.rows() == 0) fail(ErrorKind::Shape, std::string(who) + ": matrix must be square");
  const double defect = max_abs(v - v.transpose());
  if (defect > tol * std::max(1.0, max_abs(v))) {
    fail(ErrorKind::Structure, std::string(who) + ": matrix is not symmetric (defect " +
                                   std::to_string(defect) + ")");
  }
}

inline SymEig sym_eig_desc(const Matrix &v, double tol = kAlgTol) {
  require_symmetric(v, tol, "sym_eig_desc");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (v + v.transpose()));
  const auto n = v.rows();
  SymEig out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

inline Vector eigenvalues_desc(const Matrix &v) { return sym_eig_desc(v).values; }

/// V^p for symmetric positive-definite V (p = 1/2 or -1/2 in practice).
inline Matrix spd_power(const Matrix &v, double p, const char *who) {
  require_symmetric(v, kAlgTol, who);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (v + v.transpose()));
  const Vector &lam = solver.eigenvalues();
  if (lam.minCoeff() < kEigenFloor) {
    fail(ErrorKind::Conditioning, std::string(who) + ": covariance is numerically singular (min eigenvalue " +
                                      std::to_string(lam.minCoeff()) + ")");
  }
  const Vector powered = lam.array().pow(p).matrix();
  return solver.eigenvectors() * powered.asDiagonal() * solver.eigenvectors().transpose();
}

inline void require_phase_space_matrix(const Matrix &v, const char *who) {
  if (v.rows() != v.cols() || v.rows() == 0 || v.rows() % 2 != 0) {
    fail(ErrorKind::Shape, std::string(who) + ": expected a non-empty 2m x 2m matrix");
  }
}

/// Symplectic eigenvalues in ascending order: the moduli of the eigenvalues of
/// i Omega V, obtained from the Hermitian matrix i V^{1/2} Omega V^{1/2}.
inline Vector symplectic_spectrum(const Matrix &v) {
  require_phase_space_matrix(v, "symplectic_spectrum");
  const int m = static_cast<int>(v.rows() / 2);
  const Matrix half = spd_power(v, 0.5, "symplectic_spectrum");
  const Matrix a = half * symplectic_form(m) * half;
  const CMatrix h = Complex(0.0, 1.0) * a.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().tail(m);
}

struct WilliamsonResult {
  Matrix S;   ///< symplectic, V = S diag(nu1, nu1, ..., num, num) S^T
  Vector nu;  ///< ascending
};

inline Matrix thermal_diagonal(const Vector &nu) {
  Vector d(2 * nu.size());
  for (Eigen::Index k = 0; k < nu.size(); ++k) d(2 * k) = d(2 * k + 1) = nu(k);
  return d.asDiagonal();
}

/// Williamson normal form. K = V^{-1/2} Omega V^{-1/2} is antisymmetric with
/// eigenvalues +-i/nu_k; an eigenvector a + ib of iK for +1/nu_k yields the
/// orthonormal pair (sqrt2 b, sqrt2 a) that brings K to canonical form O, and
/// S = V^{1/2} O D^{-1/2}.
inline WilliamsonResult williamson(const Matrix &v) {
  require_phase_space_matrix(v, "williamson");
  const int m = static_cast<int>(v.rows() / 2);
  const Matrix half = spd_power(v, 0.5, "williamson");
  const Matrix inv_half = spd_power(v, -0.5, "williamson");
  const Matrix k = inv_half * symplectic_form(m) * inv_half;
  const CMatrix h = Complex(0.0, 1.0) * k.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);

  Matrix o(2 * m, 2 * m);
  Vector nu(m);
  const double root2 = std::sqrt(2.0);
  for (int j = 0; j < m; ++j) {
    // Largest 1/nu first, so nu comes out ascending.
    const Eigen::Index idx = 2 * m - 1 - j;
    nu(j) = 1.0 / solver.eigenvalues()(idx);
    const CVector w = solver.eigenvectors().col(idx);
    o.col(2 * j) = root2 * w.imag();
    o.col(2 * j + 1) = root2 * w.real();
  }
  Vector scale(2 * m);
  for (int j = 0; j < m; ++j) scale(2 * j) = scale(2 * j + 1) = 1.0 / std::sqrt(nu(j));
  return {half * o * scale.asDiagonal(), nu};
}

struct BlochMessiahResult {
  OrthogonalSymplecticMatrix O1;
  OrthogonalSymplecticMatrix O2;
  Vector r;  ///< squeezing parameters, descending, >= 0
};

/// diag(e^{r1}, e^{-r1}, ..., e^{rm}, e^{-rm})
inline Matrix squeezing_diagonal(const Vector &r) {
  Vector d(2 * r.size());
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    d(2 * k) = std::exp(r(k));
    d(2 * k + 1) = std::exp(-r(k));
  }
  return d.asDiagonal();
}

namespace detail {

inline void fix_sign(Eigen::Ref<Vector> u) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u(i)) > 1e-12) {
      if (u(i) < 0) u = -u;
      return;
    }
  }
}

}  // namespace detail

/// Bloch-Messiah factorization S = O1 Z O2.
///
/// The left singular vectors of S with singular value e^{r} > 1 span an
/// isotropic subspace; pairing each such q-direction u with Omega^T u gives
/// the columns of O1. The unsqueezed remainder is Omega-invariant and is
/// completed to a symplectic orthonormal basis greedily. Gauge: r descending,
/// first non-negligible entry of every q-direction positive.
inline BlochMessiahResult bloch_messiah(const Matrix &s, double tol = 1e-9) {
  require_phase_space_matrix(s, "bloch_messiah");
  const int m = static_cast<int>(s.rows() / 2);
  const double defect = symplecticity_defect(s);
  if (defect > tol * std::max(1.0, max_abs(s) * max_abs(s))) {
    fail(ErrorKind::Structure, "bloch_messiah: input is not symplectic (defect " + std::to_string(defect) + ")");
  }
  const Matrix omega_t = symplectic_form(m).transpose();

  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeFullU);
  const Vector &sigma = svd.singularValues();
  const Matrix &u = svd.matrixU();

  constexpr double kUnsqueezed = 1e-9;
  int squeezed = 0;
  while (squeezed < m && std::log(sigma(squeezed)) > kUnsqueezed) ++squeezed;

  Matrix o1(2 * m, 2 * m);
  Vector r = Vector::Zero(m);
  for (int k = 0; k < squeezed; ++k) {
    Vector q = u.col(k);
    detail::fix_sign(q);
    r(k) = std::log(sigma(k));
    o1.col(2 * k) = q;
    o1.col(2 * k + 1) = omega_t * q;
  }

  // Complete the unsqueezed block from the middle singular vectors.
  std::vector<Vector> candidates;
  for (int k = squeezed; k < 2 * m - squeezed; ++k) candidates.emplace_back(u.col(k));
  for (int k = squeezed; k < m; ++k) {
    const auto filled = 2 * k;
    Eigen::Index best = -1;
    double best_norm = -1.0;
    Vector best_vec;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Vector x = candidates[c];
      for (int pass = 0; pass < 2; ++pass) {
        x -= o1.leftCols(filled) * (o1.leftCols(filled).transpose() * x);
      }
      const double nrm = x.norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = static_cast<Eigen::Index>(c);
        best_vec = x;
      }
    }
    if (best < 0 || best_norm < 1e-6) {
      fail(ErrorKind::Conditioning, "bloch_messiah: could not complete a symplectic basis");
    }
    best_vec /= best_norm;
    detail::fix_sign(best_vec);
    o1.col(2 * k) = best_vec;
    o1.col(2 * k + 1) = omega_t * best_vec;
    candidates.erase(candidates.begin() + best);
  }

  const Vector inv_z = squeezing_diagonal(-r).diagonal();
  const Matrix o2 = inv_z.asDiagonal() * o1.transpose() * s;
  return {OrthogonalSymplecticMatrix(o1, tol), OrthogonalSymplecticMatrix(o2, tol), r};
}

}  // namespace gaussblto
