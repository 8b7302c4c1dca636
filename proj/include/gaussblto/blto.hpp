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
 * @file blto.hpp
 *
 * Bosonic linear thermal operations: append m_anc thermal ancillas at level
 * eta, apply a passive linear unitary M on all modes, keep a subset of modes.
 *
 *   mean' = rows(kept) of M (mean (+) 0)
 *   cov'  = rows/cols(kept) of M (V (+) eta I) M^T
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gaussblto/core.hpp"
#include "gaussblto/symcore.hpp"

namespace gaussblto {

class BltoChannel {
 public:
  BltoChannel(int m_in, int m_anc, double eta, OrthogonalSymplecticMatrix global, std::vector<int> kept)
      : m_in_(m_in), m_anc_(m_anc), eta_(eta), global_(std::move(global)), kept_(std::move(kept)) {
    if (m_in < 1) fail(ErrorKind::InvalidDimension, "BltoChannel: m_in must be >= 1");
    if (m_anc < 0) fail(ErrorKind::InvalidDimension, "BltoChannel: m_anc must be >= 0");
    if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "BltoChannel: eta must be >= 1");
    if (global_.modes() != m_in + m_anc) {
      fail(ErrorKind::Shape, "BltoChannel: global matrix must act on m_in + m_anc modes");
    }
    if (kept_.empty()) fail(ErrorKind::InvalidDimension, "BltoChannel: at least one mode must be kept");
    std::vector<int> sorted = kept_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorKind::Index, "BltoChannel: kept mode indices must be distinct");
    }
    if (sorted.front() < 0 || sorted.back() >= m_in + m_anc) {
      fail(ErrorKind::Index, "BltoChannel: kept mode index out of range");
    }
  }

  int m_in() const { return m_in_; }
  int m_anc() const { return m_anc_; }
  int m_out() const { return static_cast<int>(kept_.size()); }
  int total_modes() const { return m_in_ + m_anc_; }
  double eta() const { return eta_; }
  const OrthogonalSymplecticMatrix &global() const { return global_; }
  const std::vector<int> &kept() const { return kept_; }

 private:
  int m_in_;
  int m_anc_;
  double eta_;
  OrthogonalSymplecticMatrix global_;
  std::vector<int> kept_;
};

inline std::vector<Eigen::Index> quadrature_indices(const std::vector<int> &modes) {
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * modes.size());
  for (int k : modes) {
    idx.push_back(2 * k);
    idx.push_back(2 * k + 1);
  }
  return idx;
}

inline GaussianState apply(const BltoChannel &c, const GaussianState &s) {
  if (s.modes() != c.m_in()) {
    fail(ErrorKind::Shape, "apply: state has " + std::to_string(s.modes()) + " modes, channel expects " +
                               std::to_string(c.m_in()));
  }
  const auto n_in = 2 * c.m_in();
  const auto n = 2 * c.total_modes();
  const Matrix &m = c.global().matrix();

  Vector mean_full = m.leftCols(n_in) * s.mean();
  // M (V + eta I_anc) M^T = M_S V M_S^T + eta M_A M_A^T
  Matrix cov_full = m.leftCols(n_in) * s.cov() * m.leftCols(n_in).transpose();
  if (n > n_in) cov_full.noalias() += c.eta() * m.rightCols(n - n_in) * m.rightCols(n - n_in).transpose();

  const auto idx = quadrature_indices(c.kept());
  return GaussianState(mean_full(idx), cov_full(idx, idx));
}

inline BltoChannel identity_channel(int m, double eta) {
  std::vector<int> kept(m);
  std::iota(kept.begin(), kept.end(), 0);
  return BltoChannel(m, 0, eta, OrthogonalSymplecticMatrix::identity(m), std::move(kept));
}

/// Embeds a local passive matrix into n modes, mapping its mode k to modes[k].
inline Matrix embed_modes(const Matrix &local, const std::vector<int> &modes, int n) {
  Matrix out = Matrix::Identity(2 * n, 2 * n);
  const auto idx = quadrature_indices(modes);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      out(idx[i], idx[j]) = local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

/// Single channel equivalent to applying `first` and then `second`.
///
/// Global layout: [first inputs, first ancillas, second ancillas]. Modes that
/// `first` discards are carried along untouched and dropped at the end.
inline BltoChannel compose(const BltoChannel &second, const BltoChannel &first) {
  if (second.m_in() != first.m_out()) {
    fail(ErrorKind::Shape, "compose: second.m_in must equal first.m_out");
  }
  if (second.eta() != first.eta()) {
    fail(ErrorKind::IncompatibleBath, "compose: channels act with different bath levels");
  }
  const int n1 = first.total_modes();
  const int n = n1 + second.m_anc();

  Matrix step1 = Matrix::Identity(2 * n, 2 * n);
  step1.topLeftCorner(2 * n1, 2 * n1) = first.global().matrix();

  std::vector<int> placement(first.kept());
  for (int a = 0; a < second.m_anc(); ++a) placement.push_back(n1 + a);
  const Matrix step2 = embed_modes(second.global().matrix(), placement, n);

  std::vector<int> kept;
  kept.reserve(second.kept().size());
  for (int k : second.kept()) kept.push_back(placement[static_cast<std::size_t>(k)]);

  return BltoChannel(first.m_in(), n - first.m_in(), first.eta(),
                     OrthogonalSymplecticMatrix(step2 * step1), std::move(kept));
}

/// Acts as [[cos I2, sin I2], [-sin I2, cos I2]] on modes (i, j).
inline OrthogonalSymplecticMatrix beamsplitter(int n, int i, int j, double theta) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    fail(ErrorKind::Index, "beamsplitter: mode indices must be distinct and in range");
  }
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int d = 0; d < 2; ++d) {
    m(2 * i + d, 2 * i + d) = c;
    m(2 * i + d, 2 * j + d) = s;
    m(2 * j + d, 2 * i + d) = -s;
    m(2 * j + d, 2 * j + d) = c;
  }
  return OrthogonalSymplecticMatrix(std::move(m));
}

/// Rotation of mode i's (q, p) plane by phi, i.e. multiplication by e^{i phi}.
inline OrthogonalSymplecticMatrix phase_shifter(int n, int i, double phi) {
  if (i < 0 || i >= n) fail(ErrorKind::Index, "phase_shifter: mode index out of range");
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  const double c = std::cos(phi), s = std::sin(phi);
  m(2 * i, 2 * i) = c;
  m(2 * i, 2 * i + 1) = -s;
  m(2 * i + 1, 2 * i) = s;
  m(2 * i + 1, 2 * i + 1) = c;
  return OrthogonalSymplecticMatrix(std::move(m));
}

/// Single-mode thermal loss: V -> t V + (1 - t) eta I.
inline BltoChannel pure_loss_channel(double eta, double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::Domain, "pure_loss_channel: transmissivity must lie in [0, 1]");
  const double theta = std::acos(std::sqrt(t));
  return BltoChannel(1, 1, eta, beamsplitter(2, 0, 1, theta), {0});
}

/// Haar-random channel: m_anc ancillas, Haar passive unitary on all modes and
/// m_out kept modes chosen uniformly without replacement.
inline BltoChannel random_channel(int m_in, int m_anc, int m_out, double eta, Rng &rng) {
  const int n = m_in + m_anc;
  if (m_out < 1 || m_out > n) fail(ErrorKind::InvalidDimension, "random_channel: m_out must lie in [1, m_in + m_anc]");
  auto global = random_orthogonal_symplectic(n, rng);
  std::vector<int> modes(n);
  std::iota(modes.begin(), modes.end(), 0);
  for (int k = 0; k < m_out; ++k) {
    std::uniform_int_distribution<int> pick(k, n - 1);
    std::swap(modes[static_cast<std::size_t>(k)], modes[static_cast<std::size_t>(pick(rng))]);
  }
  modes.resize(static_cast<std::size_t>(m_out));
  return BltoChannel(m_in, m_anc, eta, std::move(global), std::move(modes));
}

}  // namespace gaussblto
