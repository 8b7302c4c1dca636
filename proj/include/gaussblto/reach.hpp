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
 * @file reach.hpp
 *
 * Brute-force sampling of the single-mode states reachable from a given input
 * under BLTOs, and the outer-bound regions implied by the certify laws, in
 * (tau1, tau2) coordinates.
 *
 * Sample i is generated from derive_seed(seed, i) alone, so results do not
 * depend on thread count and a run with more samples is a superset of one
 * with fewer.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "gaussblto/blto.hpp"
#include "gaussblto/certify.hpp"
#include "gaussblto/core.hpp"
#include "gaussblto/monotones.hpp"
#include "gaussblto/parallel.hpp"
#include "gaussblto/symcore.hpp"

namespace gaussblto {

/// Everything needed to rebuild the channel behind one sample.
struct ChannelParams {
  std::uint64_t seed = 0;    ///< seeds the Haar matrix
  int m_anc = 0;
  std::vector<int> support;  ///< input modes the passive unitary touches
  int kept = 0;              ///< index into [inputs, ancillas]
};

struct ReachSample {
  double tau1 = 0.0;
  double tau2 = 0.0;
  ChannelParams channel;
};

enum class ChannelFamily {
  Haar,           ///< Haar unitary on all inputs and ancillas
  HaarOnSubsets,  ///< Haar unitary on a random nonempty subset of inputs plus the ancillas
};

struct ReachConfig {
  double eta = 1.0;
  int m_anc_max = 8;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  ChannelFamily family = ChannelFamily::Haar;
  int threads = 1;
};

inline BltoChannel regenerate_channel(const ChannelParams &p, int m_in, double eta) {
  if (p.support.empty()) fail(ErrorKind::InvalidDimension, "regenerate_channel: empty support");
  const int n = m_in + p.m_anc;
  std::vector<int> acted = p.support;
  for (int a = 0; a < p.m_anc; ++a) acted.push_back(m_in + a);
  Rng rng(p.seed);
  const Matrix local = random_orthogonal_symplectic(static_cast<int>(acted.size()), rng).matrix();
  return BltoChannel(m_in, p.m_anc, eta, OrthogonalSymplecticMatrix(embed_modes(local, acted, n)), {p.kept});
}

/// Descending eigenvalues of a 2x2 symmetric matrix.
inline std::pair<double, double> tau_pair(const Matrix &v) {
  const double mean = 0.5 * (v(0, 0) + v(1, 1));
  const double half_diff = 0.5 * (v(0, 0) - v(1, 1));
  const double radius = std::hypot(half_diff, v(0, 1));
  return {mean + radius, mean - radius};
}

namespace detail {

inline ChannelParams draw_channel_params(std::uint64_t sample_seed, int m_in, const ReachConfig &cfg) {
  Rng rng(sample_seed);
  ChannelParams p;
  p.seed = derive_seed(sample_seed, 1);
  std::uniform_int_distribution<int> pick_anc(1, cfg.m_anc_max);
  p.m_anc = pick_anc(rng);
  if (cfg.family == ChannelFamily::Haar) {
    p.support.resize(static_cast<std::size_t>(m_in));
    std::iota(p.support.begin(), p.support.end(), 0);
    std::uniform_int_distribution<int> pick_kept(0, m_in + p.m_anc - 1);
    p.kept = pick_kept(rng);
  } else {
    std::uniform_int_distribution<std::uint64_t> pick_mask(1, (std::uint64_t{1} << m_in) - 1);
    const std::uint64_t mask = pick_mask(rng);
    for (int k = 0; k < m_in; ++k) {
      if (mask >> k & 1U) p.support.push_back(k);
    }
    const int acted = static_cast<int>(p.support.size()) + p.m_anc;
    std::uniform_int_distribution<int> pick_kept(0, acted - 1);
    const int slot = pick_kept(rng);
    p.kept = slot < static_cast<int>(p.support.size()) ? p.support[static_cast<std::size_t>(slot)]
                                                        : m_in + (slot - static_cast<int>(p.support.size()));
  }
  return p;
}

}  // namespace detail

inline std::vector<ReachSample> sample_reachable(const GaussianState &s, const ReachConfig &cfg) {
  require_valid(s);
  if (!(cfg.eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "sample_reachable: eta must be >= 1");
  if (cfg.m_anc_max < 1) fail(ErrorKind::Domain, "sample_reachable: m_anc_max must be >= 1");
  if (cfg.family == ChannelFamily::HaarOnSubsets && s.modes() > 62) {
    fail(ErrorKind::InvalidDimension, "sample_reachable: too many modes for subset sampling");
  }
  std::vector<ReachSample> out(cfg.n_samples);
  parallel_for(cfg.n_samples, cfg.threads, [&](std::size_t i) {
    ReachSample &sample = out[i];
    sample.channel = detail::draw_channel_params(derive_seed(cfg.seed, i), s.modes(), cfg);
    const auto sigma = apply(regenerate_channel(sample.channel, s.modes(), cfg.eta), s);
    std::tie(sample.tau1, sample.tau2) = tau_pair(sigma.cov());
  });
  return out;
}

// Outer-bound regions.

struct GridSpec {
  double x0 = 0.0, x1 = 1.0;  ///< tau1 range
  double y0 = 0.0, y1 = 1.0;  ///< tau2 range
  int res = 100;              ///< cells per axis

  void validate() const {
    if (!(x1 > x0) || !(y1 > y0) || res < 1 || !std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) ||
        !std::isfinite(y1)) {
      fail(ErrorKind::Domain, "grid spec is degenerate");
    }
  }
  double dx() const { return (x1 - x0) / res; }
  double dy() const { return (y1 - y0) / res; }
};

struct BoundFlags {
  bool allowed_by_T1 = false;
  bool allowed_by_T2 = false;
  bool allowed_by_free_energy = false;
  bool physical = false;

  bool all() const { return allowed_by_T1 && allowed_by_T2 && allowed_by_free_energy && physical; }
};

/// Cell flags say whether the cell meets the corresponding region: they are
/// evaluated at the cell centre and at every sample that lands in the cell.
struct RegionCell {
  int ix = 0;
  int iy = 0;
  double tau1 = 0.0;  ///< cell centre
  double tau2 = 0.0;
  BoundFlags flags;
  bool sampled_reachable = false;
};

struct RegionGrid {
  GridSpec spec;
  double eta = 1.0;
  std::vector<RegionCell> cells;  ///< cells with centre tau1 >= tau2 > 0, row-major in (iy, ix)
  std::size_t escapes = 0;        ///< samples outside T1 n T2 n F n physical
  std::vector<int> lookup;        ///< (iy * res + ix) -> index into cells, or -1

  RegionCell *cell_at(double tau1, double tau2) {
    const double fx = (tau1 - spec.x0) / spec.dx();
    const double fy = (tau2 - spec.y0) / spec.dy();
    if (!(fx >= 0.0 && fy >= 0.0 && fx < spec.res && fy < spec.res)) return nullptr;
    const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
    const int idx = lookup[static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec.res) + static_cast<std::size_t>(ix)];
    return idx < 0 ? nullptr : &cells[static_cast<std::size_t>(idx)];
  }
};

/// Flags for the diagonal single-mode candidate diag(tau1, tau2) against rho.
inline BoundFlags bound_flags_at(const MonotoneSummary &rho, double tau1, double tau2, double eta,
                                 double tol = kCertifyTol) {
  BoundFlags f;
  f.physical = tau1 * tau2 >= 1.0 - tol;
  MonotoneSummary sigma;
  sigma.modes = 1;
  sigma.tau = Vector(2);
  sigma.tau << std::max(tau1, tau2), std::min(tau1, tau2);
  sigma.mu = Vector::Constant(1, 0.5 * (tau1 + tau2));
  const bool need_free_energy = eta > 1.0 && f.physical;
  if (need_free_energy) {
    // Clamp onto tau1 tau2 = 1 when inside the physical tolerance.
    Matrix v = Matrix::Zero(2, 2);
    v(0, 0) = std::max(tau1, 1.0 / tau2);
    v(1, 1) = tau2;
    sigma.rel = rel_ent_athermality_report(GaussianState(Vector::Zero(2), v), eta);
  }
  LawSelection which;
  which.symplectic = which.moment = which.snr = false;
  which.free_energy = need_free_energy;
  const auto verdict = certify_summaries(rho, sigma, eta, tol, which);
  f.allowed_by_T1 = verdict.find(law::kDirectional)->passed;
  f.allowed_by_T2 = verdict.find(law::kMode)->passed;
  if (eta <= 1.0) {
    f.allowed_by_free_energy = true;
  } else {
    f.allowed_by_free_energy = f.physical && verdict.find(law::kFreeEnergy)->passed;
  }
  return f;
}

inline RegionGrid theorem_bound_region(const GaussianState &s, double eta, const GridSpec &spec,
                                       double tol = kCertifyTol) {
  spec.validate();
  require_valid(s);
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "theorem_bound_region: eta must be >= 1");
  const auto rho = summarize(s, eta);
  RegionGrid grid;
  grid.spec = spec;
  grid.eta = eta;
  grid.lookup.assign(static_cast<std::size_t>(spec.res) * static_cast<std::size_t>(spec.res), -1);
  for (int iy = 0; iy < spec.res; ++iy) {
    for (int ix = 0; ix < spec.res; ++ix) {
      const double t1 = spec.x0 + (ix + 0.5) * spec.dx();
      const double t2 = spec.y0 + (iy + 0.5) * spec.dy();
      if (t1 < t2 || t2 <= 0.0) continue;
      grid.lookup[static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec.res) + static_cast<std::size_t>(ix)] =
          static_cast<int>(grid.cells.size());
      grid.cells.push_back({ix, iy, t1, t2, bound_flags_at(rho, t1, t2, eta, tol), false});
    }
  }
  return grid;
}

/// Marks the cells hit by samples and counts samples that violate a bound.
inline void mark_samples(RegionGrid &grid, const GaussianState &s, const std::vector<ReachSample> &samples,
                         double tol = kCertifyTol) {
  const auto rho = summarize(s, grid.eta);
  grid.escapes = 0;
  for (const auto &sample : samples) {
    const auto exact = bound_flags_at(rho, sample.tau1, sample.tau2, grid.eta, tol);
    if (!exact.all()) ++grid.escapes;
    RegionCell *cell = grid.cell_at(sample.tau1, sample.tau2);
    if (cell == nullptr) continue;
    cell->sampled_reachable = true;
    cell->flags.allowed_by_T1 |= exact.allowed_by_T1;
    cell->flags.allowed_by_T2 |= exact.allowed_by_T2;
    cell->flags.allowed_by_free_energy |= exact.allowed_by_free_energy;
    cell->flags.physical |= exact.physical;
  }
}

// Single-mode closed form and the squeezing demo.

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2 &, const Point2 &) = default;
};

struct Segment {
  Point2 a;
  Point2 b;
};

/// Reachable set of a single-mode input: the passive part only rotates, so
/// V' = c R V R^T + (1 - c) eta I and (tau1, tau2) moves straight to (eta, eta).
inline Segment single_mode_reach_line(const GaussianState &s, double eta) {
  if (s.modes() != 1) fail(ErrorKind::InvalidDimension, "single_mode_reach_line: single-mode input required; use sample_reachable");
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "single_mode_reach_line: eta must be >= 1");
  const auto [t1, t2] = tau_pair(s.cov());
  return {{t1, t2}, {eta, eta}};
}

inline double segment_distance(const Point2 &p, const Segment &seg) {
  const double vx = seg.b.x - seg.a.x, vy = seg.b.y - seg.a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - seg.a.x) * vx + (p.y - seg.a.y) * vy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (seg.a.x + t * vx), p.y - (seg.a.y + t * vy));
}

/// Convex hull, counter-clockwise, collinear points dropped (monotone chain).
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2 &l, const Point2 &r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Point2 &o, const Point2 &a, const Point2 &b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto &p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

inline double polygon_area(const std::vector<Point2> &poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto &p = poly[i];
    const auto &q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(twice);
}

inline std::vector<Point2> sample_points(const std::vector<ReachSample> &samples) {
  std::vector<Point2> pts;
  pts.reserve(samples.size());
  for (const auto &s : samples) pts.push_back({s.tau1, s.tau2});
  return pts;
}

struct SqueezedDemoConfig {
  double r = 0.5;
  double eta = 2.0;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 0;
  bool two_mode = true;  ///< two-mode squeezed thermal input, else single-mode squeezed thermal
  int m_anc_max = 2;
  int threads = 1;
};

struct SqueezedDemoResult {
  GaussianState input;
  std::vector<ReachSample> samples;
  bool reaches_hotter_thermal = false;
  double hottest_isotropic = 0.0;  ///< largest tau among isotropic samples, 0 if none
  std::optional<std::size_t> witness;
};

inline GaussianState single_mode_squeezed_thermal(double eta, double r) {
  if (!(eta >= 1.0)) fail(ErrorKind::UnphysicalTemperature, "single_mode_squeezed_thermal: eta must be >= 1");
  Matrix v = Matrix::Zero(2, 2);
  v(0, 0) = eta * std::exp(2.0 * r);
  v(1, 1) = eta * std::exp(-2.0 * r);
  return GaussianState(Vector::Zero(2), v);
}

/// Samples channels acting on random input subsets, so that the locally
/// thermal marginals of a two-mode squeezed state are reachable exactly.
inline SqueezedDemoResult squeezed_thermal_demo(const SqueezedDemoConfig &cfg) {
  if (!(cfg.r >= 0.0)) fail(ErrorKind::Domain, "squeezed_thermal_demo: r must be >= 0");
  GaussianState input = cfg.two_mode ? two_mode_squeezed_thermal(cfg.eta, cfg.r) : single_mode_squeezed_thermal(cfg.eta, cfg.r);
  ReachConfig rc{cfg.eta, cfg.m_anc_max, cfg.n_samples, cfg.seed, ChannelFamily::HaarOnSubsets, cfg.threads};
  SqueezedDemoResult out{input, sample_reachable(input, rc), false, 0.0, std::nullopt};
  constexpr double kIsotropic = 1e-6;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const auto &s = out.samples[i];
    if (s.tau1 - s.tau2 > kIsotropic) continue;
    const double level = 0.5 * (s.tau1 + s.tau2);
    out.hottest_isotropic = std::max(out.hottest_isotropic, level);
    if (level > cfg.eta + kIsotropic && !out.witness) {
      out.reaches_hotter_thermal = true;
      out.witness = i;
    }
  }
  return out;
}

}  // namespace gaussblto
