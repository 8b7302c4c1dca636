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
 * @file json_io.hpp
 *
 * JSON and CSV serialization for states, channels, profiles, verdicts,
 * decompositions and reach regions.
 *
 *   state:   {"modes": m, "mean": [2m], "cov": [[2m x 2m]]}
 *   channel: {"m_in": .., "m_anc": .., "eta": .., "M": [[..]], "kept": [..]}
 */

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "gaussblto/blto.hpp"
#include "gaussblto/certify.hpp"
#include "gaussblto/core.hpp"
#include "gaussblto/decomp.hpp"
#include "gaussblto/monotones.hpp"
#include "gaussblto/reach.hpp"
#include "gaussblto/symcore.hpp"

namespace gaussblto {

using Json = nlohmann::ordered_json;

// Matrices and vectors.

inline Json to_json_vector(const Vector &v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Json to_json_matrix(const Matrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline const Json &field(const Json &j, const char *key) {
  if (!j.is_object()) fail(ErrorKind::Parse, "expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const Json &j, const char *what) {
  if (!j.is_number()) fail(ErrorKind::Parse, std::string(what) + ": expected a number");
  return j.get<double>();
}

inline int integer(const Json &j, const char *what) {
  if (!j.is_number_integer()) fail(ErrorKind::Parse, std::string(what) + ": expected an integer");
  return j.get<int>();
}

}  // namespace detail

inline Vector vector_from_json(const Json &j, const char *what) {
  if (!j.is_array()) fail(ErrorKind::Parse, std::string(what) + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = detail::number(j[i], what);
  return v;
}

inline Matrix matrix_from_json(const Json &j, const char *what) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::Parse, std::string(what) + ": expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(ErrorKind::Parse, std::string(what) + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = detail::number(j[i][c], what);
    }
  }
  return m;
}

// Domain types.

inline Json to_json(const GaussianState &s) {
  return Json{{"modes", s.modes()}, {"mean", to_json_vector(s.mean())}, {"cov", to_json_matrix(s.cov())}};
}

inline GaussianState state_from_json(const Json &j) {
  const int modes = detail::integer(detail::field(j, "modes"), "modes");
  if (modes < 1) fail(ErrorKind::InvalidDimension, "state: modes must be >= 1");
  Vector mean = vector_from_json(detail::field(j, "mean"), "mean");
  Matrix cov = matrix_from_json(detail::field(j, "cov"), "cov");
  if (mean.size() != 2 * modes || cov.rows() != 2 * modes || cov.cols() != 2 * modes) {
    fail(ErrorKind::Shape, "state: mean/cov sizes do not match modes = " + std::to_string(modes));
  }
  return GaussianState(std::move(mean), std::move(cov));
}

inline Json to_json(const BltoChannel &c) {
  return Json{{"m_in", c.m_in()},
              {"m_anc", c.m_anc()},
              {"eta", c.eta()},
              {"M", to_json_matrix(c.global().matrix())},
              {"kept", c.kept()}};
}

inline BltoChannel channel_from_json(const Json &j) {
  const int m_in = detail::integer(detail::field(j, "m_in"), "m_in");
  const int m_anc = detail::integer(detail::field(j, "m_anc"), "m_anc");
  const double eta = detail::number(detail::field(j, "eta"), "eta");
  Matrix m = matrix_from_json(detail::field(j, "M"), "M");
  const Json &kept_json = detail::field(j, "kept");
  if (!kept_json.is_array()) fail(ErrorKind::Parse, "kept: expected an array");
  std::vector<int> kept;
  for (const auto &k : kept_json) kept.push_back(detail::integer(k, "kept"));
  if (m.rows() != m.cols()) fail(ErrorKind::Shape, "M must be square");
  if (m.rows() % 2 != 0) fail(ErrorKind::Shape, "M must have even dimension");
  return BltoChannel(m_in, m_anc, eta, OrthogonalSymplecticMatrix(std::move(m)), std::move(kept));
}

inline Json to_json(const ThermalProfile &p) {
  Json j;
  j["eta"] = p.eta;
  j["tau"] = to_json_vector(p.tau);
  j["mu"] = to_json_vector(p.mu);
  j["nu"] = to_json_vector(p.nu);
  j["snr"] = to_json_vector(p.snr);
  j["msnr"] = to_json_vector(p.msnr);
  j["moment_norm"] = p.moment_norm;
  j["rel_ent_athermality"] = p.rel_ent_athermality ? Json(*p.rel_ent_athermality) : Json(nullptr);
  j["rel_ent_status"] = p.rel_ent_status == RelEntStatus::Finite ? "finite" : "infinite";
  j["squeezing_unitary_formation"] = p.squeezing_unitary_formation;
  j["k_super"] = p.k_super;
  j["k_sub"] = p.k_sub;
  j["k_sp_super"] = p.k_sp_super;
  j["k_sp_sub"] = p.k_sp_sub;
  return j;
}

/// Infinite slack values (e.g. an unbounded entropy) are written as strings.
inline Json finite_or_label(double x) {
  if (std::isfinite(x)) return Json(x);
  return Json(x > 0 ? "inf" : "-inf");
}

inline Json to_json(const LawResult &l) {
  Json detail = Json::array();
  for (const auto &q : l.detail) {
    detail.push_back(Json{{"name", q.name},
                          {"lhs", finite_or_label(q.lhs)},
                          {"rhs", finite_or_label(q.rhs)},
                          {"slack", finite_or_label(q.slack)}});
  }
  Json counts = Json::object();
  for (const auto &c : l.counts) counts[c.name] = Json{{"rho", c.rho}, {"sigma", c.sigma}};
  Json j{{"law", l.law}, {"passed", l.passed}, {"skipped", l.skipped}, {"margin", finite_or_label(l.margin)},
         {"detail", std::move(detail)}, {"counts", std::move(counts)}};
  if (!l.note.empty()) j["note"] = l.note;
  return j;
}

inline Json to_json(const TransitionVerdict &v) {
  Json laws = Json::array();
  for (const auto &l : v.laws) laws.push_back(to_json(l));
  return Json{{"verdict", std::string(to_string(v.verdict))}, {"eta", v.eta}, {"tol", v.tol}, {"laws", std::move(laws)}};
}

inline Json to_json(const WilliamsonResult &w) {
  return Json{{"S", to_json_matrix(w.S)}, {"nu", to_json_vector(w.nu)}};
}

inline Json to_json(const BlochMessiahResult &b) {
  return Json{{"O1", to_json_matrix(b.O1.matrix())}, {"O2", to_json_matrix(b.O2.matrix())}, {"r", to_json_vector(b.r)}};
}

inline Json to_json(const ChannelParams &p) {
  return Json{{"seed", p.seed}, {"m_anc", p.m_anc}, {"support", p.support}, {"kept", p.kept}};
}

inline Json to_json(const ReachSample &s) {
  return Json{{"tau1", s.tau1}, {"tau2", s.tau2}, {"channel_params", to_json(s.channel)}};
}

inline Json to_json(const RegionGrid &g) {
  Json cells = Json::array();
  for (const auto &c : g.cells) {
    cells.push_back(Json{{"ix", c.ix},
                         {"iy", c.iy},
                         {"tau1", c.tau1},
                         {"tau2", c.tau2},
                         {"allowed_by_T1", c.flags.allowed_by_T1},
                         {"allowed_by_T2", c.flags.allowed_by_T2},
                         {"allowed_by_free_energy", c.flags.allowed_by_free_energy},
                         {"physical", c.flags.physical},
                         {"sampled_reachable", c.sampled_reachable}});
  }
  return Json{{"eta", g.eta},
              {"grid", Json{{"x0", g.spec.x0}, {"x1", g.spec.x1}, {"y0", g.spec.y0}, {"y1", g.spec.y1}, {"res", g.spec.res}}},
              {"escapes", g.escapes},
              {"cells", std::move(cells)}};
}

// Files.

inline std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

inline Json parse_json(const std::string &text, const std::string &origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    fail(ErrorKind::Parse, origin + ": " + e.what());
  }
}

inline GaussianState load_state(const std::string &path) { return state_from_json(parse_json(read_text_file(path), path)); }

inline BltoChannel load_channel(const std::string &path) {
  return channel_from_json(parse_json(read_text_file(path), path));
}

// Region emission.

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string &text) {
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(ErrorKind::Parse, "not a number: '" + text + "'");
  }
  return x;
}

enum class RegionFormat { Csv, Json };

struct RegionRow {
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::string source;  ///< sample | bound_T1 | bound_T2 | bound_F | unphysical
};

/// CSV: one row per sample, then for each grid cell one row per region it
/// belongs to (bound_T1, bound_T2, bound_F) and an `unphysical` row if it
/// violates the uncertainty relation.
inline std::string region_csv(const std::vector<ReachSample> &samples, const RegionGrid *grid) {
  std::string out = "tau1,tau2,source\n";
  auto row = [&](double x, double y, const char *source) {
    out += format_double(x);
    out += ',';
    out += format_double(y);
    out += ',';
    out += source;
    out += '\n';
  };
  for (const auto &s : samples) row(s.tau1, s.tau2, "sample");
  if (grid != nullptr) {
    for (const auto &c : grid->cells) {
      if (c.flags.allowed_by_T1) row(c.tau1, c.tau2, "bound_T1");
      if (c.flags.allowed_by_T2) row(c.tau1, c.tau2, "bound_T2");
      if (c.flags.allowed_by_free_energy) row(c.tau1, c.tau2, "bound_F");
      if (!c.flags.physical) row(c.tau1, c.tau2, "unphysical");
    }
  }
  return out;
}

inline Json region_json(const std::vector<ReachSample> &samples, const RegionGrid *grid) {
  Json arr = Json::array();
  for (const auto &s : samples) arr.push_back(to_json(s));
  Json j{{"samples", std::move(arr)}};
  j["region"] = grid != nullptr ? to_json(*grid) : Json(nullptr);
  return j;
}

inline void emit_region(const std::vector<ReachSample> &samples, const RegionGrid *grid, const std::string &path,
                        RegionFormat format) {
  if (samples.empty() && (grid == nullptr || grid->cells.empty())) fail(ErrorKind::Domain, "emit_region: nothing to write");
  write_text_file(path, format == RegionFormat::Csv ? region_csv(samples, grid) : region_json(samples, grid).dump(2) + "\n");
}

inline std::vector<RegionRow> parse_region_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "tau1,tau2,source") fail(ErrorKind::Parse, "region CSV: bad header");
  std::vector<RegionRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) fail(ErrorKind::Parse, "region CSV: expected three columns");
    rows.push_back({parse_double(line.substr(0, c1)), parse_double(line.substr(c1 + 1, c2 - c1 - 1)), line.substr(c2 + 1)});
  }
  return rows;
}

inline std::vector<RegionRow> read_region_csv(const std::string &path) { return parse_region_csv(read_text_file(path)); }

}  // namespace gaussblto
