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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gaussblto {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Default tolerance for physics checks (uncertainty relation, thermal fixed points).
inline constexpr double kPhysTol = 1e-9;
/// Default tolerance for algebraic identities (orthogonality, symplecticity, symmetry).
inline constexpr double kAlgTol = 1e-10;
/// Smallest covariance eigenvalue accepted where an inverse square root is needed.
inline constexpr double kEigenFloor = 1e-12;

enum class ErrorKind {
  InvalidDimension,
  Shape,
  Structure,
  Conditioning,
  Domain,
  UnphysicalTemperature,
  InvalidState,
  IncompatibleBath,
  Index,
  ReferenceRank,
  Io,
  Parse,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid_dimension";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnphysicalTemperature: return "unphysical_temperature";
    case ErrorKind::InvalidState: return "invalid_state";
    case ErrorKind::IncompatibleBath: return "incompatible_bath";
    case ErrorKind::Index: return "index";
    case ErrorKind::ReferenceRank: return "reference_rank";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

// Random numbers. All randomness is driven by explicit 64-bit seeds; sub-streams
// are derived with a SplitMix64 mix so that results never depend on scheduling.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

inline double max_abs(const Matrix &a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace gaussblto
