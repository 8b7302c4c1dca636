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

#include <catch_amalgamated.hpp>

#include "gaussblto/blto.hpp"
#include "gaussblto/monotones.hpp"
#include "test_oracles.hpp"

using namespace gaussblto;
using Catch::Matchers::WithinAbs;

namespace {

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

GaussianState zero_mean(const Matrix &v) { return GaussianState(Vector::Zero(v.rows()), v); }

GaussianState single(double a, double b, double x = 0.0, double p = 0.0) {
  Matrix v = Matrix::Zero(2, 2);
  v(0, 0) = a;
  v(1, 1) = b;
  return GaussianState((Vector(2) << x, p).finished(), v);
}

double max_diff(const Vector &a, const Vector &b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("principal directional temperatures") {
  CHECK((principal_directional_temperatures(thermal_state(3, 2.2)).array() - 2.2).abs().maxCoeff() < 1e-14);
  const Vector t = principal_directional_temperatures(single(3.0, 4.0 / 3.0));
  CHECK_THAT(t(0), WithinAbs(3.0, 1e-14));
  CHECK_THAT(t(1), WithinAbs(4.0 / 3.0, 1e-14));
  const Vector c = principal_directional_temperatures(zero_mean(tms_matrix(4.0, 1.6)));
  CHECK(max_diff(c, (Vector(4) << 5.6, 5.6, 2.4, 2.4).finished()) < 1e-12);
  CHECK(max_diff(c, oracle::jacobi_eigenvalues(tms_matrix(4.0, 1.6))) < 1e-12);
  // Frozen from a 30-digit computation of the asymmetric example.
  const Vector r = principal_directional_temperatures(zero_mean(asymmetric_example()));
  const Vector expected = (Vector(4) << 5.73, 5.1060167890131503246, 2.27, 1.2939832109868496754).finished();
  CHECK(max_diff(r, expected) < 1e-12);
}

TEST_CASE("principal mode temperatures") {
  CHECK((principal_mode_temperatures(thermal_state(2, 1.7)).array() - 1.7).abs().maxCoeff() < 1e-14);
  const Vector bl = principal_mode_temperatures(zero_mean(tms_matrix(4.0, 3.7)));
  CHECK(max_diff(bl, (Vector(2) << 4.0, 4.0).finished()) < 1e-12);
  CHECK_THAT(principal_mode_temperatures(single(3, 1))(0), WithinAbs(2.0, 1e-14));
  const Vector br = principal_mode_temperatures(zero_mean(asymmetric_example()));
  CHECK(max_diff(br, (Vector(2) << 4.0, 3.2).finished()) < 1e-12);

  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_state(1 + t % 4, rng);
    CHECK(max_diff(principal_mode_temperatures(s), oracle::mode_temperatures_real(s.cov())) < 1e-9);
  }
}

TEST_CASE("mode temperature basis isolates the principal modes") {
  auto check_basis = [](const GaussianState &s) {
    const Matrix m = mode_temperature_basis(s).matrix();
    const Matrix w = m * s.cov() * m.transpose();
    const Vector mu = principal_mode_temperatures(s);
    for (int k = 0; k < s.modes(); ++k) {
      CHECK_THAT(0.5 * (w(2 * k, 2 * k) + w(2 * k + 1, 2 * k + 1)), WithinAbs(mu(k), 1e-9));
    }
  };
  check_basis(thermal_state(2, 3.0));
  check_basis(zero_mean(tms_matrix(4.0, 3.7)));
  Rng rng(13);
  for (int t = 0; t < 20; ++t) check_basis(random_state(3, rng));
}

TEST_CASE("snr spectrum") {
  CHECK(snr_spectrum(thermal_state(2, 2.0)).isZero());
  const Vector a = snr_spectrum(single(2.0, 2.0, 3.0, 0.0));
  CHECK_THAT(a(0), WithinAbs(3.0 / std::sqrt(2.0), 1e-14));
  CHECK(a(1) == 0.0);
  const auto s = single(4.0, 1.0, 2.0, 0.0);
  CHECK_THAT(snr_spectrum(s)(0), WithinAbs(1.0, 1e-14));
  CHECK_THAT(oracle::single_mode_snr_scan(s.mean(), s.cov()), WithinAbs(1.0, 1e-9));

  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const auto r = random_state(1 + t % 3, rng);
    const Vector snr = snr_spectrum(r);
    const double quad = r.mean().dot(r.cov().ldlt().solve(r.mean()));
    CHECK_THAT(snr(0) * snr(0), WithinAbs(quad, 1e-10 * std::max(1.0, quad)));
    CHECK(snr.tail(snr.size() - 1).cwiseAbs().maxCoeff() <= 1e-10);
    // Cross-check the rank-one spectrum against a generic eigen-solver on R.
    const Matrix ih = r.cov().llt().solve(Matrix::Identity(r.cov().rows(), r.cov().cols()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(ih);
    const Matrix inv_half = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    const Vector w = inv_half * r.mean();
    const Vector lam = oracle::jacobi_eigenvalues(w * w.transpose());
    CHECK_THAT(std::sqrt(lam(0)), WithinAbs(snr(0), 1e-9));
    if (r.modes() == 1) CHECK_THAT(oracle::single_mode_snr_scan(r.mean(), r.cov()), WithinAbs(snr(0), 1e-8));
  }
}

TEST_CASE("msnr spectrum") {
  const auto zero = msnr_spectrum(thermal_state(2, 2.0), 100, 1);
  CHECK(zero.analytic.isZero());
  CHECK(zero.estimate.cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(15);
  for (int t = 0; t < 5; ++t) {
    const auto s = random_state(2, rng);
    const auto rep = msnr_spectrum(s, 200, 9);
    CHECK_THAT(rep.analytic(0), WithinAbs(snr_spectrum(s)(0), 1e-12));
    CHECK_THAT(rep.estimate(0), WithinAbs(rep.analytic(0), 1e-9));
  }

  Matrix v = Matrix::Identity(4, 4);
  v(0, 0) = 4.0;
  const GaussianState s((Vector(4) << 2, 0, 0, 0).finished(), v);
  const auto rep = msnr_spectrum(s, 100000, 2024);
  CHECK_THAT(rep.estimate(0), WithinAbs(1.0, 1e-9));
  CHECK(rep.estimate(1) <= 1e-3);

  const auto again = msnr_spectrum(s, 1000, 77);
  CHECK(again.estimate == msnr_spectrum(s, 1000, 77).estimate);
}

TEST_CASE("moment norm") {
  CHECK(moment_norm(thermal_state(2, 2.0)) == 0.0);
  CHECK(moment_norm(single(1, 1, 3, 4)) == 25.0);
  Rng rng(16);
  const auto s = random_state(2, rng);
  const auto rotated = transform(s, phase_shifter(2, 1, 0.7).matrix());
  CHECK_THAT(moment_norm(rotated), WithinAbs(moment_norm(s), 1e-12));
}

TEST_CASE("relative entropy of athermality") {
  CHECK_THAT(rel_ent_athermality(thermal_state(2, 2.0), 2.0), WithinAbs(0.0, 1e-12));
  CHECK_THAT(rel_ent_athermality(thermal_state(1, 1.5), 1.5), WithinAbs(0.0, 1e-12));

  const double oracle_value = oracle::fock_thermal_relative_entropy(0.25, 0.5, 60);
  CHECK_THAT(rel_ent_athermality(thermal_state(1, 1.5), 2.0), WithinAbs(oracle_value, 1e-6));
  CHECK_THAT(rel_ent_athermality(thermal_state(1, 3.0), 2.0), WithinAbs(oracle::fock_thermal_relative_entropy(1.0, 0.5, 200), 1e-6));

  try {
    rel_ent_athermality(thermal_state(1, 1.0), 1.0);
    FAIL("expected reference-rank error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::ReferenceRank);
  }
  CHECK(rel_ent_athermality_report(vacuum_state(1), 1.0).status == RelEntStatus::Finite);
  CHECK(rel_ent_athermality_report(thermal_state(1, 2.0), 1.0).status == RelEntStatus::Infinite);

  try {
    rel_ent_athermality(GaussianState(Vector::Zero(2), 0.5 * Matrix::Identity(2, 2)), 2.0);
    FAIL("expected invalid-state error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::InvalidState);
  }

  Rng rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double eta = 1.2 + 3.0 * unit(rng);
    const auto s = random_state(1, rng);
    const auto out = apply(pure_loss_channel(eta, unit(rng)), s);
    CHECK(rel_ent_athermality(out, eta) <= rel_ent_athermality(s, eta) + 1e-10);
  }
}

TEST_CASE("squeezing of unitary formation") {
  CHECK_THAT(squeezing_unitary_formation(thermal_state(2, 3.0)), WithinAbs(0.0, 1e-12));
  CHECK_THAT(squeezing_unitary_formation(single(std::exp(1.2), std::exp(-1.2))), WithinAbs(0.6, 1e-12));
  Rng rng(18);
  for (int t = 0; t < 30; ++t) {
    const auto s = random_state(1 + t % 3, rng);
    const auto o = random_orthogonal_symplectic(s.modes(), rng);
    CHECK_THAT(squeezing_unitary_formation(transform(s, o.matrix())), WithinAbs(squeezing_unitary_formation(s), 1e-8));
  }
}

TEST_CASE("classify") {
  const auto c = classify((Vector(2) << 3.0, 4.0 / 3.0).finished(), 2.0);
  REQUIRE(c.super.size() == 1);
  REQUIRE(c.sub.size() == 1);
  CHECK(c.super[0] == 3.0);
  CHECK(c.sub[0] == 4.0 / 3.0);
  const auto z = classify(Vector::Constant(4, 2.0), 2.0);
  CHECK(z.k_super == 0);
  CHECK(z.k_sub == 0);
  const auto bl = classify((Vector(4) << 7.7, 7.7, 0.3, 0.3).finished(), 2.0);
  CHECK(bl.k_super == 2);
  CHECK(bl.k_sub == 2);
}

TEST_CASE("profile") {
  const auto t = profile(thermal_state(2, 2.0), 2.0);
  CHECK((t.tau.array() - 2.0).abs().maxCoeff() < 1e-12);
  CHECK((t.mu.array() - 2.0).abs().maxCoeff() < 1e-12);
  CHECK((t.nu.array() - 2.0).abs().maxCoeff() < 1e-12);
  CHECK(t.snr.isZero());
  CHECK(t.moment_norm == 0.0);
  REQUIRE(t.rel_ent_athermality.has_value());
  CHECK_THAT(*t.rel_ent_athermality, WithinAbs(0.0, 1e-12));
  CHECK_THAT(t.squeezing_unitary_formation, WithinAbs(0.0, 1e-12));

  const auto tr = profile(single(3.0, 2.5), 2.0);
  CHECK_THAT(tr.tau(0), WithinAbs(3.0, 1e-14));
  CHECK_THAT(tr.tau(1), WithinAbs(2.5, 1e-14));

  const auto vac = profile(thermal_state(1, 1.5), 1.0);
  CHECK_FALSE(vac.rel_ent_athermality.has_value());
  CHECK(vac.rel_ent_status == RelEntStatus::Infinite);

  auto invariants = [](const ThermalProfile &p, const GaussianState &s) {
    const int m = s.modes();
    for (Eigen::Index k = 1; k < p.tau.size(); ++k) CHECK(p.tau(k - 1) >= p.tau(k));
    for (Eigen::Index k = 1; k < p.mu.size(); ++k) CHECK(p.mu(k - 1) >= p.mu(k));
    for (Eigen::Index k = 1; k < p.nu.size(); ++k) CHECK(p.nu(k - 1) <= p.nu(k));
    CHECK(p.mu(0) <= p.tau(0) + 1e-12);
    CHECK(p.mu(m - 1) >= p.tau(2 * m - 1) - 1e-12);
    CHECK_THAT(2.0 * p.mu.sum(), WithinAbs(s.cov().trace(), 1e-10 * std::max(1.0, s.cov().trace())));
    CHECK_THAT(p.tau.sum(), WithinAbs(s.cov().trace(), 1e-10 * std::max(1.0, s.cov().trace())));
    CHECK(p.nu.minCoeff() >= 1.0 - 1e-9);
    CHECK(p.squeezing_unitary_formation >= 0.0);
  };
  invariants(profile(zero_mean(asymmetric_example()), 2.0), zero_mean(asymmetric_example()));

  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_state(1 + t % 4, rng);
    const auto p = profile(s, 2.0);
    invariants(p, s);
    const auto o = random_orthogonal_symplectic(s.modes(), rng);
    const auto q = profile(transform(s, o.matrix()), 2.0);
    CHECK(max_diff(p.tau, q.tau) < 1e-8);
    CHECK(max_diff(p.mu, q.mu) < 1e-8);
    CHECK(max_diff(p.nu, q.nu) < 1e-8);
    CHECK(max_diff(p.snr, q.snr) < 1e-8);
    CHECK(max_diff(p.msnr, q.msnr) < 1e-8);
    CHECK_THAT(p.squeezing_unitary_formation, WithinAbs(q.squeezing_unitary_formation, 1e-8));
  }
}
