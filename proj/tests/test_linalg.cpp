// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "edmc/edm.hpp"
#include "edmc/rng.hpp"

using namespace edmc;

namespace {

DenseMatrix random_dense(Index rows, Index cols, std::uint64_t seed) {
  rng::Stream stream(seed);
  DenseMatrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = stream.normal();
  return a;
}

// Independent reference for symmetric inputs: soft-threshold through an
// eigendecomposition, shrinking |eigenvalue| and keeping its sign.
DenseMatrix symmetric_soft_threshold_oracle(const DenseMatrix& a, double lambda) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eigen(a);
  const Vector values = eigen.eigenvalues();
  DenseMatrix out = DenseMatrix::Zero(a.rows(), a.cols());
  for (Index i = 0; i < values.size(); ++i) {
    const double shrunk = std::max(std::abs(values[i]) - lambda, 0.0);
    if (shrunk == 0.0) continue;
    const double sign = values[i] < 0 ? -1.0 : 1.0;
    out += sign * shrunk * eigen.eigenvectors().col(i) *
           eigen.eigenvectors().col(i).transpose();
  }
  return out;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("svd of a diagonal matrix returns the diagonal magnitudes") {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  const auto f = linalg::svd(a);
  REQUIRE(f.sigma.size() == 2);
  CHECK(f.sigma[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(f.sigma[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd of the zero matrix is all-zero") {
  const auto f = linalg::svd(DenseMatrix::Zero(4, 4));
  REQUIRE(f.sigma.size() == 4);
  for (Index i = 0; i < 4; ++i) CHECK(f.sigma[i] == 0.0);
}

TEST_CASE("svd of a rank-3 factor product has exactly 3 large values") {
  const DenseMatrix a = edm::random_gaussian_lowrank(20, 3, 11);
  const auto f = linalg::svd(a);
  REQUIRE(f.sigma.size() == 20);
  for (Index i = 0; i < 3; ++i) CHECK(f.sigma[i] > 1e-8);
  for (Index i = 3; i < 20; ++i) CHECK(f.sigma[i] < 1e-8);
}

TEST_CASE("svd reconstructs the input with orthonormal factors") {
  const DenseMatrix a = random_dense(8, 6, 21);
  const auto f = linalg::svd(a);
  const DenseMatrix rebuilt = f.u * f.sigma.asDiagonal() * f.v.transpose();
  CHECK((rebuilt - a).norm() <= 1e-12 * a.norm());
  CHECK((f.u.transpose() * f.u - DenseMatrix::Identity(6, 6)).norm() <= 1e-12);
  CHECK((f.v.transpose() * f.v - DenseMatrix::Identity(6, 6)).norm() <= 1e-12);
  for (Index i = 0; i + 1 < f.sigma.size(); ++i) CHECK(f.sigma[i] >= f.sigma[i + 1]);
  CHECK(f.sigma[f.sigma.size() - 1] >= 0.0);
}

TEST_CASE("svd rejects empty and non-finite input") {
  CHECK_THROWS_AS(linalg::svd(DenseMatrix()), std::invalid_argument);
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(linalg::svd(a), std::invalid_argument);
}

TEST_CASE("soft_threshold shrinks diagonal singular values") {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  const DenseMatrix s = linalg::soft_threshold(a, 2.0);
  CHECK(s(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s(0, 1)) <= 1e-14);
  CHECK(std::abs(s(1, 0)) <= 1e-14);
  CHECK(std::abs(s(1, 1)) <= 1e-14);
}

TEST_CASE("soft_threshold with lambda 0 is the identity") {
  const DenseMatrix a = random_dense(7, 7, 31);
  CHECK((linalg::soft_threshold(a, 0.0) - a).norm() <= 1e-12 * a.norm());
}

TEST_CASE("soft_threshold of a symmetric matrix matches the eigen oracle") {
  const auto cloud = edm::random_points(5, 2, edm::PointDistribution::UniformUnitCube, 5);
  const DenseMatrix a = edm::edm_from_points(cloud).d;
  const DenseMatrix s = linalg::soft_threshold(a, 0.5);
  CHECK((s - s.transpose()).norm() <= 1e-10 * a.norm());
  const DenseMatrix oracle = symmetric_soft_threshold_oracle(a, 0.5);
  CHECK((s - oracle).cwiseAbs().maxCoeff() <= 1e-12 * a.norm());
}

TEST_CASE("soft_threshold is non-expansive in lambda") {
  const DenseMatrix a = random_dense(10, 10, 41);
  const double lambdas[] = {0.0, 0.3, 1.1, 2.5};
  for (std::size_t i = 0; i + 1 < std::size(lambdas); ++i) {
    const auto lo = linalg::svd(linalg::soft_threshold(a, lambdas[i]));
    const auto hi = linalg::svd(linalg::soft_threshold(a, lambdas[i + 1]));
    for (Index j = 0; j < lo.sigma.size(); ++j)
      CHECK(hi.sigma[j] <= lo.sigma[j] + 1e-12);
  }
}

TEST_CASE("rank of the thresholded matrix counts values above lambda") {
  const DenseMatrix a = random_dense(9, 9, 51);
  const auto f = linalg::svd(a);
  for (double lambda : {0.5 * f.sigma[4], 0.5 * (f.sigma[2] + f.sigma[3])}) {
    Index expected = 0;
    for (Index i = 0; i < f.sigma.size(); ++i)
      if (f.sigma[i] > lambda) ++expected;
    CHECK(linalg::numeric_rank(linalg::soft_threshold(a, lambda)) == expected);
  }
}

TEST_CASE("nuclear norm of the thresholded matrix equals the shrunk sum") {
  const DenseMatrix a = random_dense(8, 8, 61);
  const auto f = linalg::svd(a);
  const double lambda = 0.7 * f.sigma[3];
  double expected = 0.0;
  for (Index i = 0; i < f.sigma.size(); ++i)
    expected += std::max(f.sigma[i] - lambda, 0.0);
  CHECK(linalg::nuclear_norm(linalg::soft_threshold(a, lambda)) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("frobenius_norm hand values") {
  DenseMatrix a(2, 2);
  a << 3, 4, 0, 0;
  CHECK(linalg::frobenius_norm(a) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(linalg::frobenius_norm(DenseMatrix::Zero(3, 3)) == 0.0);
  CHECK(linalg::frobenius_norm(DenseMatrix::Identity(9, 9)) ==
        doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("nuclear_norm hand values") {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  CHECK(linalg::nuclear_norm(a) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(linalg::nuclear_norm(DenseMatrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("nuclear_norm of a rank-1 outer product is the norm product") {
  Vector u(5), v(5);
  u << 1, 2, 3, 4, 5;
  v << 5, 4, 3, 2, 1;
  u *= 2.0 / u.norm();
  v *= 3.0 / v.norm();
  const DenseMatrix a = u * v.transpose();
  CHECK(linalg::nuclear_norm(a) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("truncated backend matches the dense backend above lambda") {
  const auto cloud = edm::random_points(60, 4, edm::PointDistribution::UniformUnitCube, 71);
  const DenseMatrix a = edm::edm_from_points(cloud).d;
  const auto dense = linalg::svd_partial(a, 0.0, 7, linalg::SvdBackend::Dense);
  const double lambda = 0.5 * dense.sigma[6];
  const auto trunc = linalg::svd_partial(a, lambda, 7, linalg::SvdBackend::Truncated);
  REQUIRE(trunc.value_count() >= 7);
  for (Index i = 0; i < 7; ++i)
    CHECK(trunc.sigma[i] == doctest::Approx(dense.sigma[i]).epsilon(1e-9));
  // Reconstruction from the truncated factors agrees where values dominate.
  const DenseMatrix s_dense = linalg::soft_threshold(dense, lambda);
  const DenseMatrix s_trunc = linalg::soft_threshold(trunc, lambda);
  CHECK((s_dense - s_trunc).norm() <= 1e-8 * a.norm());
}

TEST_CASE("svd_partial validates lambda and min_values") {
  const DenseMatrix a = DenseMatrix::Identity(3, 3);
  CHECK_THROWS_AS(linalg::svd_partial(a, -1.0, 1, linalg::SvdBackend::Dense),
                  std::invalid_argument);
  CHECK_THROWS_AS(linalg::svd_partial(a, 0.0, 0, linalg::SvdBackend::Dense),
                  std::invalid_argument);
}

TEST_CASE("backend names round-trip") {
  for (auto backend : {linalg::SvdBackend::Auto, linalg::SvdBackend::Dense,
                       linalg::SvdBackend::Truncated}) {
    CHECK(linalg::svd_backend_from_string(linalg::to_string(backend)) == backend);
  }
  CHECK_THROWS_AS(linalg::svd_backend_from_string("qr"), std::invalid_argument);
}

}  // TEST_SUITE
