// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/edm.hpp"

#include <stdexcept>

#include "edmc/rng.hpp"

namespace edmc::edm {

EdmMatrix edm_from_points(const PointCloud& pc) {
  const Index n = pc.size();
  if (n < 1) throw std::invalid_argument("edm_from_points: empty point cloud");
  EdmMatrix out;
  out.source_dimension = pc.dimension();
  out.d = DenseMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dist2 = (pc.points.row(i) - pc.points.row(j)).squaredNorm();
      out.d(i, j) = dist2;
      out.d(j, i) = dist2;
    }
  }
  return out;
}

DenseMatrix gram_from_points(const PointCloud& pc) {
  if (pc.size() < 1) throw std::invalid_argument("gram_from_points: empty point cloud");
  return pc.points * pc.points.transpose();
}

bool edm_identity_check(const PointCloud& pc) {
  const DenseMatrix g = gram_from_points(pc);
  const Index n = g.rows();
  const Vector diag = g.diagonal();
  const DenseMatrix from_gram = Vector::Ones(n) * diag.transpose() - 2.0 * g +
                                diag * Vector::Ones(n).transpose();
  const DenseMatrix d = edm_from_points(pc).d;
  const double denom = d.norm();
  const double diff = (d - from_gram).norm();
  if (denom == 0.0) return diff == 0.0;
  return diff / denom <= 1e-10;
}

PointCloud random_points(Index n, Index k, PointDistribution distribution, std::uint64_t seed) {
  if (n < 1 || k < 1) throw std::invalid_argument("random_points: n and k must be positive");
  if (distribution != PointDistribution::UniformUnitCube)
    throw std::invalid_argument("random_points: unknown distribution");
  rng::Stream stream(seed);
  PointCloud pc;
  pc.points.resize(n, k);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < k; ++j) pc.points(i, j) = stream.uniform01();
  return pc;
}

DenseMatrix random_gaussian_lowrank(Index n, Index r, std::uint64_t seed) {
  if (n < 1 || r < 1 || r > n)
    throw std::invalid_argument("random_gaussian_lowrank: need 1 <= r <= n");
  rng::Stream left_stream(rng::derive_seed(seed, {0}));
  rng::Stream right_stream(rng::derive_seed(seed, {1}));
  DenseMatrix left(n, r), right(n, r);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < r; ++j) left(i, j) = left_stream.normal();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < r; ++j) right(i, j) = right_stream.normal();
  return left * right.transpose();
}

}  // namespace edmc::edm
