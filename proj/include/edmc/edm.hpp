// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "edmc/types.hpp"

namespace edmc::edm {

/// n points in R^k, one point per row of `points` (n x k).
struct PointCloud {
  DenseMatrix points;

  Index size() const { return points.rows(); }
  Index dimension() const { return points.cols(); }
};

/// Matrix of squared pairwise distances between n points in R^k.
/// Exactly symmetric and hollow by construction; rank is at most k + 2.
struct EdmMatrix {
  DenseMatrix d;
  Index source_dimension;
};

enum class PointDistribution { UniformUnitCube };

/// d[i][j] = squared Euclidean distance between points i and j.
/// Each pair is computed once and mirrored, so the output is bitwise
/// symmetric with a bitwise-zero diagonal.
EdmMatrix edm_from_points(const PointCloud& pc);

/// Gram matrix of pairwise inner products; PSD with rank at most k.
DenseMatrix gram_from_points(const PointCloud& pc);

/// Self-test: checks that the distance matrix agrees with its Gram-matrix
/// expression  1 * diag(G)^T - 2 G + diag(G) * 1^T  within 1e-10 relative
/// Frobenius error.
bool edm_identity_check(const PointCloud& pc);

/// n i.i.d. points uniform on [0,1]^k; deterministic per seed.
PointCloud random_points(Index n, Index k, PointDistribution distribution,
                         std::uint64_t seed);

/// M_L * M_R^T with n x r standard-normal factors; rank r with probability 1.
DenseMatrix random_gaussian_lowrank(Index n, Index r, std::uint64_t seed);

}  // namespace edmc::edm
