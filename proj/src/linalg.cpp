// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <lapacke.h>

#include "edmc/rng.hpp"

namespace edmc::linalg {

namespace {

// Randomized backend tuning. The guard band absorbs edge effects at the
// truncation point; two power iterations sharpen the subspace enough for the
// shrinkage levels the solvers use.
constexpr Index kOversample = 8;
constexpr int kPowerIterations = 2;
// Below this dimension the dense LAPACK kernels are fast enough that
// truncation buys nothing (measured on commodity hardware).
constexpr Index kAutoDenseLimit = 400;
// Probe matrices are seeded from dimensions only, so the factorization stays
// a pure function of its input.
constexpr std::uint64_t kProbeSeedBase = 0xED0C51D5EEDull;

SvdFactorization svd_symmetric_dense(const DenseMatrix& a) {
  const Index n = a.rows();
  DenseMatrix vectors = a;
  Vector w(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                  vectors.data(), static_cast<lapack_int>(n), w.data());
  if (info != 0) throw SvdError(n, n, info);

  // Reorder eigenpairs by magnitude (ties: positive eigenvalue first).
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index lhs, Index rhs) {
    const double la = std::abs(w[lhs]), ra = std::abs(w[rhs]);
    if (la != ra) return la > ra;
    return w[lhs] > w[rhs];
  });

  SvdFactorization f;
  f.u.resize(n, n);
  f.v.resize(n, n);
  f.sigma.resize(n);
  for (Index t = 0; t < n; ++t) {
    const Index src = order[static_cast<std::size_t>(t)];
    const double ev = w[src];
    f.sigma[t] = std::abs(ev);
    f.u.col(t) = vectors.col(src);
    f.v.col(t) = (ev < 0.0 ? -1.0 : 1.0) * vectors.col(src);
  }
  return f;
}

SvdFactorization svd_general_dense(const DenseMatrix& a) {
  const Index n = a.rows();
  const Index m = a.cols();
  const Index q = std::min(n, m);
  DenseMatrix work = a;  // dgesdd clobbers its input
  DenseMatrix u(n, q);
  DenseMatrix vt(q, m);
  Vector s(q);
  const int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', static_cast<lapack_int>(n),
                                  static_cast<lapack_int>(m), work.data(),
                                  static_cast<lapack_int>(n), s.data(), u.data(),
                                  static_cast<lapack_int>(n), vt.data(),
                                  static_cast<lapack_int>(q));
  if (info != 0) throw SvdError(n, m, info);

  SvdFactorization f;
  f.u = std::move(u);
  f.sigma = std::move(s);
  f.v = vt.transpose();
  return f;
}

SvdFactorization svd_dense(const DenseMatrix& a) {
  return is_exactly_symmetric(a) ? svd_symmetric_dense(a) : svd_general_dense(a);
}

DenseMatrix gaussian_probe(Index rows, Index cols, std::uint64_t salt) {
  rng::Stream stream(rng::derive_seed(
      kProbeSeedBase, {salt, static_cast<std::uint64_t>(rows), static_cast<std::uint64_t>(cols)}));
  DenseMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = stream.normal();
  return g;
}

DenseMatrix thin_q(const DenseMatrix& y) {
  Eigen::HouseholderQR<DenseMatrix> qr(y);
  return qr.householderQ() * DenseMatrix::Identity(y.rows(), y.cols());
}

// Rayleigh-Ritz on a randomized range basis; returns an eigenvalue-derived
// factorization that is symmetric in exact arithmetic.
SvdFactorization randomized_symmetric(const DenseMatrix& a, Index q) {
  const Index n = a.rows();
  DenseMatrix basis = thin_q(a * gaussian_probe(n, q, /*salt=*/1));
  for (int it = 0; it < kPowerIterations; ++it) basis = thin_q(a * basis);

  DenseMatrix small = basis.transpose() * (a * basis);
  small = (0.5 * (small + small.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(small);
  if (eig.info() != Eigen::Success) throw SvdError(n, n, -1);

  std::vector<Index> order(static_cast<std::size_t>(q));
  std::iota(order.begin(), order.end(), Index{0});
  const Vector& theta = eig.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Index lhs, Index rhs) {
    const double la = std::abs(theta[lhs]), ra = std::abs(theta[rhs]);
    if (la != ra) return la > ra;
    return theta[lhs] > theta[rhs];
  });

  const DenseMatrix ritz = basis * eig.eigenvectors();
  SvdFactorization f;
  f.u.resize(n, q);
  f.v.resize(n, q);
  f.sigma.resize(q);
  for (Index t = 0; t < q; ++t) {
    const Index src = order[static_cast<std::size_t>(t)];
    const double ev = theta[src];
    f.sigma[t] = std::abs(ev);
    f.u.col(t) = ritz.col(src);
    f.v.col(t) = (ev < 0.0 ? -1.0 : 1.0) * ritz.col(src);
  }
  return f;
}

SvdFactorization randomized_general(const DenseMatrix& a, Index q) {
  DenseMatrix basis = thin_q(a * gaussian_probe(a.cols(), q, /*salt=*/2));
  for (int it = 0; it < kPowerIterations; ++it) {
    const DenseMatrix co_basis = thin_q(a.transpose() * basis);
    basis = thin_q(a * co_basis);
  }
  const DenseMatrix small = basis.transpose() * a;  // q x cols
  Eigen::BDCSVD<DenseMatrix> svd_small(small, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SvdFactorization f;
  f.u = basis * svd_small.matrixU();
  f.sigma = svd_small.singularValues();
  f.v = svd_small.matrixV();
  return f;
}

SvdFactorization svd_truncated(const DenseMatrix& a, double lambda, Index min_values) {
  const Index dim = std::min(a.rows(), a.cols());
  const bool symmetric = is_exactly_symmetric(a);
  Index q = std::min(dim, std::max(min_values + kOversample, 2 * kOversample));
  for (;;) {
    // Once the requested block stops being small relative to the matrix the
    // dense kernel is cheaper and exact.
    if (q > dim / 3) return svd_dense(a);
    SvdFactorization f = symmetric ? randomized_symmetric(a, q) : randomized_general(a, q);
    const double cut = std::max(lambda, kRankRelTol * f.sigma[0]);
    if (f.sigma[q - kOversample] <= cut) return f;
    q = std::min(dim, 2 * q);
  }
}

SvdBackend resolve_backend(SvdBackend backend, Index dim) {
  if (backend != SvdBackend::Auto) return backend;
  return dim > kAutoDenseLimit ? SvdBackend::Truncated : SvdBackend::Dense;
}

void check_input(const DenseMatrix& a, const char* op) {
  if (a.rows() < 1 || a.cols() < 1)
    throw std::invalid_argument(std::string(op) + ": matrix must be non-empty");
  if (!all_finite(a))
    throw std::invalid_argument(std::string(op) + ": matrix has non-finite entries");
}

}  // namespace

SvdError::SvdError(Index rows, Index cols, int info)
    : std::runtime_error("SVD kernel failed on a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix (info=" + std::to_string(info) + ")"),
      rows_(rows),
      cols_(cols) {}

const char* to_string(SvdBackend backend) {
  switch (backend) {
    case SvdBackend::Auto: return "auto";
    case SvdBackend::Dense: return "dense";
    case SvdBackend::Truncated: return "truncated";
  }
  return "auto";
}

SvdBackend svd_backend_from_string(const std::string& name) {
  if (name == "auto") return SvdBackend::Auto;
  if (name == "dense") return SvdBackend::Dense;
  if (name == "truncated") return SvdBackend::Truncated;
  throw std::invalid_argument("unknown SVD backend: " + name);
}

SvdFactorization svd(const DenseMatrix& a) {
  check_input(a, "svd");
  return svd_dense(a);
}

SvdFactorization svd_partial(const DenseMatrix& a, double lambda, Index min_values,
                             SvdBackend backend) {
  check_input(a, "svd_partial");
  if (std::isnan(lambda) || lambda < 0.0)
    throw std::invalid_argument("svd_partial: lambda must be non-negative");
  if (min_values < 1) throw std::invalid_argument("svd_partial: min_values must be >= 1");

  const Index dim = std::min(a.rows(), a.cols());
  switch (resolve_backend(backend, dim)) {
    case SvdBackend::Dense: return svd_dense(a);
    case SvdBackend::Truncated: return svd_truncated(a, lambda, std::min(min_values, dim));
    case SvdBackend::Auto: break;
  }
  return svd_dense(a);
}

DenseMatrix soft_threshold(const SvdFactorization& f, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("soft_threshold: lambda must be >= 0");
  Index active = 0;
  while (active < f.value_count() && f.sigma[active] > lambda) ++active;
  if (active == 0) return DenseMatrix::Zero(f.u.rows(), f.v.rows());
  const Vector shrunk = f.sigma.head(active).array() - lambda;
  return f.u.leftCols(active) * shrunk.asDiagonal() * f.v.leftCols(active).transpose();
}

DenseMatrix soft_threshold(const DenseMatrix& a, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("soft_threshold: lambda must be >= 0");
  return soft_threshold(svd(a), lambda);
}

double frobenius_norm(const DenseMatrix& a) { return a.norm(); }

double nuclear_norm(const DenseMatrix& a) { return svd(a).sigma.sum(); }

Index numeric_rank(const SvdFactorization& f) {
  if (f.value_count() == 0 || f.sigma[0] <= 0.0) return 0;
  const double cutoff = kRankRelTol * f.sigma[0];
  Index rank = 0;
  while (rank < f.value_count() && f.sigma[rank] > cutoff) ++rank;
  return rank;
}

Index numeric_rank(const DenseMatrix& a) { return numeric_rank(svd(a)); }

}  // namespace edmc::linalg
