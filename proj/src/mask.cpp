// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/mask.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "edmc/rng.hpp"

namespace edmc::mask {

ObservationMask::ObservationMask(Index n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ObservationMask: n must be positive");
  flags_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

ObservationMask ObservationMask::full(Index n) {
  ObservationMask mask(n);
  mask.flags_.assign(mask.flags_.size(), 1);
  mask.count_ = n * n;
  return mask;
}

Index ObservationMask::idx(Index i, Index j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::out_of_range("mask position (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") out of range for n=" + std::to_string(n_));
  return i * n_ + j;
}

void ObservationMask::insert(Index i, Index j) {
  std::uint8_t& flag = flags_[static_cast<std::size_t>(idx(i, j))];
  if (!flag) {
    flag = 1;
    ++count_;
  }
}

void ObservationMask::erase(Index i, Index j) {
  std::uint8_t& flag = flags_[static_cast<std::size_t>(idx(i, j))];
  if (flag) {
    flag = 0;
    --count_;
  }
}

const char* to_string(MaskMode mode) {
  return mode == MaskMode::SymmetricPairs ? "symmetric_pairs" : "independent_entries";
}

MaskMode mask_mode_from_string(const std::string& name) {
  if (name == "symmetric_pairs") return MaskMode::SymmetricPairs;
  if (name == "independent_entries") return MaskMode::IndependentEntries;
  throw std::invalid_argument("unknown mask mode: " + name);
}

Index deletion_candidate_count(Index n, MaskMode mode, bool keep_diagonal) {
  if (n < 1) throw std::invalid_argument("deletion_candidate_count: n must be positive");
  const Index diagonal = keep_diagonal ? 0 : n;
  if (mode == MaskMode::SymmetricPairs) return n * (n - 1) / 2 + diagonal;
  return n * (n - 1) + diagonal;
}

ObservationMask random_mask(Index n, double deletion_fraction, MaskMode mode, bool keep_diagonal,
                            std::uint64_t seed) {
  if (!(deletion_fraction >= 0.0 && deletion_fraction <= 1.0))
    throw std::invalid_argument("random_mask: deletion_fraction must lie in [0, 1]");
  ObservationMask mask = ObservationMask::full(n);

  const Index candidate_count = deletion_candidate_count(n, mode, keep_diagonal);
  const Index to_delete =
      static_cast<Index>(std::floor(deletion_fraction * static_cast<double>(candidate_count)));
  if (to_delete == 0) return mask;

  // A candidate is an unordered pair in symmetric mode (diagonal entries are
  // single-entry candidates) and a single position otherwise.
  std::vector<std::pair<Index, Index>> candidates;
  candidates.reserve(static_cast<std::size_t>(candidate_count));
  if (mode == MaskMode::SymmetricPairs) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
    if (!keep_diagonal)
      for (Index i = 0; i < n; ++i) candidates.emplace_back(i, i);
  } else {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j || !keep_diagonal) candidates.emplace_back(i, j);
  }

  rng::Stream stream(seed);
  for (Index t = 0; t < to_delete; ++t) {
    const auto remaining = static_cast<std::uint64_t>(candidate_count - t);
    const Index pick = t + static_cast<Index>(stream.below(remaining));
    std::swap(candidates[static_cast<std::size_t>(t)], candidates[static_cast<std::size_t>(pick)]);
    const auto [i, j] = candidates[static_cast<std::size_t>(t)];
    mask.erase(i, j);
    if (mode == MaskMode::SymmetricPairs && i != j) mask.erase(j, i);
  }
  return mask;
}

DenseMatrix project(const DenseMatrix& x, const ObservationMask& mask) {
  if (x.rows() != mask.n() || x.cols() != mask.n())
    throw std::invalid_argument("project: matrix shape does not match mask");
  DenseMatrix out = DenseMatrix::Zero(x.rows(), x.cols());
  mask.for_each_observed([&](Index i, Index j) { out(i, j) = x(i, j); });
  return out;
}

DenseMatrix project_complement(const DenseMatrix& x, const ObservationMask& mask) {
  if (x.rows() != mask.n() || x.cols() != mask.n())
    throw std::invalid_argument("project_complement: matrix shape does not match mask");
  DenseMatrix out = x;
  mask.for_each_observed([&](Index i, Index j) { out(i, j) = 0.0; });
  return out;
}

DenseMatrix fill(const ObservedMatrix& observed, const DenseMatrix& background) {
  const Index n = observed.mask.n();
  if (background.rows() != n || background.cols() != n)
    throw std::invalid_argument("fill: background shape does not match mask");
  if (observed.values.rows() != n || observed.values.cols() != n)
    throw std::invalid_argument("fill: observed values shape does not match mask");
  DenseMatrix out = background;
  observed.mask.for_each_observed([&](Index i, Index j) { out(i, j) = observed.values(i, j); });
  return out;
}

ObservedMatrix observe(const DenseMatrix& d, const ObservationMask& mask) {
  return ObservedMatrix{mask, project(d, mask)};
}

}  // namespace edmc::mask
