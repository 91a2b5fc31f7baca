// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edmc/types.hpp"

namespace edmc::mask {

/// The set Omega of observed (row, col) positions of an n x n matrix.
class ObservationMask {
 public:
  explicit ObservationMask(Index n);

  static ObservationMask full(Index n);

  Index n() const { return n_; }
  Index observed_count() const { return count_; }
  double density() const { return static_cast<double>(count_) / (static_cast<double>(n_) * n_); }

  bool contains(Index i, Index j) const { return flags_[idx(i, j)] != 0; }

  void insert(Index i, Index j);
  void erase(Index i, Index j);

  /// Calls fn(i, j) for every observed position in row-major order.
  template <typename Fn>
  void for_each_observed(Fn&& fn) const {
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j)
        if (flags_[idx(i, j)]) fn(i, j);
  }

  bool operator==(const ObservationMask& other) const = default;

 private:
  Index idx(Index i, Index j) const;

  Index n_;
  Index count_ = 0;
  std::vector<std::uint8_t> flags_;
};

/// Observed entries of a matrix: the mask plus one value per observed
/// position. `values` is dense with zeros off the mask, i.e. P_Omega(D).
struct ObservedMatrix {
  ObservationMask mask;
  DenseMatrix values;
};

/// How deletions are drawn.
///
/// SymmetricPairs deletes unordered off-diagonal pairs, removing (i,j) and
/// (j,i) together; with keep_diagonal=false the diagonal entries join the
/// candidate pool as single-entry candidates. IndependentEntries treats
/// every entry (minus the diagonal when keep_diagonal) as its own candidate.
enum class MaskMode { SymmetricPairs, IndependentEntries };

const char* to_string(MaskMode mode);
MaskMode mask_mode_from_string(const std::string& name);

/// Deletes floor(p * candidate_count) candidates uniformly at random without
/// replacement and returns the mask of what remains observed.
ObservationMask random_mask(Index n, double deletion_fraction, MaskMode mode,
                            bool keep_diagonal, std::uint64_t seed);

/// Number of deletion candidates for the given mode (the C in |deleted| = floor(p*C)).
Index deletion_candidate_count(Index n, MaskMode mode, bool keep_diagonal);

/// P_Omega: keeps x on the mask, zero elsewhere.
DenseMatrix project(const DenseMatrix& x, const ObservationMask& mask);

/// P_Omega-perp: keeps x off the mask, zero on it.
DenseMatrix project_complement(const DenseMatrix& x, const ObservationMask& mask);

/// Observed values on the mask, background everywhere else. Single pass.
DenseMatrix fill(const ObservedMatrix& observed, const DenseMatrix& background);

/// Restriction of a fully known matrix to a mask.
ObservedMatrix observe(const DenseMatrix& d, const ObservationMask& mask);

}  // namespace edmc::mask
