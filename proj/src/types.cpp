// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/types.hpp"

#include <cmath>

namespace edmc {

bool all_finite(const DenseMatrix& a) { return a.allFinite(); }

bool is_exactly_symmetric(const DenseMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = j + 1; i < a.rows(); ++i)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

}  // namespace edmc
