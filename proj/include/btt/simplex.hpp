// Copyright 2026 The btt Authors
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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "btt/error.hpp"
#include "btt/number.hpp"

namespace btt {

/// Optimal primal/dual pair of a set-packing LP and its covering dual.
template <class Num>
struct PackingLpResult {
  std::vector<Num> packing;  // y_j per set
  std::vector<Num> covering;  // x_i per row
  Num value = Num(0);
  std::size_t pivots = 0;
};

/// Dense tableau simplex for
///
///   max  sum_j y_j   s.t.  sum_{j : i in sets[j]} y_j <= caps[i],  y >= 0.
///
/// The origin is feasible because caps >= 0, so no phase one is needed. The
/// covering dual (min sum_i caps[i] x_i s.t. sum_{i in sets[j]} x_i >= 1) is
/// read off the reduced costs of the slack columns. Bland's rule for both
/// entering and leaving choices, so degenerate instances cannot cycle.
///
/// With Num = Rational everything is exact and `tol` should be 0.
template <class Num>
PackingLpResult<Num> solve_packing_simplex(std::span<const std::vector<int>> sets,
                                           std::span<const Num> caps, double tol = 0.0) {
  const std::size_t m = caps.size();
  const std::size_t k = sets.size();
  const std::size_t cols = k + m;
  for (const auto& s : sets) {
    if (s.empty()) throw InputError("empty covering constraint");
    for (int i : s) {
      if (i < 0 || static_cast<std::size_t>(i) >= m) throw InputError("constraint row out of range");
    }
  }

  auto is_neg = [&](const Num& v) {
    if constexpr (NumTraits<Num>::exact) {
      return v < 0;
    } else {
      return v < -tol;
    }
  };
  auto is_pos = [&](const Num& v) {
    if constexpr (NumTraits<Num>::exact) {
      return v > 0;
    } else {
      return v > tol;
    }
  };

  std::vector<Num> a(m * cols, Num(0));
  std::vector<Num> rhs(caps.begin(), caps.end());
  std::vector<Num> d(cols, Num(0));  // reduced costs z_j - c_j
  std::vector<std::size_t> basis(m);
  Num z(0);
  for (std::size_t j = 0; j < k; ++j) {
    for (int i : sets[j]) a[i * cols + j] += Num(1);
    d[j] = Num(-1);
  }
  for (std::size_t i = 0; i < m; ++i) {
    a[i * cols + k + i] = Num(1);
    basis[i] = k + i;
  }

  PackingLpResult<Num> res;
  std::vector<std::size_t> nz;
  Num ratio_best(0);
  Num ratio(0);
  Num factor(0);
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_neg(d[j])) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      const Num& aij = a[i * cols + enter];
      if (!is_pos(aij)) continue;
      ratio = rhs[i] / aij;
      if (leave == m || ratio < ratio_best || (ratio == ratio_best && basis[i] < basis[leave])) {
        leave = i;
        ratio_best = ratio;
      }
    }
    if (leave == m) throw InternalError("packing LP unbounded");

    // Normalize pivot row.
    Num* prow = &a[leave * cols];
    const Num piv = prow[enter];
    nz.clear();
    for (std::size_t j = 0; j < cols; ++j) {
      if (prow[j] != 0) {
        prow[j] /= piv;
        nz.push_back(j);
      }
    }
    rhs[leave] /= piv;

    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      Num* row = &a[i * cols];
      if (row[enter] == 0) continue;
      factor = row[enter];
      for (std::size_t j : nz) {
        row[j] -= factor * prow[j];
        if constexpr (!NumTraits<Num>::exact) {
          if (std::abs(row[j]) < 1e-13) row[j] = 0;
        }
      }
      rhs[i] -= factor * rhs[leave];
    }
    if (d[enter] != 0) {
      factor = d[enter];
      for (std::size_t j : nz) d[j] -= factor * prow[j];
      z -= factor * rhs[leave];
    }
    basis[leave] = enter;
    ++res.pivots;
  }

  res.packing.assign(k, Num(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < k) res.packing[basis[i]] = rhs[i];
  }
  res.covering.assign(m, Num(0));
  for (std::size_t i = 0; i < m; ++i) res.covering[i] = d[k + i];
  res.value = z;
  return res;
}

}  // namespace btt
