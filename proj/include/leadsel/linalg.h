// Copyright 2026 The Authors.
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

#ifndef LEADSEL_LINALG_H_
#define LEADSEL_LINALG_H_

#include <cstddef>
#include <vector>

#include "leadsel/dense_matrix.h"

namespace leadsel {

// Pivots smaller than this fraction of the largest |entry| mark a matrix as
// singular.
inline constexpr double kRelativePivotThreshold = 1e-12;
// |det| of the 2x2 Woodbury capacitance matrix below this is singular.
inline constexpr double kCapacitanceThreshold = 1e-12;

// Direct inverse through an LU factorization with partial pivoting.
// Throws SingularMatrixError on a (near-)zero pivot.
DenseMatrix Invert(const DenseMatrix& a);

double Trace(const DenseMatrix& a);

// Copy of `a` with row and column m removed. Surviving indices keep their
// relative order. A 1x1 input yields the 0x0 matrix.
DenseMatrix DeleteRowCol(const DenseMatrix& a, std::size_t m);

// Symmetric permutation that interchanges row/column m with the last
// row/column. Applying it twice gives back the input.
DenseMatrix SwapWithLast(const DenseMatrix& a, std::size_t m);

// Moore-Penrose pseudo-inverse of the Laplacian of a connected graph via
//   L^+ = (L + J/n)^-1 - J/n,
// J being the all-ones matrix. A disconnected graph makes the shifted matrix
// singular and surfaces as SingularMatrixError.
DenseMatrix PinvLaplacian(const DenseMatrix& laplacian);

// Inverse of the Laplacian grounded at node m (row/column m deleted), read off
// the pseudo-inverse in O(n^2):
//   [L_m^-1]_xy = L+_xy - L+_xm - L+_my + L+_mm.
// Rows/columns of the result follow DeleteRowCol's ordering.
DenseMatrix GroundFromPinv(const DenseMatrix& pinv, std::size_t m);

// 0.5 * trace of GroundFromPinv(pinv, m) in O(n), without forming it.
double HalfTraceGroundedFromPinv(const DenseMatrix& pinv, std::size_t m);

// Rank-2 update that isolates the last row and column of a matrix A':
//   A' + U V^T = [[A_m, 0], [0, a_ll]].
struct WoodburyUpdate {
  DenseMatrix u_factor;  // l x 2
  DenseMatrix v_factor;  // l x 2; V^T is its transpose
  double corner = 0.0;   // a_ll
  std::size_t removed_index = 0;
};

// Builds the update for the last row/column of an already permuted matrix.
// `removed_index` is recorded for bookkeeping only.
WoodburyUpdate MakeRemovalUpdate(const DenseMatrix& permuted,
                                 std::size_t removed_index);

// Inverse of `a` with row/column m removed, updated from a_inv with the
// Woodbury identity:
//   1. swap row/column m with the last in both a and a_inv,
//   2. build the rank-2 update that zeroes the last row/column but a_ll,
//   3. B^-1 = A'^-1 - A'^-1 U (I + V^T A'^-1 U)^-1 V^T A'^-1,
//   4. drop the last row/column of B^-1.
// The result is in DeleteRowCol order. Throws SingularMatrixError when the
// capacitance matrix is singular.
DenseMatrix WoodburyRemove(const DenseMatrix& a_inv, const DenseMatrix& a,
                           std::size_t m);

// Same as WoodburyRemove but leaves the result in swap order: the former last
// index now occupies slot m. This is what the incremental oracle keeps, since
// its follower bookkeeping follows the same swap.
DenseMatrix WoodburyRemoveSwapped(const DenseMatrix& a_inv,
                                  const DenseMatrix& a, std::size_t m);

// Variant that only needs row m and column m of A (sparse-friendly). The
// oracle feeds it from the full Laplacian without materialising the grounded
// one.
DenseMatrix WoodburyRemoveSwapped(const DenseMatrix& a_inv,
                                  const std::vector<double>& a_row_m,
                                  const std::vector<double>& a_col_m,
                                  std::size_t m);

// trace((A_m)^-1) from the same rank-2 Woodbury expression, evaluating only
// the diagonal of B^-1. Costs two dense products with a_inv (about 4 l^2
// flops) and allocates O(l). `trace_a_inv` is trace(a_inv).
double WoodburyRemovedTrace(const DenseMatrix& a_inv, double trace_a_inv,
                            const std::vector<double>& a_row_m,
                            const std::vector<double>& a_col_m, std::size_t m);

}  // namespace leadsel

#endif  // LEADSEL_LINALG_H_
