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

#include "leadsel/linalg.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "leadsel/errors.h"

namespace leadsel {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void RequireSquare(const DenseMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw InvalidArgument(std::string(op) + ": matrix is " +
                          std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ", expected square");
  }
}

void RequireIndex(std::size_t m, std::size_t dim, const char* op) {
  if (m >= dim) {
    throw InvalidArgument(std::string(op) + ": index " + std::to_string(m) +
                          " out of range for dimension " +
                          std::to_string(dim));
  }
}

// The one permutation used by every removal path: m <-> last.
inline std::size_t SwapIndex(std::size_t i, std::size_t m, std::size_t last) {
  if (i == m) return last;
  if (i == last) return m;
  return i;
}

struct Factors {
  // P = A'^-1 U (l x 2) and W = C^-1 V^T A'^-1 (2 x l), in permuted order.
  std::vector<double> p0, p1, w0, w1;
};

// Shared core of the Woodbury removal. Works in permuted coordinates, with
// A'^-1 read through SwapIndex instead of being copied.
//
// With c the last column and r the last row of A' and a = a_ll:
//   U   = [-e_l, -(c - a e_l)]
//   V^T = [(r - a e_l)^T ; e_l^T]
// so A' + U V^T keeps a_ll in the corner and zeroes the rest of the last row
// and column.
Factors ComputeFactors(const DenseMatrix& a_inv, const std::vector<double>& r,
                       const std::vector<double>& c, std::size_t m) {
  const std::size_t l = a_inv.rows();
  const std::size_t last = l - 1;
  const double corner = c[last];
  auto inv = [&](std::size_t i, std::size_t j) {
    return a_inv(SwapIndex(i, m, last), SwapIndex(j, m, last));
  };

  Factors f;
  f.p0.assign(l, 0.0);
  f.p1.assign(l, 0.0);
  std::vector<double> q0(l, 0.0), q1(l, 0.0);

  // P = A'^-1 U, Q = V^T A'^-1. The dense products run over a_inv in its
  // original order, with the short vectors permuted instead.
  std::vector<double> u_orig(l), v_orig(l), q0_orig(l, 0.0);
  for (std::size_t j = 0; j < l; ++j) {
    const std::size_t pj = SwapIndex(j, m, last);
    u_orig[j] = (pj == last) ? c[pj] - corner : c[pj];
    v_orig[j] = (pj == last) ? r[pj] - corner : r[pj];
  }
  std::vector<double> p1_orig(l);
  {
    const auto n = static_cast<Eigen::Index>(l);
    Eigen::Map<const RowMajor> inv_map(a_inv.data().data(), n, n);
    Eigen::Map<const Eigen::VectorXd> u_map(u_orig.data(), n);
    Eigen::Map<Eigen::VectorXd> out_map(p1_orig.data(), n);
    out_map.noalias() = inv_map * u_map;
  }
  for (std::size_t i = 0; i < l; ++i) {
    f.p0[i] = -inv(i, last);
    f.p1[i] = -p1_orig[SwapIndex(i, m, last)];
  }
  for (std::size_t i = 0; i < l; ++i) {
    const double vi = v_orig[i];
    if (vi == 0.0) continue;
    auto src = a_inv.row(i);
    for (std::size_t j = 0; j < l; ++j) q0_orig[j] += vi * src[j];
  }
  for (std::size_t j = 0; j < l; ++j) {
    q0[j] = q0_orig[SwapIndex(j, m, last)];
    q1[j] = inv(last, j);
  }

  // C = I + V^T A'^-1 U = I + V^T P.
  double c00 = 1.0, c01 = 0.0, c10 = 0.0, c11 = 1.0;
  for (std::size_t i = 0; i < l; ++i) {
    const double v0 = (i == last) ? r[i] - corner : r[i];
    const double v1 = (i == last) ? 1.0 : 0.0;
    c00 += v0 * f.p0[i];
    c01 += v0 * f.p1[i];
    c10 += v1 * f.p0[i];
    c11 += v1 * f.p1[i];
  }
  const double det = c00 * c11 - c01 * c10;
  if (!(std::abs(det) >= kCapacitanceThreshold)) {
    throw SingularMatrixError("removal makes matrix singular (capacitance "
                              "determinant " + std::to_string(det) + ")");
  }
  const double i00 = c11 / det, i01 = -c01 / det;
  const double i10 = -c10 / det, i11 = c00 / det;

  f.w0.resize(l);
  f.w1.resize(l);
  for (std::size_t j = 0; j < l; ++j) {
    f.w0[j] = i00 * q0[j] + i01 * q1[j];
    f.w1[j] = i10 * q0[j] + i11 * q1[j];
  }
  return f;
}

void PermuteLastPair(std::vector<double>& v, std::size_t m) {
  std::swap(v[m], v[v.size() - 1]);
}

}  // namespace

DenseMatrix Invert(const DenseMatrix& a) {
  RequireSquare(a, "Invert");
  const std::size_t n = a.rows();
  if (n == 0) return DenseMatrix();
  Eigen::Map<const RowMajor> src(a.data().data(), n, n);
  Eigen::PartialPivLU<RowMajor> lu(src);
  const double scale = a.MaxAbs();
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(std::abs(diag(i)) > kRelativePivotThreshold * scale)) {
      throw SingularMatrixError("singular matrix: pivot " +
                                std::to_string(diag(i)) + " at step " +
                                std::to_string(i));
    }
  }
  DenseMatrix out(n, n);
  Eigen::Map<RowMajor> dst(out.data().data(), n, n);
  dst = lu.inverse();
  return out;
}

double Trace(const DenseMatrix& a) {
  RequireSquare(a, "Trace");
  double t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

DenseMatrix DeleteRowCol(const DenseMatrix& a, std::size_t m) {
  RequireSquare(a, "DeleteRowCol");
  RequireIndex(m, a.rows(), "DeleteRowCol");
  const std::size_t n = a.rows();
  DenseMatrix out(n - 1, n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == m) continue;
    auto src = a.row(i);
    auto dst = out.row(oi++);
    std::copy(src.begin(), src.begin() + m, dst.begin());
    std::copy(src.begin() + m + 1, src.end(), dst.begin() + m);
  }
  return out;
}

DenseMatrix SwapWithLast(const DenseMatrix& a, std::size_t m) {
  RequireSquare(a, "SwapWithLast");
  RequireIndex(m, a.rows(), "SwapWithLast");
  const std::size_t last = a.rows() - 1;
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(SwapIndex(i, m, last), SwapIndex(j, m, last));
    }
  }
  return out;
}

DenseMatrix PinvLaplacian(const DenseMatrix& laplacian) {
  RequireSquare(laplacian, "PinvLaplacian");
  const std::size_t n = laplacian.rows();
  if (n == 0) throw InvalidArgument("PinvLaplacian: empty matrix");
  const double tol = 1e-9 * std::max(1.0, laplacian.MaxAbs());
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += laplacian(i, j);
      if (std::abs(laplacian(i, j) - laplacian(j, i)) > tol) {
        throw InvalidArgument("PinvLaplacian: matrix is not symmetric");
      }
    }
    if (std::abs(sum) > tol) {
      throw InvalidArgument("PinvLaplacian: row " + std::to_string(i) +
                            " does not sum to zero");
    }
  }
  const double shift = 1.0 / static_cast<double>(n);
  DenseMatrix shifted = laplacian;
  for (double& v : shifted.data()) v += shift;
  DenseMatrix pinv = Invert(shifted);
  for (double& v : pinv.data()) v -= shift;
  return pinv;
}

DenseMatrix GroundFromPinv(const DenseMatrix& pinv, std::size_t m) {
  RequireSquare(pinv, "GroundFromPinv");
  RequireIndex(m, pinv.rows(), "GroundFromPinv");
  const std::size_t n = pinv.rows();
  const double mm = pinv(m, m);
  DenseMatrix out(n - 1, n - 1);
  for (std::size_t x = 0, ox = 0; x < n; ++x) {
    if (x == m) continue;
    const double xm = pinv(x, m);
    auto src = pinv.row(x);
    auto mrow = pinv.row(m);
    auto dst = out.row(ox++);
    for (std::size_t y = 0, oy = 0; y < n; ++y) {
      if (y == m) continue;
      dst[oy++] = src[y] - xm - mrow[y] + mm;
    }
  }
  return out;
}

double HalfTraceGroundedFromPinv(const DenseMatrix& pinv, std::size_t m) {
  RequireSquare(pinv, "HalfTraceGroundedFromPinv");
  RequireIndex(m, pinv.rows(), "HalfTraceGroundedFromPinv");
  const double mm = pinv(m, m);
  double t = 0.0;
  for (std::size_t x = 0; x < pinv.rows(); ++x) {
    if (x == m) continue;
    t += pinv(x, x) - pinv(x, m) - pinv(m, x) + mm;
  }
  return 0.5 * t;
}

WoodburyUpdate MakeRemovalUpdate(const DenseMatrix& permuted,
                                 std::size_t removed_index) {
  RequireSquare(permuted, "MakeRemovalUpdate");
  const std::size_t l = permuted.rows();
  if (l == 0) throw InvalidArgument("MakeRemovalUpdate: empty matrix");
  const std::size_t last = l - 1;
  WoodburyUpdate up;
  up.corner = permuted(last, last);
  up.removed_index = removed_index;
  up.u_factor = DenseMatrix(l, 2);
  up.v_factor = DenseMatrix(l, 2);
  for (std::size_t i = 0; i < l; ++i) {
    const double col = permuted(i, last) - (i == last ? up.corner : 0.0);
    const double row = permuted(last, i) - (i == last ? up.corner : 0.0);
    up.u_factor(i, 0) = (i == last) ? -1.0 : 0.0;
    up.u_factor(i, 1) = -col;
    up.v_factor(i, 0) = row;
    up.v_factor(i, 1) = (i == last) ? 1.0 : 0.0;
  }
  return up;
}

DenseMatrix WoodburyRemoveSwapped(const DenseMatrix& a_inv,
                                  const std::vector<double>& a_row_m,
                                  const std::vector<double>& a_col_m,
                                  std::size_t m) {
  RequireSquare(a_inv, "WoodburyRemove");
  const std::size_t l = a_inv.rows();
  RequireIndex(m, l, "WoodburyRemove");
  if (a_row_m.size() != l || a_col_m.size() != l) {
    throw InvalidArgument("WoodburyRemove: row/column length mismatch");
  }
  std::vector<double> r = a_row_m, c = a_col_m;
  PermuteLastPair(r, m);
  PermuteLastPair(c, m);
  const Factors f = ComputeFactors(a_inv, r, c, m);

  const std::size_t last = l - 1;
  DenseMatrix out(last, last);
  for (std::size_t i = 0; i < last; ++i) {
    auto src = a_inv.row(SwapIndex(i, m, last));
    auto dst = out.row(i);
    const double p0 = f.p0[i], p1 = f.p1[i];
    for (std::size_t j = 0; j < last; ++j) {
      dst[j] = src[SwapIndex(j, m, last)] - (p0 * f.w0[j] + p1 * f.w1[j]);
    }
  }
  return out;
}

DenseMatrix WoodburyRemoveSwapped(const DenseMatrix& a_inv,
                                  const DenseMatrix& a, std::size_t m) {
  RequireSquare(a, "WoodburyRemove");
  if (a.rows() != a_inv.rows()) {
    throw InvalidArgument("WoodburyRemove: a and a_inv differ in size");
  }
  RequireIndex(m, a.rows(), "WoodburyRemove");
  std::vector<double> row(a.row(m).begin(), a.row(m).end());
  std::vector<double> col(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) col[i] = a(i, m);
  return WoodburyRemoveSwapped(a_inv, row, col, m);
}

DenseMatrix WoodburyRemove(const DenseMatrix& a_inv, const DenseMatrix& a,
                           std::size_t m) {
  DenseMatrix swapped = WoodburyRemoveSwapped(a_inv, a, m);
  const std::size_t d = swapped.rows();
  if (m >= d) return swapped;  // m was the last index: no reordering needed.
  // Swap order puts the old last index at slot m; rotate it to the end so the
  // result matches DeleteRowCol.
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) {
    order[i] = (i < m) ? i : (i + 1 < d ? i + 1 : m);
  }
  DenseMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = swapped(order[i], order[j]);
  }
  return out;
}

double WoodburyRemovedTrace(const DenseMatrix& a_inv, double trace_a_inv,
                            const std::vector<double>& a_row_m,
                            const std::vector<double>& a_col_m,
                            std::size_t m) {
  RequireSquare(a_inv, "WoodburyRemovedTrace");
  const std::size_t l = a_inv.rows();
  RequireIndex(m, l, "WoodburyRemovedTrace");
  if (a_row_m.size() != l || a_col_m.size() != l) {
    throw InvalidArgument("WoodburyRemovedTrace: row/column length mismatch");
  }
  std::vector<double> r = a_row_m, c = a_col_m;
  PermuteLastPair(r, m);
  PermuteLastPair(c, m);
  const Factors f = ComputeFactors(a_inv, r, c, m);
  // trace(B^-1) = trace(A^-1) - sum_i (P W)_ii, and B^-1 holds 1/a_ll in its
  // corner, which is not part of (A_m)^-1.
  double correction = 0.0;
  for (std::size_t i = 0; i < l; ++i) {
    correction += f.p0[i] * f.w0[i] + f.p1[i] * f.w1[i];
  }
  const double corner = c[l - 1];
  return trace_a_inv - correction - 1.0 / corner;
}

}  // namespace leadsel
