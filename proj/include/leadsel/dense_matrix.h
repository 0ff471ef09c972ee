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

#ifndef LEADSEL_DENSE_MATRIX_H_
#define LEADSEL_DENSE_MATRIX_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace leadsel {

// Row-major dense matrix of doubles. Entries are checked to be finite when a
// matrix is built from caller-supplied data; arithmetic results are not
// re-checked.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  // rows x cols matrix filled with `fill`.
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Takes ownership of row-major `data`; throws InvalidArgument on a size
  // mismatch or a non-finite entry.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  // Nested-list constructor for fixtures: {{1, 2}, {3, 4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix Identity(std::size_t n);
  static DenseMatrix Constant(std::size_t rows, std::size_t cols, double v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  DenseMatrix Transpose() const;

  // Largest absolute entry; 0 for an empty matrix.
  double MaxAbs() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

// y = A x.
std::vector<double> Multiply(const DenseMatrix& a, std::span<const double> x);

// max_ij |a_ij - b_ij|. Shapes must agree.
double MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b);

// Plain row-per-line text form, entries separated by single spaces.
std::ostream& operator<<(std::ostream& os, const DenseMatrix& m);

}  // namespace leadsel

#endif  // LEADSEL_DENSE_MATRIX_H_
