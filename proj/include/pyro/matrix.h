/*
 * Copyright 2026 The Pyro Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PYRO_MATRIX_H_
#define PYRO_MATRIX_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace pyro {

// Dense row-major matrix of doubles. Rows are observations.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  void AppendRow(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  // Rows selected by index, in the given order.
  Matrix Select(std::span<const size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (size_t i = 0; i < indices.size(); ++i) {
      const auto src = row(indices[i]);
      std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
  }

  const std::vector<double>& data() const { return data_; }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Execution policy for the data-parallel kernels. kSerial is the reference
// path; kParallel must produce bit-identical results.
enum class Exec { kSerial, kParallel };

}  // namespace pyro

#endif  // PYRO_MATRIX_H_
