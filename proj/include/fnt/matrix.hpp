#pragma once

#include <cstddef>
#include <vector>

#include "fnt/errors.hpp"

namespace fnt {

// dense row-major matrix, just enough surface for the triangular kernels
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  const double* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }

  bool empty() const { return a_.empty(); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

}  // namespace fnt
