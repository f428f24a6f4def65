#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "nerf/types.hpp"

namespace nerf {

// Dense row-major matrix over R or C. Complex entries are stored interleaved
// (re, im), which matches the std::complex<double> array layout, so the
// buffer can be mapped as either scalar type without copying.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::int64_t rows, std::int64_t cols, Field field)
      : rows_(rows), cols_(cols), field_(field),
        data_(std::size_t(rows) * std::size_t(cols) * (field == Field::Complex ? 2 : 1), 0.0) {
    if (rows < 0 || cols < 0) throw DomainError("matrix shape must be nonnegative");
  }

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  Field field() const { return field_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t value_count() const { return data_.size(); }

  double& real_at(std::int64_t i, std::int64_t j) {
    return data_[std::size_t(i * cols_ + j)];
  }
  double real_at(std::int64_t i, std::int64_t j) const {
    return data_[std::size_t(i * cols_ + j)];
  }

  std::complex<double> cplx_at(std::int64_t i, std::int64_t j) const {
    std::size_t k = 2 * std::size_t(i * cols_ + j);
    return {data_[k], data_[k + 1]};
  }
  void set_cplx(std::int64_t i, std::int64_t j, std::complex<double> v) {
    std::size_t k = 2 * std::size_t(i * cols_ + j);
    data_[k] = v.real();
    data_[k + 1] = v.imag();
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  void scale(double g) {
    for (double& v : data_) v *= g;
  }

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
  }

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  Field field_ = Field::Real;
  std::vector<double> data_;
};

}  // namespace nerf
