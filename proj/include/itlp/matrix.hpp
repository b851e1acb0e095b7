#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace itlp {

// Dense row-major matrix of doubles. Value type, no views.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double &operator()(int i, int j) { return data_[idx(i, j)]; }
  double operator()(int i, int j) const { return data_[idx(i, j)]; }

  double at(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("Mat::at");
    return data_[idx(i, j)];
  }

  const std::vector<double> &data() const { return data_; }
  std::vector<double> &data() { return data_; }

  bool operator==(const Mat &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + j;
  }
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

}  // namespace itlp
