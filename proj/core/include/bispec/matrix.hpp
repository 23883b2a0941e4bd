#ifndef BISPEC_MATRIX_HPP
#define BISPEC_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace bispec {

// Small dense row-major matrix. Only what the spectral code needs.
template <typename T>
class Matrix {
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
  : rows_(rows), cols_(cols), data_(rows * cols, fill)
  {}

  Matrix(std::initializer_list<std::initializer_list<T>> init)
  : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0)
  {
    data_.reserve(rows_ * cols_);
    for (auto const &row : init) {
      assert(row.size() == cols_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  T const &operator()(std::size_t i, std::size_t j) const
  { return data_[i * cols_ + j]; }

  T row_sum(std::size_t i) const
  {
    T sum{};
    for (std::size_t j = 0; j < cols_; ++j)
      sum += (*this)(i, j);
    return sum;
  }

  friend bool operator==(Matrix const &, Matrix const &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<long long>;
using RealMatrix = Matrix<double>;

} // namespace bispec

#endif // BISPEC_MATRIX_HPP
