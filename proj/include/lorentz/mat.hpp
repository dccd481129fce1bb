#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace lorentz {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double v) { return v == kInf; }

// dense row-major square matrix
template <class T>
class Square {
 public:
  Square() = default;
  Square(std::size_t n, T fill) : n_(n), v_(n * n, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

 private:
  std::size_t n_ = 0;
  std::vector<T> v_;
};

using Mat = Square<double>;
using BoolMat = Square<char>;

}  // namespace lorentz
