#ifndef MIXEDLINK_RATIONAL_HPP
#define MIXEDLINK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedlink {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  template <typename U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

// Fraction-free (Bareiss) elimination. All intermediate values stay integral
// and every division is exact.
Integer bareiss_determinant(IntMatrix a);
std::size_t bareiss_rank(IntMatrix a);

/// Reduced row echelon form over the rationals; `pivots` receives pivot columns.
RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots = nullptr);

/// Basis of the right null space {x : a x = 0}.
std::vector<std::vector<Rational>> nullspace(const RatMatrix& a);

/// Unique X with a X = b for square nonsingular a; nullopt when a is singular.
std::optional<RatMatrix> solve_exact(const RatMatrix& a, const RatMatrix& b);

/// Scales a rational vector to coprime integers, keeping the direction.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

std::string to_string(const Rational& q);

}  // namespace mixedlink

#endif  // MIXEDLINK_RATIONAL_HPP
