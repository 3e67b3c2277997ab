#pragma once

// Small dense matrices for the blocks v, w, B1, B2, C of a map.

#include <vector>

#include "parabolic/error.hpp"
#include "parabolic/scalar.hpp"

namespace parabolic {

template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), T(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!parabolic::is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> a_;
};

template <Scalar T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <Scalar T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <Scalar T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

template <Scalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

template <Scalar T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  std::vector<T> y(static_cast<std::size_t>(a.rows()), T(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[static_cast<std::size_t>(i)] += a(i, j) * x[static_cast<std::size_t>(j)];
  return y;
}

template <Scalar T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Condition threshold above which a float matrix counts as singular.
inline constexpr double kSingularCondition = 1e8;

/// Solves A x = b: exact Gaussian elimination for rationals, partial
/// pivoting for doubles. Throws NotInvertible for a singular A.
template <Scalar T>
std::vector<T> solve(const Matrix<T>& A, const std::vector<T>& b);

/// Exact determinant (rationals) or LU determinant (doubles).
template <Scalar T>
T determinant(const Matrix<T>& A);

/// det != 0 for rationals; 2-norm condition number below the threshold for
/// doubles.
template <Scalar T>
bool invertible(const Matrix<T>& A);

/// 2-norm condition number (doubles); infinity when singular.
double condition_number(const Matrix<double>& A);

template <Scalar T>
Matrix<T> convert_matrix(const Matrix<Rational>& A) {
  Matrix<T> out(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) out(i, j) = convert<T>(A(i, j));
  return out;
}

extern template std::vector<Rational> solve(const Matrix<Rational>&, const std::vector<Rational>&);
extern template std::vector<double> solve(const Matrix<double>&, const std::vector<double>&);
extern template Rational determinant(const Matrix<Rational>&);
extern template double determinant(const Matrix<double>&);
template <>
bool invertible(const Matrix<Rational>& A);
template <>
bool invertible(const Matrix<double>& A);

}  // namespace parabolic
