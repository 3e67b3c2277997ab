#include "parabolic/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <utility>

namespace parabolic {

namespace {

// In-place elimination; returns the pivot row order and the sign of the
// permutation, or an empty order if a zero pivot remains.
template <Scalar T>
bool eliminate(Matrix<T>& A, std::vector<T>* rhs, int& sign) {
  const int n = A.rows();
  sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    if constexpr (ScalarTraits<T>::exact) {
      for (int i = k; i < n; ++i)
        if (!is_zero(A(i, k))) {
          piv = i;
          break;
        }
    } else {
      double best = 0.0;
      for (int i = k; i < n; ++i)
        if (std::fabs(A(i, k)) > best) {
          best = std::fabs(A(i, k));
          piv = i;
        }
    }
    if (piv < 0) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      if (rhs) std::swap((*rhs)[static_cast<std::size_t>(k)], (*rhs)[static_cast<std::size_t>(piv)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      if (is_zero(A(i, k))) continue;
      const T f = A(i, k) / A(k, k);
      for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
      if (rhs) (*rhs)[static_cast<std::size_t>(i)] -= f * (*rhs)[static_cast<std::size_t>(k)];
    }
  }
  return true;
}

}  // namespace

template <Scalar T>
std::vector<T> solve(const Matrix<T>& A, const std::vector<T>& b) {
  if (A.rows() != A.cols() || static_cast<int>(b.size()) != A.rows())
    throw Error(ErrorCode::DimMismatch, "linear system shape");
  if constexpr (!ScalarTraits<T>::exact) {
    if (!invertible(A)) throw Error(ErrorCode::NotInvertible, "matrix is numerically singular");
  }
  Matrix<T> M = A;
  std::vector<T> x = b;
  int sign = 1;
  if (!eliminate(M, &x, sign)) throw Error(ErrorCode::NotInvertible, "matrix is singular");
  const int n = A.rows();
  for (int i = n - 1; i >= 0; --i) {
    T s = x[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= M(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / M(i, i);
  }
  return x;
}

template <Scalar T>
T determinant(const Matrix<T>& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::DimMismatch, "determinant of a non-square matrix");
  Matrix<T> M = A;
  int sign = 1;
  if (!eliminate<T>(M, nullptr, sign)) return T(0);
  T d = T(sign);
  for (int i = 0; i < A.rows(); ++i) d *= M(i, i);
  return d;
}

double condition_number(const Matrix<double>& A) {
  const int n = A.rows();
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, A.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < A.cols(); ++j) m(i, j) = A(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

template <>
bool invertible(const Matrix<Rational>& A) {
  if (A.rows() == 0) return true;
  return sgn(determinant(A)) != 0;
}

template <>
bool invertible(const Matrix<double>& A) {
  if (A.rows() == 0) return true;
  return condition_number(A) < kSingularCondition;
}

template std::vector<Rational> solve(const Matrix<Rational>&, const std::vector<Rational>&);
template std::vector<double> solve(const Matrix<double>&, const std::vector<double>&);
template Rational determinant(const Matrix<Rational>&);
template double determinant(const Matrix<double>&);

}  // namespace parabolic
