#pragma once

// Dense truncated multivariate polynomials, the working algebra of jet
// transport, Lie series and the normal-form substitutions.
//
// Monomials x_0^e_0 ... x_{n-1}^e_{n-1} with total degree <= D are stored in
// rows: one row per prefix (e_0, ..., e_{n-2}), holding the contiguous run
// e_{n-1} = 0 .. D - |prefix|. A product then reduces to axpy calls between
// pairs of rows.

#include <cstddef>
#include <memory>
#include <vector>

#include "parabolic/error.hpp"
#include "parabolic/scalar.hpp"

namespace parabolic {

class Layout {
 public:
  /// Shared, cached layout for (nvars, degree).
  static std::shared_ptr<const Layout> get(int nvars, int degree);

  Layout(int nvars, int degree);

  int nvars() const noexcept { return nvars_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return size_; }
  int rows() const noexcept { return static_cast<int>(row_deg_.size()); }

  std::size_t row_offset(int r) const noexcept { return row_offset_[static_cast<std::size_t>(r)]; }
  int row_degree(int r) const noexcept { return row_deg_[static_cast<std::size_t>(r)]; }
  int row_length(int r) const noexcept { return degree_ - row_deg_[static_cast<std::size_t>(r)] + 1; }
  const int* row_prefix(int r) const noexcept {
    return prefix_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(prefix_len());
  }

  /// Row of prefix(r1) + prefix(r2), or -1 if its degree exceeds D.
  int row_sum(int r1, int r2) const;
  /// Row of a prefix given as nvars-1 exponents; -1 if out of range.
  int row_of(const int* prefix) const;

  /// Flat index of a full exponent vector; size() if the degree exceeds D.
  std::size_t index(const int* exps) const;
  /// Exponents of the monomial at a flat index.
  std::vector<int> exponents(std::size_t idx) const;
  int total_degree(std::size_t idx) const;
  int row_of_index(std::size_t idx) const;

 private:
  int prefix_len() const noexcept { return nvars_ > 1 ? nvars_ - 1 : 0; }
  // Number of exponent vectors in k variables with sum <= b.
  std::size_t count(int k, int b) const;

  int nvars_;
  int degree_;
  std::size_t size_ = 0;
  std::vector<std::size_t> row_offset_;
  std::vector<int> row_deg_;
  std::vector<int> prefix_;
  std::vector<std::size_t> binom_;  // (degree+nvars+1)^2 table
  std::vector<int> sum_table_;      // rows*rows when small enough
};

template <Scalar T>
class MPoly {
 public:
  MPoly() = default;
  MPoly(int nvars, int degree) : layout_(Layout::get(nvars, degree)), c_(layout_->size(), T(0)) {}
  explicit MPoly(std::shared_ptr<const Layout> layout) : layout_(std::move(layout)), c_(layout_->size(), T(0)) {}

  static MPoly constant(int nvars, int degree, const T& v) {
    MPoly p(nvars, degree);
    p.c_[0] = v;
    return p;
  }
  static MPoly variable(int nvars, int degree, int var) {
    MPoly p(nvars, degree);
    if (degree >= 1) {
      std::vector<int> e(static_cast<std::size_t>(nvars), 0);
      e[static_cast<std::size_t>(var)] = 1;
      p.c_[p.layout_->index(e.data())] = T(1);
    }
    return p;
  }

  const Layout& layout() const noexcept { return *layout_; }
  const std::shared_ptr<const Layout>& layout_ptr() const noexcept { return layout_; }
  int nvars() const noexcept { return layout_->nvars(); }
  int degree() const noexcept { return layout_->degree(); }

  std::vector<T>& coeffs() noexcept { return c_; }
  const std::vector<T>& coeffs() const noexcept { return c_; }

  /// Coefficient of x^exps; zero if the degree exceeds the truncation.
  T coeff(const std::vector<int>& exps) const {
    std::size_t i = layout_->index(exps.data());
    return i < c_.size() ? c_[i] : T(0);
  }
  /// Adds v to the coefficient of x^exps; terms above the truncation are dropped.
  void add_to(const std::vector<int>& exps, const T& v) {
    std::size_t i = layout_->index(exps.data());
    if (i < c_.size()) c_[i] += v;
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!parabolic::is_zero(v)) return false;
    return true;
  }

  /// Lowest total degree with a nonzero coefficient, or -1.
  int valuation() const;

  double max_abs() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const T& s);
  /// this += s * o.
  void axpy(const T& s, const MPoly& o);

  /// Same polynomial re-laid-out at another truncation degree.
  MPoly with_degree(int degree) const;

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.layout_->nvars() == b.layout_->nvars() && a.layout_->degree() == b.layout_->degree() && a.c_ == b.c_;
  }

 private:
  std::shared_ptr<const Layout> layout_;
  std::vector<T> c_;
};

template <Scalar T>
MPoly<T> operator+(MPoly<T> a, const MPoly<T>& b) { return a += b; }
template <Scalar T>
MPoly<T> operator-(MPoly<T> a, const MPoly<T>& b) { return a -= b; }
template <Scalar T>
MPoly<T> operator*(const T& s, MPoly<T> a) { return a *= s; }

/// Truncated product; both factors must share a layout.
template <Scalar T>
MPoly<T> mul(const MPoly<T>& a, const MPoly<T>& b);

/// out += a * b, truncated to out's layout (a, b, out share a layout).
template <Scalar T>
void mul_add(const MPoly<T>& a, const MPoly<T>& b, MPoly<T>& out);

/// d/dx_var, kept at the same truncation degree.
template <Scalar T>
MPoly<T> derivative(const MPoly<T>& p, int var);

/// p * x_var^k, truncated.
template <Scalar T>
MPoly<T> shift(const MPoly<T>& p, int var, int k);

/// p / x_var^k; throws NotDivisible if a term has a smaller x_var exponent.
/// The result keeps the truncation degree of p, so terms of degree > D-k are
/// known only if p was known to degree D; callers track that.
template <Scalar T>
MPoly<T> divide_by_power(const MPoly<T>& p, int var, int k);

/// 1/p for p with nonzero constant term.
template <Scalar T>
MPoly<T> reciprocal(const MPoly<T>& p);

/// p^k for k >= 0.
template <Scalar T>
MPoly<T> power(const MPoly<T>& p, int k);

/// Value at a point (floating evaluation).
template <Scalar T>
double evaluate(const MPoly<T>& p, const std::vector<double>& point);

template <Scalar T>
MPoly<T> convert_mpoly(const MPoly<Rational>& p) {
  MPoly<T> out(p.layout_ptr());
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out.coeffs()[i] = convert<T>(p.coeffs()[i]);
  return out;
}

extern template class MPoly<Rational>;
extern template class MPoly<double>;
extern template MPoly<Rational> mul(const MPoly<Rational>&, const MPoly<Rational>&);
extern template MPoly<double> mul(const MPoly<double>&, const MPoly<double>&);
extern template MPoly<Rational> derivative(const MPoly<Rational>&, int);
extern template MPoly<double> derivative(const MPoly<double>&, int);
extern template MPoly<Rational> shift(const MPoly<Rational>&, int, int);
extern template MPoly<double> shift(const MPoly<double>&, int, int);
extern template MPoly<Rational> divide_by_power(const MPoly<Rational>&, int, int);
extern template MPoly<double> divide_by_power(const MPoly<double>&, int, int);
extern template MPoly<Rational> reciprocal(const MPoly<Rational>&);
extern template MPoly<double> reciprocal(const MPoly<double>&);
extern template MPoly<Rational> power(const MPoly<Rational>&, int);
extern template MPoly<double> power(const MPoly<double>&, int);
extern template double evaluate(const MPoly<Rational>&, const std::vector<double>&);
extern template double evaluate(const MPoly<double>&, const std::vector<double>&);

}  // namespace parabolic
