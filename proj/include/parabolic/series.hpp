#pragma once

// Truncated univariate power series and vector-valued series.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "parabolic/error.hpp"
#include "parabolic/scalar.hpp"
#include "parabolic/simd/kernels.hpp"

namespace parabolic {

/// c_0 + c_1 t + ... + c_n t^n, with n the truncation order.
template <Scalar T>
class Series {
 public:
  Series() : c_(1, T(0)) {}
  explicit Series(int order) : c_(static_cast<std::size_t>(std::max(order, 0)) + 1, T(0)) {}
  explicit Series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
  }

  /// coeff * t^power truncated at order.
  static Series monomial(int order, int power, const T& coeff) {
    Series s(order);
    if (power >= 0 && power <= order) s.c_[static_cast<std::size_t>(power)] = coeff;
    return s;
  }
  static Series identity(int order) { return monomial(order, 1, T(1)); }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }

  T& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const T& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  /// Coefficient of t^i, zero beyond the stored order.
  T at(int i) const { return i >= 0 && i <= order() ? c_[static_cast<std::size_t>(i)] : T(0); }

  const std::vector<T>& coeffs() const noexcept { return c_; }
  std::vector<T>& coeffs() noexcept { return c_; }
  T* data() noexcept { return c_.data(); }
  const T* data() const noexcept { return c_.data(); }

  /// Drops terms above the given order; never raises the order.
  Series truncated(int order) const {
    if (order >= this->order()) return *this;
    return Series(std::vector<T>(c_.begin(), c_.begin() + std::max(order, 0) + 1));
  }

  /// Same coefficients with zeros appended up to the given order. Only for
  /// internal use where the missing terms are known to vanish.
  Series padded(int order) const {
    Series s = *this;
    if (order > this->order()) s.c_.resize(static_cast<std::size_t>(order) + 1, T(0));
    return s;
  }

  /// Index of the first nonzero coefficient, or -1.
  int valuation() const {
    for (int i = 0; i <= order(); ++i)
      if (!parabolic::is_zero(c_[static_cast<std::size_t>(i)])) return i;
    return -1;
  }
  bool is_zero() const { return valuation() < 0; }

  /// Largest index with a nonzero coefficient, or -1.
  int degree() const {
    for (int i = order(); i >= 0; --i)
      if (!parabolic::is_zero(c_[static_cast<std::size_t>(i)])) return i;
    return -1;
  }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const T& s);

  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }

 private:
  std::vector<T> c_;
};

template <Scalar T>
Series<T>& Series<T>::operator+=(const Series& o) {
  if (o.order() < order()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

template <Scalar T>
Series<T>& Series<T>::operator-=(const Series& o) {
  if (o.order() < order()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

template <Scalar T>
Series<T>& Series<T>::operator*=(const T& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

template <Scalar T>
Series<T> operator+(Series<T> a, const Series<T>& b) { return a += b; }
template <Scalar T>
Series<T> operator-(Series<T> a, const Series<T>& b) { return a -= b; }
template <Scalar T>
Series<T> operator-(Series<T> a) {
  for (auto& v : a.coeffs()) v = -v;
  return a;
}
template <Scalar T>
Series<T> operator*(const T& s, Series<T> a) { return a *= s; }

/// Cauchy product truncated to the smaller order.
template <Scalar T>
Series<T> mul(const Series<T>& f, const Series<T>& g);

/// Cauchy product truncated at an explicit order (at most the smaller order).
template <Scalar T>
Series<T> mul_truncated(const Series<T>& f, const Series<T>& g, int order);

/// f(g(t)); g must have zero constant term.
template <Scalar T>
Series<T> compose(const Series<T>& f, const Series<T>& g);

/// Compositional inverse of g (g_0 = 0, g_1 != 0).
template <Scalar T>
Series<T> revert(const Series<T>& g);

/// 1/f for f_0 != 0.
template <Scalar T>
Series<T> reciprocal(const Series<T>& f);

/// f'(t), one order lower.
template <Scalar T>
Series<T> derivative(const Series<T>& f);

/// Memoized powers g^0, g^1, ... of a fixed series, computed on demand.
template <Scalar T>
class PowerTable {
 public:
  explicit PowerTable(Series<T> base) : base_(std::move(base)) {
    pow_.push_back(Series<T>::monomial(base_.order(), 0, T(1)));
  }
  const Series<T>& base() const noexcept { return base_; }
  const Series<T>& operator()(int k) {
    while (static_cast<int>(pow_.size()) <= k) pow_.push_back(mul(pow_.back(), base_));
    return pow_[static_cast<std::size_t>(k)];
  }

 private:
  Series<T> base_;
  std::vector<Series<T>> pow_;
};

/// A series with values in R^dim, stored component-wise with a common order.
template <Scalar T>
class VectorSeries {
 public:
  VectorSeries() = default;
  VectorSeries(int dim, int order) : comps_(static_cast<std::size_t>(dim), Series<T>(order)) {
    if (dim <= 0) throw Error(ErrorCode::DimMismatch, "vector series needs a positive dimension");
  }
  explicit VectorSeries(std::vector<Series<T>> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw Error(ErrorCode::DimMismatch, "vector series needs a positive dimension");
    int n = comps_.front().order();
    for (const auto& c : comps_) n = std::min(n, c.order());
    for (auto& c : comps_) c = c.truncated(n);
  }

  int dim() const noexcept { return static_cast<int>(comps_.size()); }
  int order() const noexcept { return comps_.empty() ? -1 : comps_.front().order(); }

  Series<T>& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
  const Series<T>& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
  const std::vector<Series<T>>& components() const noexcept { return comps_; }

  const T& coeff(int l, int i) const { return comps_[static_cast<std::size_t>(i)][l]; }
  void set(int l, int i, const T& v) { comps_[static_cast<std::size_t>(i)][l] = v; }

  /// The vector K_l.
  std::vector<T> coefficient(int l) const {
    std::vector<T> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c[l]);
    return out;
  }

  /// max_i |K_l[i]|.
  double norm_inf(int l) const {
    double m = 0.0;
    for (const auto& c : comps_) m = std::max(m, abs_double(c[l]));
    return m;
  }

  VectorSeries truncated(int order) const {
    VectorSeries out = *this;
    for (auto& c : out.comps_) c = c.truncated(order);
    return out;
  }

  /// Components [first, first+count).
  VectorSeries slice(int first, int count) const {
    return VectorSeries(std::vector<Series<T>>(comps_.begin() + first, comps_.begin() + first + count));
  }

  friend bool operator==(const VectorSeries& a, const VectorSeries& b) { return a.comps_ == b.comps_; }

 private:
  std::vector<Series<T>> comps_;
};

template <Scalar T>
VectorSeries<T> operator+(const VectorSeries<T>& a, const VectorSeries<T>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "vector series sum");
  std::vector<Series<T>> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(a[i] + b[i]);
  return VectorSeries<T>(std::move(c));
}

template <Scalar T>
VectorSeries<T> operator-(const VectorSeries<T>& a, const VectorSeries<T>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "vector series difference");
  std::vector<Series<T>> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(a[i] - b[i]);
  return VectorSeries<T>(std::move(c));
}

/// Component-wise f_i(g(t)).
template <Scalar T>
VectorSeries<T> compose(const VectorSeries<T>& f, const Series<T>& g) {
  std::vector<Series<T>> c;
  for (int i = 0; i < f.dim(); ++i) c.push_back(compose(f[i], g));
  return VectorSeries<T>(std::move(c));
}

template <Scalar T>
VectorSeries<T> convert_series(const VectorSeries<Rational>& s) {
  std::vector<Series<T>> comps;
  for (int i = 0; i < s.dim(); ++i) {
    std::vector<T> c;
    for (const auto& v : s[i].coeffs()) c.push_back(convert<T>(v));
    comps.emplace_back(std::move(c));
  }
  return VectorSeries<T>(std::move(comps));
}

/// Kind-erased scalar series; binary operations reject mixed kinds.
class AnySeries {
 public:
  AnySeries(Series<Rational> s) : v_(std::move(s)) {}
  AnySeries(Series<double> s) : v_(std::move(s)) {}

  Kind kind() const noexcept { return v_.index() == 0 ? Kind::rational : Kind::floating; }
  int order() const {
    return std::visit([](const auto& s) { return s.order(); }, v_);
  }
  template <Scalar T>
  const Series<T>& get() const {
    if (!std::holds_alternative<Series<T>>(v_))
      throw Error(ErrorCode::KindMismatch, "series holds " + std::string(kind_name(kind())) + " coefficients");
    return std::get<Series<T>>(v_);
  }
  const std::variant<Series<Rational>, Series<double>>& variant() const noexcept { return v_; }

 private:
  std::variant<Series<Rational>, Series<double>> v_;
};

AnySeries mul(const AnySeries& f, const AnySeries& g);
AnySeries compose(const AnySeries& f, const AnySeries& g);
AnySeries revert(const AnySeries& g);

extern template class Series<Rational>;
extern template class Series<double>;
extern template Series<Rational> mul(const Series<Rational>&, const Series<Rational>&);
extern template Series<double> mul(const Series<double>&, const Series<double>&);
template <>
Series<Rational> mul_truncated(const Series<Rational>&, const Series<Rational>&, int);
template <>
Series<double> mul_truncated(const Series<double>&, const Series<double>&, int);
extern template Series<Rational> compose(const Series<Rational>&, const Series<Rational>&);
extern template Series<double> compose(const Series<double>&, const Series<double>&);
extern template Series<Rational> revert(const Series<Rational>&);
extern template Series<double> revert(const Series<double>&);
extern template Series<Rational> reciprocal(const Series<Rational>&);
extern template Series<double> reciprocal(const Series<double>&);
extern template Series<Rational> derivative(const Series<Rational>&);
extern template Series<double> derivative(const Series<double>&);

}  // namespace parabolic
