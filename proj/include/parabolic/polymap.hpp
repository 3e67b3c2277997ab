#pragma once

// Sparse truncated polynomial maps R^dim_in -> R^dim_out.

#include <map>
#include <string>
#include <vector>

#include "parabolic/mpoly.hpp"
#include "parabolic/series.hpp"

namespace parabolic {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

template <Scalar T>
class PolyMap {
 public:
  using Terms = std::map<Exponents, T>;

  PolyMap() = default;
  PolyMap(int dim_in, int dim_out, int degree)
      : dim_in_(dim_in), dim_out_(dim_out), degree_(degree), d_(dim_in - 1), comps_(static_cast<std::size_t>(dim_out)) {
    if (dim_in < 1 || dim_out < 1 || degree < 0)
      throw Error(ErrorCode::DimMismatch, "polynomial map needs positive dimensions and degree >= 0");
  }

  /// x -> x at the given truncation degree.
  static PolyMap identity(int dim, int degree) {
    PolyMap m(dim, dim, degree);
    for (int i = 0; i < dim; ++i) {
      Exponents e(static_cast<std::size_t>(dim), 0);
      e[static_cast<std::size_t>(i)] = 1;
      m.add_term(i, e, T(1));
    }
    return m;
  }

  int dim_in() const noexcept { return dim_in_; }
  int dim_out() const noexcept { return dim_out_; }
  /// Truncation degree: terms of higher degree are unknown unless exact().
  int degree() const noexcept { return degree_; }

  /// True when the map is a polynomial known exactly, so that every term
  /// above degree() is zero rather than unknown.
  bool exact() const noexcept { return exact_; }
  void set_exact(bool v) noexcept { exact_ = v; }

  /// Split of the variables into x, y_1..y_d, z_1..z_{d'}; defaults to d' = 0.
  int d() const noexcept { return d_; }
  int d_prime() const noexcept { return dim_in_ - 1 - d_; }
  void set_split(int d, int d_prime) {
    if (d < 0 || d_prime < 0 || 1 + d + d_prime != dim_in_)
      throw Error(ErrorCode::DimMismatch, "split 1+" + std::to_string(d) + "+" + std::to_string(d_prime) +
                                              " does not match dimension " + std::to_string(dim_in_));
    d_ = d;
  }
  /// Copies split and exactness from another map of the same shape.
  void copy_meta(const PolyMap& o) {
    exact_ = o.exact_;
    if (o.dim_in_ == dim_in_) d_ = o.d_;
  }
  template <Scalar U>
  void copy_meta_from(const PolyMap<U>& o) {
    exact_ = o.exact();
    if (o.dim_in() == dim_in_) d_ = o.d();
  }

  const Terms& terms(int comp) const { return comps_.at(static_cast<std::size_t>(comp)); }

  /// Accumulates coeff into the term; drops it if the sum vanishes or its
  /// degree exceeds the truncation.
  void add_term(int comp, const Exponents& e, const T& coeff) {
    if (static_cast<int>(e.size()) != dim_in_) throw Error(ErrorCode::DimMismatch, "exponent length differs from dim_in");
    for (int v : e)
      if (v < 0) throw Error(ErrorCode::DimMismatch, "negative exponent");
    if (total_degree(e) > degree_ || is_zero(coeff)) return;
    auto& terms = comps_.at(static_cast<std::size_t>(comp));
    auto [it, inserted] = terms.emplace(e, coeff);
    if (!inserted) {
      it->second += coeff;
      if (is_zero(it->second)) terms.erase(it);
    }
  }

  void set_term(int comp, const Exponents& e, const T& coeff) {
    auto& terms = comps_.at(static_cast<std::size_t>(comp));
    terms.erase(e);
    add_term(comp, e, coeff);
  }

  T coeff(int comp, const Exponents& e) const {
    const auto& terms = comps_.at(static_cast<std::size_t>(comp));
    auto it = terms.find(e);
    return it == terms.end() ? T(0) : it->second;
  }

  /// Highest degree with a nonzero term, or -1.
  int max_term_degree() const {
    int d = -1;
    for (const auto& c : comps_)
      for (const auto& [e, v] : c) d = std::max(d, total_degree(e));
    return d;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& c : comps_) n += c.size();
    return n;
  }

  /// Copy truncated at a lower degree (never raises it).
  PolyMap truncated(int degree) const {
    PolyMap out(dim_in_, dim_out_, std::min(degree, degree_));
    out.d_ = d_;
    out.exact_ = exact_ && degree >= max_term_degree();
    for (int i = 0; i < dim_out_; ++i)
      for (const auto& [e, v] : comps_[static_cast<std::size_t>(i)]) out.add_term(i, e, v);
    return out;
  }

  /// Copy declared at a higher truncation degree; meaningful for exact maps.
  PolyMap with_degree(int degree) const {
    PolyMap out(dim_in_, dim_out_, degree);
    out.d_ = d_;
    out.exact_ = exact_;
    for (int i = 0; i < dim_out_; ++i)
      for (const auto& [e, v] : comps_[static_cast<std::size_t>(i)]) out.add_term(i, e, v);
    return out;
  }

  /// Rows of the Jacobian at 0 (linear coefficients).
  std::vector<std::vector<T>> linear_part() const {
    std::vector<std::vector<T>> J(static_cast<std::size_t>(dim_out_), std::vector<T>(static_cast<std::size_t>(dim_in_), T(0)));
    for (int i = 0; i < dim_out_; ++i)
      for (int j = 0; j < dim_in_; ++j) {
        Exponents e(static_cast<std::size_t>(dim_in_), 0);
        e[static_cast<std::size_t>(j)] = 1;
        J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = coeff(i, e);
      }
    return J;
  }

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.dim_in_ == b.dim_in_ && a.dim_out_ == b.dim_out_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  int dim_in_ = 0;
  int dim_out_ = 0;
  int degree_ = 0;
  int d_ = 0;
  bool exact_ = false;
  std::vector<Terms> comps_;
};

/// Sum at the smaller truncation degree.
template <Scalar T>
PolyMap<T> operator+(const PolyMap<T>& a, const PolyMap<T>& b);
template <Scalar T>
PolyMap<T> operator-(const PolyMap<T>& a, const PolyMap<T>& b);
template <Scalar T>
PolyMap<T> scale(const PolyMap<T>& a, const T& s);

/// Taylor series of F(K(t)) truncated to order(K).
template <Scalar T>
VectorSeries<T> substitute_map(const PolyMap<T>& F, const VectorSeries<T>& K);

/// As substitute_map, but only through the given order (<= order(K)).
template <Scalar T>
VectorSeries<T> substitute_map(const PolyMap<T>& F, const VectorSeries<T>& K, int order);

/// F(P_0, ..., P_{n-1}) for dense polynomials sharing one layout.
template <Scalar T>
std::vector<MPoly<T>> substitute_poly(const PolyMap<T>& F, const std::vector<MPoly<T>>& inner);

/// s(p) for a series s and a polynomial p without constant term.
template <Scalar T>
MPoly<T> compose_series(const Series<T>& s, const MPoly<T>& p);

/// Dense copy of one component at a given truncation degree.
template <Scalar T>
MPoly<T> to_mpoly(const PolyMap<T>& F, int comp, int degree);

/// Sparse map from dense components.
template <Scalar T>
PolyMap<T> from_mpolys(const std::vector<MPoly<T>>& comps, int degree);

template <Scalar T>
PolyMap<T> convert_map(const PolyMap<Rational>& F) {
  PolyMap<T> out(F.dim_in(), F.dim_out(), F.degree());
  out.copy_meta_from(F);
  for (int i = 0; i < F.dim_out(); ++i)
    for (const auto& [e, v] : F.terms(i)) out.add_term(i, e, convert<T>(v));
  return out;
}

/// Float value of F at a point.
template <Scalar T>
std::vector<double> evaluate(const PolyMap<T>& F, const std::vector<double>& point);

/// Human-readable monomial name such as "x^2*y_1", for messages.
std::string monomial_name(const Exponents& e, int d, int d_prime);

extern template PolyMap<Rational> operator+(const PolyMap<Rational>&, const PolyMap<Rational>&);
extern template PolyMap<double> operator+(const PolyMap<double>&, const PolyMap<double>&);
extern template PolyMap<Rational> operator-(const PolyMap<Rational>&, const PolyMap<Rational>&);
extern template PolyMap<double> operator-(const PolyMap<double>&, const PolyMap<double>&);
extern template PolyMap<Rational> scale(const PolyMap<Rational>&, const Rational&);
extern template PolyMap<double> scale(const PolyMap<double>&, const double&);
extern template VectorSeries<Rational> substitute_map(const PolyMap<Rational>&, const VectorSeries<Rational>&);
extern template VectorSeries<double> substitute_map(const PolyMap<double>&, const VectorSeries<double>&);
extern template VectorSeries<Rational> substitute_map(const PolyMap<Rational>&, const VectorSeries<Rational>&, int);
extern template VectorSeries<double> substitute_map(const PolyMap<double>&, const VectorSeries<double>&, int);
extern template std::vector<MPoly<Rational>> substitute_poly(const PolyMap<Rational>&, const std::vector<MPoly<Rational>>&);
extern template std::vector<MPoly<double>> substitute_poly(const PolyMap<double>&, const std::vector<MPoly<double>>&);
extern template MPoly<Rational> compose_series(const Series<Rational>&, const MPoly<Rational>&);
extern template MPoly<double> compose_series(const Series<double>&, const MPoly<double>&);
extern template MPoly<Rational> to_mpoly(const PolyMap<Rational>&, int, int);
extern template MPoly<double> to_mpoly(const PolyMap<double>&, int, int);
extern template PolyMap<Rational> from_mpolys(const std::vector<MPoly<Rational>>&, int);
extern template PolyMap<double> from_mpolys(const std::vector<MPoly<double>>&, int);
extern template std::vector<double> evaluate(const PolyMap<Rational>&, const std::vector<double>&);
extern template std::vector<double> evaluate(const PolyMap<double>&, const std::vector<double>&);

}  // namespace parabolic
