#include "parabolic/polymap.hpp"

#include <cmath>

namespace parabolic {

template <Scalar T>
PolyMap<T> operator+(const PolyMap<T>& a, const PolyMap<T>& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw Error(ErrorCode::DimMismatch, "sum of maps with different dimensions");
  PolyMap<T> out(a.dim_in(), a.dim_out(), std::min(a.degree(), b.degree()));
  out.copy_meta(a);
  out.set_exact(a.exact() && b.exact());
  for (int i = 0; i < a.dim_out(); ++i) {
    for (const auto& [e, v] : a.terms(i)) out.add_term(i, e, v);
    for (const auto& [e, v] : b.terms(i)) out.add_term(i, e, v);
  }
  return out;
}

template <Scalar T>
PolyMap<T> scale(const PolyMap<T>& a, const T& s) {
  PolyMap<T> out(a.dim_in(), a.dim_out(), a.degree());
  out.copy_meta(a);
  for (int i = 0; i < a.dim_out(); ++i)
    for (const auto& [e, v] : a.terms(i)) out.add_term(i, e, v * s);
  return out;
}

template <Scalar T>
PolyMap<T> operator-(const PolyMap<T>& a, const PolyMap<T>& b) {
  return a + scale(b, T(-1));
}

namespace {

// Products of powers of a fixed family of factors, memoized by exponent.
template <class P, class Mul, class One>
class MonomialCache {
 public:
  MonomialCache(std::vector<P> base, std::vector<int> valuation, int order, Mul mul, One one)
      : base_(std::move(base)), val_(std::move(valuation)), order_(order), mul_(mul), one_(one),
        powers_(base_.size()) {}

  /// nullptr when the monomial vanishes to the working order.
  const P* get(const Exponents& e) {
    long low = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (val_[i] < 0) return nullptr;
      low += static_cast<long>(val_[i]) * e[i];
    }
    if (low > order_) return nullptr;
    return &product(e);
  }

 private:
  const P& power(std::size_t var, int k) {
    auto& pw = powers_[var];
    if (pw.empty()) pw.push_back(one_());
    while (static_cast<int>(pw.size()) <= k) pw.push_back(mul_(pw.back(), base_[var]));
    return pw[static_cast<std::size_t>(k)];
  }

  const P& product(const Exponents& e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    int last = -1, count = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) {
        last = static_cast<int>(i);
        ++count;
      }
    P value;
    if (last < 0) {
      value = one_();
    } else if (count == 1) {
      value = power(static_cast<std::size_t>(last), e[static_cast<std::size_t>(last)]);
    } else {
      Exponents rest = e;
      rest[static_cast<std::size_t>(last)] = 0;
      value = mul_(product(rest), power(static_cast<std::size_t>(last), e[static_cast<std::size_t>(last)]));
    }
    return memo_.emplace(e, std::move(value)).first->second;
  }

  std::vector<P> base_;
  std::vector<int> val_;
  int order_;
  Mul mul_;
  One one_;
  std::vector<std::vector<P>> powers_;
  std::map<Exponents, P> memo_;
};

inline void add_scaled(Series<double>& acc, const double& c, const Series<double>& s) {
  simd::axpy(c, s.data(), acc.data(), static_cast<std::size_t>(std::min(acc.order(), s.order()) + 1));
}

inline void add_scaled(Series<Rational>& acc, const Rational& c, const Series<Rational>& s) {
  Rational tmp;
  const int n = std::min(acc.order(), s.order());
  for (int i = 0; i <= n; ++i) {
    if (sgn(s[i]) == 0) continue;
    mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), s[i].get_mpq_t());
    mpq_add(acc[i].get_mpq_t(), acc[i].get_mpq_t(), tmp.get_mpq_t());
  }
}

}  // namespace

template <Scalar T>
VectorSeries<T> substitute_map(const PolyMap<T>& F, const VectorSeries<T>& K, int order) {
  if (K.dim() != F.dim_in())
    throw Error(ErrorCode::DimMismatch, "series dimension " + std::to_string(K.dim()) + " differs from map input " +
                                            std::to_string(F.dim_in()));
  order = std::min(order, K.order());
  for (int i = 0; i < K.dim(); ++i)
    if (!is_zero(K[i][0])) throw Error(ErrorCode::CompositionBase, "series has a nonzero constant term");
  std::vector<Series<T>> base;
  std::vector<int> val;
  for (int i = 0; i < K.dim(); ++i) {
    base.push_back(K[i].truncated(order));
    val.push_back(base.back().valuation());
  }
  auto mulf = [order](const Series<T>& a, const Series<T>& b) { return mul_truncated(a, b, order); };
  auto one = [order]() { return Series<T>::monomial(order, 0, T(1)); };
  MonomialCache<Series<T>, decltype(mulf), decltype(one)> cache(std::move(base), std::move(val), order, mulf, one);
  std::vector<Series<T>> out;
  for (int c = 0; c < F.dim_out(); ++c) {
    Series<T> acc(order);
    for (const auto& [e, v] : F.terms(c))
      if (const Series<T>* m = cache.get(e)) add_scaled(acc, v, *m);
    out.push_back(std::move(acc));
  }
  return VectorSeries<T>(std::move(out));
}

template <Scalar T>
VectorSeries<T> substitute_map(const PolyMap<T>& F, const VectorSeries<T>& K) {
  return substitute_map(F, K, K.order());
}

template <Scalar T>
std::vector<MPoly<T>> substitute_poly(const PolyMap<T>& F, const std::vector<MPoly<T>>& inner) {
  if (static_cast<int>(inner.size()) != F.dim_in())
    throw Error(ErrorCode::DimMismatch, "inner polynomial count differs from map input dimension");
  const auto layout = inner.front().layout_ptr();
  std::vector<int> val;
  for (const auto& p : inner) {
    if (p.layout_ptr() != layout) throw Error(ErrorCode::DimMismatch, "inner polynomials use different layouts");
    val.push_back(p.valuation());
  }
  auto mulf = [](const MPoly<T>& a, const MPoly<T>& b) { return mul(a, b); };
  auto one = [&layout]() {
    MPoly<T> p(layout);
    p.coeffs()[0] = T(1);
    return p;
  };
  MonomialCache<MPoly<T>, decltype(mulf), decltype(one)> cache(inner, std::move(val), layout->degree(), mulf, one);
  std::vector<MPoly<T>> out;
  for (int c = 0; c < F.dim_out(); ++c) {
    MPoly<T> acc(layout);
    for (const auto& [e, v] : F.terms(c))
      if (const MPoly<T>* m = cache.get(e)) acc.axpy(v, *m);
    out.push_back(std::move(acc));
  }
  return out;
}

template <Scalar T>
MPoly<T> compose_series(const Series<T>& s, const MPoly<T>& p) {
  if (!is_zero(p.coeffs()[0])) throw Error(ErrorCode::CompositionBase, "inner polynomial has a nonzero constant term");
  const int n = std::min(s.order(), p.degree());
  MPoly<T> acc(p.layout_ptr());
  acc.coeffs()[0] = s[n];
  for (int k = n - 1; k >= 0; --k) {
    acc = mul(acc, p);
    acc.coeffs()[0] += s[k];
  }
  return acc;
}

template <Scalar T>
MPoly<T> to_mpoly(const PolyMap<T>& F, int comp, int degree) {
  MPoly<T> p(F.dim_in(), degree);
  for (const auto& [e, v] : F.terms(comp)) p.add_to(e, v);
  return p;
}

template <Scalar T>
PolyMap<T> from_mpolys(const std::vector<MPoly<T>>& comps, int degree) {
  const Layout& L = comps.front().layout();
  PolyMap<T> out(L.nvars(), static_cast<int>(comps.size()), degree);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& co = comps[c].coeffs();
    for (std::size_t i = 0; i < co.size(); ++i)
      if (!is_zero(co[i])) out.add_term(static_cast<int>(c), L.exponents(i), co[i]);
  }
  return out;
}

template <Scalar T>
std::vector<double> evaluate(const PolyMap<T>& F, const std::vector<double>& point) {
  std::vector<double> out(static_cast<std::size_t>(F.dim_out()), 0.0);
  for (int c = 0; c < F.dim_out(); ++c)
    for (const auto& [e, v] : F.terms(c)) {
      double m = to_double(v);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) m *= std::pow(point[i], e[i]);
      out[static_cast<std::size_t>(c)] += m;
    }
  return out;
}

std::string monomial_name(const Exponents& e, int d, int d_prime) {
  std::string s;
  auto var = [&](std::size_t i) -> std::string {
    if (i == 0) return "x";
    if (static_cast<int>(i) <= d) return d == 1 ? "y" : "y_" + std::to_string(i);
    const int j = static_cast<int>(i) - d;
    return d_prime == 1 ? "z" : "z_" + std::to_string(j);
  };
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += var(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

template PolyMap<Rational> operator+(const PolyMap<Rational>&, const PolyMap<Rational>&);
template PolyMap<double> operator+(const PolyMap<double>&, const PolyMap<double>&);
template PolyMap<Rational> operator-(const PolyMap<Rational>&, const PolyMap<Rational>&);
template PolyMap<double> operator-(const PolyMap<double>&, const PolyMap<double>&);
template PolyMap<Rational> scale(const PolyMap<Rational>&, const Rational&);
template PolyMap<double> scale(const PolyMap<double>&, const double&);
template VectorSeries<Rational> substitute_map(const PolyMap<Rational>&, const VectorSeries<Rational>&);
template VectorSeries<double> substitute_map(const PolyMap<double>&, const VectorSeries<double>&);
template VectorSeries<Rational> substitute_map(const PolyMap<Rational>&, const VectorSeries<Rational>&, int);
template VectorSeries<double> substitute_map(const PolyMap<double>&, const VectorSeries<double>&, int);
template std::vector<MPoly<Rational>> substitute_poly(const PolyMap<Rational>&, const std::vector<MPoly<Rational>>&);
template std::vector<MPoly<double>> substitute_poly(const PolyMap<double>&, const std::vector<MPoly<double>>&);
template MPoly<Rational> compose_series(const Series<Rational>&, const MPoly<Rational>&);
template MPoly<double> compose_series(const Series<double>&, const MPoly<double>&);
template MPoly<Rational> to_mpoly(const PolyMap<Rational>&, int, int);
template MPoly<double> to_mpoly(const PolyMap<double>&, int, int);
template PolyMap<Rational> from_mpolys(const std::vector<MPoly<Rational>>&, int);
template PolyMap<double> from_mpolys(const std::vector<MPoly<double>>&, int);
template std::vector<double> evaluate(const PolyMap<Rational>&, const std::vector<double>&);
template std::vector<double> evaluate(const PolyMap<double>&, const std::vector<double>&);

}  // namespace parabolic
