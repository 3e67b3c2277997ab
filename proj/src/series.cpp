#include "parabolic/series.hpp"

namespace parabolic {

namespace {

std::vector<int> nonzero_indices(const std::vector<Rational>& c, int limit) {
  std::vector<int> nz;
  for (int i = 0; i <= limit && i < static_cast<int>(c.size()); ++i)
    if (sgn(c[static_cast<std::size_t>(i)]) != 0) nz.push_back(i);
  return nz;
}

}  // namespace

template <>
Series<Rational> mul_truncated(const Series<Rational>& f, const Series<Rational>& g, int order) {
  order = std::min({order, f.order(), g.order()});
  Series<Rational> out(order);
  auto nf = nonzero_indices(f.coeffs(), order);
  auto ng = nonzero_indices(g.coeffs(), order);
  Rational tmp;
  for (int i : nf) {
    const Rational& fi = f[i];
    for (int j : ng) {
      if (i + j > order) break;
      mpq_mul(tmp.get_mpq_t(), fi.get_mpq_t(), g[j].get_mpq_t());
      mpq_add(out[i + j].get_mpq_t(), out[i + j].get_mpq_t(), tmp.get_mpq_t());
    }
  }
  return out;
}

template <>
Series<double> mul_truncated(const Series<double>& f, const Series<double>& g, int order) {
  order = std::min({order, f.order(), g.order()});
  Series<double> out(order);
  for (int l = 0; l <= order; ++l)
    out[l] = simd::dot_reversed(f.data(), g.data(), static_cast<std::size_t>(l) + 1);
  return out;
}

template <Scalar T>
Series<T> mul(const Series<T>& f, const Series<T>& g) {
  return mul_truncated(f, g, std::min(f.order(), g.order()));
}

template <Scalar T>
Series<T> compose(const Series<T>& f, const Series<T>& g) {
  if (!is_zero(g[0])) throw Error(ErrorCode::CompositionBase, "inner series has a nonzero constant term");
  const int n = std::min(f.order(), g.order());
  // Horner: the bracket at depth k is later multiplied by g^k, so it is
  // only needed through order n-k.
  Series<T> acc = Series<T>::monomial(0, 0, f[n]);
  for (int k = n - 1; k >= 0; --k) {
    acc = mul_truncated(acc.padded(n - k), g, n - k);
    acc[0] += f[k];
  }
  return acc.padded(n);
}

template <Scalar T>
Series<T> reciprocal(const Series<T>& f) {
  if (is_zero(f[0])) throw Error(ErrorCode::NotInvertible, "series with zero constant term has no reciprocal");
  const int n = f.order();
  Series<T> r(n);
  const T inv0 = T(1) / f[0];
  r[0] = inv0;
  for (int l = 1; l <= n; ++l) {
    T s(0);
    for (int i = 1; i <= l; ++i)
      if (!is_zero(f[i])) s += f[i] * r[l - i];
    r[l] = -(s * inv0);
  }
  return r;
}

template <Scalar T>
Series<T> derivative(const Series<T>& f) {
  const int n = f.order();
  if (n == 0) return Series<T>(0);
  Series<T> d(n - 1);
  for (int i = 1; i <= n; ++i) d[i - 1] = f[i] * T(i);
  return d;
}

template <Scalar T>
Series<T> revert(const Series<T>& g) {
  if (!is_zero(g[0])) throw Error(ErrorCode::CompositionBase, "series to revert has a nonzero constant term");
  const int n = g.order();
  if (n < 1 || is_zero(g[1])) throw Error(ErrorCode::NotInvertible, "linear coefficient is zero");
  // Lagrange inversion: h_k = [w^{k-1}] phi(w)^k / k with phi = w / g(w).
  Series<T> quotient(n - 1);
  for (int i = 0; i <= n - 1; ++i) quotient[i] = g[i + 1];
  const Series<T> phi = reciprocal(quotient);
  Series<T> h(n);
  Series<T> power = phi;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) power = mul(power, phi);
    h[k] = power[k - 1] / T(k);
  }
  return h;
}

template class Series<Rational>;
template class Series<double>;
template Series<Rational> mul(const Series<Rational>&, const Series<Rational>&);
template Series<double> mul(const Series<double>&, const Series<double>&);
template Series<Rational> compose(const Series<Rational>&, const Series<Rational>&);
template Series<double> compose(const Series<double>&, const Series<double>&);
template Series<Rational> revert(const Series<Rational>&);
template Series<double> revert(const Series<double>&);
template Series<Rational> reciprocal(const Series<Rational>&);
template Series<double> reciprocal(const Series<double>&);
template Series<Rational> derivative(const Series<Rational>&);
template Series<double> derivative(const Series<double>&);

namespace {

template <class Op>
AnySeries binary(const AnySeries& f, const AnySeries& g, Op op) {
  if (f.kind() != g.kind())
    throw Error(ErrorCode::KindMismatch, std::string(kind_name(f.kind())) + " with " + std::string(kind_name(g.kind())));
  if (f.kind() == Kind::rational) return AnySeries(op(f.get<Rational>(), g.get<Rational>()));
  return AnySeries(op(f.get<double>(), g.get<double>()));
}

}  // namespace

AnySeries mul(const AnySeries& f, const AnySeries& g) {
  return binary(f, g, [](const auto& a, const auto& b) { return mul(a, b); });
}

AnySeries compose(const AnySeries& f, const AnySeries& g) {
  return binary(f, g, [](const auto& a, const auto& b) { return compose(a, b); });
}

AnySeries revert(const AnySeries& g) {
  return std::visit([](const auto& s) { return AnySeries(revert(s)); }, g.variant());
}

}  // namespace parabolic
