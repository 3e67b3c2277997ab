#include "parabolic/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "parabolic/simd/kernels.hpp"

namespace parabolic {

// ---------------------------------------------------------------- Layout

std::shared_ptr<const Layout> Layout::get(int nvars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const Layout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_shared<const Layout>(nvars, degree);
  return slot;
}

Layout::Layout(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1 || degree < 0) throw Error(ErrorCode::DimMismatch, "polynomial layout needs nvars >= 1, degree >= 0");
  const int span = degree + nvars + 2;
  binom_.assign(static_cast<std::size_t>(span) * static_cast<std::size_t>(span), 0);
  for (int n = 0; n < span; ++n) {
    binom_[static_cast<std::size_t>(n * span)] = 1;
    for (int k = 1; k <= n; ++k)
      binom_[static_cast<std::size_t>(n * span + k)] =
          binom_[static_cast<std::size_t>((n - 1) * span + k - 1)] +
          (k <= n - 1 ? binom_[static_cast<std::size_t>((n - 1) * span + k)] : 0);
  }

  const int plen = prefix_len();
  std::vector<int> cur(static_cast<std::size_t>(plen), 0);
  // Enumerate prefixes in lexicographic order.
  auto emit = [&](int sum) {
    row_offset_.push_back(size_);
    row_deg_.push_back(sum);
    prefix_.insert(prefix_.end(), cur.begin(), cur.end());
    size_ += static_cast<std::size_t>(degree - sum + 1);
  };
  if (plen == 0) {
    emit(0);
  } else {
    // Lexicographic order, first coordinate most significant.
    auto gen = [&](auto&& self, int i, int sum) -> void {
      for (int v = 0; v <= degree - sum; ++v) {
        cur[static_cast<std::size_t>(i)] = v;
        if (i == plen - 1)
          emit(sum + v);
        else
          self(self, i + 1, sum + v);
      }
      cur[static_cast<std::size_t>(i)] = 0;
    };
    gen(gen, 0, 0);
  }

  const auto nrows = static_cast<std::size_t>(rows());
  if (nrows * nrows <= (1u << 22)) {
    sum_table_.assign(nrows * nrows, -1);
    std::vector<int> p(static_cast<std::size_t>(plen));
    for (int a = 0; a < rows(); ++a)
      for (int b = 0; b < rows(); ++b) {
        if (row_degree(a) + row_degree(b) > degree_) continue;
        for (int i = 0; i < plen; ++i) p[static_cast<std::size_t>(i)] = row_prefix(a)[i] + row_prefix(b)[i];
        sum_table_[static_cast<std::size_t>(a) * nrows + static_cast<std::size_t>(b)] = row_of(p.data());
      }
  }
}

std::size_t Layout::count(int k, int b) const {
  if (b < 0) return 0;
  const int span = degree_ + nvars_ + 2;
  return binom_[static_cast<std::size_t>((b + k) * span + k)];
}

int Layout::row_of(const int* prefix) const {
  const int plen = prefix_len();
  int s = 0;
  for (int i = 0; i < plen; ++i) {
    if (prefix[i] < 0) return -1;
    s += prefix[i];
  }
  if (s > degree_) return -1;
  std::size_t rank = 0;
  s = 0;
  for (int i = 0; i < plen; ++i) {
    const int k = plen - 1 - i;  // prefix coordinates after position i
    const int budget = degree_ - s;
    const int e = prefix[i];
    // sum_{v<e} count(k, budget - v) = count(k+1, budget) - count(k+1, budget - e)
    rank += count(k + 1, budget) - count(k + 1, budget - e);
    s += e;
  }
  return static_cast<int>(rank);
}

int Layout::row_sum(int r1, int r2) const {
  if (row_degree(r1) + row_degree(r2) > degree_) return -1;
  if (!sum_table_.empty())
    return sum_table_[static_cast<std::size_t>(r1) * static_cast<std::size_t>(rows()) + static_cast<std::size_t>(r2)];
  const int plen = prefix_len();
  std::vector<int> p(static_cast<std::size_t>(plen));
  for (int i = 0; i < plen; ++i) p[static_cast<std::size_t>(i)] = row_prefix(r1)[i] + row_prefix(r2)[i];
  return row_of(p.data());
}

std::size_t Layout::index(const int* exps) const {
  int total = 0;
  for (int i = 0; i < nvars_; ++i) {
    if (exps[i] < 0) return size_;
    total += exps[i];
  }
  if (total > degree_) return size_;
  const int r = row_of(exps);
  return row_offset(r) + static_cast<std::size_t>(exps[nvars_ - 1]);
}

int Layout::row_of_index(std::size_t idx) const {
  auto it = std::upper_bound(row_offset_.begin(), row_offset_.end(), idx);
  return static_cast<int>(it - row_offset_.begin()) - 1;
}

std::vector<int> Layout::exponents(std::size_t idx) const {
  const int r = row_of_index(idx);
  std::vector<int> e(static_cast<std::size_t>(nvars_));
  const int plen = prefix_len();
  for (int i = 0; i < plen; ++i) e[static_cast<std::size_t>(i)] = row_prefix(r)[i];
  e[static_cast<std::size_t>(nvars_ - 1)] = static_cast<int>(idx - row_offset(r));
  return e;
}

int Layout::total_degree(std::size_t idx) const {
  const int r = row_of_index(idx);
  return row_degree(r) + static_cast<int>(idx - row_offset(r));
}

// ---------------------------------------------------------------- kernels

namespace {

inline void run_axpy(const double& alpha, const double* x, double* y, std::size_t n) {
  simd::axpy(alpha, x, y, n);
}

inline void run_axpy(const Rational& alpha, const Rational* x, Rational* y, std::size_t n) {
  Rational tmp;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    mpq_mul(tmp.get_mpq_t(), alpha.get_mpq_t(), x[i].get_mpq_t());
    mpq_add(y[i].get_mpq_t(), y[i].get_mpq_t(), tmp.get_mpq_t());
  }
}

// Index range [first, last] of nonzero entries in each row; first > last if empty.
template <Scalar T>
std::vector<std::pair<int, int>> row_support(const MPoly<T>& p) {
  const Layout& L = p.layout();
  std::vector<std::pair<int, int>> sup(static_cast<std::size_t>(L.rows()), {1, 0});
  for (int r = 0; r < L.rows(); ++r) {
    const T* row = p.coeffs().data() + L.row_offset(r);
    const int len = L.row_length(r);
    int f = 0;
    while (f < len && is_zero(row[f])) ++f;
    if (f == len) continue;
    int l = len - 1;
    while (is_zero(row[l])) --l;
    sup[static_cast<std::size_t>(r)] = {f, l};
  }
  return sup;
}

}  // namespace

// ---------------------------------------------------------------- MPoly

template <Scalar T>
int MPoly<T>::valuation() const {
  int best = -1;
  const Layout& L = *layout_;
  for (int r = 0; r < L.rows(); ++r) {
    const T* row = c_.data() + L.row_offset(r);
    for (int e = 0; e < L.row_length(r); ++e)
      if (!parabolic::is_zero(row[e])) {
        int d = L.row_degree(r) + e;
        if (best < 0 || d < best) best = d;
        break;
      }
  }
  return best;
}

template <Scalar T>
double MPoly<T>::max_abs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, abs_double(v));
  return m;
}

template <Scalar T>
MPoly<T>& MPoly<T>::operator+=(const MPoly& o) {
  if (layout_ != o.layout_) throw Error(ErrorCode::DimMismatch, "polynomial layouts differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

template <Scalar T>
MPoly<T>& MPoly<T>::operator-=(const MPoly& o) {
  if (layout_ != o.layout_) throw Error(ErrorCode::DimMismatch, "polynomial layouts differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

template <Scalar T>
MPoly<T>& MPoly<T>::operator*=(const T& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

template <Scalar T>
void MPoly<T>::axpy(const T& s, const MPoly& o) {
  if (layout_ != o.layout_) throw Error(ErrorCode::DimMismatch, "polynomial layouts differ");
  run_axpy(s, o.c_.data(), c_.data(), c_.size());
}

template <Scalar T>
MPoly<T> MPoly<T>::with_degree(int degree) const {
  MPoly out(nvars(), degree);
  const Layout& L = *layout_;
  const Layout& M = out.layout();
  for (int r = 0; r < L.rows(); ++r) {
    const int nr = M.row_of(L.row_prefix(r));
    if (nr < 0) continue;
    const int len = std::min(L.row_length(r), M.row_length(nr));
    std::copy(c_.begin() + static_cast<std::ptrdiff_t>(L.row_offset(r)),
              c_.begin() + static_cast<std::ptrdiff_t>(L.row_offset(r)) + len,
              out.c_.begin() + static_cast<std::ptrdiff_t>(M.row_offset(nr)));
  }
  return out;
}

template <Scalar T>
void mul_add(const MPoly<T>& a, const MPoly<T>& b, MPoly<T>& out) {
  if (a.layout_ptr() != b.layout_ptr() || a.layout_ptr() != out.layout_ptr())
    throw Error(ErrorCode::DimMismatch, "polynomial layouts differ");
  const Layout& L = a.layout();
  const auto sa = row_support(a);
  const auto sb = row_support(b);
  const T* ca = a.coeffs().data();
  const T* cb = b.coeffs().data();
  T* co = out.coeffs().data();
  for (int r1 = 0; r1 < L.rows(); ++r1) {
    const auto [fa, la] = sa[static_cast<std::size_t>(r1)];
    if (fa > la) continue;
    const T* ra = ca + L.row_offset(r1);
    for (int r2 = 0; r2 < L.rows(); ++r2) {
      const auto [fb, lb] = sb[static_cast<std::size_t>(r2)];
      if (fb > lb) continue;
      const int r = L.row_sum(r1, r2);
      if (r < 0) continue;
      const int out_len = L.row_length(r);
      const T* rb = cb + L.row_offset(r2) + fb;
      T* ro = co + L.row_offset(r);
      for (int e1 = fa; e1 <= la; ++e1) {
        if (is_zero(ra[e1])) continue;
        const int last = std::min(lb, out_len - 1 - e1);
        if (last < fb) break;
        run_axpy(ra[e1], rb, ro + e1 + fb, static_cast<std::size_t>(last - fb + 1));
      }
    }
  }
}

template <Scalar T>
MPoly<T> mul(const MPoly<T>& a, const MPoly<T>& b) {
  MPoly<T> out(a.layout_ptr());
  mul_add(a, b, out);
  return out;
}

template <Scalar T>
MPoly<T> derivative(const MPoly<T>& p, int var) {
  const Layout& L = p.layout();
  MPoly<T> out(p.layout_ptr());
  const int n = L.nvars();
  const T* c = p.coeffs().data();
  T* o = out.coeffs().data();
  std::vector<int> pref(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int r = 0; r < L.rows(); ++r) {
    const T* row = c + L.row_offset(r);
    const int len = L.row_length(r);
    if (var == n - 1) {
      T* orow = o + L.row_offset(r);
      for (int e = 1; e < len; ++e)
        if (!is_zero(row[e])) orow[e - 1] = row[e] * T(e);
    } else {
      const int pe = L.row_prefix(r)[var];
      if (pe == 0) continue;
      std::copy(L.row_prefix(r), L.row_prefix(r) + n - 1, pref.begin());
      --pref[static_cast<std::size_t>(var)];
      const int tr = L.row_of(pref.data());
      T* orow = o + L.row_offset(tr);
      for (int e = 0; e < len; ++e)
        if (!is_zero(row[e])) orow[e] = row[e] * T(pe);
    }
  }
  return out;
}

template <Scalar T>
MPoly<T> shift(const MPoly<T>& p, int var, int k) {
  const Layout& L = p.layout();
  MPoly<T> out(p.layout_ptr());
  const int n = L.nvars();
  const T* c = p.coeffs().data();
  T* o = out.coeffs().data();
  std::vector<int> pref(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int r = 0; r < L.rows(); ++r) {
    const T* row = c + L.row_offset(r);
    const int len = L.row_length(r);
    if (var == n - 1) {
      T* orow = o + L.row_offset(r);
      for (int e = 0; e + k < len; ++e) orow[e + k] = row[e];
    } else {
      std::copy(L.row_prefix(r), L.row_prefix(r) + n - 1, pref.begin());
      pref[static_cast<std::size_t>(var)] += k;
      const int tr = L.row_of(pref.data());
      if (tr < 0) continue;
      T* orow = o + L.row_offset(tr);
      for (int e = 0; e < L.row_length(tr); ++e) orow[e] = row[e];
    }
  }
  return out;
}

template <Scalar T>
MPoly<T> divide_by_power(const MPoly<T>& p, int var, int k) {
  const Layout& L = p.layout();
  MPoly<T> out(p.layout_ptr());
  const int n = L.nvars();
  const T* c = p.coeffs().data();
  T* o = out.coeffs().data();
  std::vector<int> pref(static_cast<std::size_t>(std::max(n - 1, 0)));
  for (int r = 0; r < L.rows(); ++r) {
    const T* row = c + L.row_offset(r);
    const int len = L.row_length(r);
    if (var == n - 1) {
      T* orow = o + L.row_offset(r);
      for (int e = 0; e < len; ++e) {
        if (is_zero(row[e])) continue;
        if (e < k) throw Error(ErrorCode::NotDivisible, "term with exponent below the divisor power");
        orow[e - k] = row[e];
      }
    } else {
      const int pe = L.row_prefix(r)[var];
      if (pe < k) {
        for (int e = 0; e < len; ++e)
          if (!is_zero(row[e])) throw Error(ErrorCode::NotDivisible, "term with exponent below the divisor power");
        continue;
      }
      std::copy(L.row_prefix(r), L.row_prefix(r) + n - 1, pref.begin());
      pref[static_cast<std::size_t>(var)] -= k;
      const int tr = L.row_of(pref.data());
      T* orow = o + L.row_offset(tr);
      for (int e = 0; e < len; ++e) orow[e] = row[e];
    }
  }
  return out;
}

template <Scalar T>
MPoly<T> reciprocal(const MPoly<T>& p) {
  const T c0 = p.coeffs()[0];
  if (is_zero(c0)) throw Error(ErrorCode::NotInvertible, "polynomial with zero constant term has no reciprocal");
  const T inv = T(1) / c0;
  // 1/p = inv * sum_j (-h)^j, h = p*inv - 1 has no constant term.
  MPoly<T> h = p;
  h *= inv;
  h.coeffs()[0] = T(0);
  h *= T(-1);
  MPoly<T> sum = MPoly<T>::constant(p.nvars(), p.degree(), T(1));
  MPoly<T> term = sum;
  for (int j = 1; j <= p.degree(); ++j) {
    term = mul(term, h);
    if (term.is_zero()) break;
    sum += term;
  }
  sum *= inv;
  return sum;
}

template <Scalar T>
MPoly<T> power(const MPoly<T>& p, int k) {
  MPoly<T> result = MPoly<T>::constant(p.nvars(), p.degree(), T(1));
  MPoly<T> base = p;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

template <Scalar T>
double evaluate(const MPoly<T>& p, const std::vector<double>& point) {
  const Layout& L = p.layout();
  const int n = L.nvars();
  double total = 0.0;
  for (int r = 0; r < L.rows(); ++r) {
    double pre = 1.0;
    for (int i = 0; i < n - 1; ++i) pre *= std::pow(point[static_cast<std::size_t>(i)], L.row_prefix(r)[i]);
    const T* row = p.coeffs().data() + L.row_offset(r);
    double acc = 0.0;
    for (int e = L.row_length(r) - 1; e >= 0; --e) acc = acc * point[static_cast<std::size_t>(n - 1)] + to_double(row[e]);
    total += pre * acc;
  }
  return total;
}

template class MPoly<Rational>;
template class MPoly<double>;
template void mul_add(const MPoly<Rational>&, const MPoly<Rational>&, MPoly<Rational>&);
template void mul_add(const MPoly<double>&, const MPoly<double>&, MPoly<double>&);
template MPoly<Rational> mul(const MPoly<Rational>&, const MPoly<Rational>&);
template MPoly<double> mul(const MPoly<double>&, const MPoly<double>&);
template MPoly<Rational> derivative(const MPoly<Rational>&, int);
template MPoly<double> derivative(const MPoly<double>&, int);
template MPoly<Rational> shift(const MPoly<Rational>&, int, int);
template MPoly<double> shift(const MPoly<double>&, int, int);
template MPoly<Rational> divide_by_power(const MPoly<Rational>&, int, int);
template MPoly<double> divide_by_power(const MPoly<double>&, int, int);
template MPoly<Rational> reciprocal(const MPoly<Rational>&);
template MPoly<double> reciprocal(const MPoly<double>&);
template MPoly<Rational> power(const MPoly<Rational>&, int);
template MPoly<double> power(const MPoly<double>&, int);
template double evaluate(const MPoly<Rational>&, const std::vector<double>&);
template double evaluate(const MPoly<double>&, const std::vector<double>&);

}  // namespace parabolic
