#include "parabolic/invariance.hpp"

#include <cmath>
#include <optional>

namespace parabolic {

namespace {

template <Scalar T>
bool vanishes(const T& fk, const T& kr, const SolveOptions& opts) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)opts;
    return fk == kr;
  } else {
    return std::fabs(fk - kr) <= opts.rel_tol * (std::fabs(fk) + std::fabs(kr)) + opts.abs_tol;
  }
}

// Highest q such that components [first, first+count) of FK - KR vanish
// through order q; `cap` when they vanish through the computed order.
template <Scalar T>
int vanishing_through(const std::vector<Series<T>>& FK, const std::vector<Series<T>>& KR, int first, int count, int cap,
                      const SolveOptions& opts) {
  int through = cap;
  for (int i = first; i < first + count; ++i)
    for (int k = 0; k <= cap; ++k)
      if (!vanishes(FK[static_cast<std::size_t>(i)][k], KR[static_cast<std::size_t>(i)][k], opts)) {
        through = std::min(through, k - 1);
        break;
      }
  return through;
}

template <Scalar T>
CertificateRow make_row(int n, const MapForm<T>& form, const std::vector<Series<T>>& FK, const std::vector<Series<T>>& KR,
                        int cap, const SolveOptions& opts) {
  CertificateRow row;
  row.n = n;
  row.x_through = vanishing_through(FK, KR, 0, 1, cap, opts);
  row.y_through = vanishing_through(FK, KR, 1, form.d, cap, opts);
  row.z_through = vanishing_through(FK, KR, 1 + form.d, form.d_prime, cap, opts);
  row.ok = row.x_through >= n + form.N - 1 && row.y_through >= n + form.L() - 1 && row.z_through >= n;
  return row;
}

template <Scalar T>
std::vector<T> column(const std::vector<Series<T>>& E, int first, int count, int order) {
  std::vector<T> v;
  for (int i = first; i < first + count; ++i) v.push_back(E[static_cast<std::size_t>(i)][order]);
  return v;
}

template <Scalar T>
std::vector<T> neg(std::vector<T> v) {
  for (auto& x : v) x = -x;
  return v;
}

template <Scalar T>
std::vector<T> add(std::vector<T> a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <Scalar T>
std::vector<T> solve_at(const Matrix<T>& A, const std::vector<T>& rhs, int l, const char* what) {
  if (A.rows() == 0) return {};
  try {
    return solve(A, rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInvertible) throw;
    throw SolvabilityError(l, std::string(what) + " is singular");
  }
}

// Coefficient of x^{l+L-1} in the y block after solving the z block: the
// case split of the y equation.
template <Scalar T>
std::vector<T> solve_y(const MapForm<T>& form, const std::vector<T>& ey, const std::vector<T>& kz, int l) {
  const int d = form.d;
  if (d == 0) return {};
  const int N = form.N, M = form.M;
  if (M > N) {
    const T s = T(-1) / T(form.a * T(l));
    std::vector<T> out = ey;
    for (auto& x : out) x *= s;
    return out;
  }
  auto rhs = neg(add(ey, form.B2 * kz));
  if (M < N) return solve_at(form.B1, rhs, l, "B1");
  return solve_at(form.B1 + T(form.a * T(l)) * Matrix<T>::identity(d), rhs, l, "B1 + l a Id");
}

template <Scalar T>
void add_scaled_series(Series<T>& acc, const T& c, const Series<T>& s) {
  if (is_zero(c)) return;
  const int n = std::min(acc.order(), s.order());
  for (int i = 0; i <= n; ++i)
    if (!is_zero(s[i])) acc[i] += c * s[i];
}

}  // namespace

template <Scalar T>
VectorSeries<T> residual(const PolyMap<T>& F, const VectorSeries<T>& K, const Reparam<T>& R, int order) {
  std::vector<Series<T>> padded;
  for (int i = 0; i < K.dim(); ++i) padded.push_back(K[i].truncated(order).padded(order));
  const VectorSeries<T> Kp(std::move(padded));
  const auto FK = substitute_map(F, Kp);
  const Series<T> r = R.series(order);
  std::vector<Series<T>> out;
  for (int i = 0; i < Kp.dim(); ++i) out.push_back(FK[i] - compose(Kp[i], r));
  return VectorSeries<T>(std::move(out));
}

template <Scalar T>
FormalSolution<T> solve_map_invariance(const MapForm<T>& form, const PolyMap<T>& F, int order, const T& c,
                                       const SolveOptions& opts) {
  if (order < 1) throw Error(ErrorCode::BadParams, "order must be at least 1");
  if (is_zero(form.a)) throw Error(ErrorCode::DegenerateX, "a = 0");
  const int n = form.dim();
  if (F.dim_in() != n || F.dim_out() != n) throw Error(ErrorCode::DimMismatch, "map dimension differs from its form");
  const int d = form.d, dp = form.d_prime, N = form.N, L = form.L();
  const Matrix<T> CmI = form.C - Matrix<T>::identity(dp);
  if (dp > 0 && !invertible(CmI)) throw Error(ErrorCode::ResonantC, "det(C - Id) = 0");

  FormalSolution<T> sol;
  sol.form = form;
  sol.c = c;
  sol.requested_order = order;
  sol.certified_order = F.exact() ? order : std::min(order, F.degree() - N + 1);
  if (sol.certified_order < 1)
    throw Error(ErrorCode::BadParams, "map truncation degree " + std::to_string(F.degree()) + " is below N");
  const int ncert = sol.certified_order;
  const int Q = ncert + N - 1;
  sol.R = Reparam<T>{N, form.a, T(0)};

  VectorSeries<T> K(n, Q);
  K.set(1, 0, T(1));
  auto table = std::make_unique<PowerTable<T>>(sol.R.series(Q));
  std::vector<Series<T>> KR(static_cast<std::size_t>(n), Series<T>(Q));
  auto accumulate = [&](int l) {
    const Series<T>& p = (*table)(l);
    for (int i = 0; i < n; ++i) add_scaled_series(KR[static_cast<std::size_t>(i)], K.coeff(l, i), p);
  };
  accumulate(1);

  for (int l = 2; l <= ncert; ++l) {
    const int q = l + N - 1;
    const auto FKv = substitute_map(F, K, q);
    const auto& FK = FKv.components();
    std::vector<Series<T>> E;
    for (int i = 0; i < n; ++i) E.push_back(FK[static_cast<std::size_t>(i)] - KR[static_cast<std::size_t>(i)].truncated(q));
    if (opts.record_certificate) {
      std::vector<Series<T>> KRq;
      for (int i = 0; i < n; ++i) KRq.push_back(KR[static_cast<std::size_t>(i)].truncated(q));
      sol.certificate.push_back(make_row(l - 1, form, FK, KRq, q, opts));
    }

    if (opts.record_terms)
      sol.terms.push_back({l, E[0][l + N - 1], column(E, 1, d, l + L - 1), column(E, 1 + d, dp, l)});
    const auto kz = solve_at(CmI, neg(column(E, 1 + d, dp, l)), l, "C - Id");
    const auto ky = solve_y(form, column(E, 1, d, l + L - 1), kz, l);
    const T ex = E[0][l + N - 1] + dot(form.v, ky) + dot(form.w, kz);
    T kx;
    if (l == N) {
      kx = c;
      sol.R.b = ex;
    } else {
      kx = -ex / T(form.a * T(l - N));
    }
    K.set(l, 0, kx);
    for (int i = 0; i < d; ++i) K.set(l, 1 + i, ky[static_cast<std::size_t>(i)]);
    for (int j = 0; j < dp; ++j) K.set(l, 1 + d + j, kz[static_cast<std::size_t>(j)]);

    if (l == N) {
      // b enters R from here on; rebuild K o R with the full reparameterization.
      table = std::make_unique<PowerTable<T>>(sol.R.series(Q));
      for (auto& s : KR) s = Series<T>(Q);
      for (int k = 1; k <= l; ++k) accumulate(k);
    } else {
      accumulate(l);
    }
  }

  sol.K = K.truncated(ncert);
  if (opts.record_certificate) {
    const int q = ncert + N - 1;
    const auto FK = substitute_map(F, K, q);
    std::vector<Series<T>> KRq;
    for (int i = 0; i < n; ++i) KRq.push_back(KR[static_cast<std::size_t>(i)].truncated(q));
    sol.certificate.push_back(make_row(ncert, form, FK.components(), KRq, q, opts));
  }
  return sol;
}

template <Scalar T>
std::vector<CertificateRow> certify(const PolyMap<T>& F, const FormalSolution<T>& sol, const SolveOptions& opts) {
  std::vector<CertificateRow> rows;
  const int N = sol.form.N;
  for (int n = 1; n <= sol.certified_order; ++n) {
    const int q = n + N;
    std::vector<Series<T>> k;
    for (int i = 0; i < sol.K.dim(); ++i) k.push_back(sol.K[i].truncated(n).padded(q));
    const VectorSeries<T> Kn(std::move(k));
    const auto FK = substitute_map(F, Kn);
    const Series<T> r = sol.R.series(q);
    std::vector<Series<T>> KR;
    for (int i = 0; i < Kn.dim(); ++i) KR.push_back(compose(Kn[i], r));
    rows.push_back(make_row(n, sol.form, FK.components(), KR, q, opts));
  }
  return rows;
}

template <Scalar T>
VectorSeries<T> flow_graph_residual(const PolyMap<T>& X, const VectorSeries<T>& phi) {
  const int n = X.dim_in();
  if (phi.dim() != n - 1) throw Error(ErrorCode::DimMismatch, "graph dimension differs from dim_in - 1");
  const int p = phi.order();
  std::vector<Series<T>> k{Series<T>::identity(p)};
  for (int i = 0; i < n - 1; ++i) k.push_back(phi[i]);
  const auto S = substitute_map(X, VectorSeries<T>(std::move(k)));
  std::vector<Series<T>> out;
  for (int i = 0; i < n - 1; ++i) out.push_back(S[i + 1] - mul_truncated(derivative(phi[i]).padded(p), S[0], p));
  return VectorSeries<T>(std::move(out));
}

template <Scalar T>
VectorSeries<T> solve_flow_graph(const PolyMap<T>& X, int order, const ExtractOptions& opts) {
  const int n = X.dim_in();
  if (X.dim_out() != n) throw Error(ErrorCode::DimMismatch, "vector field is not square");
  if (order < 1) throw Error(ErrorCode::BadParams, "order must be at least 1");
  PolyMap<T> F1 = PolyMap<T>::identity(n, X.degree()) + X;
  F1.set_split(X.d(), X.d_prime());
  F1.set_exact(X.exact());
  ExtractOptions eo = opts;
  if (!eo.order_budget) eo.order_budget = order;
  const auto form = extract_form(F1, eo);
  const int d = form.d, dp = form.d_prime, L = form.L();
  const Matrix<T> D = form.C - Matrix<T>::identity(dp);
  const int ncert = X.exact() ? order : std::min(order, X.degree() - L + 1);
  if (ncert < 1) throw Error(ErrorCode::BadParams, "field truncation degree is too low");

  const int Q = ncert + L - 1;
  VectorSeries<T> phi(n - 1, Q);
  for (int l = 2; l <= ncert; ++l) {
    const int q = l + L - 1;
    std::vector<Series<T>> k{Series<T>::identity(q)};
    for (int i = 0; i < n - 1; ++i) k.push_back(phi[i].truncated(q));
    const auto S = substitute_map(X, VectorSeries<T>(std::move(k)));
    std::vector<Series<T>> E;
    for (int i = 0; i < n - 1; ++i)
      E.push_back(S[i + 1] - mul_truncated(derivative(phi[i].truncated(q)).padded(q), S[0], q));
    const auto pz = solve_at(D, neg(column(E, d, dp, l)), l, "the z block of the field");
    const auto py = solve_y(form, column(E, 0, d, q), pz, l);
    for (int i = 0; i < d; ++i) phi.set(l, i, py[static_cast<std::size_t>(i)]);
    for (int j = 0; j < dp; ++j) phi.set(l, d + j, pz[static_cast<std::size_t>(j)]);
  }
  return phi.truncated(ncert);
}

template <Scalar T>
VectorSeries<T> parameterization_to_graph(const VectorSeries<T>& K) {
  if (K.dim() < 1 || K.order() < 1) throw Error(ErrorCode::BadHead, "parameterization has no linear term");
  if (!is_zero(K.coeff(0, 0)) || !(K.coeff(1, 0) == T(1))) throw Error(ErrorCode::BadHead, "K^x != t + O(t^2)");
  const Series<T> r = revert(K[0]);
  std::vector<Series<T>> out;
  for (int i = 1; i < K.dim(); ++i) out.push_back(compose(K[i], r));
  return VectorSeries<T>(std::move(out));
}

#define PARABOLIC_INV_INST(T)                                                                                      \
  template FormalSolution<T> solve_map_invariance(const MapForm<T>&, const PolyMap<T>&, int, const T&,             \
                                                  const SolveOptions&);                                            \
  template VectorSeries<T> residual(const PolyMap<T>&, const VectorSeries<T>&, const Reparam<T>&, int);            \
  template std::vector<CertificateRow> certify(const PolyMap<T>&, const FormalSolution<T>&, const SolveOptions&);  \
  template VectorSeries<T> solve_flow_graph(const PolyMap<T>&, int, const ExtractOptions&);                        \
  template VectorSeries<T> flow_graph_residual(const PolyMap<T>&, const VectorSeries<T>&);                         \
  template VectorSeries<T> parameterization_to_graph(const VectorSeries<T>&);
PARABOLIC_INV_INST(Rational)
PARABOLIC_INV_INST(double)

}  // namespace parabolic
