#include "parabolic/normal_form.hpp"

#include <cmath>

namespace parabolic {

std::string_view case_name(CaseTag c) noexcept {
  switch (c) {
    case CaseTag::m_less_n: return "M<N";
    case CaseTag::m_equal_n: return "M=N";
    case CaseTag::m_greater_n: return "M>N";
  }
  return "?";
}

namespace {

template <Scalar T>
bool negligible(const T& c, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return is_zero(c);
  } else {
    return std::fabs(c) <= tol;
  }
}

template <Scalar T>
bool near_one(const T& c, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return c == 1;
  } else {
    return std::fabs(c - 1.0) <= tol;
  }
}

Exponents unit(int n, int i, int power = 1) {
  Exponents e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = power;
  return e;
}

Exponents x_times(int n, int k, int i) {
  Exponents e(static_cast<std::size_t>(n), 0);
  e[0] = k;
  e[static_cast<std::size_t>(i)] += 1;
  return e;
}

// Power of x and index of the single linear (y or z) variable, if the
// monomial has the form x^k * var; otherwise var = -1.
std::pair<int, int> coupling_shape(const Exponents& e) {
  int var = -1;
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (e[i] != 1 || var >= 0) return {e[0], -1};
    var = static_cast<int>(i);
  }
  return {e[0], var};
}

template <Scalar T>
void check_block_linear_part(const PolyMap<T>& F, double tol, Matrix<T>* C_out) {
  const int n = F.dim_in();
  const int d = F.d();
  if (F.dim_out() != n) throw Error(ErrorCode::NotParabolicBlockForm, "map is not square");
  for (int c = 0; c < n; ++c) {
    const T c0 = F.coeff(c, Exponents(static_cast<std::size_t>(n), 0));
    if (!negligible(c0, tol)) throw Error(ErrorCode::NotParabolicBlockForm, "F(0) != 0");
  }
  const auto J = F.linear_part();
  auto bad = [](int i, int j) {
    throw Error(ErrorCode::NotParabolicBlockForm,
                "DF(0) entry (" + std::to_string(i) + "," + std::to_string(j) + ") breaks the block form diag(1, Id, C)");
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const T& v = J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const bool in_z_block = i > d && j > d;
      if (in_z_block) continue;
      if (i == j ? !near_one(v, tol) : !negligible(v, tol)) bad(i, j);
    }
  if (C_out) {
    const int dp = F.d_prime();
    Matrix<T> C(dp, dp);
    for (int i = 0; i < dp; ++i)
      for (int j = 0; j < dp; ++j)
        C(i, j) = J[static_cast<std::size_t>(1 + d + i)][static_cast<std::size_t>(1 + d + j)];
    *C_out = C;
  }
}

}  // namespace

template <Scalar T>
MapForm<T> extract_form(const PolyMap<T>& F, const ExtractOptions& opts) {
  const double tol = opts.tolerance;
  const int n = F.dim_in();
  MapForm<T> form;
  form.d = F.d();
  form.d_prime = F.d_prime();
  const int d = form.d;
  const int dp = form.d_prime;
  check_block_linear_part(F, tol, &form.C);

  // N and a from the pure-x part of F^x.
  const auto& fx = F.terms(0);
  auto pure_x = [&](int k) { return F.coeff(0, unit(n, 0, k)); };
  if (opts.N) {
    form.N = *opts.N;
    if (form.N < 2) throw Error(ErrorCode::NotParabolicBlockForm, "N must be at least 2");
    if (negligible(pure_x(form.N), tol))
      throw Error(ErrorCode::DegenerateX, "coefficient of x^" + std::to_string(form.N) + " in F^x vanishes");
  } else {
    int N = -1;
    for (int k = 2; k <= F.degree(); ++k)
      if (!negligible(pure_x(k), tol)) {
        N = k;
        break;
      }
    if (N < 0) throw Error(ErrorCode::DegenerateX, "F^x - x has no pure x^k term up to degree " + std::to_string(F.degree()));
    form.N = N;
  }
  const int N = form.N;
  form.a = -pure_x(N);
  for (const auto& [e, c] : fx) {
    const int deg = total_degree(e);
    if (deg <= 1 || deg >= N || negligible(c, tol)) continue;
    throw Error(ErrorCode::NotParabolicBlockForm,
                "F^x has the term " + monomial_name(e, d, dp) + " of degree below N=" + std::to_string(N));
  }
  for (int i = 0; i < d; ++i) form.v.push_back(F.coeff(0, x_times(n, N - 1, 1 + i)));
  for (int j = 0; j < dp; ++j) form.w.push_back(F.coeff(0, x_times(n, N - 1, 1 + d + j)));

  // M from the lowest x^k (y, z) coupling in F^y.
  int lowest = -1;
  for (int i = 0; i < d; ++i)
    for (const auto& [e, c] : F.terms(1 + i)) {
      auto [k, var] = coupling_shape(e);
      if (var < 0 || k < 1 || negligible(c, tol)) continue;
      if (lowest < 0 || k < lowest) lowest = k;
    }
  if (d == 0) {
    form.M = opts.M.value_or(N);
    form.coupling_defaulted = !opts.M.has_value();
  } else if (opts.M) {
    form.M = *opts.M;
    if (form.M < 2) throw Error(ErrorCode::NotParabolicBlockForm, "M must be at least 2");
    if (lowest >= 0 && lowest < form.M - 1)
      throw Error(ErrorCode::NotParabolicBlockForm,
                  "F^y has an x^" + std::to_string(lowest) + " coupling below the requested M=" + std::to_string(form.M));
  } else if (lowest < 0) {
    form.M = N;
    form.coupling_defaulted = true;
  } else {
    form.M = lowest + 1;
  }
  const int M = form.M;
  form.B1 = Matrix<T>(d, d);
  form.B2 = Matrix<T>(d, dp);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) form.B1(i, j) = F.coeff(1 + i, x_times(n, M - 1, 1 + j));
    for (int j = 0; j < dp; ++j) form.B2(i, j) = F.coeff(1 + i, x_times(n, M - 1, 1 + d + j));
    for (const auto& [e, c] : F.terms(1 + i)) {
      const int deg = total_degree(e);
      if (deg <= 1 || negligible(c, tol)) continue;
      if (deg < M)
        throw Error(ErrorCode::NotParabolicBlockForm,
                    "F^y has the term " + monomial_name(e, d, dp) + " of degree below M=" + std::to_string(M));
      if (deg == M && e[0] == M)
        throw Error(ErrorCode::NotParabolicBlockForm, "F^y has a pure x^M term");
    }
  }

  // 1 is not an eigenvalue of C.
  if (dp > 0 && !invertible(form.C - Matrix<T>::identity(dp)))
    throw Error(ErrorCode::ResonantC, "det(C - Id) = 0");

  const int budget = opts.order_budget.value_or(F.degree());
  form.order_budget = budget;
  if (d > 0) {
    if (M < N) {
      if (!invertible(form.B1)) throw Error(ErrorCode::SolvabilityObstruction, "B1 is singular (case M<N)");
    } else if (M == N) {
      for (int l = 2; l <= budget; ++l)
        if (!invertible(form.B1 + T(form.a * T(l)) * Matrix<T>::identity(d)))
          throw SolvabilityError(l, "B1 + l a Id is singular (case M=N)");
    }
  }
  return form;
}

template <Scalar T>
PolyMap<T> form_skeleton(const MapForm<T>& form, int degree) {
  const int n = form.dim();
  PolyMap<T> F = PolyMap<T>::identity(n, degree);
  F.set_split(form.d, form.d_prime);
  const int d = form.d;
  F.add_term(0, unit(n, 0, form.N), -form.a);
  for (int i = 0; i < d; ++i) F.add_term(0, x_times(n, form.N - 1, 1 + i), form.v[static_cast<std::size_t>(i)]);
  for (int j = 0; j < form.d_prime; ++j)
    F.add_term(0, x_times(n, form.N - 1, 1 + d + j), form.w[static_cast<std::size_t>(j)]);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) F.add_term(1 + i, x_times(n, form.M - 1, 1 + j), form.B1(i, j));
    for (int j = 0; j < form.d_prime; ++j) F.add_term(1 + i, x_times(n, form.M - 1, 1 + d + j), form.B2(i, j));
  }
  for (int i = 0; i < form.d_prime; ++i) {
    F.set_term(1 + d + i, unit(n, 1 + d + i), T(0));
    for (int j = 0; j < form.d_prime; ++j) F.add_term(1 + d + i, unit(n, 1 + d + j), form.C(i, j));
  }
  F.set_exact(true);
  return F;
}

template <Scalar T>
PolyMap<T> conjugate_reduce(const PolyMap<T>& F, const VectorSeries<T>& K_head) {
  const int n = F.dim_in();
  const int D = F.degree();
  if (K_head.dim() != n) throw Error(ErrorCode::DimMismatch, "head series dimension differs from the map");
  if (K_head.order() < 1) throw Error(ErrorCode::BadHead, "head series has no linear term");
  for (int i = 0; i < n; ++i) {
    const T expect = i == 0 ? T(1) : T(0);
    if (!(K_head.coeff(1, i) == expect)) throw Error(ErrorCode::BadHead, "K_1 != (1,0,...,0)");
    if (!is_zero(K_head.coeff(0, i))) throw Error(ErrorCode::BadHead, "K_0 != 0");
  }
  const auto layout = Layout::get(n, D);
  const MPoly<T> x0 = MPoly<T>::variable(n, D, 0);
  std::vector<Series<T>> head;
  for (int i = 0; i < n; ++i) head.push_back(K_head[i].truncated(D).padded(D));
  std::vector<MPoly<T>> phi;
  for (int i = 0; i < n; ++i) {
    MPoly<T> p = compose_series(head[static_cast<std::size_t>(i)], x0);
    if (i > 0) p += MPoly<T>::variable(n, D, i);
    phi.push_back(std::move(p));
  }
  const auto G = substitute_poly(F, phi);
  const Series<T> r = revert(head[0]);
  std::vector<MPoly<T>> out;
  out.push_back(compose_series(r, G[0]));
  for (int i = 1; i < n; ++i) out.push_back(G[static_cast<std::size_t>(i)] - compose_series(head[static_cast<std::size_t>(i)], out[0]));
  PolyMap<T> Fbar = from_mpolys(out, D);
  Fbar.set_split(F.d(), F.d_prime());
  bool trivial = true;
  for (int i = 0; i < n; ++i)
    for (int l = 2; l <= K_head.order(); ++l) trivial = trivial && is_zero(K_head.coeff(l, i));
  Fbar.set_exact(F.exact() && trivial);
  return Fbar;
}

template <Scalar T>
PolyMap<T> rescale_map(const PolyMap<T>& F, const T& lambda) {
  if (is_zero(lambda)) throw Error(ErrorCode::BadScale, "lambda = 0");
  PolyMap<T> out(F.dim_in(), F.dim_out(), F.degree());
  out.copy_meta(F);
  const T inv = T(1) / lambda;
  std::vector<T> inv_pow{T(1)};
  for (int k = 1; k <= F.degree(); ++k) inv_pow.push_back(inv_pow.back() * inv);
  for (int c = 0; c < F.dim_out(); ++c)
    for (const auto& [e, v] : F.terms(c)) {
      const int k = total_degree(e);
      // lambda^{1-k}
      T factor = k == 0 ? lambda : inv_pow[static_cast<std::size_t>(k - 1)];
      out.add_term(c, e, v * factor);
    }
  return out;
}

template <Scalar T>
VectorSeries<T> graph_residual(const PolyMap<T>& F, const VectorSeries<T>& phi) {
  const int n = F.dim_in();
  if (phi.dim() != n - 1) throw Error(ErrorCode::DimMismatch, "graph dimension differs from dim_in - 1");
  const int p = phi.order();
  std::vector<Series<T>> k{Series<T>::identity(p)};
  for (int i = 0; i < n - 1; ++i) k.push_back(phi[i]);
  const VectorSeries<T> S = substitute_map(F, VectorSeries<T>(std::move(k)));
  std::vector<Series<T>> res;
  for (int i = 0; i < n - 1; ++i) res.push_back(compose(phi[i], S[0]) - S[i + 1]);
  return VectorSeries<T>(std::move(res));
}

template <Scalar T>
PolyMap<T> build_agreeing_map(const PolyMap<T>& F, const VectorSeries<T>& phi_hat, int p) {
  const int n = F.dim_in();
  if (phi_hat.dim() != n - 1) throw Error(ErrorCode::DimMismatch, "graph dimension differs from dim_in - 1");
  if (phi_hat.order() < p)
    throw Error(ErrorCode::NotFormalSolution, "graph jet has order " + std::to_string(phi_hat.order()) + " < p");
  for (int i = 0; i < n - 1; ++i) {
    if (!is_zero(phi_hat.coeff(0, i))) throw Error(ErrorCode::NotFormalSolution, "phi(0) != 0");
    if (phi_hat.order() >= 1 && !is_zero(phi_hat.coeff(1, i))) throw Error(ErrorCode::NotFormalSolution, "phi_1 != 0");
  }
  const auto check = graph_residual(F, phi_hat.truncated(p));
  for (int i = 0; i < n - 1; ++i)
    for (int k = 0; k <= p; ++k) {
      const T& c = check.coeff(k, i);
      bool bad;
      if constexpr (ScalarTraits<T>::exact)
        bad = !is_zero(c);
      else
        bad = std::fabs(c) > 1e-9 * std::max(1.0, phi_hat.norm_inf(k));
      if (bad)
        throw Error(ErrorCode::NotFormalSolution,
                    "graph equation fails at order " + std::to_string(k) + " in component " + std::to_string(i + 1));
    }
  const int D = F.degree();
  std::vector<Series<T>> graph;
  for (int i = 0; i < n - 1; ++i) graph.push_back(phi_hat[i].truncated(p).padded(D));
  const auto g = graph_residual(F, VectorSeries<T>(std::move(graph)));
  PolyMap<T> G = F;
  for (int i = 0; i < n - 1; ++i)
    for (int k = 0; k <= D; ++k)
      if (!is_zero(g.coeff(k, i))) G.add_term(1 + i, unit(n, 0, k), g.coeff(k, i));
  return G;
}

template <Scalar T>
BlowUpResult<T> blow_up(const PolyMap<T>& F, const VectorSeries<T>& phi, int N, int r) {
  const int n = F.dim_in();
  const int d = F.d();
  const int dp = F.d_prime();
  const int D = F.degree();
  if (phi.dim() != n - 1) throw Error(ErrorCode::DimMismatch, "curve jet dimension differs from dim_in - 1");
  if (N < 2 || r < N) throw Error(ErrorCode::BadParams, "blow_up needs N >= 2 and r >= N");
  if (phi.order() < r) throw Error(ErrorCode::NotInvariantJet, "curve jet has order below r");
  check_block_linear_part<T>(F, 1e-12, nullptr);
  const VectorSeries<T> jet = phi.truncated(r);
  for (int i = 0; i < n - 1; ++i)
    if (!is_zero(jet.coeff(0, i))) throw Error(ErrorCode::NotInvariantJet, "phi(0) != 0");

  const auto res = graph_residual(F, jet);
  for (int k = 0; k <= r; ++k)
    for (int i = 0; i < n - 1; ++i) {
      const T& c = res.coeff(k, i);
      bool bad;
      if constexpr (ScalarTraits<T>::exact)
        bad = !is_zero(c);
      else
        bad = std::fabs(c) > 1e-9 * std::max(1.0, jet.norm_inf(k));
      if (bad) throw Error(ErrorCode::NotInvariantJet, "invariance fails at order " + std::to_string(k));
    }

  // N^x(x, phi(x)) = -a x^N + O(x^{N+1}).
  {
    std::vector<Series<T>> k{Series<T>::identity(r)};
    for (int i = 0; i < n - 1; ++i) k.push_back(jet[i]);
    const auto S = substitute_map(F, VectorSeries<T>(std::move(k)));
    for (int j = 2; j < N; ++j)
      if (!is_zero(S[0][j])) throw Error(ErrorCode::DegenerateX, "F^x(x,phi(x)) - x has a term below x^N");
    if (is_zero(S[0][N])) throw Error(ErrorCode::DegenerateX, "coefficient of x^N in F^x(x,phi(x)) vanishes");
  }

  // Shift: Fbar = S^{-1} o F o S with S(x, y, z) = (x, (y, z) + phi(x)).
  const MPoly<T> x0 = MPoly<T>::variable(n, D, 0);
  std::vector<Series<T>> jp;
  for (int i = 0; i < n - 1; ++i) jp.push_back(jet[i].padded(D));
  std::vector<MPoly<T>> inner{x0};
  for (int i = 1; i < n; ++i) inner.push_back(MPoly<T>::variable(n, D, i) + compose_series(jp[static_cast<std::size_t>(i - 1)], x0));
  auto G = substitute_poly(F, inner);
  for (int i = 1; i < n; ++i) G[static_cast<std::size_t>(i)] -= compose_series(jp[static_cast<std::size_t>(i - 1)], G[0]);

  // Leading x-orders of the y-block couplings of the shifted map.
  BlowUpResult<T> result;
  auto lowest_coupling = [&](int first, int count) {
    int best = -1;
    for (int i = 1; i <= d; ++i)
      for (int j = first; j < first + count; ++j)
        for (int k = 0; k + 1 <= D; ++k) {
          T c = G[static_cast<std::size_t>(i)].coeff(x_times(n, k, j));
          if (k == 0 && i == j) c -= T(1);
          if (is_zero(c)) continue;
          if (best < 0 || k < best) best = k;
          break;
        }
    return best;
  };
  const int k1 = lowest_coupling(1, d);
  const int k2 = lowest_coupling(1 + d, dp);
  if (k1 == 0 || k2 == 0) throw Error(ErrorCode::NotParabolicBlockForm, "shifted map has a non-identity y block at x^0");
  int M1, M2;
  if (k1 < 0) {
    M1 = N;
    result.conventions.push_back("d_y F^y(x,0,0) - Id vanishes to the truncation degree; took M1 = N = " +
                                 std::to_string(N));
  } else {
    M1 = k1 + 1;
  }
  const int Mmin = std::min(M1, N);
  if (k2 < 0) {
    M2 = Mmin;
    result.conventions.push_back("d_z F^y(x,0,0) vanishes to the truncation degree; took M2 = M = " +
                                 std::to_string(Mmin));
  } else {
    M2 = k2 + 1;
  }
  const int m = std::max(0, std::max(M1, N) - 2);
  const int nn = m + std::max(0, Mmin - M2);
  result.m = m;
  result.n = nn;
  result.M1 = M1;
  result.M2 = M2;

  // Blow up: (u, v, w) -> (u, u^m v, u^n w).
  std::vector<MPoly<T>> scale_inner{x0};
  for (int i = 1; i < n; ++i) scale_inner.push_back(shift(MPoly<T>::variable(n, D, i), 0, i <= d ? m : nn));
  PolyMap<T> Fbar = from_mpolys(G, D);
  const auto H = substitute_poly(Fbar, scale_inner);
  std::vector<MPoly<T>> out{H[0]};
  MPoly<T> inv;
  if (nn > 0) inv = reciprocal(divide_by_power(H[0], 0, 1));
  for (int i = 1; i < n; ++i) {
    const int p = i <= d ? m : nn;
    MPoly<T> c = divide_by_power(H[static_cast<std::size_t>(i)], 0, p);
    if (p > 0) c = mul(c, power(inv, p));
    out.push_back(std::move(c));
  }
  const int Dout = nn > 0 ? D - nn : D;
  if (Dout < 1) throw Error(ErrorCode::NotDivisible, "blow-up leaves no known terms at this truncation degree");
  result.map = from_mpolys(out, D).truncated(Dout);
  result.map.set_split(d, dp);
  result.map.set_exact(false);
  return result;
}

#define PARABOLIC_NF_INST(T)                                                                   \
  template MapForm<T> extract_form(const PolyMap<T>&, const ExtractOptions&);                  \
  template PolyMap<T> conjugate_reduce(const PolyMap<T>&, const VectorSeries<T>&);             \
  template PolyMap<T> rescale_map(const PolyMap<T>&, const T&);                                \
  template BlowUpResult<T> blow_up(const PolyMap<T>&, const VectorSeries<T>&, int, int);       \
  template PolyMap<T> build_agreeing_map(const PolyMap<T>&, const VectorSeries<T>&, int);      \
  template VectorSeries<T> graph_residual(const PolyMap<T>&, const VectorSeries<T>&);          \
  template PolyMap<T> form_skeleton(const MapForm<T>&, int);
PARABOLIC_NF_INST(Rational)
PARABOLIC_NF_INST(double)

}  // namespace parabolic
