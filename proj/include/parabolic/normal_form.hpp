#pragma once

// Structural form of a parabolic map
//
//   x' = x - a x^N + f_N(x,y,z) + ...
//   y' = y + x^{M-1}(B1 y + B2 z) + g_M(x,y,z) + ...
//   z' = C z + h(x,y,z)
//
// and the transformations that bring a map into it or simplify it.

#include <optional>
#include <string>
#include <vector>

#include "parabolic/linalg.hpp"
#include "parabolic/polymap.hpp"
#include "parabolic/series.hpp"

namespace parabolic {

enum class CaseTag { m_less_n, m_equal_n, m_greater_n };

std::string_view case_name(CaseTag c) noexcept;

template <Scalar T>
struct MapForm {
  int d = 0;
  int d_prime = 0;
  int N = 2;
  int M = 2;
  T a = T(0);
  std::vector<T> v;  // d
  std::vector<T> w;  // d'
  Matrix<T> B1;      // d x d
  Matrix<T> B2;      // d x d'
  Matrix<T> C;       // d' x d'
  /// True when no x^k (y,z) coupling was found and M = N, B1 = B2 = 0 were set.
  bool coupling_defaulted = false;
  /// Highest l for which B1 + l a Id was checked when M = N.
  int order_budget = 0;

  int L() const noexcept { return std::min(N, M); }
  CaseTag case_tag() const noexcept {
    return M < N ? CaseTag::m_less_n : (M == N ? CaseTag::m_equal_n : CaseTag::m_greater_n);
  }
  /// Gevrey order 1/(N-1) if N <= M, else 1/(N-M), as numerator/denominator.
  std::pair<int, int> gamma_fraction() const noexcept {
    return N <= M ? std::pair{1, N - 1} : std::pair{1, N - M};
  }
  double gamma() const noexcept {
    auto [p, q] = gamma_fraction();
    return static_cast<double>(p) / q;
  }
  double alpha() const noexcept { return 1.0 / (N - 1); }
  int dim() const noexcept { return 1 + d + d_prime; }
};

template <Scalar T>
bool operator==(const MapForm<T>& a, const MapForm<T>& b) {
  return a.d == b.d && a.d_prime == b.d_prime && a.N == b.N && a.M == b.M && a.a == b.a && a.v == b.v &&
         a.w == b.w && a.B1 == b.B1 && a.B2 == b.B2 && a.C == b.C;
}

struct ExtractOptions {
  std::optional<int> N;
  std::optional<int> M;
  /// Largest l checked for invertibility of B1 + l a Id (M = N); defaults
  /// to the truncation degree of the map.
  std::optional<int> order_budget;
  /// Float mode: coefficients with |c| <= tolerance count as zero in the
  /// structural checks. Ignored for rationals.
  double tolerance = 1e-9;
};

template <Scalar T>
MapForm<T> extract_form(const PolyMap<T>& F, const ExtractOptions& opts = {});

/// Phi^{-1} o F o Phi with Phi(x,y,z) = K_{<=N-1}(x) + (0,y,z).
template <Scalar T>
PolyMap<T> conjugate_reduce(const PolyMap<T>& F, const VectorSeries<T>& K_head);

/// lambda F(X / lambda).
template <Scalar T>
PolyMap<T> rescale_map(const PolyMap<T>& F, const T& lambda);

template <Scalar T>
struct BlowUpResult {
  PolyMap<T> map;
  int m = 0;
  int n = 0;
  int M1 = 0;
  int M2 = 0;
  /// Notes on conventions applied when a coupling block vanished to the
  /// truncation degree.
  std::vector<std::string> conventions;
};

/// Shift by the invariant-curve jet phi (components y then z) and blow up
/// y = u^m v, z = u^n w.
template <Scalar T>
BlowUpResult<T> blow_up(const PolyMap<T>& F, const VectorSeries<T>& phi, int N, int r);

/// G with G^x = F^x and G^{y,z} = F^{y,z} + g, making graph phi_{<=p}
/// exactly invariant.
template <Scalar T>
PolyMap<T> build_agreeing_map(const PolyMap<T>& F, const VectorSeries<T>& phi_hat, int p);

/// phi(F^x(x, phi(x))) - F^{y,z}(x, phi(x)) through the order of phi.
template <Scalar T>
VectorSeries<T> graph_residual(const PolyMap<T>& F, const VectorSeries<T>& phi);

/// The map reassembled from its structural data (linear part, -a x^N and
/// the v, w, B1, B2 blocks) without any other terms.
template <Scalar T>
PolyMap<T> form_skeleton(const MapForm<T>& form, int degree);

template <Scalar T>
MapForm<T> convert_form(const MapForm<Rational>& f) {
  MapForm<T> o;
  o.d = f.d;
  o.d_prime = f.d_prime;
  o.N = f.N;
  o.M = f.M;
  o.a = convert<T>(f.a);
  for (const auto& x : f.v) o.v.push_back(convert<T>(x));
  for (const auto& x : f.w) o.w.push_back(convert<T>(x));
  o.B1 = convert_matrix<T>(f.B1);
  o.B2 = convert_matrix<T>(f.B2);
  o.C = convert_matrix<T>(f.C);
  o.coupling_defaulted = f.coupling_defaulted;
  o.order_budget = f.order_budget;
  return o;
}

#define PARABOLIC_NF_EXTERN(T)                                                                          \
  extern template MapForm<T> extract_form(const PolyMap<T>&, const ExtractOptions&);                    \
  extern template PolyMap<T> conjugate_reduce(const PolyMap<T>&, const VectorSeries<T>&);               \
  extern template PolyMap<T> rescale_map(const PolyMap<T>&, const T&);                                  \
  extern template BlowUpResult<T> blow_up(const PolyMap<T>&, const VectorSeries<T>&, int, int);         \
  extern template PolyMap<T> build_agreeing_map(const PolyMap<T>&, const VectorSeries<T>&, int);        \
  extern template VectorSeries<T> graph_residual(const PolyMap<T>&, const VectorSeries<T>&);            \
  extern template PolyMap<T> form_skeleton(const MapForm<T>&, int);
PARABOLIC_NF_EXTERN(Rational)
PARABOLIC_NF_EXTERN(double)
#undef PARABOLIC_NF_EXTERN

}  // namespace parabolic
