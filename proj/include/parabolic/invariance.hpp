#pragma once

// Formal solutions (K, R) of F o K = K o R, graph solutions of autonomous
// fields, and conversion between parameterizations and graphs.

#include <vector>

#include "parabolic/normal_form.hpp"

namespace parabolic {

/// R(t) = t - a t^N + b t^{2N-1}.
template <Scalar T>
struct Reparam {
  int N = 2;
  T a = T(1);
  T b = T(0);

  Series<T> series(int order) const {
    Series<T> s = Series<T>::identity(order);
    if (N <= order) s[N] -= a;
    if (2 * N - 1 <= order) s[2 * N - 1] += b;
    return s;
  }
};

/// Degrees through which each residual block vanishes when K is cut at order n.
struct CertificateRow {
  int n = 0;
  int x_through = 0;
  int y_through = 0;
  int z_through = 0;
  bool ok = false;
};

/// Residual terms read off at step l: E^x_{l+N-1}, E^y_{l+L-1}, E^z_l.
template <Scalar T>
struct ExtractedTerms {
  int l = 0;
  T ex = T(0);
  std::vector<T> ey;
  std::vector<T> ez;
};

template <Scalar T>
struct FormalSolution {
  VectorSeries<T> K;
  Reparam<T> R;
  T c = T(0);
  MapForm<T> form;
  int requested_order = 0;
  /// Coefficients K_0..K_certified are computed; higher orders would depend
  /// on unknown terms of F.
  int certified_order = 0;
  std::vector<CertificateRow> certificate;
  /// Filled when SolveOptions::record_terms is set.
  std::vector<ExtractedTerms<T>> terms;
};

struct SolveOptions {
  /// Record the residual vanishing orders seen at every step.
  bool record_certificate = true;
  /// Keep the extracted residual terms of every step.
  bool record_terms = false;
  /// Relative tolerance for "vanishes" in float mode.
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
};

template <Scalar T>
FormalSolution<T> solve_map_invariance(const MapForm<T>& form, const PolyMap<T>& F, int order, const T& c = T(0),
                                       const SolveOptions& opts = {});

/// F o K - K o R through the given output order (K is padded with zeros).
template <Scalar T>
VectorSeries<T> residual(const PolyMap<T>& F, const VectorSeries<T>& K, const Reparam<T>& R, int order);

/// Residual vanishing orders of K cut at n, for every n in [1, sol.certified_order].
template <Scalar T>
std::vector<CertificateRow> certify(const PolyMap<T>& F, const FormalSolution<T>& sol, const SolveOptions& opts = {});

/// Graph jet phi (components y then z) of an invariant curve of the
/// autonomous field X: X^{y,z}(x, phi) = phi' X^x(x, phi).
template <Scalar T>
VectorSeries<T> solve_flow_graph(const PolyMap<T>& X, int order, const ExtractOptions& opts = {});

/// Per-order graph residual of the field equation, through the order of phi.
template <Scalar T>
VectorSeries<T> flow_graph_residual(const PolyMap<T>& X, const VectorSeries<T>& phi);

/// K^{y,z} o (K^x)^{-1}.
template <Scalar T>
VectorSeries<T> parameterization_to_graph(const VectorSeries<T>& K);

#define PARABOLIC_INV_EXTERN(T)                                                                                  \
  extern template FormalSolution<T> solve_map_invariance(const MapForm<T>&, const PolyMap<T>&, int, const T&,    \
                                                         const SolveOptions&);                                   \
  extern template VectorSeries<T> residual(const PolyMap<T>&, const VectorSeries<T>&, const Reparam<T>&, int);   \
  extern template std::vector<CertificateRow> certify(const PolyMap<T>&, const FormalSolution<T>&,               \
                                                      const SolveOptions&);                                      \
  extern template VectorSeries<T> solve_flow_graph(const PolyMap<T>&, int, const ExtractOptions&);               \
  extern template VectorSeries<T> flow_graph_residual(const PolyMap<T>&, const VectorSeries<T>&);                \
  extern template VectorSeries<T> parameterization_to_graph(const VectorSeries<T>&);
PARABOLIC_INV_EXTERN(Rational)
PARABOLIC_INV_EXTERN(double)
#undef PARABOLIC_INV_EXTERN

}  // namespace parabolic
