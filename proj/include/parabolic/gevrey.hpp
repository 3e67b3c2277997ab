#pragma once

// Gevrey-order diagnostics: growth fits, the factorial bound lemmas used in
// the Gevrey estimates, least-term summation and sector sampling.

#include <string>
#include <vector>

#include "parabolic/invariance.hpp"

namespace parabolic {

struct GevreyFit {
  double gamma = 0;            // clamped at 0
  double gamma_unclamped = 0;
  double log_c1 = 0;
  double log_c2 = 0;
  double residual_rms = 0;
  int n_min = 0;
  int n_max = 0;
  int points = 0;
};

/// Least squares of log|K_n| = log c1 + n log c2 + gamma log Gamma(n+1) over
/// the last tail_fraction of the orders. log_norms[n] is -inf for zero norms.
GevreyFit gevrey_fit_log(const std::vector<double>& log_norms, double tail_fraction = 0.5);

/// As gevrey_fit_log with plain norms; zeros are skipped.
GevreyFit gevrey_fit(const std::vector<double>& norms, double tail_fraction = 0.5);

/// log of the sup norm of every coefficient vector; -inf where it vanishes.
template <Scalar T>
std::vector<double> log_norms(const VectorSeries<T>& K);

/// Coefficient of t^nu in (t - a t^N + b t^{2N-1})^k.
Rational r_power_coeff(const Rational& a, const Rational& b, int N, int k, int nu);

struct BoundPoint {
  std::string lemma;  // "J1", "M", "J2"
  int k = 0;
  int nu = 0;
  double lhs = 0;
  double rhs = 0;
  /// (rhs - lhs) / max(|rhs|, |lhs|, 1).
  double slack = 0;
  bool pass = false;
  /// The left side is an empty sum and the bound holds by convention.
  bool vacuous = false;
  /// Both sides were compared in exact rational arithmetic.
  bool exact = false;
};

struct BoundReport {
  Rational a, b, beta;
  int N = 2;
  int k_max = 0;
  int nu_max = 0;
  std::vector<BoundPoint> points;
  bool all_pass = true;
  double worst_slack = 0;
  int failures = 0;
};

struct BoundParams {
  Rational a{1};
  Rational b{0};
  int N = 2;
  Rational beta{1};
  int k_max = 12;
  int nu_max = 40;
};

BoundReport check_bound_lemmas(const BoundParams& params);

/// Exhaustive enumeration of the compositions, for small k and nu.
double brute_force_M(int N, double beta, int k, int nu);
double brute_force_J2(int N, double beta, int k, int nu);

struct LeastTerm {
  std::vector<double> value;
  int n_star = 0;
  double err_estimate = 0;
};

/// Optimal truncation of sum K_n t^n at t > 0.
LeastTerm least_term_eval(const VectorSeries<double>& K, double t);

struct ExpSmallFit {
  double log_c1 = 0;
  double c = 0;
  double residual_rms = 0;
};

/// Fit log err = log c1 - c t^{-p} over the sampled pairs.
ExpSmallFit fit_exponential_smallness(const std::vector<double>& t, const std::vector<double>& err, double p);

struct ScanRow {
  double t = 0;
  int n_star = 0;
  double residual = 0;
  /// min over k of bound_k - |R^k(t)|.
  double margin = 0;
};

struct ScanOptions {
  int iterates = 100;
  /// Sector opening; defaults to 0.5 * alpha * pi when <= 0.
  double sector_angle = 0;
};

std::vector<ScanRow> sector_invariance_scan(const PolyMap<double>& F, const FormalSolution<double>& sol, double rho,
                                            int samples, const ScanOptions& opts = {});

/// Evaluates the polynomial K_{<=n} at t.
std::vector<double> evaluate_series(const VectorSeries<double>& K, int n, double t);

extern template std::vector<double> log_norms(const VectorSeries<Rational>&);
extern template std::vector<double> log_norms(const VectorSeries<double>&);

}  // namespace parabolic
