#include "parabolic/gevrey.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace parabolic {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Eigen::VectorXd least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
  return A.colPivHouseholderQr().solve(y);
}

double rms(const Eigen::VectorXd& r) { return r.size() ? std::sqrt(r.squaredNorm() / static_cast<double>(r.size())) : 0.0; }

}  // namespace

GevreyFit gevrey_fit_log(const std::vector<double>& log_norms, double tail_fraction) {
  if (!(tail_fraction > 0 && tail_fraction <= 1)) throw Error(ErrorCode::BadParams, "tail fraction must lie in (0, 1]");
  const int total = static_cast<int>(log_norms.size());
  const int count = static_cast<int>(std::ceil(tail_fraction * total));
  const int n_lo = total - count;
  std::vector<int> ns;
  for (int n = std::max(n_lo, 0); n < total; ++n)
    if (std::isfinite(log_norms[static_cast<std::size_t>(n)])) ns.push_back(n);
  if (ns.size() < 12)
    throw Error(ErrorCode::InsufficientData,
                std::to_string(ns.size()) + " nonzero norms in the tail window, need at least 12");
  const auto rows = static_cast<Eigen::Index>(ns.size());
  Eigen::MatrixXd A(rows, 3);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double n = ns[static_cast<std::size_t>(i)];
    A(i, 0) = 1.0;
    A(i, 1) = n;
    A(i, 2) = std::lgamma(n + 1.0);
    y(i) = log_norms[static_cast<std::size_t>(ns[static_cast<std::size_t>(i)])];
  }
  const Eigen::VectorXd p = least_squares(A, y);
  GevreyFit fit;
  fit.log_c1 = p(0);
  fit.log_c2 = p(1);
  fit.gamma_unclamped = p(2);
  fit.gamma = std::max(0.0, p(2));
  fit.residual_rms = rms(A * p - y);
  fit.n_min = ns.front();
  fit.n_max = ns.back();
  fit.points = static_cast<int>(rows);
  return fit;
}

GevreyFit gevrey_fit(const std::vector<double>& norms, double tail_fraction) {
  std::vector<double> logs;
  logs.reserve(norms.size());
  for (double v : norms) logs.push_back(v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::fabs(v)));
  return gevrey_fit_log(logs, tail_fraction);
}

template <Scalar T>
std::vector<double> log_norms(const VectorSeries<T>& K) {
  std::vector<double> out;
  for (int l = 0; l <= K.order(); ++l) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < K.dim(); ++i) best = std::max(best, log_abs(K.coeff(l, i)));
    out.push_back(best);
  }
  return out;
}

template std::vector<double> log_norms(const VectorSeries<Rational>&);
template std::vector<double> log_norms(const VectorSeries<double>&);

// ---------------------------------------------------------------------------
// Bound lemmas

namespace {

Rational factorial_q(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(std::max(n, 0)));
  return Rational(f);
}

Big factorial_big(int n) {
  Big f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Big to_big(const Rational& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }

Rational pow_q(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Big big_max(const Big& x, const Big& y) { return x < y ? y : x; }

struct Value {
  Rational exact;
  Big approx;
  bool is_exact = false;
};

Value exact_value(const Rational& q) { return {q, to_big(q), true}; }
Value approx_value(const Big& b) { return {Rational(0), b, false}; }

// x! ^ beta, exact when beta is an integer.
Value fact_pow(int x, const Rational& beta) {
  if (beta.get_den() == 1) return exact_value(pow_q(factorial_q(x), static_cast<int>(beta.get_num().get_si())));
  return approx_value(boost::multiprecision::pow(factorial_big(x), to_big(beta)));
}

bool leq(const Value& lhs, const Value& rhs, bool* exact) {
  *exact = lhs.is_exact && rhs.is_exact;
  if (*exact) return lhs.exact <= rhs.exact;
  const Big scale = big_max(abs(lhs.approx), abs(rhs.approx));
  return lhs.approx <= rhs.approx + scale * Big("1e-40");
}

double slack_of(const Value& lhs, const Value& rhs) {
  const Big l = lhs.approx, r = rhs.approx;
  const Big denom = big_max(big_max(abs(l), abs(r)), Big(1));
  return static_cast<double>((r - l) / denom);
}

Value mul_values(const Value& a, const Value& b) {
  if (a.is_exact && b.is_exact) return exact_value(a.exact * b.exact);
  return approx_value(a.approx * b.approx);
}

// Composition sums of prod (l_i!)^beta over l_1+...+l_k = nu with each l_i
// in the allowed part set, for all k <= k_max, nu <= nu_max.
std::vector<std::vector<Value>> composition_table(int k_max, int nu_max, const Rational& beta,
                                                  const std::vector<int>& parts) {
  std::vector<Value> weight(static_cast<std::size_t>(nu_max) + 1);
  for (int p : parts)
    if (p <= nu_max) weight[static_cast<std::size_t>(p)] = fact_pow(p, beta);
  const bool exact = beta.get_den() == 1;
  std::vector<std::vector<Value>> t(static_cast<std::size_t>(k_max) + 1,
                                    std::vector<Value>(static_cast<std::size_t>(nu_max) + 1));
  for (auto& row : t)
    for (auto& v : row) v = exact ? exact_value(Rational(0)) : approx_value(Big(0));
  t[0][0] = exact ? exact_value(Rational(1)) : approx_value(Big(1));
  for (int k = 1; k <= k_max; ++k)
    for (int nu = 0; nu <= nu_max; ++nu) {
      Value acc = exact ? exact_value(Rational(0)) : approx_value(Big(0));
      for (int p : parts) {
        if (p > nu) continue;
        const Value term = mul_values(weight[static_cast<std::size_t>(p)], t[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(nu - p)]);
        if (exact)
          acc.exact += term.exact;
        acc.approx += term.approx;
      }
      if (exact) acc.approx = to_big(acc.exact);
      t[static_cast<std::size_t>(k)][static_cast<std::size_t>(nu)] = acc;
    }
  return t;
}

BoundPoint make_point(const char* lemma, int k, int nu, const Value& lhs, const Value& rhs) {
  BoundPoint p;
  p.lemma = lemma;
  p.k = k;
  p.nu = nu;
  p.lhs = static_cast<double>(lhs.approx);
  p.rhs = static_cast<double>(rhs.approx);
  p.pass = leq(lhs, rhs, &p.exact);
  p.slack = slack_of(lhs, rhs);
  return p;
}

}  // namespace

Rational r_power_coeff(const Rational& a, const Rational& b, int N, int k, int nu) {
  if (N < 2 || k < 0 || nu < k) return Rational(0);
  if ((nu - k) % (N - 1) != 0) return Rational(0);
  const int m = (nu - k) / (N - 1);
  Rational sum = 0;
  // m2 + 2 m3 = m, m1 = k - m2 - m3.
  for (int m3 = 0; 2 * m3 <= m; ++m3) {
    const int m2 = m - 2 * m3;
    const int m1 = k - m2 - m3;
    if (m1 < 0) continue;
    const Rational multinom = factorial_q(k) / (factorial_q(m1) * factorial_q(m2) * factorial_q(m3));
    sum += multinom * pow_q(-a, m2) * pow_q(b, m3);
  }
  return sum;
}

BoundReport check_bound_lemmas(const BoundParams& P) {
  if (P.N < 2) throw Error(ErrorCode::BadParams, "N must be at least 2");
  if (P.beta * (P.N - 1) < 1)
    throw Error(ErrorCode::HypothesisViolated, "beta = " + to_string(P.beta) + " < 1/(N-1)");
  if (P.k_max < 1 || P.nu_max < 1) throw Error(ErrorCode::BadParams, "empty grid");
  BoundReport rep;
  rep.a = P.a;
  rep.b = P.b;
  rep.beta = P.beta;
  rep.N = P.N;
  rep.k_max = P.k_max;
  rep.nu_max = P.nu_max;
  const int N = P.N;

  // J1_{k,nu} = k!^beta R_{k,nu}.
  const Rational sigma = is_zero(P.a) ? Rational(0) : Rational(P.b / (P.a * P.a));
  const Rational abs_a = abs(P.a);
  const Rational one_sigma = 1 + abs(sigma);
  for (int k = 1; k <= P.k_max; ++k)
    for (int nu = k; nu <= P.nu_max; ++nu) {
      const Rational R = r_power_coeff(P.a, P.b, N, k, nu);
      const Value kb = fact_pow(k, P.beta);
      const Value lhs = mul_values(kb, exact_value(abs(R)));
      Value rhs;
      if ((nu - k) % (N - 1) != 0) {
        rhs = exact_value(Rational(0));  // J1 = 0 is claimed
      } else {
        const int m = (nu - k) / (N - 1);
        if (m == 0) {
          rhs = kb;  // J1_{k,k} = k!^beta, checked as |J1| <= k!^beta with R = 1 below
          BoundPoint p = make_point("J1", k, nu, lhs, rhs);
          p.pass = p.pass && R == 1;
          rep.points.push_back(p);
          continue;
        }
        const Value fac = fact_pow(nu - N + 1, P.beta);
        const Rational lin = Rational(nu - m * N + 1) * pow_q(abs_a, m);
        Value sig;
        if (m % 2 == 0)
          sig = exact_value(pow_q(one_sigma, m / 2));
        else if (is_zero(sigma))
          sig = exact_value(Rational(1));
        else
          sig = approx_value(boost::multiprecision::pow(to_big(one_sigma), Big(m) / 2));
        rhs = mul_values(mul_values(fac, exact_value(lin)), sig);
        BoundPoint p = make_point("J1", k, nu, lhs, rhs);
        // Beyond m > k the right side is not positive; a vanishing J1 there
        // is the empty trinomial sum.
        if (m > k && is_zero(R)) {
          p.pass = true;
          p.vacuous = true;
        }
        rep.points.push_back(p);
        continue;
      }
      BoundPoint p = make_point("J1", k, nu, lhs, rhs);
      p.vacuous = true;
      rep.points.push_back(p);
    }

  // M_{k,nu} and J2_{k,nu}.
  std::vector<int> big_parts, j2_parts{1};
  for (int p = N; p <= P.nu_max; ++p) {
    big_parts.push_back(p);
    j2_parts.push_back(p);
  }
  const auto Mt = composition_table(P.k_max, P.nu_max, P.beta, big_parts);
  const auto Jt = composition_table(P.k_max, P.nu_max, P.beta, j2_parts);
  // N_beta = N^{beta (N-1)}.
  const Rational e = P.beta * (N - 1);
  Value Nb;
  if (e.get_den() == 1)
    Nb = exact_value(pow_q(Rational(N), static_cast<int>(e.get_num().get_si())));
  else
    Nb = approx_value(boost::multiprecision::pow(Big(N), to_big(e)));
  for (int k = 1; k <= P.k_max; ++k)
    for (int nu = k; nu <= P.nu_max; ++nu) {
      const Value& Mv = Mt[static_cast<std::size_t>(k)][static_cast<std::size_t>(nu)];
      const Value fac = fact_pow(nu - k + 1, P.beta);
      if (nu < k * N) {
        BoundPoint p = make_point("M", k, nu, Mv, exact_value(Rational(0)));
        p.vacuous = true;
        rep.points.push_back(p);
      } else {
        Value nbk;
        if (Nb.is_exact)
          nbk = exact_value(pow_q(Nb.exact, k - 1));
        else
          nbk = approx_value(boost::multiprecision::pow(Nb.approx, k - 1));
        rep.points.push_back(make_point("M", k, nu, Mv, mul_values(fac, nbk)));
      }
      const Value& Jv = Jt[static_cast<std::size_t>(k)][static_cast<std::size_t>(nu)];
      Value coef;
      if (Nb.is_exact)
        coef = exact_value((pow_q(Nb.exact + 1, k) - 1) / Nb.exact);
      else
        coef = approx_value((boost::multiprecision::pow(Nb.approx + 1, k) - 1) / Nb.approx);
      rep.points.push_back(make_point("J2", k, nu, Jv, mul_values(coef, fac)));
    }

  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& p : rep.points) {
    if (!p.pass) {
      rep.all_pass = false;
      ++rep.failures;
    }
    if (!p.vacuous) rep.worst_slack = std::min(rep.worst_slack, p.slack);
  }
  return rep;
}

namespace {

double enumerate(int k, int nu, int N, double beta, bool allow_one) {
  if (k == 0) return nu == 0 ? 1.0 : 0.0;
  double s = 0;
  for (int l = 1; l <= nu; ++l) {
    if (l < N && !(allow_one && l == 1)) continue;
    s += std::pow(std::tgamma(l + 1.0), beta) * enumerate(k - 1, nu - l, N, beta, allow_one);
  }
  return s;
}

}  // namespace

double brute_force_M(int N, double beta, int k, int nu) { return enumerate(k, nu, N, beta, false); }
double brute_force_J2(int N, double beta, int k, int nu) { return enumerate(k, nu, N, beta, true); }

// ---------------------------------------------------------------------------
// Summation and scans

std::vector<double> evaluate_series(const VectorSeries<double>& K, int n, double t) {
  std::vector<double> v(static_cast<std::size_t>(K.dim()), 0.0);
  n = std::min(n, K.order());
  for (int i = 0; i < K.dim(); ++i) {
    double acc = 0;
    for (int l = n; l >= 0; --l) acc = acc * t + K.coeff(l, i);
    v[static_cast<std::size_t>(i)] = acc;
  }
  return v;
}

LeastTerm least_term_eval(const VectorSeries<double>& K, double t) {
  if (!(t > 0) || !std::isfinite(t)) throw Error(ErrorCode::BadPoint, "least-term evaluation needs t > 0");
  const double lt = std::log(t);
  int best = -1;
  double best_log = std::numeric_limits<double>::infinity();
  int last_nonzero = -1;
  for (int n = 0; n <= K.order(); ++n) {
    const double nrm = K.norm_inf(n);
    if (nrm == 0.0) continue;
    last_nonzero = n;
    const double lg = std::log(nrm) + n * lt;
    if (lg <= best_log + 1e-12 * std::max(1.0, std::fabs(best_log))) {
      best = n;
      best_log = std::min(best_log, lg);
    }
  }
  LeastTerm out;
  if (best < 0) {
    out.value.assign(static_cast<std::size_t>(K.dim()), 0.0);
    return out;
  }
  out.n_star = best;
  out.value = evaluate_series(K, best, t);
  out.err_estimate = last_nonzero > best ? std::exp(best_log) : 0.0;
  return out;
}

ExpSmallFit fit_exponential_smallness(const std::vector<double>& t, const std::vector<double>& err, double p) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < t.size() && i < err.size(); ++i)
    if (t[i] > 0 && err[i] > 0 && std::isfinite(err[i])) pts.emplace_back(t[i], err[i]);
  if (pts.size() < 2) throw Error(ErrorCode::InsufficientData, "need at least two positive error samples");
  const auto rows = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(rows, 2);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = -std::pow(pts[static_cast<std::size_t>(i)].first, -p);
    y(i) = std::log(pts[static_cast<std::size_t>(i)].second);
  }
  const Eigen::VectorXd q = least_squares(A, y);
  return ExpSmallFit{q(0), q(1), rms(A * q - y)};
}

std::vector<ScanRow> sector_invariance_scan(const PolyMap<double>& F, const FormalSolution<double>& sol, double rho,
                                            int samples, const ScanOptions& opts) {
  if (!(rho > 0) || samples < 1) throw Error(ErrorCode::BadParams, "scan needs rho > 0 and samples >= 1");
  const int N = sol.R.N;
  const double a = sol.R.a, b = sol.R.b;
  const double alpha = 1.0 / (N - 1);
  const double sector = opts.sector_angle > 0 ? opts.sector_angle : 0.5 * alpha * std::numbers::pi;
  const double lambda = 0.5 * sector;
  const double nu = 0.9 * a * (N - 1) * std::cos(lambda);
  auto R = [&](double s) { return s - a * std::pow(s, N) + b * std::pow(s, 2 * N - 1); };

  std::vector<ScanRow> rows;
  for (int i = 1; i <= samples; ++i) {
    const double t = rho * i / samples;
    ScanRow row;
    row.t = t;
    const auto lt = least_term_eval(sol.K, t);
    row.n_star = lt.n_star;
    const auto lhs = evaluate(F, evaluate_series(sol.K, lt.n_star, t));
    const auto rhs = evaluate_series(sol.K, lt.n_star, R(t));
    for (std::size_t c = 0; c < lhs.size(); ++c) row.residual = std::max(row.residual, std::fabs(lhs[c] - rhs[c]));
    row.margin = std::numeric_limits<double>::infinity();
    double s = t;
    for (int k = 1; k <= opts.iterates; ++k) {
      s = R(s);
      if (!(s > 0 && s <= rho))
        throw Error(ErrorCode::SectorEscape, "R^" + std::to_string(k) + "(" + to_string_17(t) + ") leaves (0, rho]");
      const double bound = t / std::pow(1.0 + k * nu * std::pow(t, N - 1), alpha);
      row.margin = std::min(row.margin, bound - s);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace parabolic
