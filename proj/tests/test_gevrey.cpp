#include <cmath>

#include "doctest.h"
#include "parabolic/gevrey.hpp"

using namespace parabolic;

namespace {

using Q = Rational;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::BadParams;
}

}  // namespace

TEST_CASE("fit recovers the factorial exponent of synthetic sequences") {
  for (double g : {0.0, 1.0 / 3.0, 0.5, 1.0, 2.0}) {
    std::vector<double> logs;
    for (int n = 0; n <= 80; ++n) logs.push_back(0.7 + n * std::log(3.0) + g * std::lgamma(n + 1.0));
    const auto f = gevrey_fit_log(logs, 0.5);
    CHECK(f.gamma == doctest::Approx(g).epsilon(1e-8).scale(1.0));
    CHECK(f.log_c2 == doctest::Approx(std::log(3.0)).epsilon(1e-6));
    CHECK(f.residual_rms < 1e-8);
    CHECK(f.n_max == 80);
  }
}

TEST_CASE("fit clamps negative exponents and skips zero norms") {
  std::vector<double> norms;
  for (int n = 0; n <= 60; ++n) norms.push_back(n % 2 ? 0.0 : std::exp(-0.5 * std::lgamma(n + 1.0)));
  const auto f = gevrey_fit(norms, 1.0);
  CHECK(f.gamma == 0.0);
  CHECK(f.gamma_unclamped == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(f.points == 31);
}

TEST_CASE("fit needs enough points") {
  std::vector<double> norms(20, 1.0);
  CHECK(code_of([&] { gevrey_fit(norms, 0.5); }) == ErrorCode::InsufficientData);
  CHECK(code_of([&] { gevrey_fit(norms, 0.0); }) == ErrorCode::BadParams);
}

TEST_CASE("powers of R match direct series expansion") {
  for (int N : {2, 3, 4})
    for (const auto& [a, b] : {std::pair{Q(1), Q(0)}, std::pair{Q(1, 4), Q(1)}, std::pair{Q(-2), Q(3, 5)}}) {
      const int top = 30;
      Series<Q> R = Series<Q>::identity(top);
      R[N] -= a;
      if (2 * N - 1 <= top) R[2 * N - 1] += b;
      Series<Q> P = Series<Q>::monomial(top, 0, Q(1));
      for (int k = 1; k <= 8; ++k) {
        P = mul_truncated(P, R, top);
        for (int nu = 0; nu <= top; ++nu) CHECK(r_power_coeff(a, b, N, k, nu) == P[nu]);
      }
    }
}

TEST_CASE("bound lemmas hold for b = 0") {
  for (int N : {2, 3}) {
    BoundParams p;
    p.N = N;
    p.beta = Q(1, N - 1);
    p.k_max = 6;
    p.nu_max = 18;
    const auto r = check_bound_lemmas(p);
    CHECK(r.all_pass);
    CHECK(r.failures == 0);
    CHECK(!r.points.empty());
  }
}

TEST_CASE("bound lemma M agrees with the brute-force composition sum") {
  BoundParams p;
  p.N = 2;
  p.beta = Q(1);
  p.k_max = 5;
  p.nu_max = 14;
  const auto r = check_bound_lemmas(p);
  int seen = 0;
  for (const auto& pt : r.points)
    if (pt.lemma == "M" && !pt.vacuous) {
      CHECK(pt.lhs == doctest::Approx(brute_force_M(2, 1.0, pt.k, pt.nu)).epsilon(1e-9));
      ++seen;
    } else if (pt.lemma == "J2" && !pt.vacuous) {
      CHECK(pt.lhs == doctest::Approx(brute_force_J2(2, 1.0, pt.k, pt.nu)).epsilon(1e-9));
      ++seen;
    }
  CHECK(seen > 0);
}

TEST_CASE("beta below 1/(N-1) violates the hypothesis") {
  BoundParams p;
  p.N = 3;
  p.beta = Q(1, 3);
  CHECK(code_of([&] { check_bound_lemmas(p); }) == ErrorCode::HypothesisViolated);
}

TEST_CASE("least term of sum n! t^n at t = 0.1 is n = 10") {
  VectorSeries<double> K(1, 30);
  double f = 1;
  for (int n = 1; n <= 30; ++n) {
    f *= n;
    K.set(n, 0, f);
  }
  const auto lt = least_term_eval(K, 0.1);
  CHECK(lt.n_star == 10);
  CHECK(lt.err_estimate == doctest::Approx(std::tgamma(11.0) * 1e-10));
  double partial = 0, tn = 1;
  for (int n = 1; n <= 10; ++n) {
    tn *= 0.1;
    partial += K.coeff(n, 0) * tn;
  }
  CHECK(lt.value[0] == doctest::Approx(partial));
  CHECK(code_of([&] { least_term_eval(K, -1.0); }) == ErrorCode::BadPoint);
}

TEST_CASE("exponential smallness fit") {
  std::vector<double> t, err;
  for (int i = 1; i <= 10; ++i) {
    t.push_back(0.02 * i);
    err.push_back(3.0 * std::exp(-0.8 / t.back()));
  }
  const auto f = fit_exponential_smallness(t, err, 1.0);
  CHECK(f.c == doctest::Approx(0.8));
  CHECK(f.log_c1 == doctest::Approx(std::log(3.0)));
}

TEST_CASE("sector scan on (x - x^2, 2z + x^2)") {
  PolyMap<double> F(2, 2, 2);
  F.set_split(0, 1);
  F.add_term(0, {1, 0}, 1.0);
  F.add_term(0, {2, 0}, -1.0);
  F.add_term(1, {0, 1}, 2.0);
  F.add_term(1, {2, 0}, 1.0);
  F.set_exact(true);
  const auto sol = solve_map_invariance(extract_form(F), F, 40);
  // K_n grows like n! (1/log 2)^n, so the least term at t is about exp(-log(2)/t).
  const auto rows = sector_invariance_scan(F, sol, 0.02, 5);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.n_star > 2);
    CHECK(r.residual < 1e-9);
    CHECK(r.margin >= 0.0);
  }
  CHECK(code_of([&] { sector_invariance_scan(F, sol, 3.0, 5); }) == ErrorCode::SectorEscape);
}
