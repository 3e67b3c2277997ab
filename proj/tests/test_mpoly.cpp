#include <cmath>
#include <random>

#include "doctest.h"
#include "parabolic/polymap.hpp"
#include "parabolic/simd/kernels.hpp"

using namespace parabolic;

namespace {

Rational multinomial(int n, const std::vector<int>& k) {
  mpz_class r = 1, f;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  for (int ki : k) {
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(ki));
    r /= f;
  }
  return Rational(r);
}

}  // namespace

TEST_CASE("powers of 1 + x + y + z follow the multinomial theorem") {
  const int n = 3, deg = 8;
  MPoly<Rational> s = MPoly<Rational>::constant(n, deg, Rational(1));
  for (int i = 0; i < n; ++i) s += MPoly<Rational>::variable(n, deg, i);
  const auto p = power(s, 6);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b)
      for (int c = 0; a + b + c <= 6; ++c)
        CHECK(p.coeff({a, b, c}) == multinomial(6, {a, b, c, 6 - a - b - c}));
  CHECK(p.coeff({4, 3, 0}) == 0);
}

TEST_CASE("products truncate at the layout degree") {
  const auto x = MPoly<Rational>::variable(2, 4, 0);
  const auto y = MPoly<Rational>::variable(2, 4, 1);
  const auto p = mul(mul(x, x), mul(mul(y, y), y));
  CHECK(p.is_zero());
  CHECK(mul(mul(x, x), mul(y, y)).coeff({2, 2}) == 1);
}

TEST_CASE("derivative, shift and divide_by_power") {
  const int deg = 6;
  const auto x = MPoly<Rational>::variable(2, deg, 0);
  const auto y = MPoly<Rational>::variable(2, deg, 1);
  auto p = power(x, 3);
  p += Rational(5) * mul(x, y);
  const auto dx = derivative(p, 0);
  CHECK(dx.coeff({2, 0}) == 3);
  CHECK(dx.coeff({0, 1}) == 5);
  const auto sh = shift(p, 0, 2);
  CHECK(sh.coeff({5, 0}) == 1);
  CHECK(sh.coeff({3, 1}) == 5);
  CHECK(divide_by_power(sh, 0, 2) == p);
  CHECK_THROWS_AS(divide_by_power(p, 0, 2), Error);
}

TEST_CASE("reciprocal of 1 - x - y") {
  const int deg = 7;
  auto s = MPoly<Rational>::constant(2, deg, Rational(1));
  s -= MPoly<Rational>::variable(2, deg, 0);
  s -= MPoly<Rational>::variable(2, deg, 1);
  const auto r = reciprocal(s);
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; a + b <= deg; ++b) CHECK(r.coeff({a, b}) == multinomial(a + b, {a, b}));
}

TEST_CASE("substitute_map agrees with pointwise evaluation") {
  PolyMap<Rational> F(2, 2, 3);
  F.set_split(1, 0);
  F.add_term(0, {1, 0}, Rational(1));
  F.add_term(0, {2, 0}, Rational(-1));
  F.add_term(0, {1, 1}, Rational(2, 3));
  F.add_term(1, {0, 1}, Rational(1));
  F.add_term(1, {3, 0}, Rational(1, 2));
  F.add_term(1, {1, 2}, Rational(-1));
  const int order = 12;
  VectorSeries<Rational> K(2, order);
  K.set(1, 0, 1);
  K.set(2, 0, Rational(1, 5));
  K.set(2, 1, 3);
  K.set(3, 1, Rational(-2));
  const auto FK = substitute_map(F, K);
  // Compare via Horner evaluation at a small t.
  const double t = 0.01;
  std::vector<double> k(2, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int l = order; l >= 0; --l) k[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)] * t + K.coeff(l, i).get_d();
  const auto direct = evaluate(F, k);
  for (int i = 0; i < 2; ++i) {
    double s = 0;
    for (int l = FK.order(); l >= 0; --l) s = s * t + FK.coeff(l, i).get_d();
    CHECK(s == doctest::Approx(direct[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
  // Exact low orders: F^x(K) = t + (1/5 - 1) t^2 + ...
  CHECK(FK.coeff(1, 0) == 1);
  CHECK(FK.coeff(2, 0) == Rational(-4, 5));
  CHECK(FK.coeff(3, 0) == Rational(-2, 5) + Rational(2));
}

TEST_CASE("substitute_poly composes polynomial maps") {
  PolyMap<Rational> F(2, 2, 2);
  F.add_term(0, {1, 1}, Rational(1));
  F.add_term(1, {0, 2}, Rational(1));
  std::vector<MPoly<Rational>> inner{MPoly<Rational>::variable(2, 4, 0) + MPoly<Rational>::variable(2, 4, 1),
                                     MPoly<Rational>::variable(2, 4, 1)};
  const auto out = substitute_poly(F, inner);
  CHECK(out[0].coeff({1, 1}) == 1);
  CHECK(out[0].coeff({0, 2}) == 1);
  CHECK(out[1].coeff({0, 2}) == 1);
}

TEST_CASE("compose_series of exp-like series with a polynomial") {
  Series<Rational> e(6);
  Rational f = 1;
  for (int k = 0; k <= 6; ++k) {
    e[k] = 1 / f;
    f *= k + 1;
  }
  const auto x = MPoly<Rational>::variable(1, 6, 0);
  const auto p = compose_series(e, Rational(2) * x);
  CHECK(p.coeff({3}) == Rational(4, 3));
  CHECK(p.coeff({6}) == Rational(4, 45));
}

TEST_CASE("float polynomial products agree under both dispatch targets") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  MPoly<double> a(3, 10), b(3, 10);
  for (auto& c : a.coeffs()) c = u(rng);
  for (auto& c : b.coeffs()) c = u(rng);
  simd::force_isa(simd::Isa::scalar);
  const auto p1 = mul(a, b);
  simd::force_isa(simd::Isa::avx2);
  const auto p2 = mul(a, b);
  simd::force_isa(simd::detected_isa());
  for (std::size_t i = 0; i < p1.coeffs().size(); ++i)
    CHECK(p2.coeffs()[i] == doctest::Approx(p1.coeffs()[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("monomial names") {
  CHECK(monomial_name({2, 1, 0}, 1, 1) == "x^2*y");
  CHECK(monomial_name({0, 0, 1, 3}, 1, 2) == "z_1*z_2^3");
  CHECK(monomial_name({0, 0, 0}, 1, 1) == "1");
}
