#include <cmath>
#include <numbers>

#include "doctest.h"
#include "parabolic/jet_flow.hpp"

using namespace parabolic;

namespace {

PolyMap<double> linear_field(double lambda) {
  PolyMap<double> X(2, 2, 1);
  X.set_split(1, 0);
  X.add_term(0, {1, 0}, lambda);
  X.add_term(1, {0, 1}, -lambda);
  return X;
}

// x' = -x^2, y' = 0.
PolyMap<double> riccati_field() {
  PolyMap<double> X(2, 2, 2);
  X.set_split(1, 0);
  X.add_term(0, {2, 0}, -1.0);
  return X;
}

}  // namespace

TEST_CASE("linear flow reproduces the exponential") {
  const auto P = flow_jet_fixed(autonomous_field(linear_field(-1.0), 1.0), 3, 200);
  CHECK(P.coeff(0, {1, 0}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(P.coeff(1, {0, 1}) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  CHECK(P.coeff(0, {2, 0}) == 0.0);
}

TEST_CASE("Riccati flow jet is sum (-T)^(n-1) x^n") {
  const double T = 0.5;
  FlowStats st;
  const auto P = flow_jet(autonomous_field(riccati_field(), T), 8, {}, &st);
  CHECK(st.converged);
  for (int n = 1; n <= 8; ++n) CHECK(P.coeff(0, {n, 0}) == doctest::Approx(std::pow(-T, n - 1)).epsilon(1e-9));
}

TEST_CASE("RK4 error drops by about 16 under step halving") {
  const auto X = autonomous_field(riccati_field(), 1.0);
  auto err = [&](int steps) {
    const auto P = flow_jet_fixed(X, 6, steps);
    double e = 0;
    for (int n = 1; n <= 6; ++n) e = std::max(e, std::fabs(P.coeff(0, {n, 0}) - std::pow(-1.0, n - 1)));
    return e;
  };
  const double ratio = err(16) / err(32);
  CHECK(ratio > 12);
  CHECK(ratio < 20);
}

TEST_CASE("periodic linear field has the closed-form monodromy") {
  // x' = (1 + cos t) x over one period 2 pi: multiplier exp(2 pi).
  PeriodicField X;
  X.period = 2 * std::numbers::pi;
  PolyMap<double> c0(1, 1, 1), c1(1, 1, 1), s1(1, 1, 1);
  c0.add_term(0, {1}, 1.0);
  c1.add_term(0, {1}, 1.0);
  X.modes.push_back({0, c0, PolyMap<double>(1, 1, 1)});
  X.modes.push_back({1, c1, s1});
  const auto P = flow_jet(X, 2, {});
  CHECK(P.coeff(0, {1}) == doctest::Approx(std::exp(2 * std::numbers::pi)).epsilon(1e-9));
}

TEST_CASE("fields must fix the origin and share a dimension") {
  PeriodicField X;
  X.period = 1;
  PolyMap<double> c(1, 1, 1);
  c.add_term(0, {0}, 1.0);
  X.modes.push_back({0, c, PolyMap<double>(1, 1, 1)});
  try {
    X.validate();
    FAIL("expected NotFixedOrigin");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFixedOrigin);
  }
  X.modes[0].cos_map = PolyMap<double>(1, 1, 1);
  X.modes.push_back({1, PolyMap<double>(2, 2, 1), PolyMap<double>(2, 2, 1)});
  try {
    X.validate();
    FAIL("expected DimMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimMismatch);
  }
}

TEST_CASE("Lie series time-one map of the Riccati field") {
  PolyMap<Rational> X(1, 1, 2);
  X.add_term(0, {2}, Rational(-1));
  const auto P = lie_time_one_map(X, 10, 12);
  for (int n = 1; n <= 10; ++n) CHECK(P.coeff(0, {n}) == Rational(n % 2 ? 1 : -1));
}

TEST_CASE("Lie series agrees with the integrated jet") {
  PolyMap<Rational> X(2, 2, 3);
  X.set_split(1, 0);
  X.add_term(0, {2, 0}, Rational(-1, 4));
  X.add_term(1, {1, 1}, Rational(1, 4));
  X.add_term(1, {3, 0}, Rational(1, 8));
  const auto L = lie_time_one_map(X, 8, 40);
  PolyMap<double> Xd(2, 2, 3);
  Xd.set_split(1, 0);
  for (int c = 0; c < 2; ++c)
    for (const auto& [e, v] : X.terms(c)) Xd.add_term(c, e, v.get_d());
  const auto P = flow_jet(autonomous_field(Xd, 1.0), 8, {});
  for (int c = 0; c < 2; ++c)
    for (const auto& [e, v] : L.terms(c)) CHECK(P.coeff(c, e) == doctest::Approx(v.get_d()).epsilon(1e-9));
}
