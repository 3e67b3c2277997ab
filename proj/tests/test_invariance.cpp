#include <random>

#include "doctest.h"
#include "parabolic/examples.hpp"
#include "parabolic/invariance.hpp"

using namespace parabolic;

namespace {

using Q = Rational;

// x' = x - x^2, z' = 2z + x^2.
PolyMap<Q> xz_map() {
  PolyMap<Q> F(2, 2, 2);
  F.set_split(0, 1);
  F.add_term(0, {1, 0}, Q(1));
  F.add_term(0, {2, 0}, Q(-1));
  F.add_term(1, {0, 1}, Q(2));
  F.add_term(1, {2, 0}, Q(1));
  F.set_exact(true);
  return F;
}

template <class T>
bool residual_zero_through(const VectorSeries<T>& E, int comp, int through) {
  for (int l = 0; l <= std::min(through, E.order()); ++l)
    if (!is_zero(E.coeff(l, comp))) return false;
  return true;
}

}  // namespace

TEST_CASE("stable direction coefficients of (x - x^2, 2z + x^2)") {
  const auto F = xz_map();
  const auto sol = solve_map_invariance(extract_form(F), F, 10);
  CHECK(sol.certified_order == 10);
  CHECK(sol.R.b == 0);
  CHECK(sol.K.coeff(1, 0) == 1);
  for (int l = 2; l <= 10; ++l) CHECK(sol.K.coeff(l, 0) == 0);
  CHECK(sol.K.coeff(2, 1) == -1);
  CHECK(sol.K.coeff(3, 1) == 2);
  CHECK(sol.K.coeff(4, 1) == -7);
  const auto E = residual(F, sol.K, sol.R, 12);
  CHECK(residual_zero_through(E, 0, 11));
  CHECK(residual_zero_through(E, 1, 10));
}

TEST_CASE("free coefficient c moves K^x_N but not b") {
  const auto F = xz_map();
  const auto form = extract_form(F);
  const auto s0 = solve_map_invariance(form, F, 12, Q(0));
  const auto s5 = solve_map_invariance(form, F, 12, Q(5));
  CHECK(s5.K.coeff(2, 0) == 5);
  CHECK(s5.R.b == s0.R.b);
  for (const auto& row : certify(F, s5)) CHECK(row.ok);
}

TEST_CASE("certificate rows on random maps of every case") {
  std::mt19937_64 rng(11);
  for (auto tag : {CaseTag::m_less_n, CaseTag::m_equal_n, CaseTag::m_greater_n}) {
    RandomMapOptions o;
    o.case_tag = tag;
    const auto F = random_form_map(o, rng);
    const auto form = extract_form(F);
    CHECK(form.case_tag() == tag);
    const auto sol = solve_map_invariance(form, F, 12);
    REQUIRE(sol.certificate.size() == 12);
    for (const auto& row : sol.certificate) {
      CHECK(row.ok);
      CHECK(row.x_through >= row.n + form.N - 1);
      CHECK(row.y_through >= row.n + form.L() - 1);
      CHECK(row.z_through >= row.n);
    }
  }
}

TEST_CASE("float solve agrees with the rational solve") {
  std::mt19937_64 rng(5);
  RandomMapOptions o;
  o.case_tag = CaseTag::m_equal_n;
  const auto F = random_form_map(o, rng);
  const auto exact = solve_map_invariance(extract_form(F), F, 15);
  PolyMap<double> Fd(F.dim_in(), F.dim_out(), F.degree());
  Fd.copy_meta_from(F);
  for (int c = 0; c < F.dim_out(); ++c)
    for (const auto& [e, v] : F.terms(c)) Fd.add_term(c, e, v.get_d());
  const auto approx = solve_map_invariance(extract_form(Fd), Fd, 15);
  CHECK(approx.R.b == doctest::Approx(exact.R.b.get_d()));
  for (int l = 0; l <= 15; ++l)
    for (int i = 0; i < 3; ++i)
      CHECK(approx.K.coeff(l, i) == doctest::Approx(exact.K.coeff(l, i).get_d()).epsilon(1e-9).scale(1.0));
}

TEST_CASE("truncated jets are only solved through the certified order") {
  auto F = xz_map().with_degree(6);
  F.set_exact(false);
  const auto sol = solve_map_invariance(extract_form(F), F, 20);
  CHECK(sol.requested_order == 20);
  CHECK(sol.certified_order == 5);
  CHECK(sol.K.order() == 5);
}

TEST_CASE("singular B1 + l a Id is detected during the solve") {
  PolyMap<Q> F(2, 2, 3);
  F.set_split(1, 0);
  F.add_term(0, {1, 0}, Q(1));
  F.add_term(0, {2, 0}, Q(-1));
  F.add_term(1, {0, 1}, Q(1));
  F.add_term(1, {1, 1}, Q(-5));
  F.set_exact(true);
  ExtractOptions eo;
  eo.order_budget = 3;
  const auto form = extract_form(F, eo);
  try {
    solve_map_invariance(form, F, 8);
    FAIL("expected SolvabilityObstruction");
  } catch (const SolvabilityError& e) {
    CHECK(e.order() == 5);
  }
}

TEST_CASE("graph of the field (-x^2, 2z + x^2)") {
  PolyMap<Q> X(2, 2, 2);
  X.set_split(0, 1);
  X.add_term(0, {2, 0}, Q(-1));
  X.add_term(1, {0, 1}, Q(2));
  X.add_term(1, {2, 0}, Q(1));
  CHECK(solve_flow_graph(X, 10).order() == 1);
  X.set_exact(true);
  const auto phi = solve_flow_graph(X, 10);
  REQUIRE(phi.order() == 10);
  CHECK(phi.coeff(2, 0) == Q(-1, 2));
  CHECK(phi.coeff(3, 0) == Q(1, 2));
  CHECK(phi.coeff(4, 0) == Q(-3, 4));
  CHECK(phi.coeff(5, 0) == Q(3, 2));
  const auto E = flow_graph_residual(X, phi);
  CHECK(residual_zero_through(E, 0, 10));
}

TEST_CASE("parameterization to graph") {
  VectorSeries<Q> K(2, 6);
  K.set(1, 0, 1);
  K.set(2, 0, 1);
  K.set(2, 1, 1);
  // x = t + t^2, y = t^2, so y = t(x)^2 with t(x) the Catalan reversion.
  const auto g = parameterization_to_graph(K);
  CHECK(g.dim() == 1);
  CHECK(g.coeff(2, 0) == 1);
  CHECK(g.coeff(3, 0) == -2);
  CHECK(g.coeff(4, 0) == 5);
  CHECK(g.coeff(5, 0) == -14);
  K.set(1, 0, 2);
  CHECK_THROWS_AS(parameterization_to_graph(K), Error);
}

TEST_CASE("graph of a solved map is invariant") {
  const auto F = xz_map();
  const auto sol = solve_map_invariance(extract_form(F), F, 12);
  const auto g = parameterization_to_graph(sol.K);
  const auto E = graph_residual(F, g);
  CHECK(residual_zero_through(E, 0, 12));
}
