#include "parabolic/examples.hpp"

#include <numbers>

namespace parabolic {

namespace {

Rational param_q(const ExampleParams& p, const std::string& key, const Rational& fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    return parse_rational(it->second);
  } catch (const Error&) {
    throw Error(ErrorCode::BadParams, "parameter " + key + " is not a number: " + it->second);
  }
}

int param_int(const ExampleParams& p, const std::string& key, int fallback) {
  const Rational v = param_q(p, key, Rational(fallback));
  if (v.get_den() != 1 || !v.get_num().fits_sint_p())
    throw Error(ErrorCode::BadParams, "parameter " + key + " must be an integer");
  return static_cast<int>(v.get_num().get_si());
}

void check_known(const ExampleParams& p, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) throw Error(ErrorCode::BadParams, "unknown parameter " + k);
  }
}

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::BadParams, what);
}

Exponents mono(int n, std::initializer_list<std::pair<int, int>> powers) {
  Exponents e(static_cast<std::size_t>(n), 0);
  for (auto [var, k] : powers) e[static_cast<std::size_t>(var)] += k;
  return e;
}

Example claim41_geq(const ExampleParams& p) {
  check_known(p, {"a", "N", "C", "ell", "c"});
  const Rational a = param_q(p, "a", 1), C = param_q(p, "C", 2), c = param_q(p, "c", 1);
  const int N = param_int(p, "N", 2), ell = param_int(p, "ell", 2);
  require(N >= 2, "N must be at least 2");
  require(ell >= 2, "ell must be at least 2");
  require(a != 0, "a must be nonzero");
  require(C != 0, "C must be invertible");
  require(c != 0, "c must be nonzero");
  PolyMap<Rational> X(2, 2, std::max(N, ell));
  X.set_split(0, 1);
  X.add_term(0, mono(2, {{0, N}}), -a);
  X.add_term(1, mono(2, {{1, 1}}), C);
  X.add_term(1, mono(2, {{0, ell}}), c);
  X.set_exact(true);
  return Example{"claim41_geq", ExampleKind::vector_field, X, {}, {}};
}

Example claim41_less(const ExampleParams& p) {
  check_known(p, {"a", "N", "M", "B1", "nu", "b"});
  const Rational a = param_q(p, "a", 1), B1 = param_q(p, "B1", 1), b = param_q(p, "b", 1);
  const int N = param_int(p, "N", 3), M = param_int(p, "M", 2), nu = param_int(p, "nu", 3);
  require(M >= 2 && M < N, "claim41_less needs 2 <= M < N");
  require(nu >= M + 1, "nu must be at least M+1");
  require(a != 0 && B1 != 0 && b != 0, "a, B1 and b must be nonzero");
  PolyMap<Rational> X(2, 2, std::max(N, nu));
  X.set_split(1, 0);
  X.add_term(0, mono(2, {{0, N}}), -a);
  X.add_term(1, mono(2, {{0, M - 1}, {1, 1}}), B1);
  X.add_term(1, mono(2, {{0, nu}}), b);
  X.set_exact(true);
  return Example{"claim41_less", ExampleKind::vector_field, X, {}, {}};
}

Example claim42(const ExampleParams& p) {
  check_known(p, {"a", "N", "M", "B1"});
  const Rational a = param_q(p, "a", 1), B1 = param_q(p, "B1", 1);
  const int N = param_int(p, "N", 2), M = param_int(p, "M", 2);
  require(N >= 2 && M >= N, "claim42 needs M >= N >= 2");
  require(a != 0, "a must be nonzero");
  if (M == N) {
    const Rational ratio = -B1 / a;
    require(!(ratio.get_den() == 1 && ratio >= 2), "B1 + l a must be nonzero for every l >= 2");
  }
  PolyMap<Rational> X(2, 2, M + 1);
  X.set_split(1, 0);
  X.add_term(0, mono(2, {{0, N}}), -a);
  X.add_term(1, mono(2, {{0, M - 1}, {1, 1}}), B1);
  X.add_term(1, mono(2, {{0, M - 2}, {1, 2}}), Rational(1));
  X.add_term(1, mono(2, {{0, M + 1}}), Rational(1));
  X.set_exact(true);
  return Example{"claim42", ExampleKind::vector_field, X, {}, {}};
}

Example claim43(const ExampleParams& p) {
  check_known(p, {"a", "b", "N"});
  const Rational a = param_q(p, "a", 1), b = param_q(p, "b", 1);
  const int N = param_int(p, "N", 2);
  require(N >= 2, "N must be at least 2");
  require(a > 0 && b > 0, "claim43 needs a > 0 and b > 0");
  PolyMap<double> A0(2, 2, N + 1), A1(2, 2, N + 1), zero(2, 2, N + 1);
  for (auto* m : {&A0, &A1, &zero}) m->set_split(1, 0);
  A0.add_term(0, mono(2, {{0, N}}), -a.get_d());
  A0.add_term(1, mono(2, {{0, N - 1}, {1, 1}}), b.get_d());
  A1.add_term(1, mono(2, {{0, N + 1}}), 1.0);
  PeriodicField f;
  f.period = 2.0 * std::numbers::pi;
  f.modes.push_back(FieldMode{0, A0, zero});
  f.modes.push_back(FieldMode{1, A1, zero});
  Example e;
  e.name = "claim43";
  e.kind = ExampleKind::periodic_field;
  e.periodic = f;
  return e;
}

// x' = -1/4 (x+y)^3 x, y' = 1/4 (x+y)^3 y, and extra directions
// w_j' = 1/4 (x+y)^2 (x-y) w_j.
PolyMap<Rational> sitnikov_field(int extra) {
  const int n = 2 + extra;
  const int deg = 4;
  MPoly<Rational> x = MPoly<Rational>::variable(n, deg, 0), y = MPoly<Rational>::variable(n, deg, 1);
  const MPoly<Rational> s = x + y;
  const MPoly<Rational> s2 = mul(s, s);
  const MPoly<Rational> s3 = mul(s2, s);
  const Rational q(1, 4);
  std::vector<MPoly<Rational>> comps;
  comps.push_back(Rational(-q) * mul(s3, x));
  comps.push_back(q * mul(s3, y));
  const MPoly<Rational> lam = q * mul(s2, x - y);
  for (int j = 0; j < extra; ++j) comps.push_back(mul(lam, MPoly<Rational>::variable(n, deg, 2 + j)));
  PolyMap<Rational> X = from_mpolys(comps, deg);
  X.set_split(1 + extra, 0);
  X.set_exact(true);
  return X;
}

Example sitnikov_truncated(const ExampleParams& p) {
  check_known(p, {"n", "terms", "degree"});
  const int extra = param_int(p, "n", 0), terms = param_int(p, "terms", 30), degree = param_int(p, "degree", 93);
  require(extra >= 0, "n must be nonnegative");
  require(terms >= 1 && degree >= 4, "need terms >= 1 and degree >= 4");
  Example e;
  e.name = "sitnikov_truncated";
  e.kind = ExampleKind::map;
  e.generator = sitnikov_field(extra);
  e.polynomial = lie_time_one_map(e.generator, degree, terms);
  e.polynomial.set_split(1 + extra, 0);
  e.polynomial.set_exact(false);
  return e;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"claim41_geq", "claim41_less", "claim42", "claim43", "sitnikov_truncated"};
}

Example builtin_example(const std::string& name, const ExampleParams& params) {
  if (name == "claim41_geq") return claim41_geq(params);
  if (name == "claim41_less") return claim41_less(params);
  if (name == "claim42") return claim42(params);
  if (name == "claim43") return claim43(params);
  if (name == "sitnikov_truncated") return sitnikov_truncated(params);
  throw Error(ErrorCode::BadParams, "unknown example " + name);
}

namespace {

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
  int p = 0;
  while (p == 0) p = num(rng);
  Rational r(p, den(rng));
  r.canonicalize();
  return r;
}

Exponents random_exponents(int n, int k, std::mt19937_64& rng) {
  Exponents e(static_cast<std::size_t>(n), 0);
  std::uniform_int_distribution<int> var(0, n - 1);
  for (int i = 0; i < k; ++i) ++e[static_cast<std::size_t>(var(rng))];
  return e;
}

// x^k times a single variable other than x.
bool is_coupling(const Exponents& e, int k) {
  if (e[0] != k) return false;
  int rest = 0;
  for (std::size_t i = 1; i < e.size(); ++i) rest += e[i];
  return rest == 1;
}

bool is_pure_x(const Exponents& e, int k) { return total_degree(e) == k && e[0] == k; }

}  // namespace

PolyMap<Rational> random_form_map(const RandomMapOptions& o, std::mt19937_64& rng) {
  int N = 2, M = 2;
  switch (o.case_tag) {
    case CaseTag::m_less_n: N = 3; M = 2; break;
    case CaseTag::m_equal_n: N = 2; M = 2; break;
    case CaseTag::m_greater_n: N = 2; M = 3; break;
  }
  require(o.degree >= std::max(N, M) + 1, "degree too low for the requested case");
  const int d = o.d, dp = o.d_prime, n = 1 + d + dp;
  PolyMap<Rational> F = PolyMap<Rational>::identity(n, o.degree);
  F.set_split(d, dp);

  static const Rational a_choices[] = {Rational(1), Rational(1, 2), Rational(2), Rational(3, 2), Rational(-1),
                                       Rational(-1, 3)};
  std::uniform_int_distribution<int> pick_a(0, 5), pick_pos(0, 2), pick_c(0, 4), coin(0, 1);
  const Rational a = a_choices[pick_a(rng)];
  F.add_term(0, mono(n, {{0, N}}), -a);
  for (int i = 0; i < d; ++i) F.add_term(0, mono(n, {{0, N - 1}, {1 + i, 1}}), small_rational(rng));
  for (int j = 0; j < dp; ++j)
    if (coin(rng)) F.add_term(0, mono(n, {{0, N - 1}, {1 + d + j, 1}}), small_rational(rng));

  // B1 triangular with diagonal of the sign of a: B1 and B1 + l a Id stay invertible.
  static const Rational pos[] = {Rational(1), Rational(2), Rational(1, 2)};
  const int sign = a > 0 ? 1 : -1;
  for (int i = 0; i < d; ++i) {
    F.add_term(1 + i, mono(n, {{0, M - 1}, {1 + i, 1}}), Rational(sign) * pos[pick_pos(rng)]);
    for (int j = i + 1; j < d; ++j)
      if (coin(rng)) F.add_term(1 + i, mono(n, {{0, M - 1}, {1 + j, 1}}), small_rational(rng));
    for (int j = 0; j < dp; ++j) F.add_term(1 + i, mono(n, {{0, M - 1}, {1 + d + j, 1}}), small_rational(rng));
  }

  // C triangular with diagonal away from 1.
  static const Rational cdiag[] = {Rational(2), Rational(1, 2), Rational(-1), Rational(3), Rational(-2)};
  for (int i = 0; i < dp; ++i) {
    F.set_term(1 + d + i, mono(n, {{1 + d + i, 1}}), cdiag[pick_c(rng)]);
    for (int j = i + 1; j < dp; ++j)
      if (coin(rng)) F.add_term(1 + d + i, mono(n, {{1 + d + j, 1}}), small_rational(rng));
  }

  // Extra terms that keep the structural data unchanged.
  for (int c = 0; c < n; ++c) {
    const int lo = c == 0 ? N : (c <= d ? M : 2);
    std::uniform_int_distribution<int> deg(lo, o.degree);
    for (int t = 0; t < o.extra_terms; ++t) {
      Exponents e;
      for (int tries = 0; tries < 100; ++tries) {
        e = random_exponents(n, deg(rng), rng);
        const bool bad = (c == 0 && (is_pure_x(e, N) || is_coupling(e, N - 1))) ||
                         (c >= 1 && c <= d && (is_pure_x(e, M) || is_coupling(e, M - 1)));
        if (!bad) break;
        e.clear();
      }
      if (!e.empty()) F.add_term(c, e, small_rational(rng));
    }
  }
  F.set_exact(true);
  return F;
}

}  // namespace parabolic
