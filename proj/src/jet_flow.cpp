#include "parabolic/jet_flow.hpp"

#include <cmath>
#include <numbers>

namespace parabolic {

int PeriodicField::dim() const { return modes.empty() ? 0 : modes.front().cos_map.dim_in(); }

int PeriodicField::degree() const {
  int d = 0;
  for (const auto& m : modes) d = std::max({d, m.cos_map.degree(), m.sin_map.degree()});
  return d;
}

int PeriodicField::d() const { return modes.empty() ? 0 : modes.front().cos_map.d(); }
int PeriodicField::d_prime() const { return modes.empty() ? 0 : modes.front().cos_map.d_prime(); }

void PeriodicField::validate() const {
  if (!(period > 0) || !std::isfinite(period)) throw Error(ErrorCode::BadParams, "period must be positive");
  if (modes.empty()) throw Error(ErrorCode::BadParams, "field has no modes");
  const int n = dim();
  for (const auto& m : modes) {
    if (m.omega_multiple < 0) throw Error(ErrorCode::BadParams, "negative frequency multiple");
    for (const auto* p : {&m.cos_map, &m.sin_map}) {
      if (p->dim_in() != n || p->dim_out() != n) throw Error(ErrorCode::DimMismatch, "field modes differ in dimension");
      const Exponents zero(static_cast<std::size_t>(n), 0);
      for (int c = 0; c < n; ++c)
        if (p->coeff(c, zero) != 0.0) throw Error(ErrorCode::NotFixedOrigin, "X(0, t) != 0");
    }
  }
}

PolyMap<double> PeriodicField::at(double t) const {
  const int n = dim();
  PolyMap<double> X(n, n, degree());
  X.set_split(d(), d_prime());
  for (const auto& m : modes) {
    const double w = m.omega_multiple * 2.0 * std::numbers::pi / period;
    const double cs = std::cos(w * t), sn = std::sin(w * t);
    for (int c = 0; c < n; ++c) {
      if (cs != 0.0)
        for (const auto& [e, v] : m.cos_map.terms(c)) X.add_term(c, e, cs * v);
      if (sn != 0.0 && m.omega_multiple != 0)
        for (const auto& [e, v] : m.sin_map.terms(c)) X.add_term(c, e, sn * v);
    }
  }
  return X;
}

PeriodicField autonomous_field(const PolyMap<double>& X, double period) {
  PeriodicField f;
  f.period = period;
  PolyMap<double> zero(X.dim_in(), X.dim_out(), X.degree());
  zero.copy_meta(X);
  f.modes.push_back(FieldMode{0, X, zero});
  return f;
}

namespace {

using State = std::vector<MPoly<double>>;

State rhs(const PeriodicField& X, const State& s, double t) { return substitute_poly(X.at(t), s); }

State combine(const State& s, double h, const State& k) {
  State out = s;
  for (std::size_t i = 0; i < s.size(); ++i) out[i].axpy(h, k[i]);
  return out;
}

State integrate(const PeriodicField& X, int degree, int steps) {
  const int n = X.dim();
  State s;
  for (int i = 0; i < n; ++i) s.push_back(MPoly<double>::variable(n, degree, i));
  const double h = X.period / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const State k1 = rhs(X, s, t);
    const State k2 = rhs(X, combine(s, 0.5 * h, k1), t + 0.5 * h);
    const State k3 = rhs(X, combine(s, 0.5 * h, k2), t + 0.5 * h);
    const State k4 = rhs(X, combine(s, h, k3), t + h);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i].axpy(h / 6.0, k1[i]);
      s[i].axpy(h / 3.0, k2[i]);
      s[i].axpy(h / 3.0, k3[i]);
      s[i].axpy(h / 6.0, k4[i]);
    }
  }
  for (const auto& p : s)
    for (double v : p.coeffs())
      if (!std::isfinite(v)) throw Error(ErrorCode::IntegrationFailure, "non-finite coefficient after integration");
  return s;
}

PolyMap<double> to_map(const PeriodicField& X, const State& s, int degree) {
  PolyMap<double> out = from_mpolys(s, degree);
  out.set_split(X.d(), X.d_prime());
  return out;
}

// max over degrees k of |a_k - b_k|_inf / |b_k|_inf.
double relative_change(const State& a, const State& b) {
  const Layout& L = a.front().layout();
  std::vector<double> diff(static_cast<std::size_t>(L.degree()) + 1, 0.0), size(diff.size(), 0.0);
  for (std::size_t c = 0; c < a.size(); ++c)
    for (std::size_t i = 0; i < L.size(); ++i) {
      const auto k = static_cast<std::size_t>(L.total_degree(i));
      diff[k] = std::max(diff[k], std::fabs(a[c].coeffs()[i] - b[c].coeffs()[i]));
      size[k] = std::max(size[k], std::fabs(b[c].coeffs()[i]));
    }
  double r = 0;
  for (std::size_t k = 0; k < diff.size(); ++k)
    if (size[k] > 0) r = std::max(r, diff[k] / size[k]);
  return r;
}

}  // namespace

PolyMap<double> flow_jet_fixed(const PeriodicField& X, int degree, int steps) {
  X.validate();
  if (degree < 1 || steps < 1) throw Error(ErrorCode::BadParams, "flow needs degree >= 1 and steps >= 1");
  return to_map(X, integrate(X, degree, steps), degree);
}

PolyMap<double> flow_jet(const PeriodicField& X, int degree, const FlowOptions& opts, FlowStats* stats) {
  X.validate();
  if (degree < 1 || opts.steps < 1) throw Error(ErrorCode::BadParams, "flow needs degree >= 1 and steps >= 1");
  int steps = opts.steps;
  State s = integrate(X, degree, steps);
  FlowStats st;
  st.steps = steps;
  if (opts.adaptive) {
    st.converged = false;
    while (2 * steps <= opts.max_steps) {
      steps *= 2;
      State finer = integrate(X, degree, steps);
      st.rel_change = relative_change(s, finer);
      s = std::move(finer);
      st.steps = steps;
      if (st.rel_change < opts.rel_tol) {
        st.converged = true;
        break;
      }
    }
  }
  if (stats) *stats = st;
  return to_map(X, s, degree);
}

template <Scalar T>
PolyMap<T> lie_time_one_map(const PolyMap<T>& X, int degree, int terms) {
  const int n = X.dim_in();
  if (X.dim_out() != n) throw Error(ErrorCode::DimMismatch, "vector field is not square");
  std::vector<MPoly<T>> field;
  for (int i = 0; i < n; ++i) field.push_back(to_mpoly(X, i, degree));
  std::vector<MPoly<T>> out;
  for (int c = 0; c < n; ++c) {
    MPoly<T> term = MPoly<T>::variable(n, degree, c);
    MPoly<T> sum = term;
    for (int k = 1; k <= terms; ++k) {
      MPoly<T> next(term.layout_ptr());
      for (int i = 0; i < n; ++i) {
        const MPoly<T> di = derivative(term, i);
        if (!di.is_zero()) mul_add(di, field[static_cast<std::size_t>(i)], next);
      }
      next *= T(1) / T(k);
      if (next.is_zero()) break;
      sum += next;
      term = std::move(next);
    }
    out.push_back(std::move(sum));
  }
  PolyMap<T> map = from_mpolys(out, degree);
  map.set_split(X.d(), X.d_prime());
  return map;
}

template PolyMap<Rational> lie_time_one_map(const PolyMap<Rational>&, int, int);
template PolyMap<double> lie_time_one_map(const PolyMap<double>&, int, int);

}  // namespace parabolic
