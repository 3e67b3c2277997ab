#include "parabolic/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace parabolic {

template <>
Json scalar_json(const Rational& v) {
  return to_string(v);
}

template <>
Json scalar_json(const double& v) {
  if (std::isfinite(v)) return v;
  return to_string(v);
}

template <Scalar T>
T scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
    if (j.is_number()) {
      if constexpr (ScalarTraits<T>::exact)
        return parse_rational(j.dump());
      else
        return j.get<double>();
    }
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
  throw SchemaError(where, "expected a number or a \"p/q\" string");
}

template Rational scalar_from_json(const Json&, const std::string&);
template double scalar_from_json(const Json&, const std::string&);

std::string component_name(int c, int d, int d_prime) {
  if (c == 0) return "x";
  if (c <= d) return d == 1 ? "y" : "y_" + std::to_string(c);
  const int j = c - d;
  return d_prime == 1 ? "z" : "z_" + std::to_string(j);
}

namespace {

int component_index(const std::string& name, int d, int d_prime, const std::string& where) {
  if (name == "x") return 0;
  auto indexed = [&](char letter, int count, int offset) -> int {
    if (name.size() == 1 && name[0] == letter && count == 1) return offset + 1;
    if (name.size() > 2 && name[0] == letter && name[1] == '_') {
      int i = 0;
      try {
        std::size_t used = 0;
        i = std::stoi(name.substr(2), &used);
        if (used != name.size() - 2) i = 0;
      } catch (const std::exception&) {
        i = 0;
      }
      if (i >= 1 && i <= count) return offset + i;
    }
    return -1;
  };
  int c = indexed('y', d, 0);
  if (c < 0) c = indexed('z', d_prime, d);
  if (c < 0) throw SchemaError(where, "unknown component target '" + name + "'");
  return c;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where, std::string("missing key '") + key + "'");
  return *it;
}

int int_member(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + "/" + key, "expected an integer");
  return v.get<int>();
}

}  // namespace

template <Scalar T>
Json map_to_json(const PolyMap<T>& F) {
  Json j;
  j["dims"] = {{"d", F.d()}, {"d_prime", F.d_prime()}};
  j["degree"] = F.degree();
  j["exact_polynomial"] = F.exact();
  Json comps = Json::array();
  for (int c = 0; c < F.dim_out(); ++c) {
    Json terms = Json::array();
    for (const auto& [e, v] : F.terms(c)) terms.push_back({{"exps", e}, {"coeff", scalar_json(v)}});
    comps.push_back({{"target", component_name(c, F.d(), F.d_prime())}, {"terms", terms}});
  }
  j["components"] = comps;
  return j;
}

template <Scalar T>
PolyMap<T> map_from_json(const Json& j) {
  const Json& dims = member(j, "dims", "");
  const int d = int_member(dims, "d", "/dims");
  const int dp = int_member(dims, "d_prime", "/dims");
  if (d < 0 || dp < 0) throw SchemaError("/dims", "dimensions must be nonnegative");
  const int degree = int_member(j, "degree", "");
  if (degree < 0) throw SchemaError("/degree", "degree must be nonnegative");
  const int n = 1 + d + dp;
  PolyMap<T> F(n, n, degree);
  F.set_split(d, dp);
  if (auto it = j.find("exact_polynomial"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaError("/exact_polynomial", "expected a boolean");
    F.set_exact(it->get<bool>());
  }
  const Json& comps = member(j, "components", "");
  if (!comps.is_array()) throw SchemaError("/components", "expected an array");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const std::string where = "/components/" + std::to_string(ci);
    const Json& tj = member(comps[ci], "target", where);
    if (!tj.is_string()) throw SchemaError(where + "/target", "expected a string");
    const int c = component_index(tj.get<std::string>(), d, dp, where + "/target");
    if (seen[static_cast<std::size_t>(c)]) throw SchemaError(where + "/target", "duplicate component");
    seen[static_cast<std::size_t>(c)] = true;
    const Json& terms = member(comps[ci], "terms", where);
    if (!terms.is_array()) throw SchemaError(where + "/terms", "expected an array");
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
      const std::string tw = where + "/terms/" + std::to_string(ti);
      const Json& ej = member(terms[ti], "exps", tw);
      if (!ej.is_array() || static_cast<int>(ej.size()) != n)
        throw SchemaError(tw + "/exps", "expected " + std::to_string(n) + " exponents");
      Exponents e;
      for (const auto& x : ej) {
        if (!x.is_number_integer() || x.get<int>() < 0) throw SchemaError(tw + "/exps", "exponents must be integers >= 0");
        e.push_back(x.get<int>());
      }
      if (total_degree(e) > degree) throw SchemaError(tw + "/exps", "term degree exceeds the map degree");
      F.add_term(c, e, scalar_from_json<T>(member(terms[ti], "coeff", tw), tw + "/coeff"));
    }
  }
  return F;
}

template Json map_to_json(const PolyMap<Rational>&);
template Json map_to_json(const PolyMap<double>&);
template PolyMap<Rational> map_from_json(const Json&);
template PolyMap<double> map_from_json(const Json&);

Json field_to_json(const PeriodicField& X) {
  Json modes = Json::array();
  for (const auto& m : X.modes)
    modes.push_back({{"omega_multiple", m.omega_multiple}, {"cos_map", map_to_json(m.cos_map)}, {"sin_map", map_to_json(m.sin_map)}});
  return Json{{"period", X.period}, {"modes", modes}};
}

bool is_periodic_field_json(const Json& j) { return j.is_object() && j.contains("modes"); }

PeriodicField field_from_json(const Json& j) {
  PeriodicField X;
  const Json& p = member(j, "period", "");
  if (!p.is_number()) throw SchemaError("/period", "expected a number");
  X.period = p.get<double>();
  const Json& modes = member(j, "modes", "");
  if (!modes.is_array() || modes.empty()) throw SchemaError("/modes", "expected a nonempty array");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string where = "/modes/" + std::to_string(i);
    FieldMode m;
    m.omega_multiple = int_member(modes[i], "omega_multiple", where);
    try {
      m.cos_map = map_from_json<double>(member(modes[i], "cos_map", where));
      if (modes[i].contains("sin_map")) {
        m.sin_map = map_from_json<double>(modes[i]["sin_map"]);
      } else {
        m.sin_map = PolyMap<double>(m.cos_map.dim_in(), m.cos_map.dim_out(), m.cos_map.degree());
        m.sin_map.copy_meta(m.cos_map);
      }
    } catch (const SchemaError& e) {
      throw SchemaError(where + e.location(), e.detail());
    }
    X.modes.push_back(std::move(m));
  }
  return X;
}

template <Scalar T>
Json matrix_json(const Matrix<T>& A) {
  Json rows = Json::array();
  for (int i = 0; i < A.rows(); ++i) {
    Json r = Json::array();
    for (int k = 0; k < A.cols(); ++k) r.push_back(scalar_json(A(i, k)));
    rows.push_back(r);
  }
  return rows;
}

template <Scalar T>
Json vector_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

template <Scalar T>
Json form_to_json(const MapForm<T>& f) {
  auto [gp, gq] = f.gamma_fraction();
  return Json{{"d", f.d},
              {"d_prime", f.d_prime},
              {"N", f.N},
              {"M", f.M},
              {"case", std::string(case_name(f.case_tag()))},
              {"L", f.L()},
              {"gamma", std::to_string(gp) + "/" + std::to_string(gq)},
              {"alpha", "1/" + std::to_string(f.N - 1)},
              {"a", scalar_json(f.a)},
              {"v", vector_json(f.v)},
              {"w", vector_json(f.w)},
              {"B1", matrix_json(f.B1)},
              {"B2", matrix_json(f.B2)},
              {"C", matrix_json(f.C)},
              {"coupling_defaulted", f.coupling_defaulted},
              {"order_budget", f.order_budget}};
}

template Json form_to_json(const MapForm<Rational>&);
template Json form_to_json(const MapForm<double>&);

Json certificate_to_json(const std::vector<CertificateRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back({{"n", r.n}, {"x_through", r.x_through}, {"y_through", r.y_through}, {"z_through", r.z_through}, {"ok", r.ok}});
  return a;
}

template <Scalar T>
Json solution_to_json(const FormalSolution<T>& sol) {
  Json K = Json::array();
  for (int l = 0; l <= sol.K.order(); ++l) K.push_back(vector_json(sol.K.coefficient(l)));
  return Json{{"mode", std::string(kind_name(ScalarTraits<T>::kind))},
              {"R", {{"N", sol.R.N}, {"a", scalar_json(sol.R.a)}, {"b", scalar_json(sol.R.b)}}},
              {"c", scalar_json(sol.c)},
              {"requested_order", sol.requested_order},
              {"certified_order", sol.certified_order},
              {"form", form_to_json(sol.form)},
              {"K", K},
              {"certificate", certificate_to_json(sol.certificate)}};
}

template <Scalar T>
FormalSolution<T> solution_from_json(const Json& j) {
  FormalSolution<T> sol;
  const Json& R = member(j, "R", "");
  sol.R.N = int_member(R, "N", "/R");
  sol.R.a = scalar_from_json<T>(member(R, "a", "/R"), "/R/a");
  sol.R.b = scalar_from_json<T>(member(R, "b", "/R"), "/R/b");
  sol.c = scalar_from_json<T>(member(j, "c", ""), "/c");
  sol.requested_order = int_member(j, "requested_order", "");
  sol.certified_order = int_member(j, "certified_order", "");
  const Json& K = member(j, "K", "");
  if (!K.is_array() || K.empty()) throw SchemaError("/K", "expected a nonempty array of coefficient rows");
  const std::size_t dim = K[0].is_array() ? K[0].size() : 0;
  if (dim == 0) throw SchemaError("/K/0", "expected a nonempty row");
  VectorSeries<T> S(static_cast<int>(dim), static_cast<int>(K.size()) - 1);
  for (std::size_t l = 0; l < K.size(); ++l) {
    const std::string where = "/K/" + std::to_string(l);
    if (!K[l].is_array() || K[l].size() != dim) throw SchemaError(where, "row length differs");
    for (std::size_t i = 0; i < dim; ++i)
      S.set(static_cast<int>(l), static_cast<int>(i), scalar_from_json<T>(K[l][i], where + "/" + std::to_string(i)));
  }
  sol.K = S;
  if (sol.certified_order > S.order()) throw SchemaError("/certified_order", "exceeds the number of coefficient rows");
  return sol;
}

template Json solution_to_json(const FormalSolution<Rational>&);
template Json solution_to_json(const FormalSolution<double>&);
template FormalSolution<Rational> solution_from_json(const Json&);
template FormalSolution<double> solution_from_json(const Json&);

namespace {

std::string csv_scalar(const Rational& v) { return to_string(v); }
std::string csv_scalar(double v) { return to_string_17(v); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

template <Scalar T>
std::string series_csv(const VectorSeries<T>& K) {
  std::ostringstream os;
  os << "l";
  for (int i = 0; i < K.dim(); ++i) os << ",comp_" << i;
  os << ",norm_inf\n";
  for (int l = 0; l <= K.order(); ++l) {
    os << l;
    for (int i = 0; i < K.dim(); ++i) os << ',' << csv_scalar(K.coeff(l, i));
    os << ',' << to_string_17(K.norm_inf(l)) << '\n';
  }
  return os.str();
}

template std::string series_csv(const VectorSeries<Rational>&);
template std::string series_csv(const VectorSeries<double>&);

std::vector<double> log_norms_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw SchemaError("csv:1", "empty coefficient table");
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "l") throw SchemaError("csv:1", "header must start with 'l'");
  std::vector<std::size_t> comp_cols;
  std::size_t norm_col = header.size();
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].rfind("comp_", 0) == 0) comp_cols.push_back(i);
    if (header[i] == "norm_inf") norm_col = i;
  }
  if (comp_cols.empty() && norm_col == header.size())
    throw SchemaError("csv:1", "no comp_* or norm_inf columns");
  std::vector<double> logs;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    const std::string where = "csv:" + std::to_string(lineno);
    if (cells.size() != header.size()) throw SchemaError(where, "row length differs from the header");
    int l = 0;
    try {
      l = std::stoi(cells[0]);
    } catch (const std::exception&) {
      throw SchemaError(where, "order column is not an integer");
    }
    if (l < 0) throw SchemaError(where, "negative order");
    double best = -std::numeric_limits<double>::infinity();
    try {
      if (!comp_cols.empty()) {
        for (auto c : comp_cols) best = std::max(best, log_abs(parse_rational(cells[c])));
      } else {
        const double v = parse_double(cells[norm_col]);
        best = v == 0.0 ? best : std::log(std::fabs(v));
      }
    } catch (const Error& e) {
      throw SchemaError(where, e.what());
    }
    if (static_cast<int>(logs.size()) <= l) logs.resize(static_cast<std::size_t>(l) + 1, -std::numeric_limits<double>::infinity());
    logs[static_cast<std::size_t>(l)] = best;
  }
  return logs;
}

Json fit_to_json(const GevreyFit& f) {
  return Json{{"gamma", f.gamma},
              {"gamma_unclamped", f.gamma_unclamped},
              {"log_c1", f.log_c1},
              {"log_c2", f.log_c2},
              {"residual_rms", f.residual_rms},
              {"n_range", {f.n_min, f.n_max}},
              {"points", f.points}};
}

Json bounds_to_json(const BoundReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points)
    pts.push_back({{"lemma", p.lemma},
                   {"k", p.k},
                   {"nu", p.nu},
                   {"lhs", p.lhs},
                   {"rhs", p.rhs},
                   {"slack", p.slack},
                   {"pass", p.pass},
                   {"vacuous", p.vacuous},
                   {"exact", p.exact}});
  return Json{{"a", to_string(r.a)},
              {"b", to_string(r.b)},
              {"N", r.N},
              {"beta", to_string(r.beta)},
              {"grid", {{"k_max", r.k_max}, {"nu_max", r.nu_max}}},
              {"all_pass", r.all_pass},
              {"failures", r.failures},
              {"worst_slack", std::isfinite(r.worst_slack) ? Json(r.worst_slack) : Json(nullptr)},
              {"points", pts}};
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "t,n_star,residual,margin\n";
  for (const auto& r : rows)
    os << to_string_17(r.t) << ',' << r.n_star << ',' << to_string_17(r.residual) << ',' << to_string_17(r.margin) << '\n';
  return os.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path);
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(source, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace parabolic
