// parabolic-cli: load maps and fields, solve, fit, verify and emit artifacts.
//
// Exit codes: 0 ok, 1 usage, 2 schema violation, 3 solver or structure
// error, 4 I/O error.

#include <iostream>
#include <iterator>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "parabolic/examples.hpp"
#include "parabolic/gevrey.hpp"
#include "parabolic/invariance.hpp"
#include "parabolic/io.hpp"
#include "parabolic/jet_flow.hpp"

using namespace parabolic;

namespace {

enum Exit { ok = 0, usage = 1, schema = 2, module_error = 3, io_error = 4 };

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return read_text(path);
}

std::string source_name(const std::string& path) { return path.empty() || path == "-" ? "<stdin>" : path; }

Json load_json(const std::string& path) { return parse_json(read_input(path), source_name(path)); }

ExampleParams parse_params(const std::vector<std::string>& items) {
  ExampleParams p;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::BadParams, "expected key=value, got '" + s + "'");
    p[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return p;
}

void emit(const std::string& text) { std::cout << text; }
void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct SolveArgs {
  std::string map;
  int order = 0;
  std::string mode = "rational";
  std::string c = "0";
  std::string out;
};

template <Scalar T>
int run_solve(const SolveArgs& a) {
  const PolyMap<T> F = map_from_json<T>(load_json(a.map));
  const MapForm<T> form = extract_form(F);
  const FormalSolution<T> sol = solve_map_invariance(form, F, a.order, parse_scalar<T>(a.c));
  const std::string csv = series_csv(sol.K);
  if (a.out.empty()) {
    emit(csv);
  } else {
    write_text(a.out + ".csv", csv);
    write_text(a.out + ".json", solution_to_json(sol).dump(2) + "\n");
  }
  if (sol.certified_order < a.order)
    std::cerr << "note: map is a truncated jet; coefficients certified through order " << sol.certified_order << '\n';
  return ok;
}

template <Scalar T>
int run_solve_flow(const std::string& field, int order, const std::string& out) {
  const PolyMap<T> X = map_from_json<T>(load_json(field));
  const VectorSeries<T> phi = solve_flow_graph(X, order);
  const std::string csv = series_csv(phi);
  if (out.empty())
    emit(csv);
  else
    write_text(out, csv);
  return ok;
}

struct VerifyArgs {
  std::string map;
  std::string solution;
  double rho = 0.1;
  int samples = 20;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const PolyMap<double> F = map_from_json<double>(load_json(a.map));
  FormalSolution<double> sol = solution_from_json<double>(load_json(a.solution));
  sol.form = extract_form(F);
  if (sol.form.N != sol.R.N) throw Error(ErrorCode::NotFormalSolution, "solution and map disagree on N");
  const auto rows = certify(F, sol);
  bool all_ok = true;
  for (const auto& r : rows) all_ok = all_ok && r.ok;
  Json j{{"certified_order", sol.certified_order}, {"all_ok", all_ok}, {"certificate", certificate_to_json(rows)}};
  int status = ok;
  std::string scan;
  try {
    scan = scan_csv(sector_invariance_scan(F, sol, a.rho, a.samples));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SectorEscape) throw;
    j["sector_escape"] = e.what();
    status = module_error;
  }
  if (a.out.empty()) {
    emit(j);
    if (!scan.empty()) emit(scan);
  } else {
    write_text(a.out + ".json", j.dump(2) + "\n");
    if (!scan.empty()) write_text(a.out + ".csv", scan);
  }
  if (status != ok) std::cerr << "error: " << j["sector_escape"].get<std::string>() << '\n';
  return status;
}

Json example_json(const std::string& name, const ExampleParams& params, std::uint64_t seed) {
  auto random_case = [&](CaseTag tag) {
    RandomMapOptions o;
    o.case_tag = tag;
    for (const auto& [k, v] : params) {
      if (k == "degree")
        o.degree = std::stoi(v);
      else if (k == "extra_terms")
        o.extra_terms = std::stoi(v);
      else
        throw Error(ErrorCode::BadParams, "unknown parameter '" + k + "'");
    }
    std::mt19937_64 rng(seed);
    Json j = map_to_json(random_form_map(o, rng));
    j["kind"] = "map";
    return j;
  };
  if (name == "random_m_less_n") return random_case(CaseTag::m_less_n);
  if (name == "random_m_equal_n") return random_case(CaseTag::m_equal_n);
  if (name == "random_m_greater_n") return random_case(CaseTag::m_greater_n);
  const Example e = builtin_example(name, params);
  if (e.kind == ExampleKind::periodic_field) {
    Json j = field_to_json(e.periodic);
    j["kind"] = "periodic_field";
    return j;
  }
  Json j = map_to_json(e.polynomial);
  j["kind"] = e.kind == ExampleKind::map ? "map" : "vector_field";
  return j;
}

BoundParams bound_params(const ExampleParams& p) {
  BoundParams b;
  for (const auto& [k, v] : p) {
    if (k == "a")
      b.a = parse_rational(v);
    else if (k == "b")
      b.b = parse_rational(v);
    else if (k == "N")
      b.N = std::stoi(v);
    else if (k == "beta")
      b.beta = parse_rational(v);
    else if (k == "kmax")
      b.k_max = std::stoi(v);
    else if (k == "numax")
      b.nu_max = std::stoi(v);
    else
      throw Error(ErrorCode::BadParams, "unknown parameter '" + k + "'");
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal parabolic invariant manifolds: solve F o K = K o R and related diagnostics"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s_solve = app.add_subcommand("solve", "Solve F o K = K o R for a map; coefficient CSV (and JSON with --out)");
  s_solve->add_option("--map", solve.map, "Map JSON (default stdin)");
  s_solve->add_option("--order", solve.order, "Highest order of K")->required()->check(CLI::Range(2, 100000));
  s_solve->add_option("--mode", solve.mode, "Coefficient arithmetic")->check(CLI::IsMember({"rational", "float"}));
  s_solve->add_option("--c", solve.c, "Free coefficient K^x_N");
  s_solve->add_option("--out", solve.out, "Write PREFIX.csv and PREFIX.json instead of stdout");

  std::string sf_field, sf_mode = "rational", sf_out;
  int sf_order = 0;
  auto* s_sflow = app.add_subcommand("solve-flow", "Graph jet of the invariant curve of an autonomous field");
  s_sflow->add_option("--field", sf_field, "Vector field in map JSON format (default stdin)");
  s_sflow->add_option("--order", sf_order, "Highest order of the graph")->required()->check(CLI::Range(2, 100000));
  s_sflow->add_option("--mode", sf_mode, "Coefficient arithmetic")->check(CLI::IsMember({"rational", "float"}));
  s_sflow->add_option("--out", sf_out, "Output CSV path");

  std::string fl_field, fl_out;
  int fl_order = 0, fl_steps = 4096;
  double fl_period = 1.0;
  bool fl_fixed = false;
  auto* s_flow = app.add_subcommand("flow", "Jet of the time-T map of a T-periodic field (float)");
  s_flow->add_option("--field", fl_field, "Periodic field JSON, or an autonomous field in map JSON (default stdin)");
  s_flow->add_option("--order", fl_order, "Jet degree")->required()->check(CLI::Range(2, 1000));
  s_flow->add_option("--steps", fl_steps, "RK4 steps per period (initial value when adaptive)")->check(CLI::PositiveNumber);
  s_flow->add_flag("--fixed", fl_fixed, "Use exactly --steps steps, no step doubling");
  s_flow->add_option("--period", fl_period, "Period for an autonomous field")->check(CLI::PositiveNumber);
  s_flow->add_option("--out", fl_out, "Output JSON path");

  std::string fit_in;
  double fit_tail = 0.5;
  auto* s_fit = app.add_subcommand("fit", "Gevrey-order fit of a coefficient CSV");
  s_fit->add_option("--in", fit_in, "Coefficient CSV (default stdin)");
  s_fit->add_option("--tail", fit_tail, "Fraction of orders used, from the top")->check(CLI::Range(1e-9, 1.0));

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "Residual certificate and sector scan for a float solution");
  s_verify->add_option("--map", verify.map, "Map JSON")->required();
  s_verify->add_option("--solution", verify.solution, "Solution JSON written by solve --out")->required();
  s_verify->add_option("--rho", verify.rho, "Sector radius")->check(CLI::PositiveNumber);
  s_verify->add_option("--samples", verify.samples, "Sample points on the sector axis")->check(CLI::Range(1, 100000));
  s_verify->add_option("--out", verify.out, "Write PREFIX.json and PREFIX.csv instead of stdout");

  std::vector<std::string> bound_items;
  auto* s_bounds = app.add_subcommand("bounds", "Check the factorial bound lemmas on a grid");
  s_bounds->add_option("--param", bound_items, "a=, b=, N=, beta=, kmax=, numax=");

  std::string ex_name;
  std::vector<std::string> ex_items;
  std::uint64_t ex_seed = 1;
  auto* s_example = app.add_subcommand("example", "Emit a built-in field or map as JSON");
  s_example->add_option("name", ex_name, "Example name")->required();
  s_example->add_option("--param", ex_items, "Example parameter key=value");
  s_example->add_option("--seed", ex_seed, "Seed for random_m_less_n, random_m_equal_n, random_m_greater_n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*s_solve) return solve.mode == "rational" ? run_solve<Rational>(solve) : run_solve<double>(solve);
    if (*s_sflow)
      return sf_mode == "rational" ? run_solve_flow<Rational>(sf_field, sf_order, sf_out)
                                   : run_solve_flow<double>(sf_field, sf_order, sf_out);
    if (*s_flow) {
      const Json j = load_json(fl_field);
      const PeriodicField X =
          is_periodic_field_json(j) ? field_from_json(j) : autonomous_field(map_from_json<double>(j), fl_period);
      PolyMap<double> P;
      if (fl_fixed) {
        P = flow_jet_fixed(X, fl_order, fl_steps);
      } else {
        FlowOptions o;
        o.steps = fl_steps;
        FlowStats st;
        P = flow_jet(X, fl_order, o, &st);
        if (!st.converged)
          std::cerr << "warning: step doubling stopped at " << st.steps << " steps, relative change "
                    << st.rel_change << '\n';
      }
      Json out = map_to_json(P);
      out["kind"] = "map";
      if (fl_out.empty())
        emit(out);
      else
        write_text(fl_out, out.dump(2) + "\n");
      return ok;
    }
    if (*s_fit) {
      emit(fit_to_json(gevrey_fit_log(log_norms_from_csv(read_input(fit_in)), fit_tail)));
      return ok;
    }
    if (*s_verify) return run_verify(verify);
    if (*s_bounds) {
      emit(bounds_to_json(check_bound_lemmas(bound_params(parse_params(bound_items)))));
      return ok;
    }
    if (*s_example) {
      emit(example_json(ex_name, parse_params(ex_items), ex_seed));
      return ok;
    }
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return schema;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::IoError) return io_error;
    if (e.code() == ErrorCode::SchemaError) return schema;
    return module_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: BadParams: invalid number (" << e.what() << ")\n";
    return module_error;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: BadParams: number out of range (" << e.what() << ")\n";
    return module_error;
  }
  return usage;
}
