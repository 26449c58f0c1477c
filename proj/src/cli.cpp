#include "yamabe/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "yamabe/error.hpp"
#include "yamabe/serialization.hpp"

namespace yamabe::cli {

namespace {

constexpr unsigned long long kDefaultSeed = 20240607ULL;

struct Settings {
  std::string format = "json";
  std::string out_path;
  double tol_ode = 1e-10;
  double tol_quad = 1e-12;
  double tol_bisect = 1e-12;
  int grid = 4096;
  std::string t_grid;
  bool use_printed_alpha = true;
  unsigned long long seed = kDefaultSeed;
  bool profile = false;
  int max_pairs = 8;
};

/// Result of a subcommand before formatting.
struct Output {
  Output() = default;
  Output(std::string q, Json v, std::string m, std::string a, Json r)
      : quantity(std::move(q)), value(std::move(v)), method(std::move(m)), anchor(std::move(a)), result(std::move(r)) {}

  std::string quantity;
  Json value;
  std::string method;
  std::string anchor;
  Json result;
  std::optional<CsvTable> table;
  int exit_code = kExitOk;
};

ShootingConfig shooting(const Settings& s) {
  ShootingConfig c;
  c.ode_tol = s.tol_ode;
  c.bisect_tol = s.tol_bisect;
  c.keep_profile = s.profile;
  return c;
}

SearchOptions search(const Settings& s) {
  SearchOptions o;
  o.quad_tol = s.tol_quad;
  o.profile_points = s.grid;
  o.with_profile = s.profile;
  o.j_max = s.max_pairs;
  return o;
}

std::vector<double> parse_t_grid(const std::string& spec) {
  if (spec.empty()) return default_t_grid();
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  detail::require(parts.size() == 3, "--t-grid expects min:max:points");
  try {
    return geometric_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("--t-grid expects min:max:points");
  }
}

Json tolerances(const Settings& s) {
  return {{"ode", number(s.tol_ode)}, {"quad", number(s.tol_quad)}, {"bisect", number(s.tol_bisect)}, {"grid", s.grid}};
}

void emit(const Output& o, const Settings& s, std::ostream& out) {
  if (s.format == "csv") {
    CsvTable table = o.table ? *o.table : key_value_table(o.result);
    table.comments.insert(table.comments.begin(), "quantity=" + o.quantity);
    write_csv(out, table, s.seed);
    return;
  }
  Json doc{{"schema", 1},
           {"quantity", o.quantity},
           {"value", o.value},
           {"method", o.method},
           {"anchor", o.anchor},
           {"tolerances", tolerances(s)},
           {"seed", s.seed},
           {"result", o.result}};
  out << doc.dump(2) << '\n';
}

ModelManifold sphere_or_circle(int d) { return ModelManifold::round_sphere(d); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Yamabe constants of Riemannian products: bounds, spectra, ground states, periodic solutions",
               "yamabe-cli"};
  app.fallthrough();
  app.require_subcommand(1);
  Settings s;
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", s.out_path, "Write output to this file instead of stdout");
  app.add_option("--tol-ode", s.tol_ode, "Local error tolerance of ODE integration")->check(CLI::PositiveNumber);
  app.add_option("--tol-quad", s.tol_quad, "Relative tolerance of period quadratures")->check(CLI::PositiveNumber);
  app.add_option("--tol-bisect", s.tol_bisect, "Bisection stopping width for the shooting parameter")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", s.grid, "Profile and discrete-operator grid size")->check(CLI::Range(16, 1 << 22));
  app.add_option("--t-grid", s.t_grid, "Sweep grid min:max:points (geometric)");
  app.add_flag("--use-paper-alpha,!--computed-alpha", s.use_printed_alpha,
               "Tables use the printed alpha values (default) or solver values");
  app.add_option("--seed", s.seed, "Seed for randomized checks");
  app.add_flag("--profile", s.profile, "Include sampled profiles in JSON output");
  app.add_option("--max-pairs", s.max_pairs, "Largest number of zero pairs searched")->check(CLI::Range(1, 64));

  std::function<Output()> action;

  std::vector<int> dims;
  auto* c_constants = app.add_subcommand("constants", "a_k, p_k for k, or A_{m,n}, B_{m,n} for m n");
  c_constants->add_option("dims", dims, "k | m n")->required()->expected(1, 2);
  c_constants->callback([&] {
    action = [&] {
      Output o;
      o.method = "closed form";
      o.anchor = "dimensional-constants";
      if (dims.size() == 1) {
        const DimData d = dim_data(dims[0]);
        o.quantity = "dim_data";
        o.value = number(d.a);
        o.result = to_json(d);
      } else {
        const ProductConstants c = product_constants(dims[0], dims[1]);
        o.quantity = "product_constants";
        o.value = number(c.A);
        o.result = to_json(c);
        o.result["dims"] = to_json(dim_data(dims[0] + dims[1]));
      }
      return o;
    };
  });

  int d_arg = 0;
  auto* c_sphere = app.add_subcommand("sphere-yamabe", "Y(S^d) = d(d-1) omega_d^{2/d}");
  c_sphere->add_option("d", d_arg)->required();
  c_sphere->callback([&] {
    action = [&] {
      const double y = sphere_yamabe(d_arg);
      return Output{"sphere_yamabe", number(y), "closed form", "sphere-yamabe-constant", to_json(sphere_data(d_arg))};
    };
  });

  int k_arg = 0;
  double y_arg = 0.0;
  auto* c_ah = app.add_subcommand("ah-bounds", "2^{2/k} Y <= Y^2 <= [Y^{k/2} + Y(S^k)^{k/2}]^{2/k}");
  c_ah->add_option("k", k_arg)->required();
  c_ah->add_option("Y", y_arg)->required();
  c_ah->callback([&] {
    action = [&] {
      const Sandwich b = ah_sandwich(k_arg, y_arg);
      Json r{{"k", k_arg}, {"Y", number(y_arg)}, {"lower", number(b.lower)}, {"upper", number(b.upper)}};
      return Output{"second_yamabe_sandwich", Json{{"lower", number(b.lower)}, {"upper", number(b.upper)}},
                    "closed form", "second-yamabe-sandwich", r};
    };
  });

  int m_arg = 0, n_arg = 0;
  auto* c_gn = app.add_subcommand("gn", "alpha_{m,n} from the radial ground state on R^n");
  c_gn->add_option("m", m_arg)->required();
  c_gn->add_option("n", n_arg)->required();
  c_gn->callback([&] {
    action = [&] {
      const GroundState g = shoot_ground_state(m_arg, n_arg, shooting(s));
      return Output{"alpha", number(g.alpha), "shooting + Simpson + Bessel tail", "gagliardo-nirenberg-constant",
                    to_json(g, s.profile)};
    };
  });

  auto* c_gnc = app.add_subcommand("gn-closed", "alpha_{m,1} from the explicit sech profile");
  c_gnc->add_option("m", m_arg)->required();
  c_gnc->callback([&] {
    action = [&] {
      const double alpha = closed_form_alpha_n1(m_arg);
      const double p = dim_data(m_arg + 1).p;
      Json r{{"m", m_arg}, {"n", 1}, {"p", number(p)}, {"alpha", number(alpha)}, {"integrals", to_json(sech_integrals(p))}};
      return Output{"alpha", number(alpha), "Beta-function integrals of the sech profile",
                    "gagliardo-nirenberg-constant", r};
    };
  });

  double t_arg = 0.0;
  int count_arg = 0;
  auto* c_spec = app.add_subcommand("spectrum", "Conformal Laplacian eigenvalues of S^m x S^n with g + t h");
  c_spec->add_option("m", m_arg)->required();
  c_spec->add_option("n", n_arg)->required();
  c_spec->add_option("t", t_arg)->required();
  c_spec->add_option("count", count_arg)->required();
  c_spec->callback([&] {
    action = [&] {
      const ProductSpace P(sphere_or_circle(m_arg), sphere_or_circle(n_arg), t_arg);
      const auto entries = conformal_laplacian_spectrum(P, count_arg);
      Json list = Json::array();
      for (const auto& e : entries) list.push_back(to_json(e));
      Json r{{"M", P.M.label()}, {"N", P.N.label()}, {"t", number(t_arg)}, {"k", P.k()}, {"entries", list}};
      Output o{"conformal_laplacian_spectrum", number(entries.front().value), "enumeration of factor modes",
               "conformal-laplacian-spectrum", r};
      o.table = spectrum_table(entries);
      return o;
    };
  });

  double len_arg = 0.0, s_arg = 0.0, a_arg = 0.0, p_arg = 0.0, vol_arg = 1.0;
  auto add_ode_args = [&](CLI::App* c, bool with_volume) {
    c->add_option("length", len_arg, "circumference l")->required();
    c->add_option("s", s_arg, "scalar curvature")->required();
    c->add_option("a", a_arg, "a_k")->required();
    c->add_option("p", p_arg, "p_k")->required();
    if (with_volume) c->add_option("vol", vol_arg, "volume of M (default 1)");
  };
  auto problem = [&] { return OdeProblem{len_arg, s_arg, a_arg, p_arg, 1.0, vol_arg}; };

  auto* c_nodal = app.add_subcommand("nodal", "Sign-changing periodic solutions with T(E) = l/j");
  add_ode_args(c_nodal, false);
  c_nodal->callback([&] {
    action = [&] {
      const NodalSearch ns = nodal_solutions(problem(), search(s));
      Output o{"nodal_solutions", ns.solutions.empty() ? Json(nullptr) : number(ns.solutions.front().value),
               "phase-plane period quadrature", "nodal-periodic-solutions", to_json(ns, s.profile)};
      o.table = solutions_table(ns.solutions);
      return o;
    };
  });

  auto* c_first = app.add_subcommand("first-n", "First N-Yamabe constant of M x S^1 from the circle equation");
  add_ode_args(c_first, true);
  c_first->callback([&] {
    action = [&] {
      const NYamabe y = first_N_yamabe(problem(), search(s));
      return Output{"first_N_yamabe", number(y.value), "minimum over positive periodic solutions and positive lobes",
                    "first-n-yamabe-constant", to_json(y, s.profile)};
    };
  });

  auto* c_second = app.add_subcommand("second-n", "Second N-Yamabe constant of M x S^1 from nodal solutions");
  add_ode_args(c_second, true);
  c_second->callback([&] {
    action = [&] {
      const NYamabe y = second_N_yamabe(problem(), search(s));
      return Output{"second_N_yamabe", number(y.value), "minimum over nodal periodic solutions",
                    "second-n-yamabe-constant", to_json(y, s.profile)};
    };
  });

  auto* c_sweep = app.add_subcommand("sweep-sandwich", "2^{2/m} first_N and second_N on S^{m-1} x S^1 as t grows");
  c_sweep->add_option("m", m_arg)->required();
  c_sweep->callback([&] {
    action = [&] {
      SweepOptions opt;
      opt.search = search(s);
      opt.search.with_profile = false;
      const SweepResult r = sandwich_sweep(m_arg, parse_t_grid(s.t_grid), opt);
      Output o{"second_yamabe_limit", number(r.records.back().upper), "circle-equation sandwich",
               "second-yamabe-sphere-times-circle-limit", to_json(r)};
      o.table = sweep_table(r);
      o.result["strict_upper_check"] = to_json(strict_upper_check(m_arg, parse_t_grid(s.t_grid), opt.search));
      return o;
    };
  });

  std::vector<double> limit_args;
  auto* c_limit = app.add_subcommand("sweep-limit", "second_N on M x S^1 against its large-t limit");
  c_limit->add_option("m", m_arg, "dimension of M (round sphere unless s and vol are given)")->required();
  c_limit->add_option("scalar_volume", limit_args, "s vol of an abstract M")->expected(0, 2);
  c_limit->callback([&] {
    action = [&] {
      detail::require(limit_args.empty() || limit_args.size() == 2, "sweep-limit: give both s and vol or neither");
      const ModelManifold M = limit_args.empty() ? ModelManifold::round_sphere(m_arg)
                                                 : ModelManifold::abstract(m_arg, limit_args[0], limit_args[1]);
      SweepOptions opt;
      opt.search = search(s);
      opt.search.with_profile = false;
      const SweepResult r = y2n_limit_sweep(M, parse_t_grid(s.t_grid), opt);
      Output o{"second_N_yamabe_limit", number(r.records.back().upper), "circle-equation sweep",
               "second-n-yamabe-limit", to_json(r)};
      o.table = sweep_table(r);
      return o;
    };
  });

  auto* c_tables = app.add_subcommand("tables", "Closed-form bound tables");
  c_tables->callback([&] {
    action = [&] {
      TableOptions opt;
      opt.use_printed_alpha = s.use_printed_alpha;
      opt.shooting = shooting(s);
      opt.shooting.keep_profile = false;
      const auto rows = bound_tables(opt);
      Json list = Json::array();
      for (const auto& b : rows) list.push_back(to_json(b));
      Json crossover{{"m", 2}, {"n", 2}, {"scalar", number(crossover_scalar(2, 2, kPrintedAlpha22))}};
      Output o{"bound_tables", Json(rows.size()), "closed form", "second-yamabe-bound-tables",
               Json{{"reports", list}, {"crossover_scalar", crossover}}};
      o.table = bounds_table(rows);
      return o;
    };
  });

  auto* c_check = app.add_subcommand("check", "Run the invariant suite");
  c_check->callback([&] {
    action = [&] {
      const auto checks = run_check_suite(s.seed);
      Json list = Json::array();
      std::size_t failed = 0;
      for (const auto& c : checks) {
        list.push_back(to_json(c));
        if (!c.passed) ++failed;
      }
      Output o{"invariant_checks", Json(checks.size() - failed), "property checks", "invariant-suite",
               Json{{"passed", checks.size() - failed}, {"failed", failed}, {"checks", list}}};
      o.table = checks_table(checks);
      o.exit_code = failed ? kExitAccuracy : kExitOk;
      return o;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty()) {
      err << "error: " << e.what() << "\n" << app.help();
      return kExitUsage;
    }
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    const Output o = action();
    if (s.out_path.empty()) {
      emit(o, s, out);
    } else {
      std::ofstream file(s.out_path);
      if (!file) {
        err << "error: cannot open " << s.out_path << '\n';
        return kExitValidation;
      }
      emit(o, s, file);
    }
    return o.exit_code;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << '\n';
    return kExitAccuracy;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace yamabe::cli
