#include "lameforge/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "lameforge/errors.hpp"
#include "lameforge/io.hpp"
#include "lameforge/roots.hpp"

namespace lameforge::cli {
namespace {

using io::Json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Common {
  double tol = 1e-11;
  int max_iter = 200;
  int starts = 8;
  std::uint64_t seed = 42;
  std::string format;
  std::string output;

  SolverOptions solver() const {
    SolverOptions o;
    o.tol = tol;
    o.max_iter = max_iter;
    o.random_starts = starts;
    o.seed = seed;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--tol", c.tol, "Solver tolerance in (0, 1e-2)")
      ->check(CLI::PositiveNumber)
      ->check(CLI::Range(0.0, 1e-2));
  sub->add_option("--max-iter", c.max_iter, "Newton iteration cap")->check(CLI::Range(1, 100000));
  sub->add_option("--starts", c.starts, "Random multistart count")->check(CLI::Range(1, 100000));
  sub->add_option("--seed", c.seed, "Multistart RNG seed");
  sub->add_option("--format", c.format, "json, csv or plotdata")->check(CLI::IsMember({"json", "csv", "plotdata"}));
  sub->add_option("--output", c.output, "Write here instead of stdout");
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw Error(ErrorCode::InvalidArgument, "format " + format + " is not available for this command");
}

std::string csv_points(const std::vector<cplx>& x) {
  std::string s = "index,re,im\n";
  for (size_t k = 0; k < x.size(); ++k) s += std::to_string(k) + "," + num(x[k].real()) + "," + num(x[k].imag()) + "\n";
  return s;
}

// --- extract

std::string cmd_extract(const std::string& path, const std::string& format) {
  const Decomposition dec = extract(io::parse_operator(io::read_file(path)));
  if (format == "json") return io::dump(io::to_json(dec)) + "\n";
  require_format(format, {"csv"});
  std::string s = "index,at_re,at_im,strength_re,strength_im\n";
  for (size_t j = 0; j < dec.charges.size(); ++j) {
    const auto& c = dec.charges[j];
    s += std::to_string(j) + "," + num(c.at.real()) + "," + num(c.at.imag()) + "," + num(c.strength.real()) + "," +
         num(c.strength.imag()) + "\n";
  }
  return s;
}

// --- solve

struct SolveOutcome {
  std::string text;
  bool ok = true;
};

SolveOutcome cmd_solve(const std::string& path, std::optional<int> n, const Common& common, const std::string& format) {
  const Json j = io::read_file(path);
  ChargeProblem problem;
  FieldSpec field;
  if (io::looks_like_decomposition(j)) {
    if (!n) throw Error(ErrorCode::InvalidArgument, "a decomposition needs --n");
    const Decomposition dec = io::parse_decomposition(j);
    problem = {dec.charges, *n};
    field = dec.r_prime.is_zero() ? FieldSpec::unconstrained() : FieldSpec::fixed_multiplier(dec.r_prime, -1.0);
  } else {
    auto spec = io::parse_problem(j);
    problem = spec.problem;
    if (n) problem.n = *n;
    field = spec.constraint ? FieldSpec::constrained(*spec.constraint) : FieldSpec::unconstrained();
  }
  if (problem.n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");

  const Enumeration e = enumerate_equilibria(problem, field, common.solver());
  SolveOutcome out;
  out.ok = problem.n == 0 || !e.solutions.empty();
  if (format == "json") {
    Json r = io::to_json(e);
    r["kind"] = io::kind_name(field.kind);
    for (size_t i = 0; i < e.solutions.size(); ++i) r["solutions"][i]["y"] = io::to_json(from_roots(e.solutions[i].x));
    out.text = io::dump(r) + "\n";
  } else if (format == "csv") {
    for (size_t i = 0; i < e.solutions.size(); ++i) {
      const auto& s = e.solutions[i];
      out.text += "# solution " + std::to_string(i) + " lambda_re=" + num(s.lambda.real()) +
                  " lambda_im=" + num(s.lambda.imag()) + " grad_residual=" + num(s.grad_residual) +
                  " constraint_residual=" + num(s.constraint_residual) + " energy=" + num(s.energy) + "\n";
      out.text += csv_points(s.x);
    }
  } else {
    out.text = "# re im\n";
    for (size_t i = 0; i < e.solutions.size(); ++i) {
      if (i > 0) out.text += "\n\n";
      for (const cplx& z : e.solutions[i].x) out.text += num(z.real()) + " " + num(z.imag()) + "\n";
    }
  }
  return out;
}

// --- verify

// y from a polynomial, a pair ({"y": ...}) or a solve report (solutions[index].y).
Poly read_y(const Json& j, int index) {
  if (j.is_object() && j.contains("solutions")) {
    const Json& sols = j["solutions"];
    if (!sols.is_array() || index < 0 || index >= static_cast<int>(sols.size()))
      throw Error(ErrorCode::InvalidArgument, "solution index " + std::to_string(index) + " out of range");
    if (!sols[index].contains("y")) throw Error(ErrorCode::Parse, "solutions[" + std::to_string(index) + "]: missing y");
    return io::parse_poly(sols[index]["y"], "solutions[" + std::to_string(index) + "].y");
  }
  if (j.is_object() && j.contains("y")) return io::parse_poly(j["y"], "y");
  return io::parse_poly(j, "y");
}

SolveOutcome cmd_verify(const std::string& op_path, const std::string& y_path, int index) {
  const LameOperator op = io::parse_operator(io::read_file(op_path));
  const Poly y = read_y(io::read_file(y_path), index);
  if (y.is_zero()) throw Error(ErrorCode::InvalidArgument, "y is the zero polynomial");

  const ParametricLame pl{op, Poly{}, 0.0};
  Json r;
  r["degree_bound"] = van_vleck_degree_bound(pl);
  SolveOutcome out;
  try {
    const Poly V = van_vleck_from_solution(pl, y);
    r["V"] = io::to_json(V);
    r["residual"] = lame_residual(pl, V, y).max_abs_coeff() / (1.0 + residual_scale(pl, V, y));
    r["detail"] = "ok";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotASolution && e.code() != ErrorCode::DegreeViolation) throw;
    out.ok = false;
    const Poly dy = y.derivative();
    const Poly dividend = -(op.A * dy.derivative() + op.B * dy * 2.0);
    r["V"] = nullptr;
    r["residual"] = divrem(dividend, y).remainder.max_abs_coeff() / std::max(1.0, dividend.max_abs_coeff());
    r["detail"] = e.what();
  }
  r["pass"] = out.ok;

  std::vector<cplx> roots;
  bool off = true;
  Json lambda = nullptr, rho = nullptr, level = nullptr;
  if (y.degree() >= 1) {
    roots = find_roots(y);
    for (const auto& rm : root_multiset(y)) off &= rm.multiplicity == 1;
    try {
      const Decomposition dec = extract(op);
      for (const auto& c : dec.charges)
        for (const cplx& z : roots) off &= std::abs(z - c.at) > 1e-10;
      try {
        const auto fit = determine_multiplier(dec, y);
        lambda = io::to_json(fit.lambda);
        rho = io::to_json(fit.rho_ode);
      } catch (const Error&) {
      }
      try {
        level = io::to_json(constraint_level(antidifferentiate(dec).r, roots));
      } catch (const Error&) {
      }
    } catch (const Error& e) {
      r["extract_error"] = e.what();
    }
  }
  Json rj = Json::array();
  for (const cplx& z : roots) rj.push_back(io::to_json(z));
  r["roots"] = rj;
  r["off_arrangement"] = off;
  r["lambda"] = lambda;
  r["rho_ode"] = rho;
  r["constraint_level"] = level;
  out.text = io::dump(r) + "\n";
  return out;
}

// --- solve-lame

std::string cmd_solve_lame(const std::string& path, int n, const Common& common, const std::string& format) {
  const LameOperator op = io::parse_operator(io::read_file(path));
  const auto res = solve_heine_stieltjes(op, n, common.solver());
  if (format == "json") {
    Json pairs = Json::array();
    for (const auto& p : res.pairs) pairs.push_back(io::to_json(p, res.heine_bound));
    Json r;
    r["pairs"] = pairs;
    r["heine_bound"] = res.heine_bound >= 0 ? Json(res.heine_bound) : Json(nullptr);
    r["diagnostics"] = {{"starts", res.starts}, {"converged", res.converged}, {"rejected", res.rejected}};
    return io::dump(r) + "\n";
  }
  require_format(format, {"csv"});
  std::string s = "pair,kind,index,re,im\n";
  for (size_t i = 0; i < res.pairs.size(); ++i) {
    const auto emit = [&](const char* kind, const Poly& p) {
      for (int k = 0; k <= p.degree(); ++k)
        s += std::to_string(i) + "," + kind + "," + std::to_string(k) + "," + num(p[k].real()) + "," +
             num(p[k].imag()) + "\n";
    };
    emit("V", res.pairs[i].V);
    emit("y", res.pairs[i].y);
  }
  return s;
}

// --- oracle

std::string cmd_oracle(const std::string& family, const oracles::FamilyParams& params, const std::string& format) {
  const auto fam = oracles::parse_family(family);
  if (!fam) throw Error(ErrorCode::InvalidArgument, "unknown family " + family);
  const auto c = oracles::oracle_case(*fam, params);
  if (format == "json") return io::dump(io::to_json(c)) + "\n";
  if (format == "plotdata") {
    std::string s = "# re im\n";
    for (const cplx& z : c.zeros) s += num(z.real()) + " " + num(z.imag()) + "\n";
    return s;
  }
  std::string s = "kind,index,re,im\n";
  for (int k = 0; k <= c.y.degree(); ++k)
    s += "coeff," + std::to_string(k) + "," + num(c.y[k].real()) + "," + num(c.y[k].imag()) + "\n";
  for (size_t k = 0; k < c.zeros.size(); ++k)
    s += "zero," + std::to_string(k) + "," + num(c.zeros[k].real()) + "," + num(c.zeros[k].imag()) + "\n";
  return s;
}

// --- sweep-n

std::string cmd_sweep(int n, const std::vector<double>& grid, const std::string& format) {
  const SweepTable t = sweep_n(n, grid);
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back({{"N", r.N}, {"zeros", r.zeros}});
    return io::dump(Json{{"n", t.n}, {"rows", rows}, {"limit", t.limit}}) + "\n";
  }
  const bool csv = format == "csv";
  const std::string sep = csv ? "," : " ";
  std::string s = csv ? "N" : "# N";
  for (size_t k = 0; k < t.limit.size(); ++k) s += sep + "zero" + std::to_string(k + 1);
  s += "\n";
  if (t.rows.empty()) return s;
  for (const auto& r : t.rows) {
    s += num(r.N);
    for (double z : r.zeros) s += sep + num(z);
    s += "\n";
  }
  s += "inf";
  for (double z : t.limit) s += sep + num(z);
  return s + "\n";
}

// --- heine-count

std::string cmd_heine_count(int n, int p, const std::string& format) {
  const long long count = heine_count(n, p);
  if (format == "json") return io::dump(Json{{"n", n}, {"p", p}, {"count", count}}) + "\n";
  return "n,p,count\n" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(count) + "\n";
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  auto to_double = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw Error(ErrorCode::InvalidArgument, "bad grid value '" + std::string(s) + "'");
    return v;
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i)
      if (i == s.size() || s[i] == sep) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    return parts;
  };
  std::vector<double> grid;
  if (spec.empty()) return grid;
  if (spec.starts_with("geom:")) {
    const auto parts = split(spec.substr(5), ':');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "expected geom:start:ratio:count");
    const double start = to_double(parts[0]), ratio = to_double(parts[1]);
    const double count = to_double(parts[2]);
    if (count < 0 || count != std::floor(count)) throw Error(ErrorCode::InvalidArgument, "count must be a whole number");
    double v = start;
    for (int i = 0; i < static_cast<int>(count); ++i, v *= ratio) grid.push_back(v);
    return grid;
  }
  for (auto part : split(spec, ',')) grid.push_back(to_double(part));
  return grid;
}

SweepTable sweep_n(int n, std::span<const double> grid) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs n >= 2");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw Error(ErrorCode::InvalidArgument, "grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "grid must be increasing");
  }
  SweepTable t;
  t.n = n;
  for (double z : oracles::hermite_zeros(n))
    if (z > 0.0) t.limit.push_back(z);
  for (double N : grid) {
    SweepRow row{N, {}};
    for (const cplx& z : oracles::oracle_case(oracles::Family::RelativisticHermite, {.n = n, .N = N}).zeros)
      if (z.real() > 1e-12) row.zeros.push_back(z.real());
    std::sort(row.zeros.begin(), row.zeros.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electrostatic equilibria and Heine-Stieltjes pairs for Lame operators", "lame-forge"};
  app.require_subcommand(1);

  Common common;
  std::string path, path2, family, grid;
  std::optional<int> n_opt;
  int n = 0, p = 1;
  oracles::FamilyParams fp;
  std::string branch = "even";

  auto* extract_cmd = app.add_subcommand("extract", "Split an operator into fixed charges and a constraint");
  extract_cmd->add_option("operator", path, "Operator JSON")->required();
  add_common(extract_cmd, common);

  auto* solve_cmd = app.add_subcommand("solve", "Enumerate equilibria of a charge problem or decomposition");
  solve_cmd->add_option("problem", path, "Problem or decomposition JSON")->required();
  solve_cmd->add_option("--n", n_opt, "Number of movable charges");
  add_common(solve_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "Check that y solves the operator for some V");
  verify_cmd->add_option("operator", path, "Operator JSON")->required();
  verify_cmd->add_option("y", path2, "Polynomial, pair or solve report JSON")->required();
  int index = 0;
  verify_cmd->add_option("--index", index, "Solution to check in a solve report");
  add_common(verify_cmd, common);

  auto* lame_cmd = app.add_subcommand("solve-lame", "Van Vleck and Stieltjes pairs of degree n");
  lame_cmd->add_option("operator", path, "Operator JSON")->required();
  lame_cmd->add_option("--n", n, "Degree of y")->required()->check(CLI::NonNegativeNumber);
  add_common(lame_cmd, common);

  auto* oracle_cmd = app.add_subcommand("oracle", "Emit a classical polynomial family member");
  oracle_cmd->add_option("family", family, "Family name")->required();
  oracle_cmd->add_option("--n", fp.n, "Degree")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--alpha", fp.alpha, "Laguerre or Jacobi alpha");
  oracle_cmd->add_option("--beta", fp.beta, "Jacobi beta");
  oracle_cmd->add_option("--m", fp.m, "Power")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--N", fp.N, "Relativistic parameter")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--d", fp.d, "Schrodinger index")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--branch", branch, "even or odd")->check(CLI::IsMember({"even", "odd"}));
  add_common(oracle_cmd, common);

  auto* sweep_cmd = app.add_subcommand("sweep-n", "Positive zeros of the relativistic Hermite polynomial over N");
  sweep_cmd->add_option("--n", n, "Degree")->required();
  sweep_cmd->add_option("--grid", grid, "Comma list, or geom:start:ratio:count");
  add_common(sweep_cmd, common);

  auto* count_cmd = app.add_subcommand("heine-count", "binom(n+p-1, n)");
  count_cmd->add_option("--n", n, "Degree")->required();
  count_cmd->add_option("--p", p, "deg A - 1")->required();
  add_common(count_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lame-forge: " << e.what() << "\n";
    return 2;
  }

  auto fmt = [&](const char* fallback) { return common.format.empty() ? std::string(fallback) : common.format; };
  std::string text;
  int code = 0;
  try {
    if (*extract_cmd) {
      text = cmd_extract(path, fmt("json"));
    } else if (*solve_cmd) {
      auto r = cmd_solve(path, n_opt, common, fmt("json"));
      text = std::move(r.text);
      if (!r.ok) {
        err << "lame-forge: no start converged\n";
        code = 1;
      }
    } else if (*verify_cmd) {
      require_format(fmt("json"), {"json"});
      auto r = cmd_verify(path, path2, index);
      text = std::move(r.text);
      if (!r.ok) code = 1;
    } else if (*lame_cmd) {
      text = cmd_solve_lame(path, n, common, fmt("json"));
    } else if (*oracle_cmd) {
      fp.branch = branch == "odd" ? oracles::Branch::Odd : oracles::Branch::Even;
      text = cmd_oracle(family, fp, fmt("json"));
    } else if (*sweep_cmd) {
      text = cmd_sweep(n, parse_grid(grid), fmt("plotdata"));
    } else if (*count_cmd) {
      text = cmd_heine_count(n, p, fmt("json"));
    }
  } catch (const Error& e) {
    err << "lame-forge: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "lame-forge: " << e.what() << "\n";
    return 1;
  }

  if (common.output.empty()) {
    out << text;
  } else {
    std::ofstream f(common.output);
    if (!f) {
      err << "lame-forge: cannot write " << common.output << "\n";
      return 2;
    }
    f << text;
  }
  return code;
}

}  // namespace lameforge::cli
