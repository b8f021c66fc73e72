#include "lameforge/io.hpp"

#include <fstream>
#include <sstream>

#include "lameforge/errors.hpp"

namespace lameforge::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double parse_real(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int parse_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

const Json& parse_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::vector<Charge> parse_charges(const Json& j, const std::string& where) {
  std::vector<Charge> out;
  const Json& arr = parse_array(j, where);
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    out.push_back({parse_cplx(field(arr[i], "at", w), w + ".at"),
                   parse_cplx(field(arr[i], "strength", w), w + ".strength")});
  }
  return out;
}

Json charges_json(const std::vector<Charge>& charges) {
  Json arr = Json::array();
  for (const auto& c : charges) arr.push_back(to_json(c));
  return arr;
}

Json points_json(const std::vector<cplx>& x) {
  Json arr = Json::array();
  for (const cplx& z : x) arr.push_back(to_json(z));
  return arr;
}

}  // namespace

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_text(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2); }

// Adding 0.0 folds -0.0 into 0.0 so equal values print identically.
Json to_json(cplx z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

cplx parse_cplx(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(where, "expected [re, im] or a number");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Poly& p) {
  Json arr = Json::array();
  for (const cplx& c : p.coeffs()) arr.push_back(to_json(c));
  return {{"coeffs", arr}};
}

Poly parse_poly(const Json& j, const std::string& where) {
  const Json& arr = parse_array(field(j, "coeffs", where), where + ".coeffs");
  std::vector<cplx> c;
  for (size_t i = 0; i < arr.size(); ++i) c.push_back(parse_cplx(arr[i], where + ".coeffs[" + std::to_string(i) + "]"));
  return Poly(std::move(c));
}

Json to_json(const RationalFn& f) {
  Json poles = Json::array();
  for (const auto& t : f.pole_terms())
    poles.push_back({{"at", to_json(t.pole)}, {"order", t.order}, {"coeff", to_json(t.coeff)}});
  return {{"poly", to_json(f.poly_part())}, {"poles", poles}};
}

RationalFn parse_rational(const Json& j, const std::string& where) {
  const Poly poly = parse_poly(field(j, "poly", where), where + ".poly");
  std::vector<PoleTerm> terms;
  if (j.contains("poles")) {
    const Json& arr = parse_array(j["poles"], where + ".poles");
    for (size_t i = 0; i < arr.size(); ++i) {
      const std::string w = where + ".poles[" + std::to_string(i) + "]";
      const int order = parse_int(field(arr[i], "order", w), w + ".order");
      if (order < 1) fail(w + ".order", "must be at least 1");
      terms.push_back({parse_cplx(field(arr[i], "at", w), w + ".at"), order,
                       parse_cplx(field(arr[i], "coeff", w), w + ".coeff")});
    }
  }
  return RationalFn(poly, std::move(terms));
}

Json to_json(const LameOperator& op) {
  return {{"A", to_json(op.A)}, {"B", to_json(op.B)}, {"convention", "2B"}};
}

LameOperator parse_operator(const Json& j, const std::string& where) {
  LameOperator op{parse_poly(field(j, "A", where), where + ".A"), parse_poly(field(j, "B", where), where + ".B")};
  if (j.contains("convention")) {
    if (!j["convention"].is_string()) fail(where + ".convention", "expected \"2B\" or \"b\"");
    const auto conv = j["convention"].get<std::string>();
    if (conv == "b")
      op.B = op.B * 0.5;
    else if (conv != "2B")
      fail(where + ".convention", "expected \"2B\" or \"b\"");
  }
  if (op.A.is_zero()) fail(where + ".A", "must be nonzero");
  return op;
}

Json to_json(const ParametricLame& pl) {
  Json j = to_json(pl.op);
  j["D"] = to_json(pl.D);
  j["rho"] = to_json(pl.rho);
  return j;
}

Json to_json(const Charge& c) { return {{"at", to_json(c.at)}, {"strength", to_json(c.strength)}}; }

Json to_json(const Decomposition& dec) {
  Json j;
  j["operator"] = to_json(dec.op);
  j["charges"] = charges_json(dec.charges);
  j["r_prime"] = to_json(dec.r_prime);
  j["r"] = to_json(antidifferentiate(dec).r);
  j["D"] = to_json(dec.D);
  j["Btilde"] = to_json(dec.Btilde);
  j["flags"] = {{"repeated_roots_of_A", dec.repeated_roots_of_A}};
  return j;
}

bool looks_like_decomposition(const Json& j) { return j.is_object() && j.contains("operator") && j.contains("r_prime"); }

Decomposition parse_decomposition(const Json& j) {
  const std::string w = "decomposition";
  Decomposition dec;
  dec.op = parse_operator(field(j, "operator", w), w + ".operator");
  dec.charges = parse_charges(field(j, "charges", w), w + ".charges");
  dec.r_prime = parse_rational(field(j, "r_prime", w), w + ".r_prime");
  dec.D = parse_poly(field(j, "D", w), w + ".D");
  dec.Btilde = parse_poly(field(j, "Btilde", w), w + ".Btilde");
  if (j.contains("flags") && j["flags"].contains("repeated_roots_of_A")) {
    if (!j["flags"]["repeated_roots_of_A"].is_boolean()) fail(w + ".flags.repeated_roots_of_A", "expected a boolean");
    dec.repeated_roots_of_A = j["flags"]["repeated_roots_of_A"].get<bool>();
  }
  return dec;
}

Json to_json(const ProblemSpec& spec) {
  Json j;
  j["charges"] = charges_json(spec.problem.charges);
  j["n"] = spec.problem.n;
  if (spec.constraint)
    j["constraint"] = {{"r", to_json(spec.constraint->r)}, {"level", to_json(spec.constraint->level)}};
  return j;
}

ProblemSpec parse_problem(const Json& j) {
  const std::string w = "problem";
  ProblemSpec spec;
  spec.problem.charges = j.contains("charges") ? parse_charges(j["charges"], w + ".charges") : std::vector<Charge>{};
  spec.problem.n = parse_int(field(j, "n", w), w + ".n");
  if (spec.problem.n < 0) fail(w + ".n", "must be nonnegative");
  if (j.contains("constraint") && !j["constraint"].is_null()) {
    const Json& c = j["constraint"];
    spec.constraint = Constraint{parse_rational(field(c, "r", w + ".constraint"), w + ".constraint.r"),
                                 parse_cplx(field(c, "level", w + ".constraint"), w + ".constraint.level")};
  }
  try {
    spec.problem.validate();
  } catch (const Error& e) {
    fail(w, e.what());
  }
  return spec;
}

std::string_view kind_name(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Unconstrained: return "unconstrained";
    case EquilibriumKind::Constrained: return "constrained";
    case EquilibriumKind::FixedMultiplier: return "fixed-multiplier";
  }
  return "unknown";
}

Json to_json(const EquilibriumSolution& s) {
  return {{"x", points_json(s.x)},
          {"lambda", to_json(s.lambda)},
          {"grad_residual", s.grad_residual},
          {"constraint_residual", s.constraint_residual},
          {"energy", s.energy},
          {"kind", kind_name(s.kind)},
          {"iterations", s.iterations}};
}

EquilibriumSolution parse_solution(const Json& j, const std::string& where) {
  EquilibriumSolution s;
  const Json& arr = parse_array(field(j, "x", where), where + ".x");
  for (size_t i = 0; i < arr.size(); ++i) s.x.push_back(parse_cplx(arr[i], where + ".x[" + std::to_string(i) + "]"));
  s.lambda = parse_cplx(field(j, "lambda", where), where + ".lambda");
  s.grad_residual = parse_real(field(j, "grad_residual", where), where + ".grad_residual");
  s.constraint_residual = parse_real(field(j, "constraint_residual", where), where + ".constraint_residual");
  s.energy = parse_real(field(j, "energy", where), where + ".energy");
  s.iterations = parse_int(field(j, "iterations", where), where + ".iterations");
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) fail(where + ".kind", "expected a string");
  bool known = false;
  for (auto k : {EquilibriumKind::Unconstrained, EquilibriumKind::Constrained, EquilibriumKind::FixedMultiplier})
    if (kind_name(k) == kind.get<std::string>()) {
      s.kind = k;
      known = true;
    }
  if (!known) fail(where + ".kind", "unknown kind");
  return s;
}

Json to_json(const Enumeration& e) {
  Json sols = Json::array();
  for (const auto& s : e.solutions) sols.push_back(to_json(s));
  Json j;
  j["solutions"] = sols;
  j["heine_bound"] = e.heine_bound >= 0 ? Json(e.heine_bound) : Json(nullptr);
  j["diagnostics"] = {{"starts", e.starts}, {"converged", e.converged}, {"failed", e.failed}};
  return j;
}

Json to_json(const VanVleckPair& pair, long long heine_bound) {
  return {{"V", to_json(pair.V)},
          {"y", to_json(pair.y)},
          {"lambda", to_json(pair.lambda)},
          {"residual", pair.residual},
          {"heine_bound", heine_bound >= 0 ? Json(heine_bound) : Json(nullptr)}};
}

Json to_json(const oracles::OracleCase& c) {
  const auto& p = c.params;
  Json params = {{"n", p.n}};
  using oracles::Family;
  switch (c.family) {
    case Family::Hermite: break;
    case Family::Laguerre:
    case Family::LaguerrePalindromic: params["alpha"] = p.alpha; break;
    case Family::Jacobi:
      params["alpha"] = p.alpha;
      params["beta"] = p.beta;
      break;
    case Family::RelativisticHermite: params["N"] = p.N; break;
    case Family::HermitePower: params["m"] = p.m; break;
    case Family::LaguerrePower:
      params["m"] = p.m;
      params["alpha"] = p.alpha;
      break;
    case Family::Schrodinger1F1:
      params["m"] = p.m;
      params["d"] = p.d;
      params["branch"] = p.branch == oracles::Branch::Even ? "even" : "odd";
      break;
  }
  return {{"family", oracles::family_name(c.family)},
          {"label", c.label},
          {"params", params},
          {"operator", to_json(c.op)},
          {"V", to_json(c.V)},
          {"y", to_json(c.y)},
          {"zeros", points_json(c.zeros)}};
}

}  // namespace lameforge::io
