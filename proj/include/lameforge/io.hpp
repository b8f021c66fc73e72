#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lameforge/electrostatics.hpp"
#include "lameforge/extract.hpp"
#include "lameforge/oracles.hpp"
#include "lameforge/stieltjes.hpp"

// JSON forms. Complex numbers are [re, im] pairs (a bare number is accepted
// on input), polynomials {"coeffs": [...]} in ascending order. Every parse
// error is an Error with code Parse naming the offending field.
namespace lameforge::io {

using Json = nlohmann::json;

/// Parses text, reporting the byte offset of a syntax error.
Json parse_text(std::string_view text);
Json read_file(const std::string& path);
/// Canonical text: sorted keys, shortest round-trip doubles, two-space indent.
std::string dump(const Json& j);

Json to_json(cplx z);
cplx parse_cplx(const Json& j, const std::string& where);

Json to_json(const Poly& p);
Poly parse_poly(const Json& j, const std::string& where);

Json to_json(const RationalFn& f);
RationalFn parse_rational(const Json& j, const std::string& where);

/// {"A", "B", "convention": "2B"}. Input may instead use "convention": "b",
/// in which case B holds the full first-order coefficient.
Json to_json(const LameOperator& op);
LameOperator parse_operator(const Json& j, const std::string& where = "operator");

Json to_json(const ParametricLame& pl);

Json to_json(const Charge& c);
Json to_json(const Decomposition& dec);
Decomposition parse_decomposition(const Json& j);
bool looks_like_decomposition(const Json& j);

/// {"charges": [...], "n": k, "constraint": {"r": rational, "level": z}}, the
/// constraint being optional.
struct ProblemSpec {
  ChargeProblem problem;
  std::optional<Constraint> constraint;
};
Json to_json(const ProblemSpec& spec);
ProblemSpec parse_problem(const Json& j);

std::string_view kind_name(EquilibriumKind k);
Json to_json(const EquilibriumSolution& s);
EquilibriumSolution parse_solution(const Json& j, const std::string& where);

Json to_json(const Enumeration& e);

/// {"V", "y", "lambda", "residual", "heine_bound"}; the bound is null when
/// the operator is degenerate.
Json to_json(const VanVleckPair& pair, long long heine_bound);

Json to_json(const oracles::OracleCase& c);

}  // namespace lameforge::io
