#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lameforge/cli.hpp"
#include "lameforge/io.hpp"
#include "test_support.hpp"

using namespace lameforge;
using lameforge::test::error_code_of;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lame-forge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("lame-forge-test-" + std::to_string(counter_++))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

const char* kLaguerre = R"({"A":{"coeffs":[[0,0],[1,0]]},"B":{"coeffs":[[0.75,0],[-0.5,0]]},"convention":"2B"})";
const char* kHermite = R"({"A":{"coeffs":[[1,0]]},"B":{"coeffs":[[0,0],[-1,0]]}})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("complex and polynomial round trip") {
  const Poly p{cplx(1.0 / 3.0, -0.0), cplx(0.0, 2.5e-300), cplx(-7.1, 1e17)};
  const auto j = io::to_json(p);
  CHECK(coeff_distance(io::parse_poly(j, "p"), p) == 0.0);
  CHECK(io::dump(io::to_json(io::parse_poly(io::parse_text(io::dump(j)), "p"))) == io::dump(j));
  CHECK(io::parse_cplx(io::Json(2.0), "z") == cplx(2.0));
  CHECK(error_code_of([] { io::parse_cplx(io::Json::array({1}), "z"); }) == ErrorCode::Parse);
}

TEST_CASE("rational, operator and decomposition round trip") {
  const RationalFn f(Poly{1.0, -0.5}, {{cplx(0, 1), 2, cplx(0.25, 0.5)}, {0.0, 3, 1.0}});
  const auto fj = io::to_json(f);
  CHECK(io::dump(io::to_json(io::parse_rational(fj, "f"))) == io::dump(fj));

  const auto op = io::parse_operator(io::parse_text(kLaguerre));
  const auto dec = extract(op);
  const auto dj = io::to_json(dec);
  CHECK(io::looks_like_decomposition(dj));
  CHECK(io::dump(io::to_json(io::parse_decomposition(dj))) == io::dump(dj));

  const auto half = io::parse_operator(io::parse_text(R"({"A":{"coeffs":[1]},"B":{"coeffs":[0,-2]},"convention":"b"})"));
  CHECK(coeff_distance(half.B, Poly{0.0, -1.0}) == 0.0);
}

TEST_CASE("problem and solution round trip") {
  io::ProblemSpec spec{{{{-1.0, 0.5}, {1.0, 0.5}}, 2}, Constraint{RationalFn(Poly{0.0, 0.0, 1.0}), 1.0}};
  const auto pj = io::to_json(spec);
  CHECK(io::dump(io::to_json(io::parse_problem(pj))) == io::dump(pj));

  const auto sol = solve_equilibrium(spec.problem, std::nullopt, {cplx(-0.3), cplx(0.2)});
  const auto sj = io::to_json(sol);
  CHECK(io::dump(io::to_json(io::parse_solution(sj, "s"))) == io::dump(sj));
}

TEST_CASE("parse errors name the field") {
  try {
    io::parse_problem(io::parse_text(R"({"charges":[{"at":[0,0]}],"n":1})"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("problem.charges[0]") != std::string::npos);
  }
  CHECK(error_code_of([] { io::parse_text("{\"a\": "); }) == ErrorCode::Parse);
  CHECK(error_code_of([] { io::parse_operator(io::parse_text(R"({"A":{"coeffs":[]},"B":{"coeffs":[]}})")); }) ==
        ErrorCode::Parse);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("extract") {
  Scratch s;
  const auto lag = s.write("lag.json", kLaguerre);
  const auto r = run({"extract", lag});
  REQUIRE(r.code == 0);
  const auto j = io::parse_text(r.out);
  REQUIRE(j["charges"].size() == 1);
  CHECK(io::parse_cplx(j["charges"][0]["at"], "at") == cplx(0.0));
  CHECK(io::parse_cplx(j["charges"][0]["strength"], "s") == cplx(0.75));

  const auto herm = run({"extract", s.write("h.json", kHermite)});
  REQUIRE(herm.code == 0);
  CHECK(io::parse_text(herm.out)["charges"].empty());

  CHECK(run({"extract", s.write("bad.json", "{")}).code == 2);
  CHECK(run({"extract", s.path("missing.json")}).code == 2);
  CHECK(run({"extract", s.write("noB.json", R"({"A":{"coeffs":[1]}})")}).code == 2);
}

TEST_CASE("solve") {
  Scratch s;
  const auto jac = s.write("jac.json", R"({"charges":[{"at":-1,"strength":0.5},{"at":1,"strength":0.5}],"n":2})");
  const auto r = run({"solve", jac});
  REQUIRE(r.code == 0);
  const auto j = io::parse_text(r.out);
  REQUIRE(j["solutions"].size() == 1);
  CHECK(std::abs(io::parse_cplx(j["solutions"][0]["x"][1], "x") - 1 / std::sqrt(3.0)) < 1e-12);

  const auto three =
      s.write("three.json", R"({"charges":[{"at":0,"strength":1},{"at":1,"strength":1},{"at":2,"strength":1}],"n":2})");
  const auto t = run({"solve", three});
  REQUIRE(t.code == 0);
  CHECK(io::parse_text(t.out)["solutions"].size() == 3);
  CHECK(io::parse_text(t.out)["heine_bound"] == 3);

  const auto zero = run({"solve", three, "--n", "0"});
  CHECK(zero.code == 0);
  CHECK(io::parse_text(zero.out)["solutions"].size() == 1);
  CHECK(io::parse_text(zero.out)["solutions"][0]["x"].empty());

  const auto csv = run({"solve", jac, "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("index,re,im") != std::string::npos);

  CHECK(run({"solve", jac, "--tol", "0.5"}).code == 2);
  CHECK(run({"solve", jac, "--starts", "0"}).code == 2);
  CHECK(run({"solve", s.write("dup.json", R"({"charges":[{"at":0,"strength":1},{"at":0,"strength":1}],"n":1})")})
            .code == 2);
  // Two repelling charges and nothing to hold the movable one.
  const auto lost = s.write("lost.json", R"({"charges":[{"at":0,"strength":-1}],"n":1})");
  CHECK(run({"solve", lost, "--starts", "4", "--max-iter", "30"}).code == 1);
}

TEST_CASE("verify") {
  Scratch s;
  const auto herm = s.write("h.json", kHermite);
  const auto h4 = s.write("h4.json", R"({"coeffs":[12,0,-48,0,16]})");
  const auto ok = run({"verify", herm, h4});
  REQUIRE(ok.code == 0);
  const auto j = io::parse_text(ok.out);
  CHECK(j["pass"] == true);
  CHECK(coeff_distance(io::parse_poly(j["V"], "V"), Poly{8.0}) < 1e-12);
  CHECK(j["off_arrangement"] == true);

  const auto bad = run({"verify", herm, s.write("p.json", R"({"coeffs":[12.001,0,-48,0,16]})")});
  CHECK(bad.code == 1);
  CHECK(io::parse_text(bad.out)["pass"] == false);
  CHECK(io::parse_text(bad.out)["residual"].get<double>() > 1e-6);

  const auto one = run({"verify", s.write("l.json", kLaguerre), s.write("one.json", R"({"coeffs":[1]})")});
  CHECK(one.code == 0);
  CHECK(io::parse_poly(io::parse_text(one.out)["V"], "V").is_zero());
}

TEST_CASE("extract, solve and verify chain") {
  Scratch s;
  const auto lag = s.write("lag.json", kLaguerre);
  REQUIRE(run({"extract", lag, "--output", s.path("dec.json")}).code == 0);
  REQUIRE(run({"solve", s.path("dec.json"), "--n", "3", "--output", s.path("sol.json")}).code == 0);
  const auto v = run({"verify", lag, s.path("sol.json")});
  CHECK(v.code == 0);
  const auto j = io::parse_text(v.out);
  CHECK(j["pass"] == true);
  CHECK(coeff_distance(io::parse_poly(j["V"], "V"), Poly{3.0}) < 1e-9);
  CHECK(run({"solve", s.path("dec.json")}).code == 2);
  CHECK(run({"verify", lag, s.path("sol.json"), "--index", "7"}).code == 2);
}

TEST_CASE("solve-lame, oracle, heine-count") {
  Scratch s;
  const auto r = run({"solve-lame", s.write("h.json", kHermite), "--n", "4"});
  REQUIRE(r.code == 0);
  const auto j = io::parse_text(r.out);
  REQUIRE(j["pairs"].size() == 1);
  CHECK(coeff_distance(io::parse_poly(j["pairs"][0]["V"], "V"), Poly{8.0}) < 1e-9);

  const auto o = run({"oracle", "laguerre", "--n", "2", "--alpha", "0"});
  REQUIRE(o.code == 0);
  CHECK(coeff_distance(io::parse_poly(io::parse_text(o.out)["y"], "y"), Poly{1.0, -2.0, 0.5}) < 1e-15);
  CHECK(run({"oracle", "chebyshev"}).code == 2);
  CHECK(run({"oracle", "schrodinger", "--m", "2", "--d", "1", "--branch", "odd", "--format", "csv"}).code == 0);

  const auto c = run({"heine-count", "--n", "2", "--p", "2"});
  CHECK(c.code == 0);
  CHECK(io::parse_text(c.out)["count"] == 3);
  CHECK(run({"heine-count", "--n", "1000", "--p", "1000"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep-n") {
  const auto r = run({"sweep-n", "--n", "2", "--grid", "1,10,100"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "# N zero1");
  for (double N : {1.0, 10.0, 100.0}) {
    double n_col = 0, z = 0;
    in >> n_col >> z;
    CHECK(n_col == N);
    CHECK(std::abs(z - std::sqrt(N / (2 * N + 1))) < 1e-14);
  }
  const auto empty = run({"sweep-n", "--n", "4"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "# N zero1 zero2\n");
  CHECK(run({"sweep-n", "--n", "1", "--grid", "1"}).code == 2);
  CHECK(run({"sweep-n", "--n", "4", "--grid", "2,1"}).code == 2);
  CHECK(run({"sweep-n", "--n", "4", "--grid", "1,x"}).code == 2);
  CHECK(cli::parse_grid("geom:1:2:3") == std::vector<double>{1, 2, 4});
}

}  // TEST_SUITE
