#include <cmath>
#include <random>

#include "doctest.h"
#include "lameforge/extract.hpp"
#include "lameforge/oracles.hpp"
#include "test_support.hpp"

using namespace lameforge;
using lameforge::test::error_code_of;
using oracles::Family;

namespace {

const Charge* charge_at(const Decomposition& dec, cplx z) {
  for (const auto& c : dec.charges)
    if (std::abs(c.at - z) < 1e-8) return &c;
  return nullptr;
}

void check_round_trip(const Decomposition& dec) {
  const Poly rebuilt = dec.Btilde * 2.0 + dec.D * 2.0;
  CHECK(coeff_distance(rebuilt, dec.op.B * 2.0) <= 1e-10 * (1.0 + dec.op.B.max_abs_coeff()));
  CHECK(dec.Btilde.degree() < dec.op.A.degree());
  CHECK(multiply(dec.r_prime, dec.op.A).is_polynomial());
}

}  // namespace

TEST_SUITE("constraint-extract") {

TEST_CASE("Hermite operator has no fixed charges") {
  const auto dec = extract({Poly{1.0}, Poly{0.0, -1.0}});
  CHECK(dec.charges.empty());
  CHECK(dec.r_prime.is_polynomial());
  CHECK(coeff_distance(dec.r_prime.poly_part(), Poly{0.0, -1.0}) < 1e-15);
  CHECK(coeff_distance(dec.D, Poly{0.0, -1.0}) < 1e-15);
  CHECK(dec.Btilde.is_zero());
  check_round_trip(dec);

  const auto r = antidifferentiate(dec).r;
  CHECK(coeff_distance(r.poly_part(), Poly{0.0, 0.0, -0.5}) < 1e-15);
}

TEST_CASE("Laguerre operator has one charge at the origin") {
  const double alpha = 0.7;
  const auto dec = extract({Poly{0.0, 1.0}, Poly{(alpha + 1) / 2, -0.5}});
  REQUIRE(dec.charges.size() == 1);
  CHECK(std::abs(dec.charges[0].at) < 1e-15);
  CHECK(std::abs(dec.charges[0].strength - (alpha + 1) / 2) < 1e-14);
  CHECK(coeff_distance(dec.r_prime.poly_part(), Poly{-0.5}) < 1e-15);
  CHECK(coeff_distance(dec.D, Poly{0.0, -0.5}) < 1e-15);
  check_round_trip(dec);
  CHECK(coeff_distance(antidifferentiate(dec).r.poly_part(), Poly{0.0, -0.5}) < 1e-15);
}

TEST_CASE("palindromic Laguerre operator yields five charges and r ~ x + 1/x") {
  for (double alpha : {0.0, 0.5, 2.0}) {
    for (int n = 1; n <= 5; ++n) {
      const auto c = oracles::oracle_case(Family::LaguerrePalindromic, {.n = n, .alpha = alpha});
      const auto dec = extract(c.op);
      CHECK(dec.repeated_roots_of_A);
      REQUIRE(dec.charges.size() == 5);
      const cplx i(0, 1);
      REQUIRE(charge_at(dec, 0.0));
      CHECK(std::abs(charge_at(dec, 0.0)->strength - (-n + (1 - alpha) / 2)) < 1e-10);
      CHECK(std::abs(charge_at(dec, 1.0)->strength + 0.5) < 1e-10);
      CHECK(std::abs(charge_at(dec, -1.0)->strength + 0.5) < 1e-10);
      CHECK(std::abs(charge_at(dec, i)->strength - (alpha + 1) / 2) < 1e-10);
      CHECK(std::abs(charge_at(dec, -i)->strength - (alpha + 1) / 2) < 1e-10);
      check_round_trip(dec);

      // r = -(x + 1/x) / 2
      const RationalFn r = antidifferentiate(dec).r;
      for (cplx x : {cplx(0.3, 0.2), cplx(-1.7, 0.4), cplx(2.5)})
        CHECK(std::abs(r(x) + 0.5 * (x + 1.0 / x)) < 1e-12);
    }
  }
}

TEST_CASE("extract preconditions") {
  CHECK(error_code_of([] { extract({Poly{}, Poly{1.0}}); }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { extract({Poly{1.0}, Poly{3.0}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("round trip over every oracle operator") {
  for (int n = 1; n <= 4; ++n) {
    for (auto fam : {Family::Hermite, Family::Laguerre, Family::Jacobi, Family::RelativisticHermite,
                     Family::HermitePower, Family::LaguerrePower, Family::LaguerrePalindromic}) {
      for (int m = 1; m <= 3; ++m) {
        const auto c = oracles::oracle_case(fam, {.n = n, .alpha = 0.5, .beta = 1.0, .m = m, .N = 10.0});
        check_round_trip(extract(c.op));
      }
    }
  }
}

TEST_CASE("constraint level") {
  const RationalFn sq(Poly{0.0, 0.0, 1.0});
  const auto h3 = oracles::oracle_case(Family::Hermite, {.n = 3});
  CHECK(std::abs(constraint_level(sq, h3.zeros) - 3.0) < 1e-13);
  const auto l2 = oracles::oracle_case(Family::Laguerre, {.n = 2, .alpha = 0.0});
  CHECK(std::abs(constraint_level(RationalFn(Poly{0.0, 1.0}), l2.zeros) - 4.0) < 1e-13);
  CHECK(constraint_level(sq, std::vector<cplx>{}) == cplx(0.0));
  const RationalFn pole(Poly{}, {{1.0, 2, 1.0}});
  CHECK(error_code_of([&] { constraint_level(pole, std::vector<cplx>{1.0}); }) == ErrorCode::PoleHit);
}

TEST_CASE("multiplier recovery") {
  {
    // D y' is a multiple of y for linear y, so any multiplier works.
    const auto dec = extract({Poly{1.0}, Poly{0.0, -1.0}});
    CHECK(determine_multiplier(dec, oracles::hermite(1)).degenerate_input);
  }
  for (int n = 2; n <= 8; ++n) {
    const auto dec = extract({Poly{1.0}, Poly{0.0, -1.0}});
    const auto fit = determine_multiplier(dec, oracles::hermite(n));
    CHECK(std::abs(fit.rho_ode + 2.0) < 1e-10);
    CHECK(std::abs(fit.lambda + 1.0) < 1e-10);
    // 2 Btilde - rho D reproduces 2B = -2x.
    CHECK(coeff_distance(dec.Btilde * 2.0 - dec.D * fit.rho_ode, Poly{0.0, -2.0}) < 1e-9);
    CHECK(coeff_distance(fit.V, Poly{2.0 * n}) < 1e-9 * n);
  }
  for (double alpha : {0.0, 0.5, 2.0}) {
    const auto dec = extract({Poly{0.0, 1.0}, Poly{(alpha + 1) / 2, -0.5}});
    const auto fit = determine_multiplier(dec, oracles::laguerre(5, alpha));
    CHECK(coeff_distance(dec.Btilde * 2.0 - dec.D * fit.rho_ode, Poly{alpha + 1, -1.0}) < 1e-9);
  }
}

TEST_CASE("multiplier edge cases") {
  const auto dec = extract({Poly{1.0}, Poly{0.0, -1.0}});
  const auto fit = determine_multiplier(dec, Poly{1.0});
  CHECK(fit.degenerate_input);
  CHECK(fit.rho_ode == cplx(0.0));

  std::mt19937_64 rng(21);
  std::vector<cplx> x;
  for (int k = 0; k < 4; ++k) x.push_back(test::random_cplx(rng, 2.0));
  CHECK(error_code_of([&] { determine_multiplier(dec, from_roots(x)); }) == ErrorCode::NoConsistentRho);
}

TEST_CASE("companion decomposition rebuilds the palindromic operator") {
  const auto c = oracles::oracle_case(Family::LaguerrePalindromic, {.n = 3, .alpha = 0.5});
  const auto dec = extract(c.op);
  ChargeProblem problem{dec.charges, 6};
  const auto comp = companion_decomposition(problem, dec.r_prime);
  CHECK(comp.repeated_roots_of_A);
  CHECK(coeff_distance(comp.op.A, c.op.A) < 1e-12);
  CHECK(coeff_distance(comp.D, dec.D) < 1e-12);
  CHECK(coeff_distance(comp.Btilde, dec.Btilde) < 1e-12);
}

TEST_CASE("charge problem validation") {
  CHECK(error_code_of([] { ChargeProblem{{{0.0, 1.0}, {1e-12, 1.0}}, 2}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { ChargeProblem{{{0.0, 0.0}}, 2}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(!error_code_of([] { ChargeProblem{{{0.0, 1.0}, {1.0, 1.0}}, 2}.validate(); }));
}

}  // TEST_SUITE
