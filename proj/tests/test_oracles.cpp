#include <cmath>

#include "doctest.h"
#include "lameforge/lame.hpp"
#include "lameforge/oracles.hpp"
#include "test_support.hpp"

using namespace lameforge;
using namespace lameforge::oracles;
using lameforge::test::error_code_of;

namespace {

bool solves(const OracleCase& c) {
  return certifies_solution(ParametricLame{c.op, Poly{}, 0.0}, c.V, c.y);
}

// Zeros reproduce y up to its leading coefficient.
double zero_mismatch(const OracleCase& c) {
  if (c.y.degree() == 0) return c.zeros.empty() ? 0.0 : 1.0;
  const Poly rebuilt = from_roots(c.zeros) * c.y.leading();
  return coeff_distance(rebuilt, c.y) / c.y.max_abs_coeff();
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("Hermite") {
  CHECK(coeff_distance(hermite(0), Poly{1.0}) == 0.0);
  CHECK(coeff_distance(hermite(2), Poly{-2.0, 0.0, 4.0}) == 0.0);
  CHECK(coeff_distance(hermite(4), Poly{12.0, 0.0, -48.0, 0.0, 16.0}) == 0.0);
  const auto z = hermite_zeros(4);
  CHECK(std::abs(z[2] - std::sqrt((3 - std::sqrt(6.0)) / 2)) < 1e-14);
  CHECK(std::abs(z[3] - std::sqrt((3 + std::sqrt(6.0)) / 2)) < 1e-14);
  CHECK(std::abs(z[3] - 1.6506801238857845) < 1e-14);
  CHECK(hermite_zeros(5)[2] == 0.0);
}

TEST_CASE("Laguerre") {
  CHECK(coeff_distance(laguerre(1, 0.3), Poly{1.3, -1.0}) < 1e-15);
  CHECK(coeff_distance(laguerre(2, 0.0), Poly{1.0, -2.0, 0.5}) < 1e-15);
  const auto z = laguerre_zeros(2, 0.0);
  CHECK(std::abs(z[0] - (2 - std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(z[1] - (2 + std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(laguerre_zeros(1, 0.3)[0] - 1.3) < 1e-14);
}

TEST_CASE("Jacobi") {
  CHECK(coeff_distance(jacobi(1, 0, 0), Poly{0.0, 1.0}) < 1e-15);
  CHECK(coeff_distance(jacobi(2, 0, 0), Poly{-0.5, 0.0, 1.5}) < 1e-15);
  const auto z = jacobi_zeros(2, 0, 0);
  CHECK(std::abs(z[1] - 1 / std::sqrt(3.0)) < 1e-14);
  // Jacobi P_1^(1,0) = (3x + 1) / 2
  CHECK(coeff_distance(jacobi(1, 1, 0), Poly{0.5, 1.5}) < 1e-15);
}

TEST_CASE("relativistic Hermite") {
  for (double N : {1.0, 10.0, 100.0}) {
    CHECK(coeff_distance(relativistic_hermite(0, N), Poly{1.0}) < 1e-15);
    CHECK(coeff_distance(relativistic_hermite(1, N), Poly{0.0, 2.0}) < 1e-15);
    CHECK(coeff_distance(relativistic_hermite(2, N), Poly{-2.0, 0.0, (4 * N + 2) / N}) < 1e-13);
    const auto c = oracle_case(Family::RelativisticHermite, {.n = 2, .N = N});
    CHECK(std::abs(c.zeros[1].real() - std::sqrt(N / (2 * N + 1))) < 1e-14);
  }
}

TEST_CASE("substitutions") {
  CHECK(coeff_distance(substitute_power(hermite(2), 2), Poly{-2.0, 0.0, 0.0, 0.0, 4.0}) == 0.0);
  CHECK(coeff_distance(substitute_power(hermite(5), 1), hermite(5)) == 0.0);
  CHECK(coeff_distance(substitute_power(Poly{3.0}, 4), Poly{3.0}) == 0.0);
  CHECK(coeff_distance(palindromic_substitute(laguerre(1, 0.5)), Poly{-1.0, 1.5, -1.0}) < 1e-15);
  CHECK(coeff_distance(palindromic_substitute(Poly{1.0}), Poly{1.0}) == 0.0);
  CHECK(coeff_distance(palindromic_substitute(Poly{0.0, 1.0}), Poly{1.0, 0.0, 1.0}) == 0.0);
}

TEST_CASE("Schrodinger solutions") {
  const auto e11 = schrodinger_solution(1, 1, Branch::Even);
  CHECK(e11.n == 2);
  CHECK(coeff_distance(e11.y, Poly{0.5, 0.0, -1.0}) < 1e-15);
  const auto o11 = schrodinger_solution(1, 1, Branch::Odd);
  CHECK(o11.n == 1);
  CHECK(coeff_distance(o11.y, Poly{0.0, 1.0}) < 1e-15);
  const auto e21 = schrodinger_solution(2, 1, Branch::Even);
  CHECK(e21.n == 3);
  CHECK(e21.y.degree() == 6);
  for (int m = 1; m <= 3; ++m)
    for (int d = 1; d <= 2; ++d)
      for (auto br : {Branch::Even, Branch::Odd}) {
        const auto s = schrodinger_solution(m, d, br);
        CHECK(s.y.degree() == m * s.n);
      }
}

TEST_CASE("hypergeometric truncation") {
  const auto c = hyp1f1_truncated(-2, 1, 3);
  REQUIRE(c.size() == 3);
  CHECK(std::abs(c[0] - 1) < 1e-15);
  CHECK(std::abs(c[1] + 2) < 1e-15);
  CHECK(std::abs(c[2] - 0.5) < 1e-15);
  CHECK(coeff_distance(Poly(std::vector<cplx>(c.begin(), c.end())), laguerre(2, 0.0)) < 1e-15);
  const auto z = hyp1f1_truncated(0, 1, 5);
  CHECK(z[0] == 1.0);
  for (size_t j = 1; j < z.size(); ++j) CHECK(z[j] == 0.0);
  CHECK(pochhammer(3, 2) == 12.0);
  CHECK(pochhammer(7, 0) == 1.0);
  CHECK(error_code_of([] { hyp1f1_truncated(1, -1, 4); }) == ErrorCode::PochhammerPole);
}

TEST_CASE("scale to level") {
  std::vector<cplx> h3;
  for (double z : hermite_zeros(3)) h3.push_back(z);
  const RationalFn sq(Poly{0.0, 0.0, 1.0});
  CHECK(std::abs(scale_to_level(h3, sq, 6.0).scale - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(scale_to_level(h3, sq, 3.0).scale - 1.0) < 1e-14);
  std::vector<cplx> l2;
  for (double z : laguerre_zeros(2, 0.0)) l2.push_back(z);
  const auto s = scale_to_level(l2, RationalFn(Poly{0.0, 1.0}), 8.0);
  CHECK(std::abs(s.scale - 2.0) < 1e-14);
  CHECK(std::abs(s.zeros[0] - 2.0 * l2[0]) < 1e-14);
  CHECK(error_code_of([&] { scale_to_level(l2, RationalFn(Poly{1.0, 1.0}), 8.0); }) ==
        ErrorCode::NonMonomialConstraint);
  CHECK(error_code_of([&] { scale_to_level(l2, RationalFn(Poly{}, {{0.0, 2, 1.0}}), 8.0); }) ==
        ErrorCode::NonMonomialConstraint);
}

TEST_CASE("family names round trip") {
  for (auto f : {Family::Hermite, Family::Laguerre, Family::Jacobi, Family::RelativisticHermite,
                 Family::HermitePower, Family::LaguerrePower, Family::LaguerrePalindromic, Family::Schrodinger1F1})
    CHECK(parse_family(family_name(f)) == f);
  CHECK(!parse_family("chebyshev"));
}

TEST_CASE("every case solves its equation and its zeros rebuild y") {
  std::vector<OracleCase> cases;
  for (int n = 0; n <= 12; ++n) {
    cases.push_back(oracle_case(Family::Hermite, {.n = n}));
    for (double a : {0.0, 0.5, 2.0}) cases.push_back(oracle_case(Family::Laguerre, {.n = n, .alpha = a}));
  }
  for (int n = 0; n <= 10; ++n) cases.push_back(oracle_case(Family::Jacobi, {.n = n}));
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n <= 6; ++n) {
      cases.push_back(oracle_case(Family::HermitePower, {.n = n, .m = m}));
      for (double a : {0.0, 0.5, 2.0}) cases.push_back(oracle_case(Family::LaguerrePower, {.n = n, .alpha = a, .m = m}));
    }
  for (int n = 0; n <= 5; ++n)
    for (double a : {0.0, 0.5, 2.0}) cases.push_back(oracle_case(Family::LaguerrePalindromic, {.n = n, .alpha = a}));
  for (int m = 1; m <= 3; ++m)
    for (int d = 1; d <= 2; ++d)
      for (auto br : {Branch::Even, Branch::Odd})
        cases.push_back(oracle_case(Family::Schrodinger1F1, {.m = m, .d = d, .branch = br}));
  for (int n = 0; n <= 8; ++n)
    for (double N : {1.0, 10.0, 100.0}) cases.push_back(oracle_case(Family::RelativisticHermite, {.n = n, .N = N}));

  for (const auto& c : cases) {
    INFO(c.label);
    CHECK(solves(c));
    CHECK(static_cast<int>(c.zeros.size()) == c.y.degree());
    CHECK(zero_mismatch(c) < 1e-8);
  }
}

TEST_CASE("power-family constraint sums") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 8; ++n) {
      const auto h = oracle_case(Family::HermitePower, {.n = n, .m = m});
      cplx s{};
      for (auto z : h.zeros) s += std::pow(z, 2 * m);
      const double want = m * n * (n - 1) / 2.0;
      CHECK(std::abs(s - want) <= 1e-8 * std::max(1.0, want));
      for (double a : {0.0, 0.5, 2.0}) {
        const auto l = oracle_case(Family::LaguerrePower, {.n = n, .alpha = a, .m = m});
        cplx t{};
        for (auto z : l.zeros) t += std::pow(z, m);
        CHECK(std::abs(t - m * n * (n + a)) <= 1e-8 * m * n * (n + a));
      }
    }
}

// Each zero l of L_n^alpha gives two zeros with x + 1/x = l.
TEST_CASE("palindromic level is twice the Laguerre level") {
  for (int n = 1; n <= 5; ++n)
    for (double a : {0.0, 0.5, 2.0}) {
      const auto c = oracle_case(Family::LaguerrePalindromic, {.n = n, .alpha = a});
      cplx s{};
      for (auto z : c.zeros) s += z + 1.0 / z;
      CHECK(std::abs(s - 2.0 * n * (n + a)) < 1e-8 * n * (n + a));
    }
}

TEST_CASE("palindromic zeros lie on the positive axis or the right unit semicircle") {
  for (int n = 1; n <= 5; ++n)
    for (double a : {0.0, 0.5, 2.0}) {
      const auto c = oracle_case(Family::LaguerrePalindromic, {.n = n, .alpha = a});
      for (auto z : c.zeros) {
        const bool positive = std::abs(z.imag()) < 1e-8 && z.real() > 0;
        const bool arc = std::abs(std::abs(z) - 1.0) < 1e-8 && z.real() > 0;
        CHECK((positive || arc));
      }
    }
}

TEST_CASE("relativistic zeros increase towards the Hermite zeros") {
  const auto h = hermite_zeros(4);
  std::vector<double> prev{0.0, 0.0};
  for (int e = 0; e <= 14; ++e) {
    const auto c = oracle_case(Family::RelativisticHermite, {.n = 4, .N = std::ldexp(1.0, e)});
    const double z0 = c.zeros[2].real(), z1 = c.zeros[3].real();
    CHECK(z0 > prev[0]);
    CHECK(z1 > prev[1]);
    prev = {z0, z1};
  }
  CHECK(std::abs(prev[0] - h[2]) < 1e-2);
  CHECK(std::abs(prev[1] - h[3]) < 1e-2);
}

}  // TEST_SUITE
