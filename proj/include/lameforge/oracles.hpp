#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lameforge/lame.hpp"
#include "lameforge/poly.hpp"
#include "lameforge/rational.hpp"

namespace lameforge::oracles {

// Classical families by three-term recurrence, standard normalisation.
Poly hermite(int n);                                // physicists' H_n
Poly laguerre(int n, double alpha);                 // L_n^alpha
Poly jacobi(int n, double alpha, double beta);      // P_n^(alpha, beta)
/// Rodrigues-normalised relativistic Hermite polynomial H_n^N.
Poly relativistic_hermite(int n, double N);

/// p(x^m).
Poly substitute_power(const Poly& p, int m);
/// x^n p(x + 1/x) for deg p = n.
Poly palindromic_substitute(const Poly& p);

// Zeros by Golub-Welsch (eigenvalues of the symmetric Jacobi matrix),
// ascending. Independent of the polynomial root finder.
std::vector<double> hermite_zeros(int n);
std::vector<double> laguerre_zeros(int n, double alpha);
std::vector<double> jacobi_zeros(int n, double alpha, double beta);

double pochhammer(double t, int j);
/// Coefficients of sum_{j < terms} (a)_j / (b)_j x^j / j!. Throws
/// PochhammerPole when (b)_j vanishes inside the range.
std::vector<double> hyp1f1_truncated(double a, double b, int terms);

enum class Branch { Even, Odd };

/// Polynomial solution of y'' - (m+1) x^m y' + m(m+1) n x^{m-1} y = 0.
struct SchrodingerSolution {
  Poly y;
  int n = 0;         // the equation's n; deg y = m n
  int N = 0;         // Laguerre degree
  double alpha = 0;  // Laguerre parameter
};

/// Even: L_{dm}^{-1/(m+1)}(x^{m+1}) with n = (m+1) d.
/// Odd:  x L_{dm-1}^{1/(m+1)}(x^{m+1}) with n = d(m+1) - 1.
SchrodingerSolution schrodinger_solution(int m, int d, Branch branch);

struct ScaledZeros {
  cplx scale;
  std::vector<cplx> zeros;
};

/// Scale s with sum_k r(s x_k) = target for a monomial r. Throws
/// NonMonomialConstraint otherwise.
ScaledZeros scale_to_level(std::span<const cplx> zeros, const RationalFn& r, cplx target);

enum class Family {
  Hermite,
  Laguerre,
  Jacobi,
  RelativisticHermite,
  HermitePower,
  LaguerrePower,
  LaguerrePalindromic,
  Schrodinger1F1,
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct FamilyParams {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int m = 1;
  double N = 1.0;
  int d = 1;
  Branch branch = Branch::Even;
};

/// One member of a family together with the differential equation it solves.
struct OracleCase {
  Family family;
  FamilyParams params;
  std::string label;
  LameOperator op;        // factor-2 convention
  Poly V;
  Poly y;
  std::vector<cplx> zeros;  // with multiplicity, from the structured route
};

OracleCase oracle_case(Family family, const FamilyParams& params);

}  // namespace lameforge::oracles
