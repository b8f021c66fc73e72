#pragma once

#include <optional>
#include <vector>

#include "lameforge/lame.hpp"
#include "lameforge/problem.hpp"
#include "lameforge/rational.hpp"
#include "lameforge/settings.hpp"

namespace lameforge {

/// B = A r' + Btilde: fixed charges from the simple poles of B/A, and the
/// constraint derivative r' from its polynomial part and higher-order poles.
struct Decomposition {
  LameOperator op;
  std::vector<Charge> charges;
  RationalFn r_prime;
  Poly D;       // A r'
  Poly Btilde;  // B - D
  bool repeated_roots_of_A = false;

  /// The fixed-charge part of the operator, (A, Btilde).
  LameOperator fixed_part() const { return {op.A, Btilde}; }
};

/// Splits a Lame operator into fixed charges and an A-adjusted constraint.
/// Requires A != 0 and fuchs_index >= 0.
Decomposition extract(const LameOperator& op, const NumericSettings& settings = {});

/// r = primitive of r' with zero integration constant; level left at 0.
Constraint antidifferentiate(const Decomposition& dec);

/// Rebuilds A, Btilde and D = A r' from a charge problem and a constraint
/// derivative r'. A carries every charge location once and every pole of r'
/// with its order, so both Btilde and D are polynomials.
Decomposition companion_decomposition(const ChargeProblem& problem, const RationalFn& r_prime,
                                      const NumericSettings& settings = {});

/// Scalar for A y'' + (2 Btilde - rho_ode D) y' + V y = 0.
///
/// The electrostatic multiplier is lambda = rho_ode / 2; the operator the
/// decomposition came from corresponds to rho_ode = -2.
struct MultiplierFit {
  cplx rho_ode{};
  cplx lambda{};
  Poly V;
  double residual = 0.0;  // relative remainder of the least-squares fit
  bool degenerate_input = false;
};

/// Least-squares fit of rho_ode on the remainders modulo y, certified by
/// van_vleck_from_solution. Throws NoConsistentRho when no scalar makes the
/// division exact. A constant y, or a y for which D y' vanishes modulo y,
/// returns rho_ode = 0 with degenerate_input set.
MultiplierFit determine_multiplier(const Decomposition& dec, const Poly& y, const NumericSettings& settings = {});

}  // namespace lameforge
