#pragma once

#include "lameforge/poly.hpp"
#include "lameforge/settings.hpp"

namespace lameforge {

/// The operator A d^2/dx^2 + 2B d/dx. B is stored with the factor-2
/// convention, so an equation written A y'' + b y' + V y = 0 has B = b/2.
struct LameOperator {
  Poly A;
  Poly B;
};

enum class LameKind { NonDegenerate, Degenerate };

/// max(deg A - 2, deg B - 1); a zero B only contributes through deg A.
int fuchs_index(const LameOperator& op);

/// NonDegenerate iff deg A > deg B.
LameKind classify(const LameOperator& op);

/// A y'' + (2B - rho D) y' + V y = 0.
struct ParametricLame {
  LameOperator op;
  Poly D;
  cplx rho{};

  /// 2B - rho D
  Poly first_order() const { return op.B * 2.0 - D * rho; }
};

Poly lame_residual(const ParametricLame& pl, const Poly& V, const Poly& y);

/// Scale used to decide whether a residual is the zero polynomial:
/// the largest coefficient magnitude among A, 2B, rho D, V and y.
double residual_scale(const ParametricLame& pl, const Poly& V, const Poly& y);

/// max |coeff| of the residual below zero_poly_tol * (1 + residual_scale).
bool certifies_solution(const ParametricLame& pl, const Poly& V, const Poly& y,
                        const NumericSettings& settings = {});

/// Upper bound on deg V for the parametric equation:
/// max(deg A - 2, deg B - 1, deg D - 1). For B = Btilde with deg Btilde < deg A
/// this is max(p - 1, q - 1) with p + 1 = deg A and q = deg D.
int van_vleck_degree_bound(const ParametricLame& pl);

/// V = -(A y'' + (2B - rho D) y') / y by exact division. Throws NotASolution
/// when the relative remainder exceeds division_tol and DegreeViolation when
/// deg V exceeds van_vleck_degree_bound. A constant y gives V = 0.
Poly van_vleck_from_solution(const ParametricLame& pl, const Poly& y, const NumericSettings& settings = {});

}  // namespace lameforge
