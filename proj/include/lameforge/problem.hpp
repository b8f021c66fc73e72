#pragma once

#include <span>
#include <vector>

#include "lameforge/poly.hpp"
#include "lameforge/rational.hpp"

namespace lameforge {

/// Fixed point charge of strength `strength` at `at`.
struct Charge {
  cplx at;
  cplx strength;
};

/// Fixed charges plus the number of movable unit charges.
struct ChargeProblem {
  std::vector<Charge> charges;
  int n = 0;

  /// Throws InvalidArgument unless locations are pairwise separated by more
  /// than `separation`, strengths are nonzero and n >= 0.
  void validate(double separation = 1e-8) const;
};

/// sum_k r(x_k) = level.
struct Constraint {
  RationalFn r;
  cplx level{};
};

/// sum_k r(x_k). Throws PoleHit when a point is within pole_tol of a pole of r.
cplx constraint_level(const RationalFn& r, std::span<const cplx> points, double pole_tol = 1e-10);

}  // namespace lameforge
