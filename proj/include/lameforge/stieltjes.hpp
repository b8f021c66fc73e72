#pragma once

#include "lameforge/electrostatics.hpp"
#include "lameforge/lame.hpp"

namespace lameforge {

/// A Van Vleck polynomial V with its monic Stieltjes polynomial y.
struct VanVleckPair {
  Poly V;
  Poly y;
  cplx lambda{};          // electrostatic multiplier of the field, 0 without one
  double residual = 0.0;  // scaled lame_residual
};

struct HeineStieltjesResult {
  std::vector<VanVleckPair> pairs;
  long long heine_bound = -1;  // only for non-degenerate operators
  int starts = 0;
  int converged = 0;
  int rejected = 0;  // equilibria whose polynomial failed certification
};

/// Bethe-ansatz route: extract charges and field, enumerate equilibria with
/// the multiplier fixed at -1 (the operator's own scale), rebuild monic y
/// and recover V. Pairs are deduplicated by V and ordered like the
/// equilibria they came from.
HeineStieltjesResult solve_heine_stieltjes(const LameOperator& op, int n, const SolverOptions& opts = {});

/// Coefficient recurrence for Fuchs index 0, where V is a constant. Throws
/// NotFuchs0, and RecurrenceBreakdown when the solution is not unique.
VanVleckPair solve_fuchs0(const LameOperator& op, int n);

/// binom(n+p-1, n). Throws InvalidArgument beyond 10^6.
long long heine_count(int n, int p);

}  // namespace lameforge
