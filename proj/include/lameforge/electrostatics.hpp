#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lameforge/problem.hpp"
#include "lameforge/rational.hpp"

namespace lameforge {

using Configuration = std::vector<cplx>;

/// -Re sum nu_j Log(x_k - a_j) - sum_{i<k} log|x_k - x_i|, i.e. -log|F| on the
/// principal branch. Throws ArrangementHit within `separation` of the
/// arrangement.
double energy(const ChargeProblem& problem, std::span<const cplx> x, double separation = 1e-10);

/// G_k = sum_j nu_j / (x_k - a_j) + sum_{i != k} 1 / (x_k - x_i).
std::vector<cplx> complex_gradient(const ChargeProblem& problem, std::span<const cplx> x,
                                   double separation = 1e-10);

/// Central differences of energy in Re x_k and Im x_k, packaged as
/// -conj(dL/du + i dL/dv), which equals G_k.
std::vector<cplx> finite_difference_gradient(const ChargeProblem& problem, std::span<const cplx> x,
                                             double h = 1e-6);

struct LagrangeResidual {
  std::vector<cplx> gradient;  // G_k - lambda r'(x_k)
  cplx constraint{};           // sum r(x_k) - level
  double max_abs() const;
};

LagrangeResidual lagrange_residual(const ChargeProblem& problem, const Constraint& constraint,
                                   std::span<const cplx> x, cplx lambda, double separation = 1e-10);

/// Least-squares lambda for G_k = lambda r'(x_k); zero when r' vanishes at every point.
cplx fit_multiplier(const ChargeProblem& problem, const RationalFn& r_prime, std::span<const cplx> x);

enum class EquilibriumKind { Unconstrained, Constrained, FixedMultiplier };

struct SolverOptions {
  double tol = 1e-11;
  int max_iter = 200;
  int random_starts = 8;
  std::uint64_t seed = 42;
  int threads = 0;  // 0: LAME_FORGE_THREADS or the hardware count
  double dedupe_tol = 1e-6;
  double separation = 1e-10;
};

struct EquilibriumSolution {
  Configuration x;
  cplx lambda{};
  double grad_residual = 0.0;
  double constraint_residual = 0.0;
  double energy = 0.0;
  EquilibriumKind kind = EquilibriumKind::Unconstrained;
  int iterations = 0;
};

/// What the movable charges feel besides the fixed charges.
///
/// Unconstrained: nothing. Constrained: lambda r' with lambda solved for and
/// sum r(x_k) = level. FixedMultiplier: lambda r' with lambda given, no level.
struct FieldSpec {
  EquilibriumKind kind = EquilibriumKind::Unconstrained;
  Constraint constraint;  // r and level; only r' is used for FixedMultiplier
  RationalFn r_prime;
  cplx lambda{};          // FixedMultiplier only

  static FieldSpec unconstrained() { return {}; }
  static FieldSpec constrained(const Constraint& c);
  static FieldSpec fixed_multiplier(const RationalFn& r_prime, cplx lambda);
};

/// Damped Newton on G_k - lambda r'(x_k) = 0 (plus the level row when
/// constrained). Steps are shortened so that the straight segment never meets
/// the arrangement, which keeps real iterates inside their interval cell.
///
/// Throws NonConvergence on the iteration cap or a stalled line search,
/// StepIntoArrangement when no positive step avoids the arrangement and
/// ArrangementHit when init lies on it.
EquilibriumSolution solve_equilibrium(const ChargeProblem& problem, const FieldSpec& field, Configuration init,
                                      const SolverOptions& opts = {});

inline EquilibriumSolution solve_equilibrium(const ChargeProblem& problem, const std::optional<Constraint>& c,
                                             Configuration init, const SolverOptions& opts = {}) {
  return solve_equilibrium(problem, c ? FieldSpec::constrained(*c) : FieldSpec::unconstrained(), std::move(init),
                           opts);
}

/// One seed per weak composition of n into the finite gaps between the sorted
/// real charge locations. Requires real locations and positive real
/// strengths (NotRealAxisProblem); fewer than two charges leave no gap, so
/// the list is empty unless n = 0.
std::vector<Configuration> stieltjes_seeds(const ChargeProblem& problem);

/// Like stieltjes_seeds but also fills the two unbounded rays, truncated at
/// `reach` from the outermost charges. Useful when a field confines charges.
std::vector<Configuration> line_seeds(const ChargeProblem& problem, double reach);

struct Enumeration {
  std::vector<EquilibriumSolution> solutions;  // sorted by energy, then roots
  int starts = 0;
  int converged = 0;
  int failed = 0;
  long long heine_bound = -1;  // binom(n+p-1, n) for p+1 charges, -1 when p = 0
};

/// Multistart over Stieltjes or line seeds (for real data; for data that is
/// symmetric under conjugation, seeds on the real axis) plus
/// opts.random_starts random complex seeds, deduplicated as multisets.
/// Starts run concurrently; results do not depend on the thread count.
Enumeration enumerate_equilibria(const ChargeProblem& problem, const FieldSpec& field, const SolverOptions& opts = {});

inline Enumeration enumerate_equilibria(const ChargeProblem& problem, const std::optional<Constraint>& c,
                                        const SolverOptions& opts = {}) {
  return enumerate_equilibria(problem, c ? FieldSpec::constrained(*c) : FieldSpec::unconstrained(), opts);
}

/// Worker count for multistart: LAME_FORGE_THREADS when set, else the hardware count.
int solver_threads(int requested = 0);

enum class CriticalKind { LocalMin, LocalMax, Saddle, Degenerate };

/// Signature of the real Hessian of the energy restricted to the real line,
/// projected onto the tangent of the constraint when there is one. Requires
/// real strengths and real movable positions (ComplexDataUnsupported) and a
/// residual below `critical_tol` (NotCritical). Charge locations may be complex.
CriticalKind classify_critical_point(const ChargeProblem& problem, const FieldSpec& field,
                                     const EquilibriumSolution& sol, double critical_tol = 1e-6);

}  // namespace lameforge
