#include "lameforge/stieltjes.hpp"

#include <string>

#include "lameforge/errors.hpp"
#include "lameforge/extract.hpp"

namespace lameforge {
namespace {

double scaled_residual(const ParametricLame& pl, const Poly& V, const Poly& y) {
  return lame_residual(pl, V, y).max_abs_coeff() / (1.0 + residual_scale(pl, V, y));
}

}  // namespace

long long heine_count(int n, int p) {
  if (n < 0 || p < 1) throw Error(ErrorCode::InvalidArgument, "heine_count needs n >= 0 and p >= 1");
  constexpr long long cap = 1'000'000;
  const long long top = static_cast<long long>(n) + p - 1;
  const long long k = std::min<long long>(n, p - 1);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (top - k + i) / i;
    if (r > cap) throw Error(ErrorCode::InvalidArgument, "Heine count exceeds 10^6");
  }
  return r;
}

HeineStieltjesResult solve_heine_stieltjes(const LameOperator& op, int n, const SolverOptions& opts) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  if (fuchs_index(op) < 0) throw Error(ErrorCode::InvalidArgument, "operator has negative Fuchs index");
  HeineStieltjesResult out;
  const int p = op.A.degree() - 1;
  if (classify(op) == LameKind::NonDegenerate && p >= 1) {
    try {
      out.heine_bound = heine_count(n, p);
    } catch (const Error&) {
    }
  }
  if (n == 0) {
    out.pairs.push_back({Poly{}, Poly{1.0}, 0.0, 0.0});
    return out;
  }

  const Decomposition dec = extract(op);
  const ChargeProblem problem{dec.charges, n};
  const bool field = !dec.r_prime.is_zero();
  const cplx lambda = field ? cplx(-1.0) : cplx{};
  const FieldSpec spec = field ? FieldSpec::fixed_multiplier(dec.r_prime, lambda) : FieldSpec::unconstrained();
  const Enumeration eq = enumerate_equilibria(problem, spec, opts);
  out.starts = eq.starts;
  out.converged = eq.converged;

  const ParametricLame pl{dec.fixed_part(), dec.D, 2.0 * lambda};
  for (const auto& sol : eq.solutions) {
    const Poly y = from_roots(sol.x);
    Poly V;
    try {
      V = van_vleck_from_solution(pl, y);
    } catch (const Error&) {
      ++out.rejected;
      continue;
    }
    const bool dup = std::any_of(out.pairs.begin(), out.pairs.end(), [&](const VanVleckPair& q) {
      return coeff_distance(q.V, V) < opts.dedupe_tol * (1.0 + V.max_abs_coeff());
    });
    if (dup) continue;
    out.pairs.push_back({V, y, lambda, scaled_residual(pl, V, y)});
  }
  return out;
}

VanVleckPair solve_fuchs0(const LameOperator& op, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  if (fuchs_index(op) != 0) throw Error(ErrorCode::NotFuchs0, "Fuchs index is " + std::to_string(fuchs_index(op)));
  const Poly b = op.B * 2.0;
  const cplx a0 = op.A[0], a1 = op.A[1], a2 = op.A[2];
  const cplx b0 = b[0], b1 = b[1];
  // x^k coefficient: (a2 k(k-1) + b1 k + V) c_k + (a1 k + b0)(k+1) c_{k+1} + a0 (k+2)(k+1) c_{k+2}
  const double nn = n;
  const cplx V = -(a2 * nn * (nn - 1) + b1 * nn);
  std::vector<cplx> c(static_cast<size_t>(n) + 3, 0.0);
  c[static_cast<size_t>(n)] = 1.0;
  const double scale = std::max({std::abs(a2) * nn * nn, std::abs(b1) * nn, 1.0});
  for (int k = n - 1; k >= 0; --k) {
    const double kk = k;
    const cplx lead = a2 * kk * (kk - 1) + b1 * kk + V;
    if (std::abs(lead) <= 1e-13 * scale)
      throw Error(ErrorCode::RecurrenceBreakdown, "coefficient of c_" + std::to_string(k) + " vanishes");
    const auto i = static_cast<size_t>(k);
    c[i] = -((a1 * kk + b0) * (kk + 1) * c[i + 1] + a0 * (kk + 2) * (kk + 1) * c[i + 2]) / lead;
  }
  c.resize(static_cast<size_t>(n) + 1);
  VanVleckPair pair{Poly{V}, Poly(std::move(c)), 0.0, 0.0};
  const ParametricLame pl{op, Poly{}, 0.0};
  pair.residual = scaled_residual(pl, pair.V, pair.y);
  return pair;
}

}  // namespace lameforge
