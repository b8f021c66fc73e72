#include "lameforge/electrostatics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "lameforge/errors.hpp"
#include "lameforge/roots.hpp"
#include "lameforge/stieltjes.hpp"

namespace lameforge {
namespace {

void check_off_arrangement(const ChargeProblem& problem, std::span<const cplx> x, double separation) {
  for (size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k].real()) || !std::isfinite(x[k].imag()))
      throw Error(ErrorCode::ArrangementHit, "non-finite position");
    for (const auto& c : problem.charges)
      if (std::abs(x[k] - c.at) <= separation)
        throw Error(ErrorCode::ArrangementHit, "x_" + std::to_string(k) + " sits on a fixed charge");
    for (size_t i = 0; i < k; ++i)
      if (std::abs(x[k] - x[i]) <= separation)
        throw Error(ErrorCode::ArrangementHit,
                    "x_" + std::to_string(i) + " and x_" + std::to_string(k) + " coincide");
  }
}

double arrangement_distance(const ChargeProblem& problem, std::span<const cplx> x) {
  double d = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < x.size(); ++k) {
    for (const auto& c : problem.charges) d = std::min(d, std::abs(x[k] - c.at));
    for (size_t i = 0; i < k; ++i) d = std::min(d, std::abs(x[k] - x[i]));
  }
  return d;
}

// Residual against the size of the terms that produced it. Far from every
// charge the terms themselves vanish, so an absolute test would accept escapes.
double relative(double residual, double scale) { return scale > 0.0 ? residual / scale : residual; }

bool is_real(cplx z, double tol) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

// The square system G_k - lambda r'(x_k) = 0, plus sum r(x_k) = level when
// lambda is an unknown.
class System {
 public:
  System(const ChargeProblem& problem, const FieldSpec& field)
      : problem_(problem), field_(field), r_second_(field.r_prime.derivative()) {}

  bool solves_lambda() const { return field_.kind == EquilibriumKind::Constrained; }
  bool has_field() const { return field_.kind != EquilibriumKind::Unconstrained; }

  struct Eval {
    Eigen::VectorXcd f;
    double measure = 0.0;  // max relative residual
    double grad_abs = 0.0;
    double constraint_abs = 0.0;
  };

  Eval evaluate(std::span<const cplx> x, cplx lambda) const {
    const size_t n = x.size();
    Eval e;
    e.f.resize(static_cast<Eigen::Index>(n + (solves_lambda() ? 1 : 0)));
    for (size_t k = 0; k < n; ++k) {
      cplx g{};
      double scale = 0.0;
      for (const auto& c : problem_.charges) {
        const cplx t = c.strength / (x[k] - c.at);
        g += t;
        scale += std::abs(t);
      }
      for (size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        const cplx t = 1.0 / (x[k] - x[i]);
        g += t;
        scale += std::abs(t);
      }
      if (has_field()) {
        const cplx t = lambda * field_.r_prime(x[k]);
        g -= t;
        scale += std::abs(t);
      }
      e.f(static_cast<Eigen::Index>(k)) = g;
      e.grad_abs = std::max(e.grad_abs, std::abs(g));
      e.measure = std::max(e.measure, relative(std::abs(g), scale));
    }
    if (solves_lambda()) {
      cplx s = -field_.constraint.level;
      double scale = std::abs(field_.constraint.level);
      for (const cplx& xk : x) {
        const cplx v = field_.constraint.r(xk);
        s += v;
        scale += std::abs(v);
      }
      e.f(static_cast<Eigen::Index>(n)) = s;
      e.constraint_abs = std::abs(s);
      e.measure = std::max(e.measure, relative(std::abs(s), scale));
    }
    return e;
  }

  Eigen::MatrixXcd jacobian(std::span<const cplx> x, cplx lambda) const {
    const auto n = static_cast<Eigen::Index>(x.size());
    const Eigen::Index dim = n + (solves_lambda() ? 1 : 0);
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx xk = x[static_cast<size_t>(k)];
      cplx diag{};
      for (const auto& c : problem_.charges) diag -= c.strength / ((xk - c.at) * (xk - c.at));
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i == k) continue;
        const cplx d = xk - x[static_cast<size_t>(i)];
        const cplx t = 1.0 / (d * d);
        diag -= t;
        j(k, i) = t;
      }
      if (has_field()) diag -= lambda * r_second_(xk);
      j(k, k) = diag;
      if (solves_lambda()) {
        const cplx rp = field_.r_prime(xk);
        j(k, n) = -rp;
        j(n, k) = rp;
      }
    }
    return j;
  }

 private:
  const ChargeProblem& problem_;
  const FieldSpec& field_;
  RationalFn r_second_;
};

Eigen::VectorXcd newton_direction(const Eigen::MatrixXcd& j, const Eigen::VectorXcd& f) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(j);
  if (lu.isInvertible()) return lu.solve(-f);
  return j.completeOrthogonalDecomposition().solve(-f);
}

// Largest step in (0, t] whose segment stays clear of the arrangement: a
// crossing at real parameter s caps the step at s / 2.
double safe_step(const ChargeProblem& problem, std::span<const cplx> x, const Eigen::VectorXcd& dx, double t) {
  auto cap = [&t](cplx s) {
    if (is_real(s, 1e-9) && s.real() > 0.0 && s.real() <= t) t = 0.5 * s.real();
  };
  for (size_t k = 0; k < x.size(); ++k) {
    const cplx dk = dx(static_cast<Eigen::Index>(k));
    if (dk != cplx{})
      for (const auto& c : problem.charges) cap((c.at - x[k]) / dk);
    for (size_t i = 0; i < k; ++i) {
      const cplx rel = dk - dx(static_cast<Eigen::Index>(i));
      if (rel != cplx{}) cap((x[i] - x[k]) / rel);
    }
  }
  return t;
}

void weak_compositions(int n, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = n; k >= 0; --k) {
    cur.push_back(k);
    weak_compositions(n - k, parts, cur, out);
    cur.pop_back();
  }
}

std::vector<Configuration> fill_intervals(const std::vector<std::pair<double, double>>& intervals, int n) {
  if (n == 0) return {Configuration{}};
  if (intervals.empty()) return {};
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  weak_compositions(n, static_cast<int>(intervals.size()), cur, comps);
  std::vector<Configuration> seeds;
  for (const auto& comp : comps) {
    Configuration x;
    for (size_t g = 0; g < intervals.size(); ++g) {
      const auto [lo, hi] = intervals[g];
      const int k = comp[g];
      for (int i = 0; i < k; ++i)
        x.emplace_back(lo + (hi - lo) * (1.0 - std::cos(std::numbers::pi * (2 * i + 1) / (2.0 * k))) / 2.0);
    }
    seeds.push_back(std::move(x));
  }
  return seeds;
}

std::vector<double> real_locations(const ChargeProblem& problem) {
  std::vector<double> a;
  for (const auto& c : problem.charges) {
    if (!is_real(c.at, 1e-14) || !is_real(c.strength, 1e-14) || c.strength.real() <= 0.0)
      throw Error(ErrorCode::NotRealAxisProblem, "Stieltjes seeds need real locations and positive real strengths");
    a.push_back(c.at.real());
  }
  std::sort(a.begin(), a.end());
  return a;
}

// Gaps between sorted locations, plus the two rays truncated at `reach` when it is positive.
std::vector<std::pair<double, double>> axis_intervals(const std::vector<double>& a, double reach) {
  std::vector<std::pair<double, double>> out;
  if (reach > 0.0 && a.empty()) out.emplace_back(-reach, reach);
  if (reach > 0.0 && !a.empty()) out.emplace_back(a.front() - reach, a.front());
  for (size_t i = 0; i + 1 < a.size(); ++i) out.emplace_back(a[i], a[i + 1]);
  if (reach > 0.0 && !a.empty()) out.emplace_back(a.back(), a.back() + reach);
  return out;
}

bool real_field(const FieldSpec& field) {
  if (field.kind == EquilibriumKind::Unconstrained) return true;
  const Poly& p = field.r_prime.poly_part();
  for (int k = 0; k <= p.degree(); ++k)
    if (p[k].imag() != 0.0) return false;
  for (const auto& t : field.r_prime.pole_terms())
    if (t.pole.imag() != 0.0 || t.coeff.imag() != 0.0) return false;
  if (field.kind == EquilibriumKind::FixedMultiplier) return field.lambda.imag() == 0.0;
  return field.constraint.level.imag() == 0.0;
}

bool positive_real_charges(const ChargeProblem& problem) {
  return std::all_of(problem.charges.begin(), problem.charges.end(), [](const Charge& c) {
    return is_real(c.at, 1e-14) && is_real(c.strength, 1e-14) && c.strength.real() > 0.0;
  });
}

// Every charge has its mirror image under conjugation, so the real axis is invariant.
bool mirror_symmetric(const ChargeProblem& problem) {
  return std::all_of(problem.charges.begin(), problem.charges.end(), [&](const Charge& c) {
    return std::any_of(problem.charges.begin(), problem.charges.end(), [&](const Charge& d) {
      return std::abs(d.at - std::conj(c.at)) <= 1e-12 * (1.0 + std::abs(c.at)) &&
             std::abs(d.strength - std::conj(c.strength)) <= 1e-12 * (1.0 + std::abs(c.strength));
    });
  });
}

std::vector<double> real_axis_locations(const ChargeProblem& problem) {
  std::vector<double> a;
  for (const auto& c : problem.charges)
    if (is_real(c.at, 1e-14)) a.push_back(c.at.real());
  std::sort(a.begin(), a.end());
  return a;
}

bool before(const EquilibriumSolution& a, const EquilibriumSolution& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end(), lex_less);
}

}  // namespace

double LagrangeResidual::max_abs() const {
  double m = std::abs(constraint);
  for (const cplx& g : gradient) m = std::max(m, std::abs(g));
  return m;
}

double energy(const ChargeProblem& problem, std::span<const cplx> x, double separation) {
  check_off_arrangement(problem, x, separation);
  double e = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    for (const auto& c : problem.charges) e -= (c.strength * std::log(x[k] - c.at)).real();
    for (size_t i = 0; i < k; ++i) e -= std::log(std::abs(x[k] - x[i]));
  }
  return e;
}

std::vector<cplx> complex_gradient(const ChargeProblem& problem, std::span<const cplx> x, double separation) {
  check_off_arrangement(problem, x, separation);
  const FieldSpec none;
  const auto e = System(problem, none).evaluate(x, 0.0);
  return {e.f.data(), e.f.data() + e.f.size()};
}

std::vector<cplx> finite_difference_gradient(const ChargeProblem& problem, std::span<const cplx> x, double h) {
  if (!(h >= 1e-8 && h <= 1e-4)) throw Error(ErrorCode::InvalidArgument, "step must lie in [1e-8, 1e-4]");
  check_off_arrangement(problem, x, 1e-10);
  std::vector<cplx> g(x.size());
  Configuration y(x.begin(), x.end());
  for (size_t k = 0; k < x.size(); ++k) {
    auto diff = [&](cplx dir) {
      y[k] = x[k] + h * dir;
      const double up = energy(problem, y, 0.0);
      y[k] = x[k] - h * dir;
      const double down = energy(problem, y, 0.0);
      y[k] = x[k];
      return (up - down) / (2.0 * h);
    };
    const double du = diff(1.0);
    const double dv = diff(cplx(0.0, 1.0));
    g[k] = -std::conj(cplx(du, dv));
  }
  return g;
}

LagrangeResidual lagrange_residual(const ChargeProblem& problem, const Constraint& constraint,
                                   std::span<const cplx> x, cplx lambda, double separation) {
  check_off_arrangement(problem, x, separation);
  const RationalFn rp = constraint.r.derivative();
  LagrangeResidual out;
  out.gradient = complex_gradient(problem, x, separation);
  for (size_t k = 0; k < x.size(); ++k) out.gradient[k] -= lambda * rp(x[k]);
  out.constraint = constraint_level(constraint.r, x) - constraint.level;
  return out;
}

cplx fit_multiplier(const ChargeProblem& problem, const RationalFn& r_prime, std::span<const cplx> x) {
  const auto g = complex_gradient(problem, x, 0.0);
  cplx num{};
  double den = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    const cplx rp = r_prime(x[k]);
    num += std::conj(rp) * g[k];
    den += std::norm(rp);
  }
  return den > 0.0 ? num / den : cplx{};
}

FieldSpec FieldSpec::constrained(const Constraint& c) {
  FieldSpec f;
  f.kind = EquilibriumKind::Constrained;
  f.constraint = c;
  f.r_prime = c.r.derivative();
  return f;
}

FieldSpec FieldSpec::fixed_multiplier(const RationalFn& r_prime, cplx lambda) {
  FieldSpec f;
  f.kind = EquilibriumKind::FixedMultiplier;
  f.r_prime = r_prime;
  f.lambda = lambda;
  return f;
}

EquilibriumSolution solve_equilibrium(const ChargeProblem& problem, const FieldSpec& field, Configuration init,
                                      const SolverOptions& opts) {
  check_off_arrangement(problem, init, opts.separation);
  const System sys(problem, field);
  EquilibriumSolution sol;
  sol.kind = field.kind;
  sol.x = std::move(init);
  if (field.kind == EquilibriumKind::FixedMultiplier) sol.lambda = field.lambda;
  if (sys.solves_lambda()) sol.lambda = fit_multiplier(problem, field.r_prime, sol.x);

  const auto n = static_cast<Eigen::Index>(sol.x.size());
  auto finish = [&](const System::Eval& e, int it) {
    sol.grad_residual = e.grad_abs;
    sol.constraint_residual = e.constraint_abs;
    sol.iterations = it;
    sol.energy = energy(problem, sol.x, 0.0);
    return sol;
  };

  // A few full steps past the tolerance, kept only while they help. Roots
  // feed polynomial reconstruction, which magnifies what is left over.
  auto polish = [&](System::Eval& e, int it) {
    Configuration trial(sol.x.size());
    for (int extra = 0; extra < 3 && n > 0; ++extra, ++it) {
      const Eigen::VectorXcd step = newton_direction(sys.jacobian(sol.x, sol.lambda), e.f);
      if (!step.allFinite()) break;
      for (Eigen::Index k = 0; k < n; ++k) trial[static_cast<size_t>(k)] = sol.x[static_cast<size_t>(k)] + step(k);
      if (arrangement_distance(problem, trial) <= opts.separation) break;
      const cplx lam = sys.solves_lambda() ? sol.lambda + step(n) : sol.lambda;
      auto trial_eval = sys.evaluate(trial, lam);
      if (!trial_eval.f.allFinite() || trial_eval.f.norm() >= e.f.norm()) break;
      sol.x = trial;
      sol.lambda = lam;
      e = std::move(trial_eval);
    }
    return finish(e, it);
  };

  auto e = sys.evaluate(sol.x, sol.lambda);
  for (int it = 0;; ++it) {
    if (e.measure <= opts.tol) return polish(e, it);
    if (it >= opts.max_iter)
      throw Error(ErrorCode::NonConvergence, "iteration cap reached with residual " + format_sci(e.measure));
    if (n == 0) throw Error(ErrorCode::NonConvergence, "no movable charges can meet the level");

    const Eigen::VectorXcd step = newton_direction(sys.jacobian(sol.x, sol.lambda), e.f);
    if (!step.allFinite()) throw Error(ErrorCode::NonConvergence, "singular Newton system");
    const Eigen::VectorXcd dx = step.head(n);
    double t = safe_step(problem, sol.x, dx, 1.0);
    if (t < 1e-12) throw Error(ErrorCode::StepIntoArrangement, "every step meets the arrangement");

    const double norm0 = e.f.norm();
    bool accepted = false;
    Configuration trial(sol.x.size());
    for (; t >= 1e-12; t *= 0.5) {
      for (Eigen::Index k = 0; k < n; ++k) trial[static_cast<size_t>(k)] = sol.x[static_cast<size_t>(k)] + t * dx(k);
      if (arrangement_distance(problem, trial) <= opts.separation) continue;
      const cplx lam = sys.solves_lambda() ? sol.lambda + t * step(n) : sol.lambda;
      auto trial_eval = sys.evaluate(trial, lam);
      if (trial_eval.f.allFinite() && trial_eval.f.norm() <= (1.0 - 1e-4 * t) * norm0) {
        sol.x = trial;
        sol.lambda = lam;
        e = std::move(trial_eval);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Rounding floor: no step improves the residual any further.
      if (e.measure <= 100.0 * opts.tol) return polish(e, it);
      throw Error(ErrorCode::NonConvergence, "line search stalled at residual " + format_sci(e.measure));
    }
  }
}

std::vector<Configuration> stieltjes_seeds(const ChargeProblem& problem) {
  return fill_intervals(axis_intervals(real_locations(problem), 0.0), problem.n);
}

std::vector<Configuration> line_seeds(const ChargeProblem& problem, double reach) {
  return fill_intervals(axis_intervals(real_locations(problem), reach), problem.n);
}

int solver_threads(int requested) {
  int base = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (base < 1) base = 1;
  if (const char* env = std::getenv("LAME_FORGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) base = std::min(base, cap);
  }
  return base;
}

Enumeration enumerate_equilibria(const ChargeProblem& problem, const FieldSpec& field, const SolverOptions& opts) {
  problem.validate(opts.separation);
  Enumeration out;
  const int p = static_cast<int>(problem.charges.size()) - 1;
  if (p >= 1) {
    try {
      out.heine_bound = heine_count(problem.n, p);
    } catch (const Error&) {
    }
  }

  double radius = 0.0;
  cplx centre{};
  for (const auto& c : problem.charges) {
    radius = std::max(radius, std::abs(c.at));
    centre += c.at;
  }
  if (!problem.charges.empty()) centre /= static_cast<double>(problem.charges.size());
  radius = 2.0 * (1.0 + radius);

  // Axis seeds at a ladder of reaches: with net repulsion the basins of real
  // equilibria can be much tighter than the charge geometry suggests.
  std::vector<Configuration> seeds;
  const double reach = radius * std::max(1.0, std::sqrt(static_cast<double>(problem.n)));
  auto add = [&seeds](std::vector<Configuration> more) {
    for (auto& m : more) seeds.push_back(std::move(m));
  };
  if (real_field(field) && positive_real_charges(problem) && field.kind == EquilibriumKind::Unconstrained) {
    seeds = stieltjes_seeds(problem);
  } else if (real_field(field) && mirror_symmetric(problem)) {
    const auto a = real_axis_locations(problem);
    for (int j = 0; j < 4 && problem.n > 0; ++j) add(fill_intervals(axis_intervals(a, std::ldexp(reach, -j)), problem.n));
  }
  if (problem.n == 0 && seeds.empty()) seeds.emplace_back();
  if (problem.n > 0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < opts.random_starts; ++s) {
      Configuration x;
      while (static_cast<int>(x.size()) < problem.n) {
        const cplx z = centre + std::polar(radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
        x.push_back(z);
      }
      seeds.push_back(std::move(x));
    }
  }

  out.starts = static_cast<int>(seeds.size());
  std::vector<std::optional<EquilibriumSolution>> slots(seeds.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < seeds.size(); i = next++) {
      try {
        slots[i] = solve_equilibrium(problem, field, seeds[i], opts);
      } catch (const Error&) {
      }
    }
  };
  const int workers = std::min<int>(solver_threads(opts.threads), std::max<int>(1, out.starts));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& s : slots) {
    if (!s) {
      ++out.failed;
      continue;
    }
    ++out.converged;
    sort_lex(s->x);
    const bool dup = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const EquilibriumSolution& k) {
      return multiset_distance(k.x, s->x) < opts.dedupe_tol;
    });
    if (!dup) out.solutions.push_back(std::move(*s));
  }
  std::sort(out.solutions.begin(), out.solutions.end(), before);
  return out;
}

CriticalKind classify_critical_point(const ChargeProblem& problem, const FieldSpec& field,
                                     const EquilibriumSolution& sol, double critical_tol) {
  for (const auto& c : problem.charges)
    if (!is_real(c.strength, 1e-12)) throw Error(ErrorCode::ComplexDataUnsupported, "complex charge strength");
  for (const cplx& x : sol.x)
    if (!is_real(x, 1e-9)) throw Error(ErrorCode::ComplexDataUnsupported, "complex movable position");
  if (field.kind != EquilibriumKind::Unconstrained && !is_real(sol.lambda, 1e-9))
    throw Error(ErrorCode::ComplexDataUnsupported, "complex multiplier");

  FieldSpec f = field;
  f.kind = field.kind == EquilibriumKind::Unconstrained ? field.kind : EquilibriumKind::FixedMultiplier;
  f.lambda = sol.lambda;
  const System sys(problem, f);
  const auto e = sys.evaluate(sol.x, sol.lambda);
  if (e.measure > critical_tol)
    throw Error(ErrorCode::NotCritical, "residual " + format_sci(e.measure) + " is not critical");

  const auto n = static_cast<Eigen::Index>(sol.x.size());
  if (n == 0) return CriticalKind::LocalMin;
  // Hessian of L + lambda sum r(x_k) along the real line.
  const Eigen::MatrixXd h = -sys.jacobian(sol.x, sol.lambda).real();

  Eigen::MatrixXd reduced = h;
  if (field.kind == EquilibriumKind::Constrained) {
    Eigen::VectorXd normal(n);
    for (Eigen::Index k = 0; k < n; ++k) normal(k) = field.r_prime(sol.x[static_cast<size_t>(k)]).real();
    if (normal.norm() > 0.0) {
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(normal);
      const Eigen::MatrixXd q = qr.householderQ();
      const Eigen::MatrixXd tangent = q.rightCols(n - 1);
      reduced = tangent.transpose() * h * tangent;
    }
  }
  if (reduced.rows() == 0) return CriticalKind::LocalMin;
  const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(reduced).eigenvalues();
  constexpr double threshold = 1e-8;
  if ((eig.array().abs() <= threshold).any()) return CriticalKind::Degenerate;
  if ((eig.array() > 0.0).all()) return CriticalKind::LocalMin;
  if ((eig.array() < 0.0).all()) return CriticalKind::LocalMax;
  return CriticalKind::Saddle;
}

}  // namespace lameforge
