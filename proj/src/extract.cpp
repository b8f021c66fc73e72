#include "lameforge/extract.hpp"

#include <algorithm>
#include <cmath>

#include "lameforge/errors.hpp"

namespace lameforge {

void ChargeProblem::validate(double separation) const {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "movable count must be nonnegative");
  for (size_t i = 0; i < charges.size(); ++i) {
    if (charges[i].strength == cplx{}) throw Error(ErrorCode::InvalidArgument, "charge strengths must be nonzero");
    for (size_t j = i + 1; j < charges.size(); ++j)
      if (std::abs(charges[i].at - charges[j].at) <= separation)
        throw Error(ErrorCode::InvalidArgument, "charge locations must be pairwise distinct");
  }
}

cplx constraint_level(const RationalFn& r, std::span<const cplx> points, double pole_tol) {
  cplx sum{};
  for (const cplx& x : points) {
    if (r.pole_distance(x) <= pole_tol) throw Error(ErrorCode::PoleHit, "point lies on a pole of r");
    sum += r(x);
  }
  return sum;
}

namespace {

Poly fixed_charge_numerator(const Poly& a, const std::vector<Charge>& charges) {
  Poly b;
  for (const auto& c : charges) b += deflate(a, c.at, 1) * c.strength;
  return b;
}

}  // namespace

Decomposition extract(const LameOperator& op, const NumericSettings& settings) {
  if (op.A.is_zero()) throw Error(ErrorCode::InvalidArgument, "A is the zero polynomial");
  if (fuchs_index(op) < 0) throw Error(ErrorCode::InvalidArgument, "operator has negative Fuchs index");

  const std::vector<RootMult> roots = root_multiset(op.A, settings);
  const PartialFractionDecomposition pf = partial_fractions(op.B, op.A, roots, settings);

  Decomposition dec;
  dec.op = op;
  for (const auto& s : pf.simple_residues) dec.charges.push_back({s.pole, s.residue});
  dec.r_prime = RationalFn(pf.poly_part, pf.higher_terms);
  const RationalFn d = multiply(dec.r_prime, op.A, settings.cleanup_eps);
  if (!d.is_polynomial()) throw Error(ErrorCode::InvalidArgument, "A r' is not a polynomial");
  dec.D = d.poly_part();
  dec.Btilde = fixed_charge_numerator(op.A, dec.charges);
  dec.repeated_roots_of_A =
      std::any_of(roots.begin(), roots.end(), [](const RootMult& r) { return r.multiplicity > 1; });
  return dec;
}

Constraint antidifferentiate(const Decomposition& dec) { return {rational_antiderivative(dec.r_prime), 0.0}; }

Decomposition companion_decomposition(const ChargeProblem& problem, const RationalFn& r_prime,
                                      const NumericSettings& settings) {
  std::vector<RootMult> factors;
  for (const auto& c : problem.charges) factors.push_back({c.at, 1});
  for (const auto& t : r_prime.pole_terms()) {
    auto it = std::find_if(factors.begin(), factors.end(), [&](const RootMult& f) {
      return std::abs(f.root - t.pole) <= settings.pole_separation;
    });
    if (it == factors.end()) {
      factors.push_back({t.pole, t.order});
    } else {
      it->multiplicity = std::max(it->multiplicity, t.order);
    }
  }
  Poly a = Poly::constant(1.0);
  bool repeated = false;
  for (const auto& f : factors) {
    for (int k = 0; k < f.multiplicity; ++k) a *= Poly::linear(f.root);
    repeated = repeated || f.multiplicity > 1;
  }

  Decomposition dec;
  dec.charges = problem.charges;
  dec.r_prime = r_prime;
  dec.D = multiply(r_prime, a, settings.cleanup_eps).poly_part();
  dec.Btilde = fixed_charge_numerator(a, problem.charges);
  dec.op = {a, dec.Btilde + dec.D};
  dec.repeated_roots_of_A = repeated;
  return dec;
}

MultiplierFit determine_multiplier(const Decomposition& dec, const Poly& y, const NumericSettings& settings) {
  MultiplierFit fit;
  if (y.degree() <= 0) {
    fit.degenerate_input = true;
    return fit;
  }
  const Poly dy = y.derivative();
  const Poly fixed = dec.op.A * dy.derivative() + dec.Btilde * dy * 2.0;
  const Poly field = dec.D * dy;
  const Poly p = divrem(fixed, y).remainder;
  const Poly q = divrem(field, y).remainder;

  const double field_scale = field.max_abs_coeff();
  if (q.max_abs_coeff() <= settings.division_tol * field_scale || field.is_zero()) {
    // Every rho gives the same remainder; the constraint does not see y.
    fit.degenerate_input = true;
    const ParametricLame pl{dec.fixed_part(), dec.D, 0.0};
    try {
      fit.V = van_vleck_from_solution(pl, y, settings);
    } catch (const Error& e) {
      throw Error(ErrorCode::NoConsistentRho, e.what());
    }
    return fit;
  }

  cplx num{};
  double den = 0.0;
  const int top = std::max(p.degree(), q.degree());
  for (int k = 0; k <= top; ++k) {
    num += std::conj(q[k]) * p[k];
    den += std::norm(q[k]);
  }
  fit.rho_ode = num / den;
  fit.lambda = fit.rho_ode / 2.0;
  const double scale = std::max(fixed.max_abs_coeff(), std::abs(fit.rho_ode) * field_scale);
  fit.residual = (p - q * fit.rho_ode).max_abs_coeff() / scale;
  if (!(fit.residual < settings.division_tol))
    throw Error(ErrorCode::NoConsistentRho, "best scalar leaves relative remainder " + format_sci(fit.residual));

  const ParametricLame pl{dec.fixed_part(), dec.D, fit.rho_ode};
  fit.V = van_vleck_from_solution(pl, y, settings);
  return fit;
}

}  // namespace lameforge
