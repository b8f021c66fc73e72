#include "lameforge/lame.hpp"

#include <algorithm>
#include <cmath>

#include "lameforge/errors.hpp"

namespace lameforge {

int fuchs_index(const LameOperator& op) {
  const int da = op.A.degree();
  const int db = op.B.is_zero() ? -(da + 10) : op.B.degree();
  return std::max(da - 2, db - 1);
}

LameKind classify(const LameOperator& op) {
  return op.A.degree() > op.B.degree() ? LameKind::NonDegenerate : LameKind::Degenerate;
}

Poly lame_residual(const ParametricLame& pl, const Poly& V, const Poly& y) {
  const Poly dy = y.derivative();
  return pl.op.A * dy.derivative() + pl.first_order() * dy + V * y;
}

double residual_scale(const ParametricLame& pl, const Poly& V, const Poly& y) {
  // Size of the individual terms, so that cancellation is measured relative to them.
  const Poly dy = y.derivative();
  return std::max({(pl.op.A * dy.derivative()).max_abs_coeff(), (pl.first_order() * dy).max_abs_coeff(),
                   (V * y).max_abs_coeff()});
}

bool certifies_solution(const ParametricLame& pl, const Poly& V, const Poly& y, const NumericSettings& settings) {
  const Poly r = lame_residual(pl, V, y);
  return r.max_abs_coeff() < settings.zero_poly_tol * (1.0 + residual_scale(pl, V, y));
}

int van_vleck_degree_bound(const ParametricLame& pl) {
  int bound = pl.op.A.degree() - 2;
  if (!pl.op.B.is_zero()) bound = std::max(bound, pl.op.B.degree() - 1);
  if (!pl.D.is_zero() && pl.rho != cplx{}) bound = std::max(bound, pl.D.degree() - 1);
  return bound;
}

Poly van_vleck_from_solution(const ParametricLame& pl, const Poly& y, const NumericSettings& settings) {
  if (y.is_zero()) throw Error(ErrorCode::InvalidArgument, "y is the zero polynomial");
  if (y.degree() == 0) return {};
  const Poly dy = y.derivative();
  const Poly dividend = -(pl.op.A * dy.derivative() + pl.first_order() * dy);
  if (dividend.is_zero()) return {};
  auto [v, rem] = divrem(dividend, y);
  const double rel = rem.max_abs_coeff() / dividend.max_abs_coeff();
  if (rel >= settings.division_tol)
    throw Error(ErrorCode::NotASolution, "relative remainder " + format_sci(rel) + " of the division by y");
  const int bound = van_vleck_degree_bound(pl);
  if (v.degree() > bound)
    throw Error(ErrorCode::DegreeViolation,
                "deg V = " + std::to_string(v.degree()) + " exceeds " + std::to_string(bound));
  return v;
}

}  // namespace lameforge
