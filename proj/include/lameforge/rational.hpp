#pragma once

#include <span>
#include <vector>

#include "lameforge/poly.hpp"
#include "lameforge/roots.hpp"
#include "lameforge/settings.hpp"

namespace lameforge {

/// coeff / (x - pole)^order
struct PoleTerm {
  cplx pole;
  int order = 1;
  cplx coeff;
};

/// poly_part(x) + sum coeff / (x - pole)^order.
///
/// Terms with the same (pole, order) are merged and zero coefficients dropped
/// on construction; terms are kept sorted by (pole, order).
class RationalFn {
 public:
  RationalFn() = default;
  explicit RationalFn(Poly poly_part, std::vector<PoleTerm> terms = {});

  const Poly& poly_part() const { return poly_; }
  std::span<const PoleTerm> pole_terms() const { return terms_; }
  bool is_polynomial() const { return terms_.empty(); }
  bool is_zero() const { return poly_.is_zero() && terms_.empty(); }
  bool has_simple_poles() const;

  cplx operator()(cplx x) const;
  RationalFn derivative() const;
  /// Distance from x to the nearest pole (infinity when there are none).
  double pole_distance(cplx x) const;

  friend RationalFn operator*(const RationalFn& f, cplx s);
  friend RationalFn operator*(cplx s, const RationalFn& f) { return f * s; }
  friend RationalFn operator+(const RationalFn& f, const RationalFn& g);

 private:
  Poly poly_;
  std::vector<PoleTerm> terms_;
};

/// Termwise primitive with zero integration constant. Throws LogTerm when a
/// simple pole is present.
RationalFn rational_antiderivative(const RationalFn& f);

/// A * f. Pole terms whose coefficient falls below cleanup_eps (relative to the
/// result's scale) are dropped, so A * r' for an A-adjusted r is a polynomial.
RationalFn multiply(const RationalFn& f, const Poly& a, double cleanup_eps = 1e-12);

struct SimpleResidue {
  cplx pole;
  cplx residue;
};

struct PartialFractionDecomposition {
  Poly poly_part;
  std::vector<SimpleResidue> simple_residues;
  std::vector<PoleTerm> higher_terms;

  RationalFn to_rational() const;
  cplx operator()(cplx x) const { return to_rational()(x); }
};

/// numer/denom split into polynomial part, simple residues and higher-order
/// terms, given the roots of denom with multiplicity. Validates the root list
/// (InconsistentRoots) and pole separation (PoleClustering).
PartialFractionDecomposition partial_fractions(const Poly& numer, const Poly& denom,
                                               std::span<const RootMult> denom_roots,
                                               const NumericSettings& settings = {});

/// Same, with the roots of denom found by root_multiset.
PartialFractionDecomposition partial_fractions(const Poly& numer, const Poly& denom,
                                               const NumericSettings& settings = {});

}  // namespace lameforge
