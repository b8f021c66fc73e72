#include "lameforge/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lameforge/errors.hpp"

namespace lameforge {

RationalFn::RationalFn(Poly poly_part, std::vector<PoleTerm> terms) : poly_(std::move(poly_part)) {
  for (const auto& t : terms) {
    if (t.order < 1) throw Error(ErrorCode::InvalidArgument, "pole order must be >= 1");
  }
  std::sort(terms.begin(), terms.end(), [](const PoleTerm& a, const PoleTerm& b) {
    if (a.pole != b.pole) return lex_less(a.pole, b.pole);
    return a.order < b.order;
  });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().pole == t.pole && terms_.back().order == t.order) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const PoleTerm& t) { return t.coeff == cplx{}; });
}

bool RationalFn::has_simple_poles() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const PoleTerm& t) { return t.order == 1; });
}

cplx RationalFn::operator()(cplx x) const {
  cplx v = poly_(x);
  for (const auto& t : terms_) v += t.coeff / std::pow(x - t.pole, t.order);
  return v;
}

RationalFn RationalFn::derivative() const {
  std::vector<PoleTerm> d;
  d.reserve(terms_.size());
  for (const auto& t : terms_)
    d.push_back({t.pole, t.order + 1, -static_cast<double>(t.order) * t.coeff});
  return RationalFn(poly_.derivative(), std::move(d));
}

double RationalFn::pole_distance(cplx x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) d = std::min(d, std::abs(x - t.pole));
  return d;
}

RationalFn operator*(const RationalFn& f, cplx s) {
  std::vector<PoleTerm> t(f.terms_.begin(), f.terms_.end());
  for (auto& term : t) term.coeff *= s;
  return RationalFn(f.poly_ * s, std::move(t));
}

RationalFn operator+(const RationalFn& f, const RationalFn& g) {
  std::vector<PoleTerm> t(f.terms_.begin(), f.terms_.end());
  t.insert(t.end(), g.terms_.begin(), g.terms_.end());
  return RationalFn(f.poly_ + g.poly_, std::move(t));
}

RationalFn rational_antiderivative(const RationalFn& f) {
  if (f.has_simple_poles())
    throw Error(ErrorCode::LogTerm, "simple pole terms integrate to logarithms");
  std::vector<PoleTerm> out;
  for (const auto& t : f.pole_terms())
    out.push_back({t.pole, t.order - 1, -t.coeff / static_cast<double>(t.order - 1)});
  return RationalFn(f.poly_part().integral(), std::move(out));
}

RationalFn multiply(const RationalFn& f, const Poly& a, double cleanup_eps) {
  Poly poly = f.poly_part() * a;
  std::vector<PoleTerm> poles;
  // A(x) = sum_j t_j (x - p)^j, so A c/(x-p)^k splits into a polynomial and
  // pole terms of order k - j for j < k.
  for (const auto& term : f.pole_terms()) {
    const Poly shifted = taylor_shift(a, term.pole);
    std::vector<cplx> low(static_cast<size_t>(term.order), 0.0);
    for (int j = 0; j < term.order; ++j) {
      low[static_cast<size_t>(j)] = shifted[j];
      if (shifted[j] != cplx{}) poles.push_back({term.pole, term.order - j, term.coeff * shifted[j]});
    }
    // Polynomial part: (A - low(x - p)) / (x - p)^k.
    Poly low_poly;
    Poly basis = Poly::constant(1.0);
    for (int j = 0; j < term.order; ++j) {
      low_poly += basis * low[static_cast<size_t>(j)];
      basis *= Poly::linear(term.pole);
    }
    poly += deflate(a - low_poly, term.pole, term.order) * term.coeff;
  }
  double scale = poly.max_abs_coeff();
  for (const auto& p : poles) scale = std::max(scale, std::abs(p.coeff));
  std::erase_if(poles, [&](const PoleTerm& p) { return std::abs(p.coeff) <= cleanup_eps * scale; });
  return RationalFn(std::move(poly), std::move(poles));
}

RationalFn PartialFractionDecomposition::to_rational() const {
  std::vector<PoleTerm> t(higher_terms.begin(), higher_terms.end());
  for (const auto& s : simple_residues) t.push_back({s.pole, 1, s.residue});
  return RationalFn(poly_part, std::move(t));
}

PartialFractionDecomposition partial_fractions(const Poly& numer, const Poly& denom,
                                               std::span<const RootMult> denom_roots,
                                               const NumericSettings& settings) {
  if (denom.is_zero()) throw Error(ErrorCode::DivisionByZeroPolynomial, "denominator is zero");
  int total = 0;
  for (const auto& r : denom_roots) {
    if (r.multiplicity < 1) throw Error(ErrorCode::InconsistentRoots, "multiplicity must be >= 1");
    total += r.multiplicity;
  }
  if (total != denom.degree())
    throw Error(ErrorCode::InconsistentRoots, "root multiplicities sum to " + std::to_string(total) +
                                                  " but the denominator has degree " +
                                                  std::to_string(denom.degree()));
  for (size_t i = 0; i < denom_roots.size(); ++i)
    for (size_t j = i + 1; j < denom_roots.size(); ++j)
      if (std::abs(denom_roots[i].root - denom_roots[j].root) < settings.pole_separation)
        throw Error(ErrorCode::PoleClustering, "two listed poles are closer than the separation threshold");
  for (const auto& r : denom_roots) {
    Poly d = denom;
    for (int j = 0; j < r.multiplicity; ++j) {
      const double scale = d.abs_eval(std::abs(r.root));
      if (scale > 0.0 && std::abs(d(r.root)) > settings.root_check_tol * scale)
        throw Error(ErrorCode::InconsistentRoots, "listed root is not a root of the denominator");
      d = d.derivative();
    }
  }

  PartialFractionDecomposition out;
  if (numer.is_zero()) return out;
  const DivRem qr = divrem(numer, denom);
  out.poly_part = qr.quotient;
  if (qr.remainder.is_zero()) return out;

  const double scale = 1.0 + numer.max_abs_coeff() / std::abs(denom.leading());
  for (size_t i = 0; i < denom_roots.size(); ++i) {
    const cplx a = denom_roots[i].root;
    const int m = denom_roots[i].multiplicity;
    Poly cofactor = Poly::constant(denom.leading());
    for (size_t j = 0; j < denom_roots.size(); ++j) {
      if (j == i) continue;
      for (int k = 0; k < denom_roots[j].multiplicity; ++k) cofactor *= Poly::linear(denom_roots[j].root);
    }
    const Poly rem_s = taylor_shift(qr.remainder, a);
    const Poly cof_s = taylor_shift(cofactor, a);
    // Power-series quotient rem/cofactor around a, first m terms.
    std::vector<cplx> c(static_cast<size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
      cplx acc = rem_s[j];
      for (int i2 = 0; i2 < j; ++i2) acc -= c[static_cast<size_t>(i2)] * cof_s[j - i2];
      c[static_cast<size_t>(j)] = acc / cof_s[0];
    }
    for (int j = 0; j < m; ++j) {
      const cplx coeff = c[static_cast<size_t>(j)];
      if (std::abs(coeff) <= settings.cleanup_eps * scale) continue;
      const int order = m - j;
      if (order == 1) {
        out.simple_residues.push_back({a, coeff});
      } else {
        out.higher_terms.push_back({a, order, coeff});
      }
    }
  }
  return out;
}

PartialFractionDecomposition partial_fractions(const Poly& numer, const Poly& denom,
                                               const NumericSettings& settings) {
  if (denom.is_zero()) throw Error(ErrorCode::DivisionByZeroPolynomial, "denominator is zero");
  const std::vector<RootMult> roots = root_multiset(denom, settings);
  return partial_fractions(numer, denom, roots, settings);
}

}  // namespace lameforge
