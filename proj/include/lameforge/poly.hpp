#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace lameforge {

using cplx = std::complex<double>;

/// Dense univariate polynomial with complex coefficients, ascending degree.
///
/// Trailing zeros are trimmed exactly; the zero polynomial has no stored
/// coefficients and degree -1. Small coefficients are never dropped
/// implicitly, only by cleaned().
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);
  Poly(std::initializer_list<cplx> coeffs);

  static Poly constant(cplx c);
  static Poly monomial(int k, cplx c = 1.0);
  /// The linear factor (x - a).
  static Poly linear(cplx a);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  /// Coefficient of x^k; zero outside the stored range.
  cplx operator[](int k) const;
  cplx leading() const { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  /// Horner evaluation.
  cplx operator()(cplx x) const;
  /// sum |c_k| |x|^k, the natural scale for backward-error estimates.
  double abs_eval(double r) const;

  Poly derivative() const;
  /// Antiderivative with zero constant term.
  Poly integral() const;
  Poly monic() const;
  double max_abs_coeff() const;
  /// Zeroes every coefficient with |c| <= eps * max_abs_coeff().
  Poly cleaned(double eps) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(cplx s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, cplx s) { return a *= s; }
  friend Poly operator*(cplx s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, cplx s) { return a *= (1.0 / s); }
  friend Poly operator-(Poly a) { return a *= -1.0; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// a = q*b + r with deg r < deg b. Throws DivisionByZeroPolynomial.
DivRem divrem(const Poly& a, const Poly& b);

/// Monic polynomial with exactly the given multiset of roots.
Poly from_roots(std::span<const cplx> roots);

/// Coefficients of t -> p(a + t).
Poly taylor_shift(const Poly& p, cplx a);

/// p(x) / (x - a)^k by repeated synthetic division; the remainders are dropped,
/// so the caller is responsible for a being a root of multiplicity >= k.
Poly deflate(const Poly& p, cplx a, int k = 1);

/// Max-norm distance between coefficient vectors.
double coeff_distance(const Poly& a, const Poly& b);

/// Power sums s_k = sum_i z_i^k (k = 1..count) of the roots of p, from the
/// coefficients via Newton's identities. Requires deg p >= 1.
std::vector<cplx> power_sums(const Poly& p, int count);

/// x^deg * p(1/x): the polynomial whose roots are the reciprocals.
Poly reversed(const Poly& p);

}  // namespace lameforge
