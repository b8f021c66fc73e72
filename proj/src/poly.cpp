#include "lameforge/poly.hpp"

#include <algorithm>
#include <cmath>

#include "lameforge/errors.hpp"

namespace lameforge {

Poly::Poly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::constant(cplx c) { return Poly({c}); }

Poly Poly::monomial(int k, cplx c) {
  std::vector<cplx> v(static_cast<size_t>(k) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::linear(cplx a) { return Poly({-a, 1.0}); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx Poly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<size_t>(k)];
}

cplx Poly::operator()(cplx x) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::abs_eval(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Poly(std::move(d));
}

Poly Poly::integral() const {
  if (coeffs_.empty()) return {};
  std::vector<cplx> v(coeffs_.size() + 1, 0.0);
  for (size_t k = 0; k < coeffs_.size(); ++k) v[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Poly(std::move(v));
}

Poly Poly::monic() const {
  if (coeffs_.empty()) return {};
  return *this / leading();
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Poly Poly::cleaned(double eps) const {
  const double cut = eps * max_abs_coeff();
  std::vector<cplx> v = coeffs_;
  for (auto& c : v) {
    if (std::abs(c) <= cut) c = 0.0;
  }
  return Poly(std::move(v));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
  for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (coeffs_.empty() || o.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<cplx> v(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(v);
  trim();
  return *this;
}

Poly& Poly::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

DivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZeroPolynomial, "divisor is the zero polynomial");
  const int da = a.degree();
  const int db = b.degree();
  if (da < db) return {Poly{}, a};
  std::vector<cplx> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<cplx> quot(static_cast<size_t>(da - db) + 1, 0.0);
  const cplx lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    const cplx q = rem[static_cast<size_t>(k + db)] / lead;
    quot[static_cast<size_t>(k)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k + j)] -= q * b[j];
    rem[static_cast<size_t>(k + db)] = 0.0;
  }
  rem.resize(static_cast<size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly from_roots(std::span<const cplx> roots) {
  std::vector<cplx> v{1.0};
  for (const cplx& z : roots) {
    v.push_back(0.0);
    for (size_t k = v.size() - 1; k > 0; --k) v[k] = v[k - 1] - z * v[k];
    v[0] = -z * v[0];
  }
  return Poly(std::move(v));
}

Poly taylor_shift(const Poly& p, cplx a) {
  // Repeated synthetic division (Horner's scheme for all derivatives).
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  const size_t n = c.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t k = n - 1; k > i; --k) c[k - 1] += a * c[k];
  return Poly(std::move(c));
}

Poly deflate(const Poly& p, cplx a, int k) {
  if (p.degree() < k) return {};
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  for (int step = 0; step < k && c.size() > 1; ++step) {
    std::vector<cplx> q(c.size() - 1);
    cplx acc{};
    for (size_t i = c.size() - 1; i > 0; --i) {
      acc = acc * a + c[i];
      q[i - 1] = acc;
    }
    c = std::move(q);
  }
  return Poly(std::move(c));
}

double coeff_distance(const Poly& a, const Poly& b) {
  const int d = std::max(a.degree(), b.degree());
  double m = 0.0;
  for (int k = 0; k <= d; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::vector<cplx> power_sums(const Poly& p, int count) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power_sums needs a nonconstant polynomial");
  const Poly m = p.monic();
  // Monic x^n + e_1' x^{n-1} + ...; write a_j = coefficient of x^{n-j}.
  auto a = [&](int j) { return m[n - j]; };
  std::vector<cplx> s(static_cast<size_t>(count) + 1, 0.0);
  for (int k = 1; k <= count; ++k) {
    cplx acc{};
    for (int j = 1; j < k && j <= n; ++j) acc += a(j) * s[static_cast<size_t>(k - j)];
    if (k <= n) acc += static_cast<double>(k) * a(k);
    s[static_cast<size_t>(k)] = -acc;
  }
  s.erase(s.begin());
  return s;
}

Poly reversed(const Poly& p) {
  std::vector<cplx> v(p.coeffs().rbegin(), p.coeffs().rend());
  return Poly(std::move(v));
}

}  // namespace lameforge
