#include "lameforge/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lameforge/errors.hpp"
#include "lameforge/roots.hpp"

namespace lameforge::oracles {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

std::vector<double> tridiagonal_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  if (diag.size() == 0) return {};
  if (diag.size() == 1) return {diag(0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  std::vector<double> z(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(z.begin(), z.end());
  return z;
}

// All m-th roots of z; a zero yields m exact zeros.
void push_roots(std::vector<cplx>& out, cplx z, int m) {
  if (z == cplx{}) {
    out.insert(out.end(), static_cast<size_t>(m), cplx{});
    return;
  }
  const double r = std::pow(std::abs(z), 1.0 / m);
  const double phase = std::arg(z) / m;
  for (int j = 0; j < m; ++j) out.push_back(std::polar(r, phase + 2.0 * std::numbers::pi * j / m));
}

std::vector<cplx> polished_roots(const Poly& p) {
  std::vector<cplx> z = find_roots(p);
  const Poly dp = p.derivative();
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      const cplx slope = dp(r);
      if (slope == cplx{}) break;
      r -= p(r) / slope;
    }
  }
  sort_lex(z);
  return z;
}

}  // namespace

Poly hermite(int n) {
  require(n >= 0, "hermite: n must be >= 0");
  Poly prev{1.0};
  if (n == 0) return prev;
  Poly cur{0.0, 2.0};
  const Poly x{0.0, 1.0};
  for (int k = 1; k < n; ++k) {
    Poly next = x * cur * 2.0 - prev * (2.0 * k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly laguerre(int n, double alpha) {
  require(n >= 0, "laguerre: n must be >= 0");
  Poly prev{1.0};
  if (n == 0) return prev;
  Poly cur{1.0 + alpha, -1.0};
  for (int k = 1; k < n; ++k) {
    Poly next = (Poly{2.0 * k + 1.0 + alpha, -1.0} * cur - prev * (k + alpha)) / static_cast<double>(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly jacobi(int n, double alpha, double beta) {
  require(n >= 0, "jacobi: n must be >= 0");
  require(alpha > -1.0 && beta > -1.0, "jacobi: alpha, beta must exceed -1");
  Poly prev{1.0};
  if (n == 0) return prev;
  const double ab = alpha + beta;
  Poly cur{(alpha - beta) / 2.0, (ab + 2.0) / 2.0};
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
    const Poly lin{(c - 1.0) * (alpha * alpha - beta * beta), (c - 1.0) * c * (c - 2.0)};
    Poly next = (lin * cur - prev * (2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c)) / a1;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly relativistic_hermite(int n, double N) {
  require(n >= 0, "relativistic_hermite: n must be >= 0");
  require(N > 0.0, "relativistic_hermite: N must be positive");
  // d^k/dx^k w^{-N} = g_k w^{-N-k} with w = 1 + x^2/N.
  const Poly w{1.0, 0.0, 1.0 / N};
  Poly g{1.0};
  for (int k = 0; k < n; ++k) g = w * g.derivative() - Poly{0.0, 2.0 * (N + k) / N} * g;
  return (n % 2 == 0) ? g : -g;
}

Poly substitute_power(const Poly& p, int m) {
  require(m >= 1, "substitute_power: m must be >= 1");
  if (p.is_zero()) return {};
  std::vector<cplx> v(static_cast<size_t>(p.degree() * m) + 1, 0.0);
  for (int k = 0; k <= p.degree(); ++k) v[static_cast<size_t>(k * m)] = p[k];
  return Poly(std::move(v));
}

Poly palindromic_substitute(const Poly& p) {
  const int n = p.degree();
  if (n <= 0) return p;
  // x^n p(x + 1/x) = sum_k c_k x^{n-k} (x^2 + 1)^k
  Poly out;
  Poly power = Poly::constant(1.0);
  const Poly q{1.0, 0.0, 1.0};
  for (int k = 0; k <= n; ++k) {
    out += Poly::monomial(n - k, p[k]) * power;
    power *= q;
  }
  return out;
}

std::vector<double> hermite_zeros(int n) {
  require(n >= 0, "hermite_zeros: n must be >= 0");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k / 2.0);
  auto z = tridiagonal_eigenvalues(diag, off);
  // The symmetric spectrum has an exact zero for odd n.
  if (n % 2 == 1) z[static_cast<size_t>(n / 2)] = 0.0;
  for (int k = 0; k < n / 2; ++k) {
    const double v = 0.5 * (z[static_cast<size_t>(n - 1 - k)] - z[static_cast<size_t>(k)]);
    z[static_cast<size_t>(k)] = -v;
    z[static_cast<size_t>(n - 1 - k)] = v;
  }
  return z;
}

std::vector<double> laguerre_zeros(int n, double alpha) {
  require(n >= 0, "laguerre_zeros: n must be >= 0");
  require(alpha > -1.0, "laguerre_zeros: alpha must exceed -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0 + alpha;
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k * (k + alpha));
  return tridiagonal_eigenvalues(diag, off);
}

std::vector<double> jacobi_zeros(int n, double alpha, double beta) {
  require(n >= 0, "jacobi_zeros: n must be >= 0");
  require(alpha > -1.0 && beta > -1.0, "jacobi_zeros: alpha, beta must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double c = 2.0 * k + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    const double ratio = (k == 1 && std::abs(1.0 + ab) < 1e-14) ? 1.0 : (k + ab) / (c - 1.0);
    off(k - 1) = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * ratio / (c * c * (c + 1.0)));
  }
  return tridiagonal_eigenvalues(diag, off);
}

double pochhammer(double t, int j) {
  double v = 1.0;
  for (int i = 0; i < j; ++i) v *= t + i;
  return v;
}

std::vector<double> hyp1f1_truncated(double a, double b, int terms) {
  require(terms >= 0, "hyp1f1_truncated: terms must be >= 0");
  std::vector<double> c;
  double term = 1.0;
  for (int j = 0; j < terms; ++j) {
    if (j > 0) {
      const double bj = b + j - 1;
      if (bj == 0.0) throw Error(ErrorCode::PochhammerPole, "(b)_j vanishes within the requested terms");
      term *= (a + j - 1) / (bj * j);
    }
    c.push_back(term);
  }
  return c;
}

SchrodingerSolution schrodinger_solution(int m, int d, Branch branch) {
  require(m >= 1 && d >= 1, "schrodinger_solution: m, d must be >= 1");
  SchrodingerSolution s;
  if (branch == Branch::Even) {
    s.N = d * m;
    s.n = (m + 1) * d;
    s.alpha = -1.0 / (m + 1);
    s.y = substitute_power(laguerre(s.N, s.alpha), m + 1);
  } else {
    s.N = d * m - 1;
    s.n = d * (m + 1) - 1;
    s.alpha = 1.0 / (m + 1);
    s.y = Poly{0.0, 1.0} * substitute_power(laguerre(s.N, s.alpha), m + 1);
  }
  return s;
}

ScaledZeros scale_to_level(std::span<const cplx> zeros, const RationalFn& r, cplx target) {
  if (zeros.empty()) throw Error(ErrorCode::InvalidArgument, "scale_to_level needs zeros");
  const Poly& p = r.poly_part();
  int nonzero = 0;
  for (int k = 0; k <= p.degree(); ++k) nonzero += p[k] != cplx{};
  if (!r.is_polynomial() || nonzero != 1 || p.degree() < 1)
    throw Error(ErrorCode::NonMonomialConstraint, "only monomial constraints c x^k scale in closed form");
  const int k = p.degree();
  cplx current{};
  for (const cplx& z : zeros) current += r(z);
  if (current == cplx{}) throw Error(ErrorCode::InvalidArgument, "current level is zero; no scale reaches the target");
  ScaledZeros out;
  out.scale = std::pow(target / current, 1.0 / k);
  for (const cplx& z : zeros) out.zeros.push_back(out.scale * z);
  return out;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Hermite: return "hermite";
    case Family::Laguerre: return "laguerre";
    case Family::Jacobi: return "jacobi";
    case Family::RelativisticHermite: return "relativistic-hermite";
    case Family::HermitePower: return "hermite-power";
    case Family::LaguerrePower: return "laguerre-power";
    case Family::LaguerrePalindromic: return "laguerre-palindromic";
    case Family::Schrodinger1F1: return "schrodinger";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Hermite, Family::Laguerre, Family::Jacobi, Family::RelativisticHermite,
                   Family::HermitePower, Family::LaguerrePower, Family::LaguerrePalindromic,
                   Family::Schrodinger1F1}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

OracleCase oracle_case(Family family, const FamilyParams& params) {
  OracleCase c{family, params, {}, {}, {}, {}, {}};
  const int n = params.n;
  const double a = params.alpha;
  const int m = params.m;
  std::ostringstream label;
  label << family_name(family);
  require(n >= 0, "n must be >= 0");
  require(m >= 1, "m must be >= 1");

  switch (family) {
    case Family::Hermite: {
      label << " n=" << n;
      c.op = {Poly{1.0}, Poly{0.0, -1.0}};
      c.V = Poly{2.0 * n};
      c.y = hermite(n);
      for (double z : hermite_zeros(n)) c.zeros.push_back(z);
      break;
    }
    case Family::Laguerre: {
      label << " n=" << n << " alpha=" << a;
      c.op = {Poly{0.0, 1.0}, Poly{(a + 1.0) / 2.0, -0.5}};
      c.V = Poly{static_cast<double>(n)};
      c.y = laguerre(n, a);
      for (double z : laguerre_zeros(n, a)) c.zeros.push_back(z);
      break;
    }
    case Family::Jacobi: {
      const double b = params.beta;
      label << " n=" << n << " alpha=" << a << " beta=" << b;
      c.op = {Poly{-1.0, 0.0, 1.0}, Poly{(a - b) / 2.0, (a + b + 2.0) / 2.0}};
      c.V = Poly{-n * (n + a + b + 1.0)};
      c.y = jacobi(n, a, b);
      for (double z : jacobi_zeros(n, a, b)) c.zeros.push_back(z);
      break;
    }
    case Family::RelativisticHermite: {
      const double N = params.N;
      label << " n=" << n << " N=" << N;
      c.op = {Poly{N, 0.0, 1.0}, Poly{0.0, -(N + n - 1.0)}};
      c.V = Poly{n * (2.0 * N + n - 1.0)};
      c.y = relativistic_hermite(n, N);
      if (n > 0) c.zeros = polished_roots(c.y);
      break;
    }
    case Family::HermitePower: {
      label << " m=" << m << " n=" << n;
      // x y'' - (2m x^{2m} + m - 1) y' + 2 m^2 n x^{2m-1} y = 0
      c.op = {Poly{0.0, 1.0}, (Poly::monomial(2 * m, 2.0 * m) + Poly{m - 1.0}) * -0.5};
      c.V = Poly::monomial(2 * m - 1, 2.0 * m * m * n);
      c.y = substitute_power(hermite(n), m);
      for (double z : hermite_zeros(n)) push_roots(c.zeros, z, m);
      break;
    }
    case Family::LaguerrePower: {
      label << " m=" << m << " n=" << n << " alpha=" << a;
      // x y'' + (1 + alpha m - m x^m) y' + m^2 n x^{m-1} y = 0
      c.op = {Poly{0.0, 1.0}, (Poly{1.0 + a * m} - Poly::monomial(m, static_cast<double>(m))) * 0.5};
      c.V = Poly::monomial(m - 1, static_cast<double>(m * m * n));
      c.y = substitute_power(laguerre(n, a), m);
      for (double z : laguerre_zeros(n, a)) push_roots(c.zeros, z, m);
      break;
    }
    case Family::LaguerrePalindromic: {
      label << " n=" << n << " alpha=" << a;
      const double nn = n;
      // The equation is written A y'' + b y' + V y with
      // b = -x^6 + x^2 + (a+1-2n) x^5 + x^4 - 2(a+2) x^3 + (a+2n-1) x - 1.
      const Poly b{-1.0, a + 2.0 * nn - 1.0, 1.0, -2.0 * (a + 2.0), 1.0, a + 1.0 - 2.0 * nn, -1.0};
      c.op = {Poly{0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0}, b * 0.5};
      c.V = Poly{-(nn + a), 2.0, 2.0 * (a + 2.0), -4.0, nn - a, 2.0} * nn;
      c.y = palindromic_substitute(laguerre(n, a));
      for (double l : laguerre_zeros(n, a)) {
        const cplx disc = std::sqrt(cplx(l * l - 4.0));
        c.zeros.push_back((l + disc) / 2.0);
        c.zeros.push_back((l - disc) / 2.0);
      }
      break;
    }
    case Family::Schrodinger1F1: {
      const auto s = schrodinger_solution(m, params.d, params.branch);
      label << " m=" << m << " d=" << params.d << (params.branch == Branch::Even ? " even" : " odd");
      c.params.n = s.n;
      c.op = {Poly{1.0}, Poly::monomial(m, -(m + 1.0) / 2.0)};
      c.V = Poly::monomial(m - 1, static_cast<double>(m * (m + 1) * s.n));
      c.y = s.y;
      if (params.branch == Branch::Odd) c.zeros.push_back(0.0);
      for (double z : laguerre_zeros(s.N, s.alpha)) push_roots(c.zeros, z, m + 1);
      break;
    }
  }
  sort_lex(c.zeros);
  c.label = label.str();
  return c;
}

}  // namespace lameforge::oracles
