#include "lameforge/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lameforge/errors.hpp"

namespace lameforge {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double backward_error(const Poly& p, cplx z) {
  const double scale = p.abs_eval(std::abs(z));
  return scale == 0.0 ? 0.0 : std::abs(p(z)) / scale;
}

void eval_with_derivative(const Poly& p, cplx z, cplx& f, cplx& df) {
  f = 0.0;
  df = 0.0;
  const auto c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    df = df * z + f;
    f = f * z + *it;
  }
}

std::vector<cplx> initial_guesses(const Poly& p) {
  const int n = p.degree();
  const cplx center = -p[n - 1] / (static_cast<double>(n) * p.leading());
  const Poly shifted = taylor_shift(p, center);
  double radius = std::pow(std::abs(shifted[0] / shifted.leading()), 1.0 / n);
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  std::vector<cplx> z(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.7;
    z[static_cast<size_t>(k)] = center + std::polar(radius, angle);
  }
  return z;
}

// Gauss-Seidel flavoured Aberth-Ehrlich sweep. Returns true when every root
// meets the backward-error bound.
bool aberth(const Poly& p, std::vector<cplx>& z, int max_iter, double tol) {
  const size_t n = z.size();
  const double stop = 4.0 * static_cast<double>(n) * kEps;
  std::vector<char> done(n, 0);
  for (int it = 0; it < max_iter; ++it) {
    bool active = false;
    for (size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      cplx f, df;
      eval_with_derivative(p, z[i], f, df);
      if (std::abs(f) <= stop * p.abs_eval(std::abs(z[i]))) {
        done[i] = 1;
        continue;
      }
      active = true;
      if (df == cplx{}) {
        z[i] += std::polar(1e-8 * (1.0 + std::abs(z[i])), 0.3 + static_cast<double>(i));
        continue;
      }
      const cplx ratio = f / df;
      cplx repel{};
      for (size_t j = 0; j < n; ++j)
        if (j != i) repel += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * repel);
      z[i] -= w;
      if (std::abs(w) <= kEps * std::abs(z[i])) done[i] = 1;
    }
    if (!active) break;
  }
  return std::all_of(z.begin(), z.end(), [&](cplx r) { return backward_error(p, r) < tol; });
}

std::vector<cplx> companion_eigenvalues(const Poly& p) {
  const int n = p.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  std::vector<cplx> z(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) z[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return z;
}

}  // namespace

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void sort_lex(std::vector<cplx>& v) { std::sort(v.begin(), v.end(), lex_less); }

std::vector<cplx> find_roots(const Poly& p, const NumericSettings& settings) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "find_roots needs degree >= 1");
  // Exact zero roots first.
  int zeros = 0;
  while (p[zeros] == cplx{}) ++zeros;
  std::vector<cplx> roots(static_cast<size_t>(zeros), 0.0);
  const Poly q(std::vector<cplx>(p.coeffs().begin() + zeros, p.coeffs().end()));
  const int n = q.degree();
  if (n == 1) {
    roots.push_back(-q[0] / q[1]);
  } else if (n > 1) {
    std::vector<cplx> z = initial_guesses(q);
    if (!aberth(q, z, settings.root_max_iter, settings.root_tol)) {
      z = companion_eigenvalues(q);
      if (!aberth(q, z, settings.root_max_iter, settings.root_tol))
        throw Error(ErrorCode::RootNonConvergence,
                    "no convergence for degree " + std::to_string(n) + " after " +
                        std::to_string(settings.root_max_iter) + " iterations");
    }
    roots.insert(roots.end(), z.begin(), z.end());
  }
  sort_lex(roots);
  return roots;
}

std::vector<RootMult> root_multiset(const Poly& p, const NumericSettings& settings) {
  std::vector<RootMult> out;
  if (p.degree() < 1) return out;
  int zeros = 0;
  while (p[zeros] == cplx{}) ++zeros;
  if (zeros > 0) out.push_back({0.0, zeros});
  const Poly q(std::vector<cplx>(p.coeffs().begin() + zeros, p.coeffs().end()));
  if (q.degree() < 1) return out;
  const std::vector<cplx> z = find_roots(q, settings);

  // Single-linkage clustering.
  const size_t n = z.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < settings.root_cluster_tol * (1.0 + std::abs(z[i])))
        parent[find(i)] = find(j);

  std::vector<std::vector<cplx>> groups(n);
  for (size_t i = 0; i < n; ++i) groups[find(i)].push_back(z[i]);
  std::vector<RootMult> numeric;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    cplx c{};
    for (const cplx& v : g) c += v;
    cplx center = c / static_cast<double>(g.size());
    const int m = static_cast<int>(g.size());
    if (m > 1) {
      // A root of multiplicity m is a simple root of the (m-1)-th derivative.
      Poly d = q;
      for (int k = 1; k < m; ++k) d = d.derivative();
      const Poly dd = d.derivative();
      for (int it = 0; it < 5; ++it) {
        const cplx slope = dd(center);
        if (slope == cplx{}) break;
        const cplx step = d(center) / slope;
        center -= step;
        if (std::abs(step) <= kEps * (1.0 + std::abs(center))) break;
      }
    }
    numeric.push_back({center, m});
  }
  std::sort(numeric.begin(), numeric.end(),
            [](const RootMult& a, const RootMult& b) { return lex_less(a.root, b.root); });
  out.insert(out.end(), numeric.begin(), numeric.end());
  return out;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<char> used(b.size(), 0);
  for (const cplx& x : a) {
    size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = 1;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace lameforge
