#pragma once

#include <vector>

#include "lameforge/poly.hpp"
#include "lameforge/settings.hpp"

namespace lameforge {

/// All deg(p) roots with multiplicity, sorted lexicographically by
/// (real, imag). Aberth-Ehrlich simultaneous iteration; when that stalls the
/// companion-matrix eigenvalues are used as a restart. Each returned root
/// satisfies |p(z)| < tol * sum |c_k||z|^k. Throws RootNonConvergence.
std::vector<cplx> find_roots(const Poly& p, const NumericSettings& settings = {});

struct RootMult {
  cplx root;
  int multiplicity = 1;
};

/// Roots grouped by multiplicity. Exact zero roots (vanishing low-order
/// coefficients) are counted exactly; the remaining numerical roots are merged
/// when closer than settings.root_cluster_tol * (1 + |z|), with the cluster
/// centroid as the representative.
std::vector<RootMult> root_multiset(const Poly& p, const NumericSettings& settings = {});

/// Lexicographic (real, imag) ordering used throughout for stable output.
bool lex_less(cplx a, cplx b);
void sort_lex(std::vector<cplx>& v);

/// Multiset distance: max over a greedy nearest matching. Infinity when the
/// sizes differ.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace lameforge
