#pragma once

namespace lameforge {

/// Every numeric threshold used by the polynomial and operator layers.
struct NumericSettings {
  // find_roots: backward-error bound |p(z)| / sum |c_k||z|^k and iteration cap.
  double root_tol = 1e-10;
  int root_max_iter = 500;

  // Two listed distinct poles closer than this are rejected.
  double pole_separation = 1e-8;
  // Numerically found roots closer than this (relative to 1 + |z|) are merged
  // into one root of higher multiplicity.
  double root_cluster_tol = 1e-5;
  // A listed root must satisfy |p(z)| <= root_check_tol * sum |c_k||z|^k.
  double root_check_tol = 1e-7;

  // Coefficients, residues and charge strengths below this (relative to the
  // input scale) are treated as exact zeros by explicit cleanup steps.
  double cleanup_eps = 1e-12;

  // "Zero polynomial" certification: max |coeff| < zero_poly_tol * (1 + scale).
  double zero_poly_tol = 1e-9;
  // Exact-division acceptance: |remainder| / |dividend| < division_tol.
  double division_tol = 1e-8;
};

}  // namespace lameforge
