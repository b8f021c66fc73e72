#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lameforge/errors.hpp"
#include "lameforge/poly.hpp"

namespace lameforge::test {

inline std::optional<ErrorCode> error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

inline cplx random_cplx(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

inline Poly random_poly(std::mt19937_64& rng, int degree) {
  std::vector<cplx> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_cplx(rng));
  if (degree >= 0 && c.back() == cplx{}) c.back() = 1.0;
  return Poly(std::move(c));
}

}  // namespace lameforge::test
