#pragma once

#include <cmath>
#include <vector>

#include "cubesos/cube_fourier.hpp"

namespace testing {

// Fourier coefficient by the defining sum, O(2^n) per coefficient.
inline double fourier_coef_direct(const cubesos::CubePolynomial& p, cubesos::Mask a) {
  const int n = p.n();
  double s = 0.0;
  for (cubesos::Mask x = 0; x < (cubesos::Mask{1} << n); ++x) s += p(x) * cubesos::character(a, x);
  return std::ldexp(s, -n);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
