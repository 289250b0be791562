#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cubesos/lp.hpp"

namespace cubesos {

// Monomial coefficients t_{m,0..m} of the Chebyshev polynomial T_m.
std::vector<double> chebyshev_coeffs(int m);
// Integer version, exact for m <= 30.
std::vector<std::int64_t> chebyshev_coeffs_int(int m);

// rho(inf, d, k) for the binary cube, from the Chebyshev coefficients.
double rho_infinity(int d, int k);
// max_k rho(inf, d, k).
double gamma_d(int d);
std::int64_t gamma_d_int(int d);  // d <= 30
double C_d(int d);                // d (d + 1) gamma_d

struct RhoResult {
  double value = 0.0;
  Eigen::VectorXd lambda;  // feasible coefficients attaining the value
};

// max lambda_k  s.t.  |sum_{i<=d} lambda_i Khat^n_{i,q}(t)| <= 1, t = 0..n.
RhoResult rho_finite(int n, int d, int k, int q = 2);

// The limit program max lambda_k s.t. |sum_i lambda_i (1 - q t/(q-1))^i| <= 1
// sampled on an equispaced grid of [0,1]. Sampling relaxes the constraints,
// so the value is an upper estimate of the continuous optimum.
RhoResult rho_infinity_grid(int d, int k, int q = 2, int points = 10000);

// q-ary constant: max_k of the grid limit program (q = 2 gives gamma_d).
double gamma_qary(int d, int q, int points = 10000);

struct GammaTable {
  int d = 0;
  int q = 2;
  std::map<std::pair<int, int>, double> rho_finite;  // (n, k) -> rho(n, d, k)
  std::vector<double> rho_infinity;                   // k -> rho(inf, d, k)
  double gamma_d = 0.0;
  double C_d = 0.0;
};

// Finite values for n = max(d,1)..n_max (none when n_max < d).
GammaTable gamma_table(int d, int n_max = 0, int q = 2);

}  // namespace cubesos
