#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cubesos/cube_fourier.hpp"

namespace cubesos {

// f = -sum_{i<j} w_ij (x_i - x_j)^2, so f_min = -maxcut(w).
CubePolynomial maxcut_instance(const Eigen::MatrixXd& weights);
// Unit-weight complete graph on n vertices.
CubePolynomial maxcut_complete(int n);

// f = -(sum_i x_i - sum_{ij in E} x_i x_j), so -f_min = alpha(G). Vertices are 0-based.
CubePolynomial stable_set_instance(const std::vector<std::pair<int, int>>& edges, int n);

// f = |x| = sum_i x_i; the inner hierarchy reaches it only at r = n.
CubePolynomial hamming_weight(int n);

enum class CoeffDist { uniform, gaussian };

struct RandomPolyOptions {
  CoeffDist dist = CoeffDist::uniform;
  bool normalize = true;  // scale to ||f||_inf = 1
};

// Independent coefficients for every monomial of degree <= d.
CubePolynomial random_poly(int n, int d, std::uint64_t seed, const RandomPolyOptions& opt = {});

// Symmetric k x k matrix with random_poly-style entries, scaled to spectral sup-norm 1.
MatrixPolynomial random_matrix_poly(int n, int d, int k, std::uint64_t seed);

// max over x of the cut weight, by enumeration.
double maxcut_value(const Eigen::MatrixXd& weights);
// Independence number by subset enumeration.
int independence_number(const std::vector<std::pair<int, int>>& edges, int n);

}  // namespace cubesos
