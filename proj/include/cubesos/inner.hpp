#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cubesos/cube_fourier.hpp"
#include "cubesos/krawtchouk.hpp"

namespace cubesos {

// Polynomial in one variable, coeffs[i] multiplies t^i.
struct Univariate {
  std::vector<double> coeffs;
  double operator()(double t) const;
  int degree() const;
};

struct InnerBoundResult {
  double value = 0.0;
  int order = 0;
  // Optimal density is (sum_i c_i b_i)^2 for the working basis b_i.
  Eigen::VectorXd density_coeffs;
  double residual = 0.0;  // ||A c - value c||
};

// Masks of weight <= r, ordered by weight then numerically.
std::vector<Mask> low_weight_masks(int n, int r);

// g^(r) on [0:n] w.r.t. mu; basis is the mu-orthonormal Krawtchouk family.
InnerBoundResult inner_univariate(const Univariate& g, const DiscreteMeasure& mu, int r);
// Same with g given by its values g(0..n).
InnerBoundResult inner_univariate_values(const std::vector<double>& g, const DiscreteMeasure& mu, int r);

// f^(r); basis is the characters chi_a with |a| <= r.
InnerBoundResult inner_cube(const CubePolynomial& f, int r);
// F(t) = average of f over {|x| = t}.
std::vector<double> symmetrize(const CubePolynomial& f);
InnerBoundResult inner_cube_symmetrized(const CubePolynomial& f, int r);
// F^(r) for a symmetric matrix polynomial; basis chi_a e_i.
InnerBoundResult inner_matrix(const MatrixPolynomial& F, int r);

// Smallest eigenpair of a dense symmetric matrix.
struct EigenPair {
  double value;
  Eigen::VectorXd vector;
  double residual;
};
EigenPair smallest_eigenpair(const Eigen::MatrixXd& A);

}  // namespace cubesos
