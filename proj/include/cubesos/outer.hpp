#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cubesos/cube_fourier.hpp"
#include "cubesos/sdp.hpp"

namespace cubesos {

// Constraints of the character-basis Gram SDP. The Gram matrix is indexed by
// (a, i) with a in the basis and i < k. For every c with |c| <= 2r and i <= j
// the basic constraint reads sum_{a^b=c} G[(a,i),(b,j)]. The c = 0 diagonal
// constraints are replaced by consecutive differences (their common value is
// the free variable lambda), and dropped entirely when k = 1.
class XorConstraintMap : public ConstraintMap {
 public:
  struct Key {
    Mask c;
    int i, j;
  };

  XorConstraintMap(int n, std::vector<Mask> basis, int k, int two_r);

  Eigen::Index dim() const override { return dim_; }
  Eigen::Index count() const override { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::VectorXd apply(const Eigen::MatrixXd& X) const override;
  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const override;
  Eigen::MatrixXd schur(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const override;
  Eigen::VectorXd norms() const override;

  const std::vector<Key>& basic_keys() const { return keys_; }
  // Right-hand side for the given Fourier tables fhat[i*k+j].
  Eigen::VectorXd rhs(const std::vector<std::vector<double>>& fhat) const;

  // Basic-constraint values sum_{a^b=c} X[(a,i),(b,j)].
  Eigen::VectorXd apply_basic(const Eigen::MatrixXd& X) const;
  Eigen::MatrixXd schur_basic(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const;
  // Same quantity by direct quadruple summation; k = 1 only.
  Eigen::MatrixXd schur_basic_direct(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const;
  // Same quantity by 2D Walsh-Hadamard correlation.
  Eigen::MatrixXd schur_basic_transform(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const;

 private:
  int n_, k_;
  std::vector<Mask> basis_;
  Eigen::Index dim_;
  std::vector<Key> keys_;
  std::vector<int> cpos_;        // c -> position among reachable c, or -1
  std::vector<Mask> reach_;      // reachable c in position order
  std::vector<int> entry_;       // (u,v) -> basic index
  // Each row is a signed combination of at most two basic constraints.
  struct Row {
    int first, second;
    double sign_second;
  };
  std::vector<Row> rows_;
  Eigen::VectorXd basic_norms_;

  int basic_index(int pos, int i, int j) const;
};

struct OuterOptions {
  SdpOptions sdp;
  // Before solving at order r, try lower orders and stop as soon as one is
  // within exact_tol of the brute-force minimum (then f_(r) is pinned by
  // monotonicity); the lower-order Gram is zero-padded to order r.
  bool early_exact = false;
  double exact_tol = 1e-7;
};

struct OuterBoundResult {
  double value = 0.0;         // Gram (primal) side
  double moment_value = 0.0;  // moment (dual) side
  int r = 0;
  int k = 1;
  int solved_order = 0;       // order of the SDP that produced the Gram
  std::vector<Mask> basis;
  Eigen::MatrixXd gram;
  SdpStatus status = SdpStatus::optimal;
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
};

OuterBoundResult outer_cube(const CubePolynomial& f, int r, const OuterOptions& opt = {});
OuterBoundResult outer_matrix(const MatrixPolynomial& F, int r, const OuterOptions& opt = {});

struct SosVerification {
  double max_residual = 0.0;
  double min_eigenvalue = 0.0;
  bool psd = true;
};
SosVerification verify_sos_certificate(const OuterBoundResult& res, const CubePolynomial& f);
SosVerification verify_sos_certificate(const OuterBoundResult& res, const MatrixPolynomial& F);

// In-place 2D Walsh-Hadamard transform of a row-major 2^n x 2^n array.
void walsh_hadamard_2d(std::vector<double>& a, int n);

}  // namespace cubesos
