#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cubesos {

// min <C,X>  s.t.  <A_i,X> = b_i, X psd
// max b'y    s.t.  C - sum_i y_i A_i = Z psd
struct SdpProblem {
  Eigen::MatrixXd C;
  std::vector<Eigen::MatrixXd> A;
  Eigen::VectorXd b;
};

enum class SdpStatus { optimal, max_iter, infeasible_detected, numerical_failure };
std::string to_string(SdpStatus s);

struct SdpOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

struct SdpSolution {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::MatrixXd Z;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;  // relative duality gap
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::max_iter;
};

// Linear map X -> (<A_i, X>)_i on symmetric N x N matrices.
class ConstraintMap {
 public:
  virtual ~ConstraintMap() = default;
  virtual Eigen::Index dim() const = 0;
  virtual Eigen::Index count() const = 0;
  // Works for non-symmetric X (only its symmetric part is seen).
  virtual Eigen::VectorXd apply(const Eigen::MatrixXd& X) const = 0;
  virtual Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const = 0;
  // M_ij = Tr(A_i U A_j V) for symmetric U, V.
  virtual Eigen::MatrixXd schur(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const = 0;
  // Frobenius norms of the A_i.
  virtual Eigen::VectorXd norms() const = 0;
};

class DenseConstraints : public ConstraintMap {
 public:
  explicit DenseConstraints(std::vector<Eigen::MatrixXd> A);
  Eigen::Index dim() const override { return N_; }
  Eigen::Index count() const override { return static_cast<Eigen::Index>(A_.size()); }
  Eigen::VectorXd apply(const Eigen::MatrixXd& X) const override;
  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const override;
  Eigen::MatrixXd schur(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const override;
  Eigen::VectorXd norms() const override;

 private:
  std::vector<Eigen::MatrixXd> A_;
  Eigen::Index N_ = 0;
};

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt = {});
SdpSolution solve_sdp(const Eigen::MatrixXd& C, const ConstraintMap& A, const Eigen::VectorXd& b,
                      const SdpOptions& opt = {});

// Largest alpha with X + alpha dX psd (infinity if unbounded); X must be pd.
double max_psd_step(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX);

}  // namespace cubesos
