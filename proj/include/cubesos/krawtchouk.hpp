#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cubesos {

// omega on [0:n]: w(t) = (q-1)^t binom(n,t) / q^n.
struct DiscreteMeasure {
  int n = 0;
  int q = 2;
  std::vector<double> weights;

  static DiscreteMeasure krawtchouk(int n, int q = 2);
  double operator()(int t) const { return weights.at(t); }
};

double log_binomial(int n, int k);

// Normalized Krawtchouk value K^n_k(t) / K^n_k(0) at real t.
double kraw_eval(int n, int q, int k, double t);
// All normalized values K^n_0(t) .. K^n_kmax(t).
Eigen::VectorXd kraw_eval_all(int n, int q, int kmax, double t);
// Unnormalized K^n_k(t) for small n (used for identities and tests).
double kraw_raw(int n, int q, int k, int t);
// log ||K_k||^2_omega = log((q-1)^k binom(n,k)).
double kraw_log_norm_sq(int n, int q, int k);

class KrawtchoukFamily {
 public:
  KrawtchoukFamily(int n, int q, int max_degree);

  int n() const { return n_; }
  int q() const { return q_; }
  int max_degree() const { return max_degree_; }
  const DiscreteMeasure& measure() const { return measure_; }

  // normalized(k, t) = K^_k(t), t in [0:n]
  double normalized(int k, int t) const { return khat_(k, t); }
  const Eigen::MatrixXd& normalized_table() const { return khat_; }
  // sqrt(w(t)) * p_k(t) for the omega-orthonormal family p_k.
  const Eigen::MatrixXd& scaled_orthonormal() const { return phi_; }

  // Jacobi coefficients: t p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
  double diag(int k) const;
  double offdiag(int k) const;  // b_{k+1}, coupling k and k+1

 private:
  int n_, q_, max_degree_;
  DiscreteMeasure measure_;
  Eigen::MatrixXd khat_;  // (max_degree+1) x (n+1)
  Eigen::MatrixXd phi_;   // (max_degree+1) x (n+1)
};

struct JacobiMatrix {
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;  // size order-1

  static JacobiMatrix krawtchouk(int n, int q, int order);
  int order() const { return static_cast<int>(diag.size()); }
  Eigen::MatrixXd dense() const;
  // Number of eigenvalues strictly below x (Sturm sequence count).
  int count_below(double x) const;
  // k-th smallest eigenvalue (0-based) by bisection.
  double eigenvalue(int k) const;
};

// Least root of K^n_{r} (q-ary), via Jacobi bisection, cross-checked
// against sign changes of the recurrence; throws RootMismatch on disagreement.
double least_root(int n, int q, int r);
// Same root from a sign-change scan plus bisection of kraw_eval.
double least_root_by_sign_change(int n, int q, int r);

double levenshtein_phi(double t, int q = 2);
double limit_poly_eval(int k, double t, int q = 2);

struct StepBoundReport {
  bool holds = true;
  double min_slack = 0.0;
  int worst_k = 0;
  int worst_t = 0;
};
// |K^_k(t) - K^_k(t+1)| <= 2k/n and |K^_k(t) - 1| <= 2kt/n for k <= d.
StepBoundReport kraw_step_bound_check(int n, int q, int d);

}  // namespace cubesos
