#include "cubesos/krawtchouk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cubesos/errors.hpp"

namespace cubesos {

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

DiscreteMeasure DiscreteMeasure::krawtchouk(int n, int q) {
  if (n < 0 || q < 2) throw DomainError("measure needs n >= 0, q >= 2");
  DiscreteMeasure m;
  m.n = n;
  m.q = q;
  m.weights.resize(n + 1);
  const double lq = std::log(double(q)), lq1 = std::log(double(q - 1));
  for (int t = 0; t <= n; ++t) m.weights[t] = std::exp(t * lq1 + log_binomial(n, t) - n * lq);
  return m;
}

namespace {

void check_nqk(int n, int q, int k) {
  if (n < 1) throw DomainError("n must be positive");
  if (q < 2) throw DomainError("q must be at least 2");
  if (k < 0 || k > n) throw DomainError("degree k=" + std::to_string(k) + " outside [0, n]");
}

}  // namespace

// The forward recurrence in k loses relative accuracy where K_k(t) is recessive
// (large k, q > 2), so it runs in quad precision.
Eigen::VectorXd kraw_eval_all(int n, int q, int kmax, double t) {
  check_nqk(n, q, kmax);
  using Q = __float128;
  Eigen::VectorXd K(kmax + 1);
  K(0) = 1.0;
  if (kmax == 0) return K;
  const Q q1 = q - 1, tq = t;
  Q prev = 1, cur = 1 - q * tq / (q1 * n);
  K(1) = static_cast<double>(cur);
  for (int k = 1; k < kmax; ++k) {
    const Q next = (((n - k) * q1 + k - q * tq) * cur - k * prev) / (q1 * (n - k));
    prev = cur;
    cur = next;
    K(k + 1) = static_cast<double>(cur);
  }
  return K;
}

double kraw_eval(int n, int q, int k, double t) {
  if (t < 0 || t > n) throw DomainError("argument t outside [0, n]");
  return kraw_eval_all(n, q, k, t)(k);
}

double kraw_raw(int n, int q, int k, int t) {
  check_nqk(n, q, k);
  if (t < 0 || t > n) throw DomainError("argument t outside [0, n]");
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    if (i > t || k - i > n - t) continue;
    double term = std::exp(log_binomial(t, i) + log_binomial(n - t, k - i)) *
                  std::pow(q - 1.0, k - i);
    s += (i % 2 ? -1.0 : 1.0) * std::round(term);
  }
  return s;
}

double kraw_log_norm_sq(int n, int q, int k) {
  return k * std::log(q - 1.0) + log_binomial(n, k);
}

// ---------------------------------------------------------------- family

KrawtchoukFamily::KrawtchoukFamily(int n, int q, int max_degree)
    : n_(n), q_(q), max_degree_(max_degree), measure_(DiscreteMeasure::krawtchouk(n, q)) {
  check_nqk(n, q, max_degree);
  khat_.resize(max_degree + 1, n + 1);
  phi_.resize(max_degree + 1, n + 1);
  std::vector<double> half_log_norm(max_degree + 1);
  for (int k = 0; k <= max_degree; ++k) half_log_norm[k] = 0.5 * kraw_log_norm_sq(n, q, k);
  for (int t = 0; t <= n; ++t) {
    khat_.col(t) = kraw_eval_all(n, q, max_degree, t);
    // p_k = Khat_k ||K_k||_omega, positive at t = 0
    const double half_log_w = 0.5 * std::log(measure_.weights[t]);
    for (int k = 0; k <= max_degree; ++k) phi_(k, t) = khat_(k, t) * std::exp(half_log_w + half_log_norm[k]);
  }
}

double KrawtchoukFamily::diag(int k) const { return ((n_ - k) * (q_ - 1.0) + k) / q_; }

double KrawtchoukFamily::offdiag(int k) const {
  return -std::sqrt((q_ - 1.0) * (n_ - k) * (k + 1.0)) / q_;
}

// ---------------------------------------------------------------- Jacobi

JacobiMatrix JacobiMatrix::krawtchouk(int n, int q, int order) {
  if (order < 1 || order > n + 1) throw DomainError("Jacobi order outside [1, n+1]");
  if (q < 2) throw DomainError("q must be at least 2");
  JacobiMatrix J;
  J.diag.resize(order);
  J.offdiag.resize(order - 1);
  for (int k = 0; k < order; ++k) J.diag(k) = ((n - k) * (q - 1.0) + k) / q;
  for (int k = 0; k + 1 < order; ++k) J.offdiag(k) = -std::sqrt((q - 1.0) * (n - k) * (k + 1.0)) / q;
  return J;
}

Eigen::MatrixXd JacobiMatrix::dense() const {
  const int r = order();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r, r);
  A.diagonal() = diag;
  for (int k = 0; k + 1 < r; ++k) A(k, k + 1) = A(k + 1, k) = offdiag(k);
  return A;
}

int JacobiMatrix::count_below(double x) const {
  int count = 0;
  double d = 1.0;
  for (int k = 0; k < order(); ++k) {
    double b2 = k ? offdiag(k - 1) * offdiag(k - 1) : 0.0;
    d = diag(k) - x - (k ? b2 / d : 0.0);
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0) ++count;
  }
  return count;
}

double JacobiMatrix::eigenvalue(int k) const {
  if (k < 0 || k >= order()) throw DomainError("eigenvalue index out of range");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < order(); ++i) {
    double rad = (i ? std::abs(offdiag(i - 1)) : 0.0) + (i + 1 < order() ? std::abs(offdiag(i)) : 0.0);
    lo = std::min(lo, diag(i) - rad);
    hi = std::max(hi, diag(i) + rad);
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- roots

double least_root_by_sign_change(int n, int q, int r) {
  if (r < 1 || r > n) throw DomainError("root order r outside [1, n]");
  double prev = 1.0;  // K^_r(0)
  for (int t = 1; t <= n; ++t) {
    double v = kraw_eval(n, q, r, t);
    if (v == 0.0) return t;
    if ((v < 0) != (prev < 0)) {
      double lo = t - 1, hi = t, flo = prev;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = kraw_eval(n, q, r, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev = v;
  }
  throw RootMismatch("no sign change of K_" + std::to_string(r) + " on [0, n]");
}

double least_root(int n, int q, int r) {
  if (r < 1 || r > n) throw DomainError("root order r outside [1, n]");
  double xi = JacobiMatrix::krawtchouk(n, q, r).eigenvalue(0);
  double check = least_root_by_sign_change(n, q, r);
  if (std::abs(xi - check) > 1e-8)
    throw RootMismatch("Jacobi root " + std::to_string(xi) + " disagrees with sign-change root " +
                       std::to_string(check));
  return xi;
}

double levenshtein_phi(double t, int q) {
  if (q < 2) throw DomainError("q must be at least 2");
  const double top = (q - 1.0) / q;
  if (t < -1e-12 || t > top + 1e-12) throw DomainError("t outside [0, (q-1)/q]");
  t = std::clamp(t, 0.0, top);
  return top - ((q - 2.0) * t / q + (2.0 / q) * std::sqrt((q - 1.0) * t * (1.0 - t)));
}

double limit_poly_eval(int k, double t, int q) {
  if (t < 0 || t > 1) throw DomainError("t outside [0, 1]");
  return std::pow(1.0 - q * t / (q - 1.0), k);
}

StepBoundReport kraw_step_bound_check(int n, int q, int d) {
  check_nqk(n, q, d);
  StepBoundReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  KrawtchoukFamily fam(n, q, d);
  auto note = [&](double slack, int k, int t) {
    if (slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.worst_k = k;
      rep.worst_t = t;
    }
  };
  for (int k = 0; k <= d; ++k)
    for (int t = 0; t <= n; ++t) {
      double v = fam.normalized(k, t);
      note(2.0 * k * t / n - std::abs(v - 1.0), k, t);
      if (t < n) note(2.0 * k / n - std::abs(v - fam.normalized(k, t + 1)), k, t);
    }
  rep.holds = rep.min_slack >= -1e-12;
  return rep;
}

}  // namespace cubesos
