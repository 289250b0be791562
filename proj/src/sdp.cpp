#include "cubesos/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cubesos/errors.hpp"

namespace cubesos {

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible_detected: return "infeasible_detected";
    case SdpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------- dense map

DenseConstraints::DenseConstraints(std::vector<Eigen::MatrixXd> A) : A_(std::move(A)) {
  if (!A_.empty()) N_ = A_.front().rows();
  for (const auto& a : A_) {
    if (a.rows() != N_ || a.cols() != N_) throw DimensionError("constraint matrices differ in size");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, a.cwiseAbs().maxCoeff()))
      throw DomainError("constraint matrix is not symmetric");
  }
}

Eigen::VectorXd DenseConstraints::apply(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd out(count());
  for (Eigen::Index i = 0; i < count(); ++i) out(i) = A_[i].cwiseProduct(X).sum();
  return out;
}

Eigen::MatrixXd DenseConstraints::adjoint(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N_, N_);
  for (Eigen::Index i = 0; i < count(); ++i) S += y(i) * A_[i];
  return S;
}

Eigen::MatrixXd DenseConstraints::schur(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const {
  const Eigen::Index m = count();
  Eigen::MatrixXd M(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::MatrixXd W = U * A_[j] * V;
    for (Eigen::Index i = 0; i < m; ++i) M(i, j) = A_[i].cwiseProduct(W).sum();
  }
  return M;
}

Eigen::VectorXd DenseConstraints::norms() const {
  Eigen::VectorXd out(count());
  for (Eigen::Index i = 0; i < count(); ++i) out(i) = A_[i].norm();
  return out;
}

// ---------------------------------------------------------------- step length

namespace {

double lanczos_min(const Eigen::MatrixXd& L, const Eigen::MatrixXd& dX) {
  const Eigen::Index N = L.rows();
  const int k = static_cast<int>(std::min<Eigen::Index>(N, 60));
  auto op = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd w = L.transpose().triangularView<Eigen::Upper>().solve(v);
    w = dX * w;
    return Eigen::VectorXd(L.triangularView<Eigen::Lower>().solve(w));
  };
  Eigen::MatrixXd Q(N, k + 1);
  Eigen::VectorXd alpha(k), beta(k);
  Eigen::VectorXd q = Eigen::VectorXd::Ones(N) + 0.1 * Eigen::VectorXd::LinSpaced(N, -1.0, 1.0).array().sin().matrix();
  Q.col(0) = q.normalized();
  int used = 0;
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd w = op(Q.col(j));
    alpha(j) = Q.col(j).dot(w);
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);
    beta(j) = w.norm();
    used = j + 1;
    if (beta(j) < 1e-12 * (1.0 + std::abs(alpha(j)))) break;
    Q.col(j + 1) = w / beta(j);
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
  for (int j = 0; j < used; ++j) {
    T(j, j) = alpha(j);
    if (j + 1 < used) T(j, j + 1) = T(j + 1, j) = beta(j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double step_from_factor(const Eigen::MatrixXd& L, const Eigen::MatrixXd& dX) {
  const Eigen::Index N = L.rows();
  double lmin;
  if (N <= 300) {
    Eigen::MatrixXd B = L.triangularView<Eigen::Lower>().solve(dX);
    B = L.triangularView<Eigen::Lower>().solve(B.transpose()).eval();
    B = 0.5 * (B + B.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
    lmin = es.eigenvalues()(0);
  } else {
    lmin = lanczos_min(L, dX);
  }
  return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

bool is_pd(const Eigen::MatrixXd& X) {
  Eigen::LLT<Eigen::MatrixXd> llt(X);
  return llt.info() == Eigen::Success;
}

// min(1, tau * max step), then backtracked until X + alpha dX factors.
double safe_step(const Eigen::MatrixXd& X, const Eigen::MatrixXd& L, const Eigen::MatrixXd& dX,
                 double tau) {
  double a = std::min(1.0, tau * step_from_factor(L, dX));
  for (int tries = 0; tries < 60 && a > 0; ++tries) {
    if (is_pd(X + a * dX)) return a;
    a *= 0.8;
  }
  return 0.0;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& A) { return 0.5 * (A + A.transpose()); }

}  // namespace

double max_psd_step(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX) {
  Eigen::LLT<Eigen::MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) throw DomainError("max_psd_step needs a positive definite X");
  Eigen::MatrixXd L = llt.matrixL();
  if (L.rows() > 300) {
    // exact answer requested: use the dense route regardless of size
    Eigen::MatrixXd B = L.triangularView<Eigen::Lower>().solve(dX);
    B = L.triangularView<Eigen::Lower>().solve(B.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(B), Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues()(0);
    return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
  }
  return step_from_factor(L, dX);
}

// ---------------------------------------------------------------- solver

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt) {
  DenseConstraints A(p.A);
  if (!p.A.empty() && A.dim() != p.C.rows()) throw DimensionError("C and A_i differ in size");
  if (p.b.size() != A.count()) throw DimensionError("b has wrong length");
  return solve_sdp(p.C, A, p.b, opt);
}

SdpSolution solve_sdp(const Eigen::MatrixXd& C, const ConstraintMap& A, const Eigen::VectorXd& b,
                      const SdpOptions& opt) {
  const Eigen::Index N = C.rows(), m = A.count();
  if (C.cols() != N || (m > 0 && A.dim() != N)) throw DimensionError("objective/constraint size mismatch");
  if (b.size() != m) throw DimensionError("b has wrong length");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);

  const double bnorm = b.norm(), cnorm = C.norm();
  Eigen::VectorXd an = A.norms();
  double xi = std::max(10.0, std::sqrt(double(N)));
  for (Eigen::Index i = 0; i < m; ++i) xi = std::max(xi, N * (1.0 + std::abs(b(i))) / (1.0 + an(i)));

  SdpSolution s;
  s.X = xi * I;
  s.y = Eigen::VectorXd::Zero(m);
  // Start on the dual-feasible set when C is positive definite.
  const bool dual_path = is_pd(C);
  if (dual_path) {
    s.Z = C;
  } else {
    double eta = std::max({10.0, std::sqrt(double(N)), cnorm, an.size() ? an.maxCoeff() : 0.0});
    s.Z = eta * I;
  }

  SdpSolution best = s;
  double best_merit = std::numeric_limits<double>::infinity();
  int stalls = 0;

  for (int it = 0;; ++it) {
    Eigen::VectorXd Rp = b - A.apply(s.X);
    Eigen::MatrixXd Rd = dual_path ? Eigen::MatrixXd::Zero(N, N) : Eigen::MatrixXd(C - s.Z - A.adjoint(s.y));
    const double mu = s.X.cwiseProduct(s.Z).sum() / N;
    s.primal_objective = C.cwiseProduct(s.X).sum();
    s.dual_objective = b.dot(s.y);
    s.gap = std::abs(s.primal_objective - s.dual_objective) /
            (1.0 + std::abs(s.primal_objective) + std::abs(s.dual_objective));
    s.primal_infeasibility = Rp.norm() / (1.0 + bnorm);
    s.dual_infeasibility = Rd.norm() / (1.0 + cnorm);
    s.iterations = it;
    if (opt.verbose)
      std::fprintf(stderr, "sdp %3d  pobj % .10e  dobj % .10e  gap %.2e  pinf %.2e  dinf %.2e  mu %.2e\n",
                   it, s.primal_objective, s.dual_objective, s.gap, s.primal_infeasibility,
                   s.dual_infeasibility, mu);

    const double merit = std::max({s.gap / opt.gap_tol, s.primal_infeasibility / opt.feas_tol,
                                   s.dual_infeasibility / opt.feas_tol});
    if (merit < best_merit) {
      best_merit = merit;
      best = s;
    }
    if (s.gap <= opt.gap_tol && s.primal_infeasibility <= opt.feas_tol &&
        s.dual_infeasibility <= opt.feas_tol) {
      s.status = SdpStatus::optimal;
      return s;
    }
    // Divergence of one side while the other stays feasible certifies infeasibility.
    const double big = 1e12 * (1.0 + bnorm + cnorm);
    if ((s.dual_infeasibility <= opt.feas_tol && s.dual_objective > big) ||
        (s.primal_infeasibility <= opt.feas_tol && s.primal_objective < -big)) {
      s.status = SdpStatus::infeasible_detected;
      return s;
    }
    if (it >= opt.max_iter) break;

    Eigen::LLT<Eigen::MatrixXd> zf(s.Z);
    Eigen::LLT<Eigen::MatrixXd> xf(s.X);
    if (zf.info() != Eigen::Success || xf.info() != Eigen::Success) {
      best.status = SdpStatus::numerical_failure;
      return best;
    }
    const Eigen::MatrixXd Zi = sym(zf.solve(I));
    const Eigen::MatrixXd Lx = xf.matrixL();
    const Eigen::MatrixXd Lz = zf.matrixL();

    Eigen::MatrixXd M = sym(A.schur(s.X, Zi));
    Eigen::LLT<Eigen::MatrixXd> mf(M);
    for (double reg = 1e-14; mf.info() != Eigen::Success && reg < 1e-4; reg *= 100) {
      Eigen::MatrixXd Mr = M;
      Mr.diagonal().array() += reg * std::max(1.0, M.diagonal().maxCoeff());
      mf.compute(Mr);
    }
    if (mf.info() != Eigen::Success) {
      best.status = SdpStatus::numerical_failure;
      return best;
    }

    const Eigen::VectorXd AZi = A.apply(Zi);
    Eigen::VectorXd base = b;
    if (!dual_path) base += A.apply(s.X * (Rd * Zi));

    Eigen::MatrixXd dZZi;
    auto direction = [&](double target, const Eigen::MatrixXd* corr, Eigen::VectorXd& dy,
                         Eigen::MatrixXd& dX, Eigen::MatrixXd& dZ) {
      Eigen::VectorXd rhs = base - target * AZi;
      if (corr) rhs += A.apply(*corr);
      dy = mf.solve(rhs);
      dZ = Rd - A.adjoint(dy);
      dZZi.noalias() = dZ * Zi;
      dX = target * Zi - s.X;
      dX.noalias() -= s.X * dZZi;
      if (corr) dX -= *corr;
      dX = sym(dX);
    };

    // predictor
    Eigen::VectorXd dy;
    Eigen::MatrixXd dX, dZ;
    direction(0.0, nullptr, dy, dX, dZ);
    double ap = std::min(1.0, step_from_factor(Lx, dX));
    double ad = std::min(1.0, step_from_factor(Lz, dZ));
    const double mu_aff = (s.X + ap * dX).cwiseProduct(s.Z + ad * dZ).sum() / N;
    double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // corrector
    Eigen::MatrixXd corr(N, N);
    corr.noalias() = dX * dZZi;
    direction(sigma * mu, &corr, dy, dX, dZ);
    const double tau = 0.9 + 0.09 * std::min(ap, ad);
    ap = safe_step(s.X, Lx, dX, tau);
    ad = safe_step(s.Z, Lz, dZ, tau);

    s.X = sym(s.X + ap * dX);
    s.y += ad * dy;
    if (dual_path)
      s.Z = sym(C - A.adjoint(s.y));
    else
      s.Z = sym(s.Z + ad * dZ);

    stalls = (ap < 1e-8 && ad < 1e-8) ? stalls + 1 : 0;
    if (stalls >= 3) {
      best.status = SdpStatus::numerical_failure;
      return best;
    }
  }
  best.status = SdpStatus::max_iter;
  return best;
}

}  // namespace cubesos
