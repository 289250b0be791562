#include "cubesos/lp.hpp"

#include <cmath>
#include <limits>

#include "cubesos/errors.hpp"

namespace cubesos {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kCostTol = 1e-10;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;
constexpr int kMaxPivots = 200000;
constexpr int kBlandAfter = 25;

struct Tableau {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXd full;  // original constraint columns
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
  RowMat T;  // m+1 rows; last row holds reduced costs, last column the rhs
  std::vector<int> basis;
  std::vector<Eigen::Index> partner;  // the other half of a split free variable, or -1
  std::vector<char> in_basis;
  int pivots = 0;

  Eigen::Index m() const { return T.rows() - 1; }
  Eigen::Index cols() const { return T.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    T.row(r) /= T(r, c);
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
      if (i == r) continue;
      const double f = T(i, c);
      if (f != 0.0) T.row(i) -= f * T.row(r);
    }
    in_basis[basis[r]] = 0;
    in_basis[c] = 1;
    basis[r] = static_cast<int>(c);
    ++pivots;
  }

  // Rebuilds the tableau from the original data and the current basis.
  void refactor() {
    const Eigen::Index mm = m();
    Eigen::MatrixXd B(mm, mm);
    for (Eigen::Index i = 0; i < mm; ++i) B.col(i) = full.col(basis[i]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    T.topLeftCorner(mm, cols()) = lu.solve(full);
    T.topRightCorner(mm, 1) = lu.solve(rhs);
    for (Eigen::Index i = 0; i < mm; ++i) {
      T.row(i)(basis[i]) = 1.0;
      if (T(i, cols()) < 0.0 && T(i, cols()) > -kFeasTol) T(i, cols()) = 0.0;
    }
    reprice();
    if (!T.allFinite()) throw SolverError("solve_lp: singular basis");
  }

  void reprice() {
    T.row(m()).setZero();
    T.row(m()).head(cost.size()) = cost.transpose();
    for (Eigen::Index i = 0; i < m(); ++i) {
      const double cb = cost(basis[i]);
      if (cb != 0.0) T.row(m()) -= cb * T.row(i);
    }
  }

  // Minimizes cost; columns >= allowed never enter. Returns false when unbounded.
  bool run(Eigen::Index allowed) {
    const Eigen::Index rhs_col = cols();
    int since = 0;
    int degenerate = 0;
    bool clean = false;
    for (;;) {
      if (since >= 50) {
        refactor();
        since = 0;
      }
      // Dantzig pricing; Bland's rule takes over after a run of degenerate
      // pivots so that cycling cannot occur.
      const bool bland = degenerate >= kBlandAfter;
      Eigen::Index enter = -1;
      double most = -kCostTol;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        const double rc = T(m(), j);
        if (rc >= most || (partner[j] >= 0 && in_basis[partner[j]])) continue;
        enter = j;
        if (bland) break;
        most = rc;
      }
      // Harris two-pass ratio test: bound the step with a small feasibility
      // allowance, then take the largest pivot; ties go to the lowest index.
      Eigen::Index leave = -1;
      if (enter >= 0) {
        double bound = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m(); ++i) {
          const double a = T(i, enter);
          if (a > kPivotTol) bound = std::min(bound, (T(i, rhs_col) + kFeasTol) / a);
        }
        double big = 0.0;
        for (Eigen::Index i = 0; i < m(); ++i) {
          const double a = T(i, enter);
          if (a <= kPivotTol || T(i, rhs_col) / a > bound) continue;
          if (a > big || (a == big && basis[i] < basis[leave])) {
            big = a;
            leave = i;
          }
        }
      }
      if (enter < 0 || leave < 0) {
          if (clean || since == 0) return enter < 0;
        refactor();
        since = 0;
        clean = true;
        continue;
      }
      clean = false;
      const double before = T(m(), rhs_col);
      pivot(leave, enter);
      degenerate = (T(m(), rhs_col) == before) ? degenerate + 1 : 0;
      for (Eigen::Index i = 0; i < m(); ++i)
        if (T(i, rhs_col) < 0.0) T(i, rhs_col) = 0.0;
      ++since;
      if (pivots > kMaxPivots) throw SolverError("solve_lp: pivot limit reached");
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const Eigen::Index m = lp.A.rows();
  const Eigen::Index n = lp.A.cols();
  if (lp.c.size() != n || lp.b.size() != m)
    throw DimensionError("solve_lp: inconsistent dimensions");
  if (!lp.sense.empty() && static_cast<Eigen::Index>(lp.sense.size()) != m)
    throw DimensionError("solve_lp: sense size mismatch");
  if (!lp.is_free.empty() && static_cast<Eigen::Index>(lp.is_free.size()) != n)
    throw DimensionError("solve_lp: is_free size mismatch");

  auto is_free = [&](Eigen::Index j) { return !lp.is_free.empty() && lp.is_free[j]; };
  auto sense = [&](Eigen::Index i) { return lp.sense.empty() ? RowSense::le : lp.sense[i]; };

  // Column layout: structural (free variables split), slacks, artificials.
  std::vector<Eigen::Index> pos(n), neg(n, -1);
  Eigen::Index ns = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    pos[j] = ns++;
    if (is_free(j)) neg[j] = ns++;
  }
  std::vector<Eigen::Index> slack(m, -1);
  Eigen::Index nc = ns;
  for (Eigen::Index i = 0; i < m; ++i)
    if (sense(i) != RowSense::eq) slack[i] = nc++;
  // Rows whose slack enters with +1 after sign normalization start from the
  // slack; the others get an artificial.
  auto flipped = [&](Eigen::Index i) { return lp.b(i) < 0; };
  auto slack_starts = [&](Eigen::Index i) {
    return sense(i) != RowSense::eq && ((sense(i) == RowSense::le) != flipped(i));
  };
  const Eigen::Index first_art = nc;
  std::vector<Eigen::Index> art(m, -1);
  for (Eigen::Index i = 0; i < m; ++i)
    if (!slack_starts(i)) art[i] = nc++;
  const Eigen::Index total = nc;

  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m, total);
  Eigen::VectorXd rhs(m);
  Eigen::VectorXd rowsign(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = lp.b(i) < 0 ? -1.0 : 1.0;
    rowsign(i) = s;
    for (Eigen::Index j = 0; j < n; ++j) {
      full(i, pos[j]) = s * lp.A(i, j);
      if (neg[j] >= 0) full(i, neg[j]) = -s * lp.A(i, j);
    }
    if (slack[i] >= 0) full(i, slack[i]) = s * (sense(i) == RowSense::le ? 1.0 : -1.0);
    if (art[i] >= 0) full(i, art[i]) = 1.0;
    rhs(i) = s * lp.b(i);
  }

  Tableau tab;
  tab.full = full;
  tab.rhs = rhs;
  tab.T.setZero(m + 1, total + 1);
  tab.T.topLeftCorner(m, total) = full;
  tab.T.topRightCorner(m, 1) = rhs;
  tab.basis.resize(m);
  tab.in_basis.assign(total, 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.basis[i] = static_cast<int>(art[i] >= 0 ? art[i] : slack[i]);
    tab.in_basis[tab.basis[i]] = 1;
  }
  tab.partner.assign(total, -1);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (neg[j] < 0) continue;
    tab.partner[pos[j]] = neg[j];
    tab.partner[neg[j]] = pos[j];
  }

  LpSolution sol;
  tab.cost = Eigen::VectorXd::Zero(total);
  tab.cost.tail(total - first_art).setOnes();
  tab.reprice();
  tab.run(first_art);
  const double infeas = -tab.T(m, total);
  const double bscale = 1.0 + (m > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0);
  if (infeas > 1e-9 * bscale) {
    sol.status = LpStatus::infeasible;
    sol.pivots = tab.pivots;
    return sol;
  }
  // Drive remaining artificials out where possible; rows left are redundant.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[i] < first_art) continue;
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < first_art; ++j) {
      if (tab.partner[j] >= 0 && tab.in_basis[tab.partner[j]]) continue;
      if (std::abs(tab.T(i, j)) > 1e-9 && (best < 0 || std::abs(tab.T(i, j)) > std::abs(tab.T(i, best))))
        best = j;
    }
    if (best >= 0) tab.pivot(i, best);
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(total);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double cj = lp.maximize ? -lp.c(j) : lp.c(j);
    cost(pos[j]) = cj;
    if (neg[j] >= 0) cost(neg[j]) = -cj;
  }
  tab.cost = cost;
  tab.refactor();
  const bool bounded = tab.run(first_art);
  sol.pivots = tab.pivots;
  if (!bounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  Eigen::VectorXd z = Eigen::VectorXd::Zero(total);
  for (Eigen::Index i = 0; i < m; ++i) z(tab.basis[i]) = tab.T(i, total);
  sol.x.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) sol.x(j) = z(pos[j]) - (neg[j] >= 0 ? z(neg[j]) : 0.0);

  if (m > 0) {
    Eigen::MatrixXd B(m, m);
    Eigen::VectorXd cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      B.col(i) = full.col(tab.basis[i]);
      cb(i) = cost(tab.basis[i]);
    }
    Eigen::VectorXd y = B.transpose().fullPivLu().solve(cb);
    sol.duals = rowsign.cwiseProduct(y);
    if (lp.maximize) sol.duals = -sol.duals;
  } else {
    sol.duals.resize(0);
  }

  sol.objective = lp.c.dot(sol.x);
  double viol = 0.0;
  const Eigen::VectorXd Ax = lp.A * sol.x;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double r = Ax(i) - lp.b(i);
    switch (sense(i)) {
      case RowSense::le: viol = std::max(viol, r); break;
      case RowSense::ge: viol = std::max(viol, -r); break;
      case RowSense::eq: viol = std::max(viol, std::abs(r)); break;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j)
    if (!is_free(j)) viol = std::max(viol, -sol.x(j));
  sol.max_violation = viol;
  sol.status = LpStatus::optimal;
  return sol;
}

}  // namespace cubesos
