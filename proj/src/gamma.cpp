#include "cubesos/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubesos/errors.hpp"
#include "cubesos/krawtchouk.hpp"

namespace cubesos {

std::vector<std::int64_t> chebyshev_coeffs_int(int m) {
  if (m < 0) throw DomainError("chebyshev_coeffs: negative degree");
  if (m > 30) throw DomainError("chebyshev_coeffs_int: degree above 30");
  std::vector<std::int64_t> prev{1}, cur{0, 1};
  if (m == 0) return prev;
  for (int j = 1; j < m; ++j) {
    std::vector<std::int64_t> next(j + 2, 0);
    for (int i = 0; i <= j; ++i) next[i + 1] += 2 * cur[i];
    for (int i = 0; i < j; ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> chebyshev_coeffs(int m) {
  if (m < 0) throw DomainError("chebyshev_coeffs: negative degree");
  if (m <= 30) {
    auto t = chebyshev_coeffs_int(m);
    return {t.begin(), t.end()};
  }
  std::vector<double> prev{1.0}, cur{0.0, 1.0};
  for (int j = 1; j < m; ++j) {
    std::vector<double> next(j + 2, 0.0);
    for (int i = 0; i <= j; ++i) next[i + 1] += 2.0 * cur[i];
    for (int i = 0; i < j; ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double rho_infinity(int d, int k) {
  if (d < 0 || k < 0 || k > d) throw DomainError("rho_infinity: need 0 <= k <= d");
  const int m = ((d - k) % 2 == 0) ? d : d - 1;
  return std::abs(chebyshev_coeffs(m)[k]);
}

double gamma_d(int d) {
  double g = 0.0;
  for (int k = 0; k <= d; ++k) g = std::max(g, rho_infinity(d, k));
  return g;
}

std::int64_t gamma_d_int(int d) {
  if (d < 0) throw DomainError("gamma_d: negative degree");
  std::int64_t g = 0;
  const auto top = chebyshev_coeffs_int(d);
  const auto below = d > 0 ? chebyshev_coeffs_int(d - 1) : std::vector<std::int64_t>{};
  for (int k = 0; k <= d; ++k) {
    const std::int64_t v = ((d - k) % 2 == 0) ? top[k] : below[k];
    g = std::max(g, v < 0 ? -v : v);
  }
  return g;
}

double C_d(int d) { return d * (d + 1.0) * gamma_d(d); }

RhoResult rho_finite(int n, int d, int k, int q) {
  if (q < 2) throw DomainError("rho_finite: q must be at least 2");
  if (k < 0 || d < k || n < d) throw DomainError("rho_finite: need 0 <= k <= d <= n");
  const KrawtchoukFamily fam(n, q, d);
  LinearProgram lp;
  lp.maximize = true;
  lp.c = Eigen::VectorXd::Unit(d + 1, k);
  lp.A.resize(2 * (n + 1), d + 1);
  lp.b = Eigen::VectorXd::Ones(2 * (n + 1));
  lp.sense.assign(2 * (n + 1), RowSense::le);
  lp.is_free.assign(d + 1, true);
  for (int t = 0; t <= n; ++t) {
    for (int i = 0; i <= d; ++i) {
      lp.A(2 * t, i) = fam.normalized(i, t);
      lp.A(2 * t + 1, i) = -fam.normalized(i, t);
    }
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw SolverError("rho_finite: LP " + to_string(sol.status));
  return {sol.objective, sol.x};
}

namespace {

// Exchange method: solve on a subset of the grid, add the most violated
// points, repeat. Terminates with the optimum of the full sampled program.
// Variables are Chebyshev coefficients on [lo, 1] for conditioning.
RhoResult limit_program(const Eigen::VectorXd& xs, double lo, int d, int k) {
  const Eigen::Index p = xs.size();
  const double half = (1.0 - lo) / 2.0, mid = (1.0 + lo) / 2.0;
  // M(i, j): coefficient of x^j in T_i((x - mid) / half).
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int i = 0; i <= d; ++i) {
    const auto t = chebyshev_coeffs(i);
    for (int j = 0; j <= i; ++j) {
      if (t[j] == 0.0) continue;
      // ((x - mid)/half)^j expanded
      for (int l = 0; l <= j; ++l)
        M(i, l) += t[j] * std::exp(log_binomial(j, l)) * std::pow(-mid, j - l) / std::pow(half, j);
    }
  }
  Eigen::MatrixXd V(p, d + 1);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double s = std::clamp((xs(j) - mid) / half, -1.0, 1.0);
    for (int i = 0; i <= d; ++i) V(j, i) = std::cos(i * std::acos(s));
  }
  std::vector<Eigen::Index> active;
  const Eigen::Index start = std::min<Eigen::Index>(p, 8 * (d + 1));
  for (Eigen::Index s = 0; s < start; ++s)
    active.push_back(s * (p - 1) / std::max<Eigen::Index>(start - 1, 1));
  RhoResult best{0.0, Eigen::VectorXd::Zero(d + 1)};
  for (int round = 0; round < 200; ++round) {
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    const auto m = static_cast<Eigen::Index>(active.size());
    // Dual form: min sum(u + v)  s.t.  V_S'(u - v) = M e_k; its row
    // multipliers are the Chebyshev coefficients.
    LinearProgram lp;
    lp.maximize = false;
    lp.c = Eigen::VectorXd::Ones(2 * m);
    lp.A.resize(d + 1, 2 * m);
    for (Eigen::Index r = 0; r < m; ++r) {
      lp.A.col(2 * r) = V.row(active[r]).transpose();
      lp.A.col(2 * r + 1) = -V.row(active[r]).transpose();
    }
    lp.b = M.col(k);
    lp.sense.assign(d + 1, RowSense::eq);
    const LpSolution dual = solve_lp(lp);
    if (dual.status != LpStatus::optimal)
      throw SolverError("rho_infinity_grid: LP " + to_string(dual.status));
    struct {
      double objective;
      Eigen::VectorXd x;
    } sol{dual.objective, dual.duals};
    const Eigen::VectorXd vals = (V * sol.x).cwiseAbs();
    // The subset optimum bounds the sampled optimum from above.
    best = {sol.objective, M.transpose() * sol.x};
    std::vector<Eigen::Index> fresh;
    for (Eigen::Index j = 0; j < p; ++j) {
      const bool peak = (j == 0 || vals(j) >= vals(j - 1)) && (j + 1 == p || vals(j) >= vals(j + 1));
      if (peak && vals(j) > 1.0 + 1e-10 && !std::binary_search(active.begin(), active.end(), j))
        fresh.push_back(j);
    }
    if (fresh.empty()) return best;
    // A violator next to an active sample replaces it; nearly equal rows
    // would make the basis ill-conditioned.
    for (Eigen::Index j : fresh) {
      auto it = std::lower_bound(active.begin(), active.end(), j);
      if (it != active.end() && *it == j + 1) *it = j;
      else if (it != active.begin() && *(it - 1) == j - 1) *(it - 1) = j;
      else active.push_back(j);
      std::sort(active.begin(), active.end());
    }
  }
  return best;
}

}  // namespace

RhoResult rho_infinity_grid(int d, int k, int q, int points) {
  if (q < 2) throw DomainError("rho_infinity_grid: q must be at least 2");
  if (k < 0 || d < k) throw DomainError("rho_infinity_grid: need 0 <= k <= d");
  if (points < d + 1) throw DomainError("rho_infinity_grid: too few grid points");
  Eigen::VectorXd xs(points);
  const double slope = q / (q - 1.0);
  for (int j = 0; j < points; ++j) xs(j) = 1.0 - slope * j / (points - 1.0);
  return limit_program(xs, 1.0 - slope, d, k);
}

double gamma_qary(int d, int q, int points) {
  if (q == 2) return gamma_d(d);
  double g = 0.0;
  for (int k = 0; k <= d; ++k) g = std::max(g, rho_infinity_grid(d, k, q, points).value);
  return g;
}

GammaTable gamma_table(int d, int n_max, int q) {
  GammaTable tab;
  tab.d = d;
  tab.q = q;
  for (int k = 0; k <= d; ++k)
    tab.rho_infinity.push_back(q == 2 ? rho_infinity(d, k) : rho_infinity_grid(d, k, q).value);
  tab.gamma_d = *std::max_element(tab.rho_infinity.begin(), tab.rho_infinity.end());
  tab.C_d = d * (d + 1.0) * tab.gamma_d;
  for (int n = std::max(d, 1); n <= n_max; ++n)
    for (int k = 0; k <= d; ++k) tab.rho_finite[{n, k}] = rho_finite(n, d, k, q).value;
  return tab;
}

}  // namespace cubesos
