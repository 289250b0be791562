#include "cubesos/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"

namespace cubesos {

CubePolynomial maxcut_instance(const Eigen::MatrixXd& w) {
  const auto n = static_cast<int>(w.rows());
  if (w.cols() != n) throw DimensionError("maxcut_instance: weights must be square");
  for (int i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) throw DomainError("maxcut_instance: nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (std::abs(w(i, j) - w(j, i)) > 1e-12) throw DomainError("maxcut_instance: weights not symmetric");
      if (w(i, j) < 0.0) throw DomainError("maxcut_instance: negative weight");
    }
  }
  CubePolynomial f(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w(i, j) == 0.0) continue;
      // (x_i - x_j)^2 = x_i + x_j - 2 x_i x_j on the cube
      f.add_term(Mask{1} << i, -w(i, j));
      f.add_term(Mask{1} << j, -w(i, j));
      f.add_term((Mask{1} << i) | (Mask{1} << j), 2.0 * w(i, j));
    }
  }
  return f;
}

CubePolynomial maxcut_complete(int n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(n, n);
  w.diagonal().setZero();
  return maxcut_instance(w);
}

CubePolynomial stable_set_instance(const std::vector<std::pair<int, int>>& edges, int n) {
  if (n < 0 || n > 63) throw DimensionError("stable_set_instance: n out of range");
  CubePolynomial f(n);
  for (int i = 0; i < n; ++i) f.add_term(Mask{1} << i, -1.0);
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("stable_set_instance: vertex out of range");
    if (i == j) throw DomainError("stable_set_instance: self-loop");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      throw DomainError("stable_set_instance: repeated edge");
    f.add_term((Mask{1} << i) | (Mask{1} << j), 1.0);
  }
  return f;
}

CubePolynomial hamming_weight(int n) {
  CubePolynomial f(n);
  for (int i = 0; i < n; ++i) f.add_term(Mask{1} << i, 1.0);
  return f;
}

namespace {

double draw(std::mt19937_64& rng, CoeffDist dist) {
  if (dist == CoeffDist::gaussian) return std::normal_distribution<double>(0.0, 1.0)(rng);
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

CubePolynomial raw_poly(int n, int d, std::mt19937_64& rng, CoeffDist dist) {
  if (n < 0 || n > 30) throw DimensionError("random_poly: n out of range");
  if (d < 0 || d > n) throw DomainError("random_poly: need 0 <= d <= n");
  CubePolynomial f(n);
  bool top = d == 0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (weight(s) > d) continue;
    double c = draw(rng, dist);
    while (weight(s) == d && c == 0.0) c = draw(rng, dist);
    f.add_term(s, c);
    top = top || weight(s) == d;
  }
  return f;
}

}  // namespace

CubePolynomial random_poly(int n, int d, std::uint64_t seed, const RandomPolyOptions& opt) {
  std::mt19937_64 rng(seed);
  CubePolynomial f = raw_poly(n, d, rng, opt.dist);
  if (opt.normalize) {
    const double s = sup_norm(f);
    if (s > 0.0) f *= 1.0 / s;
  }
  return f;
}

MatrixPolynomial random_matrix_poly(int n, int d, int k, std::uint64_t seed) {
  if (k < 1) throw DimensionError("random_matrix_poly: k must be positive");
  std::mt19937_64 rng(seed);
  MatrixPolynomial F(n, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) F.set(i, j, raw_poly(n, d, rng, CoeffDist::uniform));
  const double s = sup_norm(F);
  if (s > 0.0) {
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) F.set(i, j, F(i, j) * (1.0 / s));
  }
  return F;
}

double maxcut_value(const Eigen::MatrixXd& w) {
  const auto n = static_cast<int>(w.rows());
  require_within_cap(n, "maxcut_value");
  double best = 0.0;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    double cut = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((x >> i) ^ (x >> j)) & 1) cut += w(i, j);
    best = std::max(best, cut);
  }
  return best;
}

int independence_number(const std::vector<std::pair<int, int>>& edges, int n) {
  require_within_cap(n, "independence_number");
  int best = 0;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    bool ok = true;
    for (auto [i, j] : edges)
      if (((x >> i) & 1) && ((x >> j) & 1)) {
        ok = false;
        break;
      }
    if (ok) best = std::max(best, weight(x));
  }
  return best;
}

}  // namespace cubesos
