#include "cubesos/inner.hpp"

#include <algorithm>
#include <cmath>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"

namespace cubesos {

double Univariate::operator()(double t) const {
  double s = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * t + *it;
  return s;
}

int Univariate::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i > 0; --i)
    if (coeffs[i] != 0.0) return i;
  return 0;
}

std::vector<Mask> low_weight_masks(int n, int r) {
  if (n > 30) throw CapExceeded("low_weight_masks: n too large");
  std::vector<Mask> out;
  for (Mask a = 0; a < (Mask{1} << n); ++a)
    if (weight(a) <= r) out.push_back(a);
  std::stable_sort(out.begin(), out.end(),
                   [](Mask a, Mask b) { return weight(a) < weight(b); });
  return out;
}

EigenPair smallest_eigenpair(const Eigen::MatrixXd& A) {
  const Eigen::Index N = A.rows();
  if (N == 0) throw DimensionError("empty matrix");
  EigenPair ep;
  if (N <= 400) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
    ep.value = es.eigenvalues()(0);
    ep.vector = es.eigenvectors().col(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
    ep.value = es.eigenvalues()(0);
    // inverse iteration with a shift just below the eigenvalue
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::MatrixXd S = A;
    S.diagonal().array() -= ep.value - 1e-10 * scale;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(N) + Eigen::VectorXd::LinSpaced(N, 0.0, 1.0);
    v.normalize();
    for (int it = 0; it < 3; ++it) {
      v = ldlt.solve(v);
      v.normalize();
    }
    ep.vector = v;
  }
  ep.residual = (A * ep.vector - ep.value * ep.vector).norm();
  return ep;
}

namespace {

InnerBoundResult finish(const Eigen::MatrixXd& A, int r) {
  EigenPair ep = smallest_eigenpair(A);
  InnerBoundResult res;
  res.value = ep.value;
  res.order = r;
  res.density_coeffs = ep.vector;
  res.residual = ep.residual;
  return res;
}

}  // namespace

InnerBoundResult inner_univariate_values(const std::vector<double>& g, const DiscreteMeasure& mu,
                                         int r) {
  if (static_cast<int>(g.size()) != mu.n + 1) throw DimensionError("g needs n+1 values");
  if (r < 0 || r > mu.n) throw DomainError("order r outside [0, n]");
  KrawtchoukFamily fam(mu.n, mu.q, r);
  const Eigen::MatrixXd& phi = fam.scaled_orthonormal();
  Eigen::Map<const Eigen::VectorXd> gv(g.data(), mu.n + 1);
  Eigen::MatrixXd A = phi * gv.asDiagonal() * phi.transpose();
  return finish(A, r);
}

InnerBoundResult inner_univariate(const Univariate& g, const DiscreteMeasure& mu, int r) {
  std::vector<double> vals(mu.n + 1);
  for (int t = 0; t <= mu.n; ++t) vals[t] = g(t);
  return inner_univariate_values(vals, mu, r);
}

InnerBoundResult inner_cube(const CubePolynomial& f, int r) {
  const int n = f.n();
  require_within_cap(n, "inner_cube");
  if (r < 0 || r > n) throw DomainError("order r outside [0, n]");
  std::vector<double> fh = fourier_table(f);
  std::vector<Mask> B = low_weight_masks(n, r);
  const Eigen::Index N = B.size();
  Eigen::MatrixXd A(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) A(i, j) = A(j, i) = fh[B[i] ^ B[j]];
  return finish(A, r);
}

std::vector<double> symmetrize(const CubePolynomial& f) {
  const int n = f.n();
  std::vector<double> by_weight(n + 1, 0.0);
  for (const auto& [s, c] : f.terms()) by_weight[weight(s)] += c;
  std::vector<double> F(n + 1, 0.0);
  for (int t = 0; t <= n; ++t)
    for (int k = 0; k <= t; ++k)
      if (by_weight[k] != 0.0)
        F[t] += by_weight[k] * std::exp(log_binomial(t, k) - log_binomial(n, k));
  return F;
}

InnerBoundResult inner_cube_symmetrized(const CubePolynomial& f, int r) {
  require_within_cap(f.n(), "inner_cube_symmetrized");
  if (r < 0 || r > f.n()) throw DomainError("order r outside [0, n]");
  return inner_univariate_values(symmetrize(f), DiscreteMeasure::krawtchouk(f.n(), 2), r);
}

InnerBoundResult inner_matrix(const MatrixPolynomial& F, int r) {
  const int n = F.n(), k = F.k();
  require_within_cap(n, "inner_matrix");
  if (r < 0 || r > n) throw DomainError("order r outside [0, n]");
  if (k < 1) throw DimensionError("matrix polynomial has no entries");
  std::vector<std::vector<double>> fh(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) fh[i * k + j] = fourier_table(F(i, j));
  std::vector<Mask> B = low_weight_masks(n, r);
  const Eigen::Index N = static_cast<Eigen::Index>(B.size()) * k;
  Eigen::MatrixXd A(N, N);
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b)
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A(a * k + i, b * k + j) = fh[i * k + j][B[a] ^ B[b]];
  return finish(A, r);
}

}  // namespace cubesos
