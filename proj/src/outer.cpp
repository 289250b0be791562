#include "cubesos/outer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"
#include "cubesos/inner.hpp"

namespace cubesos {

namespace {

void wht_rows(std::vector<double>& a, std::size_t W, const std::vector<std::size_t>* rows) {
  auto one = [&](std::size_t row) {
    double* p = a.data() + row * W;
    for (std::size_t h = 1; h < W; h <<= 1)
      for (std::size_t i = 0; i < W; i += h << 1)
        for (std::size_t j = i; j < i + h; ++j) {
          double x = p[j], y = p[j + h];
          p[j] = x + y;
          p[j + h] = x - y;
        }
  };
  if (rows)
    for (std::size_t row : *rows) one(row);
  else
    for (std::size_t row = 0; row < W; ++row) one(row);
}

void wht_cols(std::vector<double>& a, std::size_t W) {
  for (std::size_t h = 1; h < W; h <<= 1)
    for (std::size_t i = 0; i < W; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        double* p = a.data() + j * W;
        double* q = a.data() + (j + h) * W;
        for (std::size_t col = 0; col < W; ++col) {
          double x = p[col], y = q[col];
          p[col] = x + y;
          q[col] = x - y;
        }
      }
}

}  // namespace

void walsh_hadamard_2d(std::vector<double>& a, int n) {
  const std::size_t W = std::size_t{1} << n;
  if (a.size() != W * W) throw DimensionError("2D transform needs a 2^n x 2^n array");
  wht_rows(a, W, nullptr);
  wht_cols(a, W);
}

// ---------------------------------------------------------------- constraint map

namespace {

int pair_index(int i, int j, int k) {
  if (i > j) std::swap(i, j);
  // rows 0..i-1 contribute k, k-1, ...
  return i * k - i * (i - 1) / 2 + (j - i);
}

}  // namespace

int XorConstraintMap::basic_index(int pos, int i, int j) const {
  return pos * (k_ * (k_ + 1) / 2) + pair_index(i, j, k_);
}

XorConstraintMap::XorConstraintMap(int n, std::vector<Mask> basis, int k, int two_r)
    : n_(n), k_(k), basis_(std::move(basis)) {
  if (k < 1) throw DimensionError("block size must be positive");
  if (n > 30) throw CapExceeded("XorConstraintMap: n too large");
  const std::size_t N = basis_.size();
  dim_ = static_cast<Eigen::Index>(N) * k;

  cpos_.assign(std::size_t{1} << n, -1);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      Mask c = basis_[a] ^ basis_[b];
      if (weight(c) <= two_r) cpos_[c] = 0;
    }
  for (Mask c = 0; c < cpos_.size(); ++c)
    if (cpos_[c] == 0) reach_.push_back(c);
  std::stable_sort(reach_.begin(), reach_.end(), [](Mask x, Mask y) { return weight(x) < weight(y); });
  for (std::size_t p = 0; p < reach_.size(); ++p) cpos_[reach_[p]] = static_cast<int>(p);

  for (Mask c : reach_)
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) keys_.push_back({c, i, j});

  const std::size_t D = dim_;
  entry_.assign(D * D, -1);
  basic_norms_ = Eigen::VectorXd::Zero(keys_.size());
  for (std::size_t u = 0; u < D; ++u)
    for (std::size_t v = 0; v < D; ++v) {
      int pos = cpos_[basis_[u / k] ^ basis_[v / k]];
      if (pos < 0) continue;
      int i = u % k, j = v % k;
      int bi = basic_index(pos, i, j);
      entry_[u * D + v] = bi;
      basic_norms_(bi) += i == j ? 1.0 : 0.25;
    }
  basic_norms_ = basic_norms_.cwiseSqrt();

  for (std::size_t bi = 0; bi < keys_.size(); ++bi)
    if (!(keys_[bi].c == 0 && keys_[bi].i == keys_[bi].j)) rows_.push_back({int(bi), -1, 0.0});
  if (cpos_[0] >= 0)
    for (int i = 0; i + 1 < k; ++i)
      rows_.push_back({basic_index(cpos_[0], i, i), basic_index(cpos_[0], i + 1, i + 1), -1.0});
}

Eigen::VectorXd XorConstraintMap::apply_basic(const Eigen::MatrixXd& X) const {
  const std::size_t D = dim_;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(keys_.size());
  for (std::size_t v = 0; v < D; ++v)
    for (std::size_t u = 0; u < D; ++u) {
      int bi = entry_[u * D + v];
      if (bi < 0) continue;
      out(bi) += (u % k_ == v % k_ ? 1.0 : 0.5) * X(u, v);
    }
  return out;
}

Eigen::VectorXd XorConstraintMap::apply(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd b = apply_basic(X);
  Eigen::VectorXd out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    out(r) = b(rows_[r].first) + (rows_[r].second >= 0 ? rows_[r].sign_second * b(rows_[r].second) : 0.0);
  return out;
}

Eigen::MatrixXd XorConstraintMap::adjoint(const Eigen::VectorXd& y) const {
  Eigen::VectorXd yb = Eigen::VectorXd::Zero(keys_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    yb(rows_[r].first) += y(r);
    if (rows_[r].second >= 0) yb(rows_[r].second) += rows_[r].sign_second * y(r);
  }
  const std::size_t D = dim_;
  Eigen::MatrixXd S(D, D);
  for (std::size_t v = 0; v < D; ++v)
    for (std::size_t u = 0; u < D; ++u) {
      int bi = entry_[u * D + v];
      S(u, v) = bi < 0 ? 0.0 : (u % k_ == v % k_ ? 1.0 : 0.5) * yb(bi);
    }
  return S;
}

Eigen::VectorXd XorConstraintMap::norms() const {
  Eigen::VectorXd out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    double a = basic_norms_(rows_[r].first);
    double b = rows_[r].second >= 0 ? basic_norms_(rows_[r].second) : 0.0;
    out(r) = std::sqrt(a * a + b * b);
  }
  return out;
}

Eigen::MatrixXd XorConstraintMap::schur(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const {
  Eigen::MatrixXd Mb = schur_basic(U, V);
  const std::size_t m = rows_.size();
  Eigen::MatrixXd M(m, m);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t r = 0; r < m; ++r) {
      const Row &R = rows_[r], &S = rows_[s];
      double v = Mb(R.first, S.first);
      if (R.second >= 0) v += R.sign_second * Mb(R.second, S.first);
      if (S.second >= 0) {
        v += S.sign_second * Mb(R.first, S.second);
        if (R.second >= 0) v += R.sign_second * S.sign_second * Mb(R.second, S.second);
      }
      M(r, s) = v;
    }
  return M;
}

Eigen::MatrixXd XorConstraintMap::schur_basic(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const {
  const double N = static_cast<double>(basis_.size());
  const double transform_cost = 6.0 * n_ * std::ldexp(1.0, 2 * n_) * k_ * k_;
  if (k_ == 1 && N * N * N * N < transform_cost) return schur_basic_direct(U, V);
  return schur_basic_transform(U, V);
}

Eigen::MatrixXd XorConstraintMap::schur_basic_direct(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) const {
  if (k_ != 1) throw DomainError("direct Schur assembly supports k = 1 only");
  const std::size_t N = basis_.size(), R = reach_.size();
  std::vector<int> ptab(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) ptab[a * N + b] = cpos_[basis_[a] ^ basis_[b]];
  // sum over a,b,e,f with c = a^b, d = e^f of U(b,e) V(f,a)
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(R, R);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t f = 0; f < N; ++f) {
      const double vfa = V(f, a);
      if (vfa == 0.0) continue;
      const int* drow = &ptab[f * N];
      for (std::size_t b = 0; b < N; ++b) {
        const int c = ptab[a * N + b];
        if (c < 0) continue;
        const double* ub = U.col(b).data();
        for (std::size_t e = 0; e < N; ++e) {
          const int d = drow[e];
          if (d >= 0) M(c, d) += ub[e] * vfa;
        }
      }
    }
  return M;
}

Eigen::MatrixXd XorConstraintMap::schur_basic_transform(const Eigen::MatrixXd& U,
                                                       const Eigen::MatrixXd& V) const {
  const std::size_t W = std::size_t{1} << n_, N = basis_.size(), R = reach_.size();
  const int k = k_;
  std::vector<std::size_t> rows(basis_.begin(), basis_.end());
  auto embed = [&](const Eigen::MatrixXd& X, int alpha, int beta) {
    std::vector<double> t(W * W, 0.0);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) t[basis_[a] * W + basis_[b]] = X(a * k + alpha, b * k + beta);
    wht_rows(t, W, &rows);
    wht_cols(t, W);
    return t;
  };
  std::vector<std::vector<double>> Uh(k * k), Vh(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Uh[a * k + b] = embed(U, a, b);
      Vh[a * k + b] = embed(V, a, b);
    }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor Mb = RowMajor::Zero(keys_.size(), keys_.size());
  const double norm = std::ldexp(1.0, -2 * n_);
  std::vector<double> work;
  // Tr((A_c (x) P) U (A_d (x) Q) V) = sum P_{p p'} Q_{s s'} Tr(A_c U^{p's} A_d V^{s'p})
  for (int p = 0; p < k; ++p)
    for (int pp = 0; pp < k; ++pp)
      for (int s = 0; s < k; ++s)
        for (int ss = 0; ss < k; ++ss) {
          const double cp = p == pp ? 1.0 : 0.5, cq = s == ss ? 1.0 : 0.5;
          std::vector<double>& u = Uh[pp * k + s];
          const std::vector<double>& v = Vh[p * k + ss];
          std::vector<double>* out;
          if (k == 1) {
            out = &u;  // U transform is not needed again
          } else {
            work.resize(W * W);
            out = &work;
          }
          for (std::size_t z = 0; z < W * W; ++z) (*out)[z] = u[z] * v[z];
          walsh_hadamard_2d(*out, n_);
          const double scale = cp * cq * norm;
          const int pi = pair_index(p, pp, k), si = pair_index(s, ss, k);
          const int P = k * (k + 1) / 2;
          for (std::size_t cpos = 0; cpos < R; ++cpos) {
            const double* row = out->data() + reach_[cpos] * W;
            for (std::size_t dpos = 0; dpos < R; ++dpos) Mb(cpos * P + pi, dpos * P + si) += scale * row[reach_[dpos]];
          }
        }
  return Eigen::MatrixXd(Mb);
}

Eigen::VectorXd XorConstraintMap::rhs(const std::vector<std::vector<double>>& fhat) const {
  if (fhat.size() != static_cast<std::size_t>(k_ * k_)) throw DimensionError("need k*k Fourier tables");
  Eigen::VectorXd b(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Key& a = keys_[rows_[r].first];
    b(r) = fhat[a.i * k_ + a.j][a.c];
    if (rows_[r].second >= 0) {
      const Key& c = keys_[rows_[r].second];
      b(r) += rows_[r].sign_second * fhat[c.i * k_ + c.j][c.c];
    }
  }
  return b;
}

// ---------------------------------------------------------------- hierarchies

namespace {

OuterBoundResult solve_gram(int n, const std::vector<std::vector<double>>& fhat, int k, int r,
                            const SdpOptions& sopt) {
  OuterBoundResult res;
  res.r = r;
  res.k = k;
  res.solved_order = r;
  res.basis = low_weight_masks(n, std::min(r, n));
  const Eigen::Index D = static_cast<Eigen::Index>(res.basis.size()) * k;
  if (D > config().sdp_max_dim)
    throw CapExceeded("Gram matrix dimension " + std::to_string(D) + " exceeds SDP cap " +
                      std::to_string(config().sdp_max_dim));
  double trace0 = 0.0;
  for (int i = 0; i < k; ++i) trace0 += fhat[i * k + i][0];

  XorConstraintMap map(n, res.basis, k, 2 * r);
  Eigen::VectorXd b = map.rhs(fhat);
  if (b.isZero(0.0)) {
    res.gram = Eigen::MatrixXd::Zero(D, D);
    res.value = res.moment_value = trace0 / k;
    return res;
  }
  SdpSolution sol = solve_sdp(Eigen::MatrixXd::Identity(D, D), map, b, sopt);
  res.status = sol.status;
  res.gap = sol.gap;
  res.primal_infeasibility = sol.primal_infeasibility;
  res.dual_infeasibility = sol.dual_infeasibility;
  res.iterations = sol.iterations;
  if (sol.status != SdpStatus::optimal)
    throw SolverError("outer SDP (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                      ") ended with status " + to_string(sol.status) + ", gap " +
                      std::to_string(sol.gap) + ", primal infeasibility " +
                      std::to_string(sol.primal_infeasibility));
  res.gram = std::move(sol.X);
  res.value = (trace0 - sol.primal_objective) / k;
  res.moment_value = (trace0 - sol.dual_objective) / k;
  return res;
}

void check_order(int r, int d) {
  if (r < 0) throw DomainError("order r must be nonnegative");
  if (2 * r < d)
    throw DomainError("order r=" + std::to_string(r) + " cannot reach degree d=" + std::to_string(d) +
                      " (need 2r >= d)");
}

OuterBoundResult lift(OuterBoundResult low, int n, int r) {
  std::vector<Mask> basis = low_weight_masks(n, std::min(r, n));
  const Eigen::Index D = static_cast<Eigen::Index>(basis.size()) * low.k;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(D, D);
  // lower-order basis is a prefix of the higher-order one
  G.topLeftCorner(low.gram.rows(), low.gram.cols()) = low.gram;
  low.gram = std::move(G);
  low.basis = std::move(basis);
  low.r = r;
  return low;
}

}  // namespace

OuterBoundResult outer_cube(const CubePolynomial& f, int r, const OuterOptions& opt) {
  const int n = f.n(), d = f.degree();
  require_within_cap(n, "outer_cube");
  check_order(r, d);
  std::vector<std::vector<double>> fhat{fourier_table(f)};
  if (opt.early_exact) {
    const double fmin = brute_force_min(f).value;
    const double tol = opt.exact_tol * std::max(1.0, sup_norm(f));
    for (int low = (d + 1) / 2; low < std::min(r, n); ++low) {
      OuterBoundResult res = solve_gram(n, fhat, 1, low, opt.sdp);
      if (fmin - res.value <= tol) return lift(std::move(res), n, r);
    }
  }
  return solve_gram(n, fhat, 1, r, opt.sdp);
}

OuterBoundResult outer_matrix(const MatrixPolynomial& F, int r, const OuterOptions& opt) {
  const int n = F.n(), k = F.k();
  require_within_cap(n, "outer_matrix");
  check_order(r, F.degree());
  std::vector<std::vector<double>> fhat(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) fhat[i * k + j] = fourier_table(F(i, j));
  if (opt.early_exact) {
    const double fmin = brute_force_min(F).value;
    const double tol = opt.exact_tol * std::max(1.0, sup_norm(F));
    for (int low = (F.degree() + 1) / 2; low < std::min(r, n); ++low) {
      OuterBoundResult res = solve_gram(n, fhat, k, low, opt.sdp);
      if (fmin - res.value <= tol) return lift(std::move(res), n, r);
    }
  }
  return solve_gram(n, fhat, k, r, opt.sdp);
}

namespace {

double min_eigenvalue(const Eigen::MatrixXd& G) {
  if (G.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// s_ij(x) = sum_{a,b} G[(a,i),(b,j)] chi_{a^b}(x) for every x.
std::vector<double> reconstruct(const OuterBoundResult& res, int n, int i, int j) {
  const std::size_t N = res.basis.size();
  const int k = res.k;
  std::vector<double> h(std::size_t{1} << n, 0.0);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) h[res.basis[a] ^ res.basis[b]] += res.gram(a * k + i, b * k + j);
  walsh_hadamard(h);
  return h;
}

}  // namespace

SosVerification verify_sos_certificate(const OuterBoundResult& res, const CubePolynomial& f) {
  require_within_cap(f.n(), "verify_sos_certificate");
  if (res.k != 1) throw DimensionError("scalar verification of a matrix certificate");
  SosVerification v;
  std::vector<double> s = reconstruct(res, f.n(), 0, 0);
  std::vector<double> fv = value_table(f);
  for (std::size_t x = 0; x < fv.size(); ++x) v.max_residual = std::max(v.max_residual, std::abs(s[x] - (fv[x] - res.value)));
  v.min_eigenvalue = min_eigenvalue(res.gram);
  v.psd = v.min_eigenvalue >= -1e-8;
  return v;
}

SosVerification verify_sos_certificate(const OuterBoundResult& res, const MatrixPolynomial& F) {
  require_within_cap(F.n(), "verify_sos_certificate");
  if (res.k != F.k()) throw DimensionError("block size mismatch");
  SosVerification v;
  for (int i = 0; i < F.k(); ++i)
    for (int j = 0; j < F.k(); ++j) {
      std::vector<double> s = reconstruct(res, F.n(), i, j);
      std::vector<double> fv = value_table(F(i, j));
      for (std::size_t x = 0; x < fv.size(); ++x)
        v.max_residual = std::max(v.max_residual, std::abs(s[x] - (fv[x] - (i == j ? res.value : 0.0))));
    }
  v.min_eigenvalue = min_eigenvalue(res.gram);
  v.psd = v.min_eigenvalue >= -1e-8;
  return v;
}

}  // namespace cubesos
