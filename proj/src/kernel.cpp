#include "cubesos/kernel.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"
#include "cubesos/gamma.hpp"
#include "cubesos/inner.hpp"
#include "cubesos/instances.hpp"
#include "cubesos/krawtchouk.hpp"

namespace cubesos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void closed_form(KernelSpec& s) {
  if (s.r + 1 > s.n) return;
  const double xi = least_root(s.n, 2, s.r + 1);
  s.closed_form = 2.0 * C_d(s.d) * xi / s.n;
  s.closed_form_applicable = s.d * (s.d + 1) * xi / s.n <= 0.5;
}

}  // namespace

KernelSpec choose_kernel(int n, int d, int r) {
  if (n < 1) throw DimensionError("choose_kernel: n must be positive");
  if (d < 0 || d > n) throw DomainError("choose_kernel: need 0 <= d <= n");
  if (r < 0 || r > n || 2 * r < d) throw DomainError("choose_kernel: need d <= 2r and r <= n");

  KrawtchoukFamily fam(n, 2, n);
  std::vector<double> g(n + 1, static_cast<double>(d));
  for (int t = 0; t <= n; ++t)
    for (int i = 1; i <= d; ++i) g[t] -= fam.normalized(i, t);

  const InnerBoundResult ib = inner_univariate_values(g, fam.measure(), r);
  if (!std::isfinite(ib.value) || ib.density_coeffs.size() != r + 1)
    throw SolverError("choose_kernel: eigen-solver failure");

  KernelSpec s;
  s.n = n;
  s.d = d;
  s.r = r;
  s.u_coeffs = ib.density_coeffs / ib.density_coeffs.norm();
  if (s.u_coeffs(0) < 0) s.u_coeffs = -s.u_coeffs;

  // omega(t) u^2(t) = (sum_k c_k sqrt(omega(t)) p_k(t))^2
  const Eigen::MatrixXd& phi = fam.scaled_orthonormal();
  const Eigen::VectorXd su = phi.topRows(r + 1).transpose() * s.u_coeffs;
  const Eigen::VectorXd wu2 = su.array().square();
  s.u_sq.resize(n + 1);
  for (int t = 0; t <= n; ++t) s.u_sq(t) = wu2(t) / fam.measure()(t);

  s.lambda.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    double acc = 0.0;
    for (int t = 0; t <= n; ++t) acc += fam.normalized(i, t) * wu2(t);
    s.lambda(i) = acc;
  }

  s.lambda_tilde = 0.0;
  s.Lambda = 0.0;
  for (int i = 1; i <= d; ++i) {
    s.lambda_tilde += 1.0 - s.lambda(i);
    s.Lambda = s.lambda(i) > 0.0 ? s.Lambda + std::abs(1.0 / s.lambda(i) - 1.0) : kInf;
  }
  s.delta = d == 0 ? 0.0 : gamma_d(d) * s.Lambda;
  closed_form(s);
  return s;
}

Eigen::VectorXd u_sq_from_coeffs(int n, const Eigen::VectorXd& c) {
  if (c.size() < 1 || c.size() > n + 1) throw DimensionError("u_sq_from_coeffs: bad coefficient count");
  KrawtchoukFamily fam(n, 2, static_cast<int>(c.size()) - 1);
  const Eigen::VectorXd su = fam.scaled_orthonormal().transpose() * c;
  Eigen::VectorXd out(n + 1);
  for (int t = 0; t <= n; ++t) out(t) = su(t) * su(t) / fam.measure()(t);
  return out;
}

double predicted_Lambda(double lt, bool sharper) {
  if (lt <= 0.5 && !sharper) return 2.0 * lt;
  if (sharper && lt < 1.0) return lt / (1.0 - lt);
  return kInf;
}

CubePolynomial funk_hecke_apply(const KernelSpec& spec, const CubePolynomial& p, bool invert) {
  if (p.n() != spec.n) throw DimensionError("funk_hecke_apply: dimension mismatch");
  HarmonicDecomposition h = harmonic_parts(p);
  FourierPolynomial out(p.n());
  for (std::size_t k = 0; k < h.parts.size(); ++k) {
    if (h.parts[k].is_zero()) continue;
    double lam = spec.lambda(static_cast<Eigen::Index>(k));
    if (invert) {
      if (std::abs(lam) < 1e-14)
        throw SingularOperator("funk_hecke_apply: lambda_" + std::to_string(k) + " vanishes");
      lam = 1.0 / lam;
    }
    for (const auto& [a, c] : h.parts[k].coeffs()) out.add(a, lam * c);
  }
  return inverse_fourier(out);
}

std::vector<double> kernel_apply_direct(const KernelSpec& spec, const CubePolynomial& p) {
  const int n = spec.n;
  if (p.n() != n) throw DimensionError("kernel_apply_direct: dimension mismatch");
  require_within_cap(n, "kernel_apply_direct");
  const std::vector<double> pv = value_table(p);
  const std::size_t N = pv.size();
  const double scale = std::ldexp(1.0, -n);
  std::vector<double> out(N, 0.0);
  parallel_for(N, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t x = lo; x < hi; ++x) {
      double acc = 0.0;
      for (std::size_t y = 0; y < N; ++y) acc += pv[y] * spec.u_sq(weight(x ^ y));
      out[x] = scale * acc;
    }
  });
  return out;
}

SosCubeCertificate certify(const CubePolynomial& f, int r, const CertifyOptions& opt) {
  const int n = f.n();
  require_within_cap(n, "certify");
  const int d = f.degree() < 0 ? 0 : f.degree();

  const MinResult mn = brute_force_min(f);
  const std::vector<double> vals = value_table(f);
  double fmax = vals.front();
  for (double v : vals) fmax = std::max(fmax, v);

  SosCubeCertificate cert;
  cert.n = n;
  cert.r = r;
  cert.translate = mn.argmin;
  cert.offset = mn.value;
  cert.scale = fmax - mn.value > 0.0 ? fmax - mn.value : 1.0;

  // ft(x) = (f(x XOR x0) - fmin) / scale; ft(0) = 0, 0 <= ft <= 1.
  CubePolynomial ft = translate_to_zero(f, mn.argmin);
  ft.add_term(0, -mn.value);
  ft *= 1.0 / cert.scale;

  const KernelSpec spec = choose_kernel(n, d, r);
  cert.u_coeffs = spec.u_coeffs;
  cert.u_sq = spec.u_sq;
  cert.lambda_tilde = spec.lambda_tilde;
  cert.Lambda = spec.Lambda;
  cert.closed_form = spec.closed_form;
  cert.closed_form_applicable = spec.closed_form_applicable;
  if (spec.lambda_tilde >= 1.0 || !std::isfinite(spec.delta))
    throw NoCertificate("certify: no kernel certificate at r = " + std::to_string(r),
                        spec.lambda_tilde);
  cert.delta = spec.delta;

  // h = K^-1 (ft + delta); lambda_0 = 1 leaves the constant alone.
  std::vector<double> h = fourier_table(ft);
  for (std::size_t a = 0; a < h.size(); ++a) {
    if (h[a] == 0.0) continue;
    const double lam = spec.lambda(weight(a));
    if (std::abs(lam) < 1e-14) throw SingularOperator("certify: singular kernel operator");
    h[a] /= lam;
  }
  h[0] += cert.delta;
  walsh_hadamard(h);

  const double inv = std::ldexp(1.0, -n);
  cert.weights.resize(h.size());
  for (std::size_t y = 0; y < h.size(); ++y) {
    double w = inv * h[y];
    if (w < 0.0) {
      if (w < -opt.clamp_tol) throw CertificationFailed("certify: negative weight", y, w);
      w = 0.0;
    }
    cert.weights[y] = w;
  }

  // sum_y w_y U(x XOR y) as an XOR convolution.
  std::vector<double> U(h.size()), W = cert.weights;
  for (std::size_t z = 0; z < U.size(); ++z) U[z] = spec.u_sq(weight(z));
  walsh_hadamard(U);
  walsh_hadamard(W);
  for (std::size_t i = 0; i < U.size(); ++i) U[i] *= W[i] * inv;
  walsh_hadamard(U);
  const std::vector<double> ftv = value_table(ft);
  double res = 0.0;
  for (std::size_t x = 0; x < U.size(); ++x) res = std::max(res, std::abs(U[x] - ftv[x] - cert.delta));
  cert.residual = res;
  return cert;
}

double verify_certificate(const SosCubeCertificate& cert, const CubePolynomial& f) {
  const int n = cert.n;
  if (f.n() != n) throw DimensionError("verify_certificate: dimension mismatch");
  require_within_cap(n, "verify_certificate");
  std::vector<std::size_t> support;
  for (std::size_t y = 0; y < cert.weights.size(); ++y)
    if (cert.weights[y] != 0.0) support.push_back(y);
  const std::vector<double> fv = value_table(f);
  std::vector<double> err(fv.size(), 0.0);
  parallel_for(fv.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t x = lo; x < hi; ++x) {
      const Mask xs = x ^ cert.translate;
      double acc = 0.0;
      for (std::size_t y : support) acc += cert.weights[y] * cert.u_sq(weight(xs ^ y));
      err[x] = std::abs(cert.scale * (acc - cert.delta) + cert.offset - fv[x]);
    }
  });
  double m = 0.0;
  for (double e : err) m = std::max(m, e);
  return m;
}

std::vector<ErrorSweepRow> error_sweep(const ErrorSweepOptions& opt) {
  if (opt.samples < 1) throw DomainError("error_sweep: samples must be positive");
  OuterOptions oo = opt.outer_options;
  oo.early_exact = true;
  std::vector<ErrorSweepRow> rows;
  for (int n : opt.n_list) {
    require_within_cap(n, "error_sweep");
    if (opt.d < 1 || opt.d > n) throw DomainError("error_sweep: need 1 <= d <= n");
    for (double frac : opt.r_fractions) {
      ErrorSweepRow row;
      row.n = n;
      row.r = static_cast<int>(std::lround(frac * n));
      row.t = static_cast<double>(row.r) / n;
      row.phi = levenshtein_phi(std::min(row.t, 0.5));
      row.bound = row.r + 1 <= n ? 2.0 * C_d(opt.d) * least_root(n, 2, row.r + 1) / n
                                 : std::numeric_limits<double>::quiet_NaN();
      if (2 * row.r < opt.d || row.r > n) {
        row.status = "skipped: order out of range";
        rows.push_back(row);
        continue;
      }
      std::vector<std::string> errs;
      for (int s = 0; s < opt.samples; ++s) {
        const std::uint64_t seed = opt.seed + 1000003ULL * n + 7919ULL * row.r + s;
        const CubePolynomial f = random_poly(n, opt.d, seed);
        const double norm = sup_norm(f);
        if (norm == 0.0) continue;
        const double fmin = brute_force_min(f).value;
        try {
          row.max_inner_gap = std::max(row.max_inner_gap, (inner_cube(f, row.r).value - fmin) / norm);
          if (opt.outer) {
            const OuterBoundResult ob = outer_cube(f, row.r, oo);
            row.max_outer_gap = std::max(row.max_outer_gap, (fmin - ob.value) / norm);
            if (ob.status != SdpStatus::optimal) errs.push_back("sample " + std::to_string(s) + ": " + to_string(ob.status));
          }
        } catch (const std::exception& e) {
          errs.push_back("sample " + std::to_string(s) + ": " + e.what());
        }
      }
      if (!errs.empty()) {
        row.status = errs.front();
        if (errs.size() > 1) row.status += " (+" + std::to_string(errs.size() - 1) + " more)";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace cubesos
