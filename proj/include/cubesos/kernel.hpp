#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cubesos/cube_fourier.hpp"
#include "cubesos/outer.hpp"

namespace cubesos {

struct KernelSpec {
  int n = 0, d = 0, r = 0;
  // u in the omega-orthonormal Krawtchouk basis p_0..p_r; <1, u^2>_omega = 1.
  Eigen::VectorXd u_coeffs;
  Eigen::VectorXd u_sq;    // u^2(t), t = 0..n
  Eigen::VectorXd lambda;  // lambda_0..lambda_n, u^2 = sum_i lambda_i K_i
  double lambda_tilde = 0.0;
  double Lambda = 0.0;     // +inf if some lambda_i <= 0, i <= d
  double delta = 0.0;      // gamma_d * Lambda
  // A-priori bound 2 C_d xi_{r+1} / n, valid when d(d+1) xi_{r+1} / n <= 1/2.
  double closed_form = 0.0;
  bool closed_form_applicable = false;
};

KernelSpec choose_kernel(int n, int d, int r);

// u^2(0..n) from coefficients in the omega-orthonormal Krawtchouk basis.
Eigen::VectorXd u_sq_from_coeffs(int n, const Eigen::VectorXd& u_coeffs);

// Upper estimate of Lambda from lambda_tilde alone: 2 Lt when Lt <= 1/2;
// with sharper = true, Lt / (1 - Lt) for Lt < 1. +inf otherwise.
double predicted_Lambda(double lambda_tilde, bool sharper = false);

// sum_k lambda_k^{+-1} p_k over the harmonic parts of p.
CubePolynomial funk_hecke_apply(const KernelSpec& spec, const CubePolynomial& p, bool invert = false);

// (K p)(x) = 2^-n sum_y p(y) u^2(d(x, y)) by direct summation, as a value table.
std::vector<double> kernel_apply_direct(const KernelSpec& spec, const CubePolynomial& p);

// f(x) = scale * (sum_y w_y u^2(d(x XOR translate, y)) - delta) + offset.
struct SosCubeCertificate {
  int n = 0;
  int r = 0;
  double delta = 0.0;
  std::vector<double> weights;  // indexed by y
  Eigen::VectorXd u_coeffs;
  Eigen::VectorXd u_sq;
  Mask translate = 0;
  double scale = 1.0;
  double offset = 0.0;
  double residual = 0.0;   // max over x, normalized coordinates
  double closed_form = 0.0;
  bool closed_form_applicable = false;
  double lambda_tilde = 0.0;
  double Lambda = 0.0;

  // Lower bound on min f implied by the certificate: offset - scale * delta.
  double lower_bound() const { return offset - scale * delta; }
};

struct CertifyOptions {
  double clamp_tol = 1e-10;
};

SosCubeCertificate certify(const CubePolynomial& f, int r, const CertifyOptions& opt = {});

// Max |scale (sum_y w_y u^2 - delta) + offset - f(x)| over the cube, by direct summation.
double verify_certificate(const SosCubeCertificate& cert, const CubePolynomial& f);

struct ErrorSweepRow {
  int n = 0;
  int r = 0;
  double t = 0.0;
  double max_outer_gap = 0.0;
  double max_inner_gap = 0.0;
  double bound = 0.0;  // 2 C_d xi_{r+1} / n
  double phi = 0.0;
  std::string status = "ok";
};

struct ErrorSweepOptions {
  int d = 2;
  std::vector<int> n_list;
  std::vector<double> r_fractions;
  int samples = 10;
  unsigned long long seed = 1;
  bool outer = true;
  OuterOptions outer_options;  // early_exact is always switched on
};

std::vector<ErrorSweepRow> error_sweep(const ErrorSweepOptions& opt);

}  // namespace cubesos
