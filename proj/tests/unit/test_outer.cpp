#include <doctest.h>

#include <cmath>
#include <random>

#include "cubesos/errors.hpp"
#include "cubesos/gamma.hpp"
#include "cubesos/inner.hpp"
#include "cubesos/instances.hpp"
#include "cubesos/krawtchouk.hpp"
#include "cubesos/lp.hpp"
#include "cubesos/outer.hpp"
#include "cubesos/sdp.hpp"

using namespace cubesos;

TEST_SUITE("sdp") {
  TEST_CASE("rank-one optimum") {
    SdpProblem p;
    p.C = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2, 2);
    E(0, 0) = 1.0;
    p.A = {E};
    p.b = Eigen::VectorXd::Ones(1);
    const SdpSolution s = solve_sdp(p);
    REQUIRE(s.status == SdpStatus::optimal);
    CHECK(s.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(s.X(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(s.X(1, 1)) <= 1e-6);
    CHECK(s.gap <= 1e-7);
  }

  TEST_CASE("diagonal SDP agrees with the simplex LP") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      const int N = 6, m = 3;
      Eigen::VectorXd c(N), x0(N);
      Eigen::MatrixXd A(m, N);
      for (int j = 0; j < N; ++j) {
        c(j) = U(rng);
        x0(j) = U(rng);
        for (int i = 0; i < m; ++i) A(i, j) = U(rng) - 0.5;
      }
      const Eigen::VectorXd b = A * x0;
      SdpProblem p;
      p.C = c.asDiagonal();
      for (int i = 0; i < m; ++i) p.A.push_back(A.row(i).transpose().asDiagonal());
      p.b = b;
      const SdpSolution s = solve_sdp(p);
      REQUIRE(s.status == SdpStatus::optimal);

      LinearProgram lp;
      lp.maximize = false;
      lp.c = c;
      lp.A = A;
      lp.b = b;
      lp.sense.assign(m, RowSense::eq);
      const LpSolution l = solve_lp(lp);
      REQUIRE(l.status == LpStatus::optimal);
      CHECK(s.primal_objective == doctest::Approx(l.objective).epsilon(1e-6));
    }
  }

  TEST_CASE("solution invariants on a random SDP") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> G;
    const int N = 5, m = 4;
    Eigen::MatrixXd B(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) B(i, j) = G(rng);
    SdpProblem p;
    p.C = B * B.transpose() + Eigen::MatrixXd::Identity(N, N);
    Eigen::MatrixXd X0 = Eigen::MatrixXd::Identity(N, N);
    p.b.resize(m);
    for (int i = 0; i < m; ++i) {
      Eigen::MatrixXd M(N, N);
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) M(a, b) = G(rng);
      p.A.push_back((M + M.transpose()) / 2);
      p.b(i) = (p.A.back().cwiseProduct(X0)).sum();
    }
    const SdpSolution s = solve_sdp(p);
    REQUIRE(s.status == SdpStatus::optimal);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.X);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    for (int i = 0; i < m; ++i) CHECK(std::abs((p.A[i].cwiseProduct(s.X)).sum() - p.b(i)) <= 1e-8 * (1 + std::abs(p.b(i))));
    CHECK(s.gap <= 1e-7);
  }

  TEST_CASE("iteration limit is reported, not hidden") {
    SdpProblem p;
    p.C = Eigen::MatrixXd::Identity(3, 3);
    p.A = {Eigen::MatrixXd::Ones(3, 3)};
    p.b = Eigen::VectorXd::Ones(1);
    SdpOptions o;
    o.max_iter = 1;
    const SdpSolution s = solve_sdp(p, o);
    CHECK(s.status != SdpStatus::optimal);
  }

  TEST_CASE("max_psd_step") {
    const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd dX = Eigen::MatrixXd::Zero(2, 2);
    dX(0, 0) = -2.0;
    CHECK(max_psd_step(X, dX) == doctest::Approx(0.5));
    CHECK(std::isinf(max_psd_step(X, Eigen::MatrixXd::Identity(2, 2))));
  }
}

TEST_SUITE("outer_hierarchy") {
  TEST_CASE("small exact cases") {
    CubePolynomial x(1);
    x.add_term(1, 1.0);
    CHECK(std::abs(outer_cube(x, 1).value) <= 1e-6);

    const CubePolynomial mc = maxcut_complete(5);
    CHECK(std::abs(outer_cube(mc, 3).value - brute_force_min(mc).value) <= 1e-6);

    for (int r = 0; r <= 2; ++r) CHECK(outer_cube(CubePolynomial::constant(3, 0.7), r).value == doctest::Approx(0.7));

    const OuterBoundResult h = outer_cube(hamming_weight(4), 2);
    CHECK(h.value <= 1e-7);
    CHECK(h.value >= -1e-6);

    CHECK_THROWS_AS(outer_cube(random_poly(5, 3, 1), 1), DomainError);
  }

  TEST_CASE("weak duality, monotonicity, certificate, duality consistency") {
    for (int s = 0; s < 4; ++s) {
      const int n = 5 + s % 2;
      const CubePolynomial f = random_poly(n, 2, 200 + s);
      const double fmin = brute_force_min(f).value;
      double prev = -1e300;
      for (int r = 1; r <= 3; ++r) {
        const OuterBoundResult res = outer_cube(f, r);
        REQUIRE(res.status == SdpStatus::optimal);
        CHECK(res.value <= fmin + 1e-6);
        CHECK(prev <= res.value + 1e-7);
        CHECK(std::abs(res.value - res.moment_value) <= 1e-6);
        const SosVerification v = verify_sos_certificate(res, f);
        CHECK(v.max_residual <= 1e-6);
        CHECK(v.psd);
        prev = res.value;
      }
    }
  }

  TEST_CASE("perturbed Gram is flagged") {
    const CubePolynomial f = random_poly(4, 2, 3);
    OuterBoundResult res = outer_cube(f, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(res.gram);
    Eigen::VectorXd ev = es.eigenvalues();
    ev(0) -= 1e-3 + std::max(0.0, ev(0));
    res.gram = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    CHECK_FALSE(verify_sos_certificate(res, f).psd);
  }

  TEST_CASE("zero polynomial") {
    const OuterBoundResult res = outer_cube(CubePolynomial(4), 1);
    CHECK(res.value == 0.0);
    CHECK(res.gram.isZero(0.0));
    CHECK(verify_sos_certificate(res, CubePolynomial(4)).max_residual == 0.0);
  }

  TEST_CASE("exactness at 2r >= n + d - 1") {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 2}, {5, 3}}) {
      const int r = (n + d) / 2;
      for (int s = 0; s < 3; ++s) {
        const CubePolynomial f = random_poly(n, d, 500 + 10 * n + s);
        CHECK(std::abs(outer_cube(f, r).value - brute_force_min(f).value) <= 1e-6);
      }
    }
  }

  TEST_CASE("early exit reports the solved order and pads the Gram") {
    const CubePolynomial f = maxcut_complete(4);
    OuterOptions o;
    o.early_exact = true;
    const OuterBoundResult res = outer_cube(f, 3, o);
    CHECK(res.solved_order <= 3);
    CHECK(res.r == 3);
    CHECK(res.gram.rows() == static_cast<Eigen::Index>(low_weight_masks(4, 3).size()));
    CHECK(verify_sos_certificate(res, f).max_residual <= 1e-6);
    CHECK(std::abs(res.value - brute_force_min(f).value) <= 1e-6);
  }

  TEST_CASE("outer gap bound on small instances") {
    for (int n : {8, 10})
      for (int r = 1; 2 * (r + 1) <= n; ++r) {
        const double xi = least_root(n, 2, r + 1);
        if (2.0 * xi / n > 0.5) continue;
        const CubePolynomial f = random_poly(n, 1, 40 + n + r);
        const double gap = (brute_force_min(f).value - outer_cube(f, r).value) / sup_norm(f);
        CHECK(gap <= 2 * C_d(1) * xi / n + 1e-6);
      }
  }

  TEST_CASE("matrix outer bound") {
    const CubePolynomial f1 = random_poly(4, 2, 11), f2 = random_poly(4, 2, 12);
    MatrixPolynomial one(4, 1);
    one.set(0, 0, f1);
    CHECK(outer_matrix(one, 1).value == doctest::Approx(outer_cube(f1, 1).value).epsilon(1e-6));

    MatrixPolynomial D(4, 2);
    D.set(0, 0, f1);
    D.set(1, 1, f2);
    CHECK(outer_matrix(D, 1).value ==
          doctest::Approx(std::min(outer_cube(f1, 1).value, outer_cube(f2, 1).value)).epsilon(1e-6));

    MatrixPolynomial C(3, 2);
    C.set(0, 0, CubePolynomial::constant(3, 2.0));
    C.set(0, 1, CubePolynomial::constant(3, 1.0));
    C.set(1, 1, CubePolynomial::constant(3, 2.0));
    CHECK(outer_matrix(C, 1).value == doctest::Approx(1.0).epsilon(1e-6));

    const MatrixPolynomial F = random_matrix_poly(4, 2, 2, 3);
    const double Fmin = brute_force_min(F).value;
    double prev = -1e300;
    for (int r = 1; r <= 3; ++r) {
      const OuterBoundResult res = outer_matrix(F, r);
      CHECK(res.value <= Fmin + 1e-6);
      CHECK(prev <= res.value + 1e-7);
      CHECK(verify_sos_certificate(res, F).max_residual <= 1e-6);
      prev = res.value;
    }
  }

  TEST_CASE("Schur assembly paths agree") {
    const std::vector<Mask> basis = low_weight_masks(5, 2);
    XorConstraintMap map(5, basis, 1, 4);
    const Eigen::Index N = map.dim();
    std::mt19937_64 rng(1);
    std::normal_distribution<double> G;
    Eigen::MatrixXd U(N, N), V(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) {
        U(i, j) = G(rng);
        V(i, j) = G(rng);
      }
    U = (U + U.transpose()).eval();
    V = (V + V.transpose()).eval();
    const Eigen::MatrixXd a = map.schur_basic_direct(U, V), b = map.schur_basic_transform(U, V);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-9 * (1 + a.cwiseAbs().maxCoeff()));
  }
}
