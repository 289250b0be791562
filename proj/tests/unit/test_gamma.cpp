#include <doctest.h>

#include <cmath>
#include <random>

#include "cubesos/gamma.hpp"
#include "cubesos/instances.hpp"
#include "cubesos/krawtchouk.hpp"
#include "cubesos/lp.hpp"

using namespace cubesos;

TEST_SUITE("lp") {
  TEST_CASE("trivial bound") {
    LinearProgram lp;
    lp.c = Eigen::VectorXd::Ones(1);
    lp.A = Eigen::MatrixXd::Ones(1, 1);
    lp.b = Eigen::VectorXd::Ones(1);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0));
  }

  TEST_CASE("unbounded and infeasible") {
    LinearProgram lp;
    lp.c = Eigen::VectorXd::Ones(2);
    lp.A = Eigen::MatrixXd(1, 2);
    lp.A << 1.0, -1.0;
    lp.b = Eigen::VectorXd::Ones(1);
    CHECK(solve_lp(lp).status == LpStatus::unbounded);

    LinearProgram inf;
    inf.c = Eigen::VectorXd::Ones(1);
    inf.A = Eigen::MatrixXd::Ones(2, 1);
    inf.b = Eigen::Vector2d(1.0, 2.0);
    inf.sense = {RowSense::le, RowSense::ge};
    CHECK(solve_lp(inf).status == LpStatus::infeasible);
  }

  TEST_CASE("degenerate problem terminates") {
    // Many ties in the ratio test at the origin.
    LinearProgram lp;
    lp.c = Eigen::Vector4d(10, -57, -9, -24);
    lp.A = Eigen::MatrixXd(3, 4);
    lp.A << 0.5, -5.5, -2.5, 9, 0.5, -1.5, -0.5, 1, 1, 0, 0, 0;
    lp.b = Eigen::Vector3d(0, 0, 1);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0));
  }

  TEST_CASE("strong duality on random LPs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int m = 4 + trial % 3, n = 5 + trial % 4;
      LinearProgram p;
      p.c.resize(n);
      p.A.resize(m, n);
      p.b.resize(m);
      for (int j = 0; j < n; ++j) p.c(j) = U(rng);
      for (int i = 0; i < m; ++i) {
        p.b(i) = 1.0 + U(rng);
        for (int j = 0; j < n; ++j) p.A(i, j) = U(rng);
      }
      const LpSolution ps = solve_lp(p);
      REQUIRE(ps.status == LpStatus::optimal);
      CHECK(ps.max_violation <= 1e-9);

      // min b.y s.t. A^T y >= c, y >= 0
      LinearProgram d;
      d.maximize = false;
      d.c = p.b;
      d.A = p.A.transpose();
      d.b = p.c;
      d.sense.assign(n, RowSense::ge);
      const LpSolution ds = solve_lp(d);
      REQUIRE(ds.status == LpStatus::optimal);
      CHECK(ps.objective == doctest::Approx(ds.objective).epsilon(1e-9));
      // recovered duals reproduce the dual objective
      CHECK(p.b.dot(ps.duals) == doctest::Approx(ps.objective).epsilon(1e-9));
      CHECK(ps.objective == doctest::Approx(p.c.dot(ps.x)).epsilon(1e-12));
    }
  }

  TEST_CASE("free variables and equalities") {
    // max -|x - 2| style: max t s.t. t <= x - 2, t <= 2 - x, x free, t free
    LinearProgram lp;
    lp.c = Eigen::Vector2d(0, 1);
    lp.A = Eigen::MatrixXd(3, 2);
    lp.A << -1, 1, 1, 1, 1, 0;
    lp.b = Eigen::Vector3d(-2, 2, 5);
    lp.sense = {RowSense::le, RowSense::le, RowSense::eq};
    lp.is_free = {true, true};
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x(0) == doctest::Approx(5.0));
    CHECK(s.objective == doctest::Approx(-3.0));
  }
}

TEST_SUITE("gamma_constants") {
  TEST_CASE("Chebyshev coefficients") {
    CHECK(chebyshev_coeffs(0) == std::vector<double>{1.0});
    CHECK(chebyshev_coeffs(2) == std::vector<double>{-1.0, 0.0, 2.0});
    CHECK(chebyshev_coeffs_int(2) == std::vector<std::int64_t>{-1, 0, 2});
    for (int m = 0; m <= 30; ++m) {
      const auto c = chebyshev_coeffs_int(m);
      std::int64_t s = 0;
      for (auto v : c) s += v < 0 ? -v : v;
      // ((1+sqrt2)^m + (1-sqrt2)^m)/2 = a_m with a_0 = 1, a_1 = 1, a_m = 2 a_{m-1} + a_{m-2}
      std::int64_t a0 = 1, a1 = 1;
      for (int i = 2; i <= m; ++i) {
        const std::int64_t a2 = 2 * a1 + a0;
        a0 = a1;
        a1 = a2;
      }
      CHECK(s == (m == 0 ? 1 : a1));
      // values at cos(theta) match cos(m theta)
      const double th = 0.37;
      double v = 0.0;
      for (int i = 0; i <= m; ++i) v += c[i] * std::pow(std::cos(th), i);
      CHECK(v == doctest::Approx(std::cos(m * th)).epsilon(1e-6).scale(1.0));
    }
    const double s10 = (std::pow(1 + std::sqrt(2.0), 10) + std::pow(1 - std::sqrt(2.0), 10)) / 2;
    double t10 = 0.0;
    for (double v : chebyshev_coeffs(10)) t10 += std::abs(v);
    CHECK(t10 == doctest::Approx(s10));
  }

  TEST_CASE("gamma values and the closed-form growth") {
    const std::int64_t table[] = {1, 2, 4, 8, 20, 48, 112, 256, 576, 1280};
    for (int d = 1; d <= 10; ++d) {
      CHECK(gamma_d_int(d) == table[d - 1]);
      CHECK(gamma_d(d) == static_cast<double>(table[d - 1]));
      CHECK(C_d(d) == d * (d + 1.0) * table[d - 1]);
    }
    for (int d = 1; d <= 30; ++d) CHECK(gamma_d(d) <= std::pow(1 + std::sqrt(2.0), d));
    CHECK(rho_infinity(1, 1) == 1.0);
    CHECK(rho_infinity(2, 2) == 2.0);
    CHECK(gamma_d(2) == 2.0);
  }

  TEST_CASE("finite rho examples") {
    for (int n = 1; n <= 12; ++n) CHECK(rho_finite(n, 1, 1).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rho_finite(4, 1, 1).value == doctest::Approx(1.0));
    for (int n = 3; n <= 20; ++n) {
      CHECK(rho_finite(n, 3, 0).value >= 1.0 - 1e-9);
      CHECK(rho_finite(n, 3, 0).value <= rho_infinity(3, 0) + 1e-9);
    }
    double prev = 0.0;
    for (int n = 2; n <= 20; ++n) {
      const double v = rho_finite(n, 2, 2).value;
      CHECK(v <= 2.0 + 1e-9);
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
    CHECK(rho_finite(20, 2, 2).value == doctest::Approx(1.9).epsilon(1e-9));
  }

  TEST_CASE("returned lambda is feasible and attains the value") {
    for (int q : {2, 3}) {
      const int n = 11, d = 3;
      const KrawtchoukFamily fam(n, q, d);
      for (int k = 0; k <= d; ++k) {
        const RhoResult res = rho_finite(n, d, k, q);
        CHECK(res.lambda(k) == doctest::Approx(res.value));
        for (int t = 0; t <= n; ++t) {
          double s = 0.0;
          for (int i = 0; i <= d; ++i) s += res.lambda(i) * fam.normalized(i, t);
          CHECK(std::abs(s) <= 1.0 + 1e-9);
        }
      }
    }
  }

  TEST_CASE("monotone in n and dominated by the limit") {
    for (int q : {2, 3})
      for (int d = 1; d <= 3; ++d) {
        const GammaTable tab = gamma_table(d, 18, q);
        for (int k = 0; k <= d; ++k)
          for (int n = d; n < 18; ++n) {
            CHECK(tab.rho_finite.at({n, k}) <= tab.rho_finite.at({n + 1, k}) + 1e-9);
            CHECK(tab.rho_finite.at({n, k}) <= tab.rho_infinity[k] + 1e-9);
          }
      }
  }

  TEST_CASE("grid limit program matches the closed form") {
    for (int d = 1; d <= 8; ++d)
      for (int k = 0; k <= d; ++k) {
        const double g = rho_infinity_grid(d, k, 2).value;
        CHECK(std::abs(g - rho_infinity(d, k)) <= 1e-3 * std::max(1.0, rho_infinity(d, k)));
        CHECK(g >= rho_infinity(d, k) - 1e-9);
      }
  }

  TEST_CASE("harmonic parts are controlled by gamma_d") {
    for (int s = 0; s < 30; ++s) {
      const int n = 4 + s % 7, d = 1 + s % 4;
      const CubePolynomial p = random_poly(n, std::min(d, n), 900 + s);
      const double norm = sup_norm(p);
      const HarmonicDecomposition h = harmonic_parts(p);
      for (const auto& part : h.parts) CHECK(sup_norm(inverse_fourier(part)) <= gamma_d(d) * norm + 1e-9);
    }
  }
}
