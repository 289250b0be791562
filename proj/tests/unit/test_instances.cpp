#include <doctest.h>

#include <random>

#include "cubesos/errors.hpp"
#include "cubesos/instances.hpp"

using namespace cubesos;

TEST_SUITE("instances") {
  TEST_CASE("max-cut examples") {
    const CubePolynomial k2 = maxcut_complete(2);
    CHECK(k2.coef(0b01) == -1.0);
    CHECK(k2.coef(0b10) == -1.0);
    CHECK(k2.coef(0b11) == 2.0);
    CHECK(brute_force_min(k2).value == -1.0);
    CHECK(maxcut_instance(Eigen::MatrixXd::Zero(4, 4)).is_zero());
    CHECK(brute_force_min(maxcut_complete(3)).value == -2.0);

    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(maxcut_instance(bad), DomainError);
    bad(1, 0) = 1.0;
    bad(2, 2) = 1.0;
    CHECK_THROWS_AS(maxcut_instance(bad), DomainError);
  }

  TEST_CASE("max-cut minimum equals the cut value") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int n = 2; n <= 12; n += 2) {
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = U(rng) < 0.5 ? 0.0 : U(rng);
      CHECK(brute_force_min(maxcut_instance(w)).value == doctest::Approx(-maxcut_value(w)));
    }
  }

  TEST_CASE("stable-set examples") {
    CHECK(-brute_force_min(stable_set_instance({}, 5)).value == 5.0);
    CHECK(-brute_force_min(stable_set_instance({{0, 1}, {1, 2}, {0, 2}}, 3)).value == 1.0);
    const std::vector<std::pair<int, int>> c5 = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    CHECK(-brute_force_min(stable_set_instance(c5, 5)).value == 2.0);
    CHECK_THROWS_AS(stable_set_instance({{1, 1}}, 3), DomainError);
    CHECK_THROWS_AS(stable_set_instance({{0, 1}, {1, 0}}, 3), DomainError);
  }

  TEST_CASE("stable-set minimum equals the independence number") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int n = 4; n <= 16; n += 4) {
      std::vector<std::pair<int, int>> e;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (U(rng) < 0.3) e.emplace_back(i, j);
      CHECK(-brute_force_min(stable_set_instance(e, n)).value == doctest::Approx(independence_number(e, n)));
    }
  }

  TEST_CASE("random polynomials") {
    CHECK(random_poly(6, 3, 42) == random_poly(6, 3, 42));
    CHECK_FALSE(random_poly(6, 3, 42) == random_poly(6, 3, 43));
    for (int s = 0; s < 20; ++s) CHECK(random_poly(3, 1, s).degree() == 1);
    CHECK(sup_norm(random_poly(8, 4, 1)) == doctest::Approx(1.0));
    RandomPolyOptions raw;
    raw.normalize = false;
    raw.dist = CoeffDist::gaussian;
    CHECK(random_poly(5, 2, 7, raw).degree() == 2);
    CHECK_THROWS_AS(random_poly(3, 4, 1), DomainError);

    const MatrixPolynomial F = random_matrix_poly(4, 2, 2, 3);
    CHECK(F.k() == 2);
    CHECK(sup_norm(F) == doctest::Approx(1.0));
    CHECK(F(0, 1) == F(1, 0));
  }

  TEST_CASE("hamming weight") {
    const CubePolynomial h = hamming_weight(6);
    for (Mask x = 0; x < 64; ++x) CHECK(h(x) == weight(x));
  }
}
