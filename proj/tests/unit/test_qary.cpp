#include <doctest.h>

#include <cmath>

#include "cubesos/errors.hpp"
#include "cubesos/gamma.hpp"
#include "cubesos/krawtchouk.hpp"
#include "cubesos/qary.hpp"

using namespace cubesos;

namespace {

double eval_unreduced(const std::vector<std::pair<Exponents, double>>& terms, const std::vector<int>& x) {
  double s = 0.0;
  for (const auto& [e, c] : terms) {
    double m = c;
    for (std::size_t i = 0; i < x.size(); ++i) m *= std::pow(x[i], e[i]);
    s += m;
  }
  return s;
}

}  // namespace

TEST_SUITE("qary") {
  TEST_CASE("reduction keeps values on the q-ary cube") {
    const std::vector<std::pair<Exponents, double>> raw = {{{5, 0, 2}, 1.5}, {{3, 4, 1}, -0.5}, {{0, 7, 0}, 2.0}};
    for (int q : {2, 3, 4}) {
      QaryPolynomial p(3, q);
      for (const auto& [e, c] : raw) p.add_term(e, c);
      for (const auto& [e, c] : p.terms())
        for (int v : e) CHECK(v <= q - 1);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          for (int c = 0; c < q; ++c) CHECK(p({a, b, c}) == doctest::Approx(eval_unreduced(raw, {a, b, c})));
    }
  }

  TEST_CASE("brute force examples") {
    QaryPolynomial s(4, 3);
    for (int i = 0; i < 4; ++i) {
      Exponents e(4, 0);
      e[i] = 1;
      s.add_term(e, 1.0);
    }
    const QaryMin m = qary_brute_min(s);
    CHECK(m.value == 0.0);
    CHECK(m.argmin == std::vector<int>(4, 0));

    QaryPolynomial c(3, 5);
    c.add_term({0, 0, 0}, -4.0);
    CHECK(qary_brute_min(c).value == -4.0);
    CHECK(qary_brute_min(c).argmin == std::vector<int>(3, 0));

    for (int seed = 0; seed < 5; ++seed) {
      const QaryPolynomial f = random_qary_poly(6, 3, 3, seed);
      const QaryMin a = qary_brute_min(f), b = qary_brute_min_reverse(f);
      CHECK(a.value == b.value);
      CHECK(a.argmin == b.argmin);
    }
    CHECK_THROWS_AS(qary_brute_min(QaryPolynomial(25, 2)), CapExceeded);
  }

  TEST_CASE("hamming weight indicator") {
    const QaryPolynomial h = qary_hamming_weight(3, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(h({a, b, 1}) == doctest::Approx((a != 0) + (b != 0) + 1.0));
  }

  TEST_CASE("symmetrized inner bound") {
    std::vector<double> F(13);
    for (int t = 0; t <= 12; ++t) F[t] = t;
    CHECK(std::abs(qary_inner_symmetrized(F, 3, 3).value - least_root(12, 3, 4)) <= 1e-8);
    CHECK(qary_inner_symmetrized(std::vector<double>(9, 0.3), 4, 2).value == doctest::Approx(0.3));

    for (int q : {3, 4})
      for (int n : {10, 20}) {
        std::vector<double> g(n + 1, 2.0);
        for (int t = 0; t <= n; ++t)
          for (int i = 1; i <= 2; ++i) g[t] -= kraw_eval(n, q, i, t);
        for (int r = 1; r <= n / 2; ++r) {
          const double v = qary_inner_symmetrized(g, q, r).value;
          CHECK(v >= -1e-12);
          CHECK(v <= 6.0 * least_root(n, q, r + 1) / n + 1e-9);
        }
      }
  }

  TEST_CASE("q-ary orthogonality in raw form") {
    for (int q : {3, 4, 5})
      for (int n : {6, 12}) {
        for (int k = 0; k <= n; ++k)
          for (int l = 0; l <= k; ++l) {
            double s = 0.0;
            for (int t = 0; t <= n; ++t)
              s += kraw_raw(n, q, k, t) * kraw_raw(n, q, l, t) * std::pow(q - 1.0, t) * std::exp(log_binomial(n, t));
            const double expect = k == l ? std::pow(q, n) * std::exp(kraw_log_norm_sq(n, q, k)) : 0.0;
            CHECK(s == doctest::Approx(expect).epsilon(1e-9).scale(std::pow(q, n) * std::exp(kraw_log_norm_sq(n, q, k))));
          }
      }
  }

  TEST_CASE("symmetrized gap against the q-ary constant") {
    // invariant instance F(t) = c0 + c1 Khat_1(t) + c2 Khat_2(t), min over t
    for (int q : {3}) {
      const int n = 12, d = 2;
      const double Cd = d * (d + 1.0) * gamma_qary(d, q);
      std::vector<double> F(n + 1);
      for (int t = 0; t <= n; ++t) F[t] = 0.2 - 0.7 * kraw_eval(n, q, 1, t) + 0.4 * kraw_eval(n, q, 2, t);
      double fmin = F[0], norm = 0.0;
      for (double v : F) {
        fmin = std::min(fmin, v);
        norm = std::max(norm, std::abs(v));
      }
      for (int r = 1; r <= 5; ++r)
        CHECK((qary_inner_symmetrized(F, q, r).value - fmin) / norm <= Cd * least_root(n, q, r + 1) / n + 1e-6);
    }
  }

  TEST_CASE("phi sweep") {
    const auto rows = phi_q_sweep({2, 3}, {40, 80}, {0.1, 0.25});
    CHECK(rows.size() == 8);
    for (const auto& row : rows) {
      CHECK(row.r == static_cast<int>(std::floor(row.t * row.n)));
      CHECK(row.xi_over_n == doctest::Approx(least_root(row.n, row.q, row.r) / row.n));
      CHECK(row.phi == doctest::Approx(levenshtein_phi(row.t, row.q)));
    }
    const auto curve = phi_q_sweep({2}, {}, {0.0, 0.5});
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].phi == doctest::Approx(0.5));
    CHECK(std::isnan(curve[0].xi_over_n));
    CHECK(levenshtein_phi(2.0 / 3, 3) == doctest::Approx(0.0).scale(1.0));
  }
}
