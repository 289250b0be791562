#include <doctest.h>

#include <cmath>

#include "cubesos/config.hpp"
#include "cubesos/cube_fourier.hpp"
#include "cubesos/errors.hpp"
#include "cubesos/instances.hpp"
#include "cubesos/krawtchouk.hpp"
#include "helpers.hpp"

using namespace cubesos;

TEST_SUITE("cube_fourier") {
  TEST_CASE("evaluate examples") {
    CubePolynomial p(2);
    p.add_monomial({1}, 1.0);
    p.add_monomial({2}, 1.0);
    p.add_monomial({1, 2}, -1.0);
    CHECK(p(from_bitstring("11")) == 1.0);
    CHECK(CubePolynomial(3)(from_bitstring("101")) == 0.0);

    // -(x1 - x2)^2 with x_i^2 = x_i
    CubePolynomial q(2);
    q.add_monomial({1, 1}, -1.0);
    q.add_monomial({2, 2}, -1.0);
    q.add_monomial({1, 2}, 2.0);
    CHECK(q.terms().size() == 3);
    CHECK(q(from_bitstring("10")) == -1.0);
  }

  TEST_CASE("representation invariants") {
    CubePolynomial p(4);
    CHECK(p.degree() == 0);
    p.add_term(0b0110, 2.0);
    p.add_term(0b0110, -2.0);
    CHECK(p.is_zero());
    p.add_term(0b1011, 1.5);
    p.add_term(0b0001, 1.0);
    CHECK(p.degree() == 3);
    CHECK_THROWS_AS(p.add_monomial({5}, 1.0), DimensionError);
  }

  TEST_CASE("bitstrings put x1 leftmost") {
    CHECK(to_bitstring(0b001, 3) == "100");
    CHECK(from_bitstring("100") == 0b001);
    CHECK(from_indices({1, 3}) == 0b101);
    CHECK(lex_less(from_bitstring("01"), from_bitstring("10")));
  }

  TEST_CASE("fourier_transform examples") {
    const FourierPolynomial one = fourier_transform(CubePolynomial::constant(3, 1.0));
    CHECK(one.coeffs().size() == 1);
    CHECK(one.coef(0) == doctest::Approx(1.0));

    CubePolynomial x1(1);
    x1.add_term(1, 1.0);
    const FourierPolynomial fx = fourier_transform(x1);
    CHECK(fx.coef(0) == doctest::Approx(0.5));
    CHECK(fx.coef(1) == doctest::Approx(-0.5));

    // X_k = sum of weight-k characters
    const int n = 5, k = 2;
    FourierPolynomial Xk(n);
    for (Mask a = 0; a < 32; ++a)
      if (weight(a) == k) Xk.add(a, 1.0);
    const std::vector<double> ft = fourier_table(inverse_fourier(Xk));
    for (Mask a = 0; a < 32; ++a) CHECK(ft[a] == doctest::Approx(weight(a) == k ? 1.0 : 0.0));
  }

  TEST_CASE("fourier table matches the defining sum") {
    for (int n = 1; n <= 7; ++n) {
      const CubePolynomial p = random_poly(n, std::min(n, 3), 11 + n);
      const std::vector<double> ft = fourier_table(p);
      for (Mask a = 0; a < (Mask{1} << n); ++a)
        CHECK(ft[a] == doctest::Approx(testing::fourier_coef_direct(p, a)).epsilon(1e-12));
    }
  }

  TEST_CASE("characters are orthonormal, exactly") {
    for (int n = 1; n <= 10; n += 3)
      for (Mask a = 0; a < (Mask{1} << n); a += 3)
        for (Mask b = 0; b < (Mask{1} << n); b += 5) {
          long long s = 0;
          for (Mask x = 0; x < (Mask{1} << n); ++x) s += parity((a ^ b) & x) ? -1 : 1;
          CHECK(s == (a == b ? (1LL << n) : 0));
        }
  }

  TEST_CASE("round trip and Parseval") {
    for (int n = 2; n <= 12; n += 2)
      for (int d = 1; d <= std::min(n, 5); d += 2) {
        const CubePolynomial p = random_poly(n, d, 100 * n + d);
        const FourierPolynomial f = fourier_transform(p);
        const CubePolynomial back = inverse_fourier(f);
        CHECK(testing::max_abs_diff(value_table(p), value_table(back)) <= 1e-12);

        double sq = 0.0;
        for (const auto& [a, c] : f.coeffs()) {
          sq += c * c;
          CHECK(weight(a) <= p.degree());
        }
        double avg = 0.0;
        for (double v : value_table(p)) avg += v * v;
        avg = std::ldexp(avg, -n);
        CHECK(sq == doctest::Approx(avg).epsilon(1e-10));
      }
  }

  TEST_CASE("harmonic parts") {
    CubePolynomial x1(2);
    x1.add_term(1, 1.0);
    const HarmonicDecomposition h = harmonic_parts(x1);
    CHECK(h.parts.at(0).coef(0) == doctest::Approx(0.5));
    CHECK(h.parts.at(1).coef(0b01) == doctest::Approx(-0.5));
    CHECK(h.parts.at(1).coef(0b10) == 0.0);
    CHECK((h.parts.size() < 3 || h.parts[2].is_zero()));

    const HarmonicDecomposition hc = harmonic_parts(CubePolynomial::constant(4, 3.0));
    CHECK(hc.parts.at(0).coef(0) == doctest::Approx(3.0));
    for (std::size_t k = 1; k < hc.parts.size(); ++k) CHECK(hc.parts[k].is_zero());

    const CubePolynomial p = random_poly(8, 4, 5);
    const HarmonicDecomposition hp = harmonic_parts(p);
    std::vector<double> sum(256, 0.0);
    for (std::size_t k = 0; k < hp.parts.size(); ++k) {
      for (const auto& [a, c] : hp.parts[k].coeffs()) CHECK(weight(a) == static_cast<int>(k));
      for (Mask x = 0; x < 256; ++x) sum[x] += hp.parts[k](x);
      for (std::size_t l = k + 1; l < hp.parts.size(); ++l)
        CHECK(std::abs(inner_product(hp.parts[k], hp.parts[l])) <= 1e-12);
    }
    CHECK(testing::max_abs_diff(sum, value_table(p)) <= 1e-10);
  }

  TEST_CASE("sum of Krawtchouk polynomials of |x| splits into X_k") {
    const int n = 6, d = 3;
    std::vector<double> vals(64);
    for (Mask x = 0; x < 64; ++x) {
      double s = 0.0;
      for (int k = 0; k <= d; ++k) s += kraw_raw(n, 2, k, weight(x));
      vals[x] = s;
    }
    const HarmonicDecomposition h = harmonic_parts(from_value_table(vals, n));
    for (int k = 0; k <= n; ++k)
      for (Mask a = 0; a < 64; ++a)
        if (weight(a) == k) CHECK(h.parts.at(k).coef(a) == doctest::Approx(k <= d ? 1.0 : 0.0));
  }

  TEST_CASE("sup_norm examples") {
    CHECK(sup_norm(inverse_fourier([] {
            FourierPolynomial c(4);
            c.add(0b1011, 1.0);
            return c;
          }())) == doctest::Approx(1.0));
    CHECK(sup_norm(hamming_weight(7)) == 7.0);
    CHECK(sup_norm(maxcut_complete(2)) == 1.0);
  }

  TEST_CASE("brute_force_min examples and tie-break") {
    const MinResult hw = brute_force_min(hamming_weight(5));
    CHECK(hw.value == 0.0);
    CHECK(hw.argmin == 0);
    const MinResult mc = brute_force_min(maxcut_complete(2));
    CHECK(mc.value == -1.0);
    CHECK(to_bitstring(mc.argmin, 2) == "01");
    const MinResult c = brute_force_min(CubePolynomial::constant(3, 2.5));
    CHECK(c.value == 2.5);
    CHECK(c.argmin == 0);
  }

  TEST_CASE("translate_to_zero") {
    const CubePolynomial p = random_poly(6, 3, 9);
    CHECK(translate_to_zero(p, 0) == p);

    CubePolynomial x1(2);
    x1.add_term(1, 1.0);
    CubePolynomial expect = CubePolynomial::constant(2, 1.0);
    expect.add_term(1, -1.0);
    const CubePolynomial t = translate_to_zero(x1, from_bitstring("10"));
    CHECK(testing::max_abs_diff(value_table(t), value_table(expect)) == 0.0);

    for (Mask x0 : {Mask{5}, Mask{17}, Mask{63}}) {
      const CubePolynomial q = translate_to_zero(p, x0);
      for (Mask x = 0; x < 64; ++x) CHECK(q(x) == doctest::Approx(p(x ^ x0)));
      CHECK(brute_force_min(q).value == doctest::Approx(brute_force_min(p).value));
    }
  }

  TEST_CASE("enumeration cap") {
    const int saved = config().max_n;
    config().max_n = 6;
    CHECK_THROWS_AS(brute_force_min(hamming_weight(7)), CapExceeded);
    CHECK_THROWS_AS(fourier_table(hamming_weight(7)), CapExceeded);
    config().max_n = saved;
  }

  TEST_CASE("matrix polynomial brute force") {
    MatrixPolynomial F(2, 2);
    CubePolynomial a(2), b(2);
    a.add_term(1, 1.0);
    b.add_term(2, 1.0);
    F.set(0, 0, a);
    F.set(1, 1, CubePolynomial::constant(2, 0.5));
    F.set(0, 1, b);
    CHECK(F(1, 0) == b);
    // eigenvalues of [[x1, x2], [x2, 1/2]]
    double best = 1e9;
    for (Mask x = 0; x < 4; ++x) {
      const double p = a(x), q = b(x), tr = p + 0.5, det = 0.5 * p - q * q;
      best = std::min(best, tr / 2 - std::sqrt(tr * tr / 4 - det));
    }
    CHECK(brute_force_min(F).value == doctest::Approx(best));
  }
}
