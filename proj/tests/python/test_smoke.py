import json
import math

import pytest

import cubesos as cs


def k2():
    # -(x1 - x2)^2 = -x1 - x2 + 2 x1 x2
    f = cs.CubePolynomial(2)
    f.add_monomial([1], -1.0)
    f.add_monomial([2], -1.0)
    f.add_monomial([1, 2], 2.0)
    return f


def test_polynomial_basics():
    f = k2()
    assert f.n == 2 and f.degree() == 2
    assert f(0b01) == -1.0 and f(0b11) == 0.0
    assert cs.brute_force_min(f).value == -1.0
    assert cs.sup_norm(f) == 1.0
    g = cs.CubePolynomial.from_json(f.to_json())
    assert g == f


def test_sandwich():
    f = cs.random_poly(6, 2, 7)
    fmin = cs.brute_force_min(f).value
    for r in (1, 2):
        assert cs.outer_cube(f, r).value <= fmin + 1e-6
        assert cs.inner_cube(f, r).value >= fmin - 1e-8
    assert abs(cs.inner_cube(f, 6).value - fmin) <= 1e-8
    assert abs(cs.outer_cube(f, 4).value - fmin) <= 1e-6


def test_hamming_tightness():
    f = cs.hamming_weight(4)
    assert cs.inner_cube(f, 3).value > 1e-6
    assert cs.inner_cube(f, 4).value <= 1e-8


def test_constants():
    assert [cs.gamma_d_int(d) for d in range(1, 11)] == [1, 2, 4, 8, 20, 48, 112, 256, 576, 1280]
    assert cs.C_d(2) == pytest.approx(12.0)
    assert cs.least_root(10, 2, 1) == pytest.approx(5.0)
    assert cs.levenshtein_phi(0.5) == pytest.approx(0.0, abs=1e-15)


def test_certificate_roundtrip():
    f = cs.random_poly(8, 1, 3)
    cert = cs.certify(f, 4)
    assert min(cert.weights) >= -1e-10
    assert cs.verify_certificate(cert, f) <= 1e-7
    again = cs.SosCubeCertificate.from_json(cert.to_json())
    assert cs.verify_certificate(again, f) <= 1e-7
    assert cert.lower_bound() <= cs.brute_force_min(f).value + 1e-9
    assert json.loads(cert.to_json())["delta"] == pytest.approx(cert.delta)


def test_errors_map_to_python():
    with pytest.raises(cs.NoCertificate):
        cs.certify(cs.random_poly(8, 2, 3), 1)
    with pytest.raises(ValueError):
        cs.CubePolynomial.from_json("{}")


def test_qary():
    f = cs.qary_hamming_weight(3, 3)
    m = cs.qary_brute_min(f)
    assert m.value == 0.0 and m.argmin == [0, 0, 0]
    assert f([1, 2, 0]) == 2.0
    assert not math.isnan(cs.kraw_eval(5, 3, 2, 1.0))
