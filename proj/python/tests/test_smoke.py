import math

import pytest

import harmonia


def test_sequences():
    assert harmonia.lp_norm([3, 4], 2) == pytest.approx(5.0)
    assert harmonia.conjugate_exponent(3.0) == pytest.approx(1.5)
    value, ext = harmonia.dual_norm([1, 1j, -2], 1.0)
    assert value == pytest.approx(2.0)
    assert abs(harmonia.pairing(ext, [1, 1j, -2])) == pytest.approx(value)
    with pytest.raises(harmonia.PreconditionError):
        harmonia.conjugate_exponent(0.5)


def test_polynomials():
    p = {"dim": 1, "terms": [{"alpha": [1], "re": 1.0}, {"alpha": [0], "re": 1.0}]}
    sq = harmonia.poly_mul(p, p)
    assert harmonia.poly_eval(sq, [2.0]) == pytest.approx(9.0)
    value, bound = harmonia.exp_series(1.0, 20)
    assert abs(value - math.e) <= bound


def test_torus_and_line():
    assert harmonia.poisson_mass([0.5 + 0.3j], 512) == pytest.approx(1.0, abs=1e-12)
    a, b = harmonia.parseval(1, 4, [2, 1 + 1j, 0, 1 - 1j])
    assert a == pytest.approx(b)
    value, tail = harmonia.abel_sum([(-1) ** j for j in range(100000)], 0.999)
    assert abs(value - 0.5) <= 1e-3
    q, t, total = harmonia.pa_hat_integral(1.0, 1e3, 16000)
    assert total == pytest.approx(2 * math.pi, abs=1e-8)


def test_algebra():
    x = [[0, 1], [0, 0]]
    assert harmonia.operator_norm(x) == pytest.approx(1.0)
    assert harmonia.spectral_radius(x, 64) <= 0.1
    inv, bound, terms = harmonia.neumann_inverse([[0.5, 0], [0, 0.25]])
    assert inv[0][0] == pytest.approx(2.0)
    assert harmonia.volterra_power_norm(2, 1000) == pytest.approx(0.5, rel=1e-2)


def test_hulls():
    c = harmonia.convex_membership([0.2, 0.2], [[0, 0], [1, 0], [0, 1]])
    assert c["kind"].startswith("Inside")
    c = harmonia.poly_hull_membership([3.0], [[1.0], [1j]])
    assert c["kind"] == "MonomialWitness"
