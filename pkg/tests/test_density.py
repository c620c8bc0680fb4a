import math

import numpy as np
import pytest

from zmf.errors import DomainError, EdgeSingularityError
from zmf.density import g_recursion, mellin_H, moment, moment_quadrature, p_hat, p_r
from zmf.oracle import density_quadrature
from zmf.types import ZmfPoint


def test_p_hat_r1_closed_form():
    for x in (0.3, 1.0, 1.9, -1.2):
        want = 1.0 / (math.pi * math.sqrt(4.0 - x * x))
        assert p_hat(1, x) == pytest.approx(want, rel=1e-12)


def test_p_hat_support():
    assert p_hat(1, 2.5) == 0.0
    assert p_hat(2, 4.7) == 0.0
    assert p_hat(3, -9.0) == 0.0


def test_p_hat_edge_singularities():
    with pytest.raises(EdgeSingularityError):
        p_hat(1, 2.0)
    with pytest.raises(EdgeSingularityError):
        p_hat(2, 0.0)


def test_p_hat_symmetry():
    for r in (1, 2, 3):
        for x in (0.4, 1.7, 3.0):
            if abs(x) < 2.0**r:
                assert p_hat(r, x) == pytest.approx(p_hat(r, -x), rel=1e-14)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_normalization(r):
    got = moment_quadrature(r, 0)
    assert got.value.real == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("r", [2, 3])
def test_recursion_matches_closed_form(r):
    from zmf.density import _g_closed_arr

    ys = np.linspace(0.02, 0.98, 20)
    for y in ys:
        closed = _g_closed_arr(r, np.array([y]))[0]
        rec = g_recursion(r, float(y)).value.real
        assert rec == pytest.approx(closed, abs=1e-8, rel=1e-8)


def test_recursion_reaches_r6():
    v4 = g_recursion(4, 0.5)
    v6 = g_recursion(6, 0.5)
    assert v4.value.real > 0.0 and v6.value.real > 0.0
    assert v4.abs_err < 1e-8 and v6.abs_err < 1e-6


def test_folded_density_matches_moment():
    # int x^2 p_r(k;x) dx must equal k^2 + 2^r; density_quadrature works in
    # the x variable, so interior singular points cap it near 1e-8
    for r, k in ((1, 1.0), (2, 3.0), (3, 2.0)):
        got = density_quadrature(ZmfPoint(r, k, 2.0))
        assert got.value.real == pytest.approx(k * k + 2.0**r, rel=1e-7)


def test_even_moments_are_central_binomials():
    for r in (1, 2, 3):
        for n in (1, 2, 3):
            want = float(math.comb(2 * n, n)) ** r
            got = moment(r, 2 * n, True)
            assert got.real == pytest.approx(want, rel=1e-12)


def test_even_moment_quadrature_matches_integers():
    for r in (1, 2, 3):
        for n in (1, 3, 5):
            want = float(math.comb(2 * n, n)) ** r
            got = moment_quadrature(r, 2 * n)
            assert got.value.real == pytest.approx(want, rel=1e-10)
    assert moment_quadrature(2, 3).value == 0.0


def test_odd_two_sided_moments_vanish():
    for r in (1, 2, 3):
        for v in (1, 3, 5):
            assert abs(moment(r, v, True)) < 1e-12


def test_one_sided_moment_positive():
    assert moment(1, 1.0, False).real == pytest.approx(2.0 / math.pi, rel=1e-12)


def test_mellin_H_r1():
    # H-transform factor at s = 1 for one variable: G(1/2)G(2)/(2 pi G(5/2))
    want = math.gamma(0.5) * math.gamma(2.0) / (2.0 * math.pi * math.gamma(2.5))
    assert mellin_H(1, 1.0) == pytest.approx(want, rel=1e-12)


def test_p_r_folding():
    # for x > k the folded density is p_hat(x-k)+p_hat(x+k) restricted to support
    r, k, x = 2, 1.0, 1.5
    want = p_hat(r, x - k) + p_hat(r, x + k)
    assert p_r(r, k, x) == pytest.approx(want, rel=1e-12)


def test_bad_inputs():
    with pytest.raises(DomainError):
        p_hat(7, 0.5)
    with pytest.raises(DomainError):
        g_recursion(1, 0.5)
