import cmath
import math

import numpy as np
import pytest
from scipy.special import gammaln, psi

from zmf.errors import PoleError
from zmf.gamma import (
    EULER_GAMMA,
    binom_general,
    cpow,
    digamma,
    gamma,
    log_gamma,
    pochhammer,
)


def test_gamma_integers():
    for n in range(1, 12):
        assert gamma(float(n)) == pytest.approx(math.factorial(n - 1), rel=1e-14)


def test_gamma_half():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(1.5) == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-14)


def test_log_gamma_matches_scipy_on_positive_axis():
    for x in np.linspace(0.1, 30.0, 47):
        assert log_gamma(x).real == pytest.approx(gammaln(x), rel=1e-13, abs=1e-13)
        assert abs(log_gamma(x).imag) < 1e-13


def test_reflection_negative_real():
    # Gamma(-0.5) = -2 sqrt(pi)
    assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)


def test_gamma_complex_conjugation():
    z = 1.3 + 2.1j
    assert gamma(z.conjugate()) == pytest.approx(gamma(z).conjugate(), rel=1e-13)


def test_gamma_recurrence_complex():
    for z in (0.3 + 0.7j, -1.4 + 2.0j, 5.5 - 3.0j):
        assert gamma(z + 1) == pytest.approx(z * gamma(z), rel=1e-12)


def test_log_gamma_pole():
    for z in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            log_gamma(z)


def test_digamma_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-13)
    for x in (0.3, 2.7, 11.0):
        assert digamma(x) == pytest.approx(psi(x), rel=1e-12)


def test_pochhammer():
    assert pochhammer(3.0, 4) == pytest.approx(3 * 4 * 5 * 6, rel=1e-14)
    assert pochhammer(0.5, 0) == 1.0
    assert pochhammer(-2.0, 4) == 0.0


def test_binom_general_integer_case():
    assert binom_general(5.0, 2) == pytest.approx(10.0, rel=1e-13)


def test_cpow_principal_branch():
    assert cpow(4.0, 0.5) == pytest.approx(2.0, rel=1e-14)
    # (-1)^(1/2) on the principal branch is +i
    assert cpow(-1.0, 0.5) == pytest.approx(1j, rel=1e-14)
    assert cpow(0.0, 2.0) == 0.0
    assert cpow(0.0, 0.0) == 1.0


def test_cpow_log_identity():
    z, s = -2.0 + 1.5j, 0.7 - 0.2j
    assert cpow(z, s) == pytest.approx(cmath.exp(s * cmath.log(z)), rel=1e-14)
