import math

import pytest

from zmf.errors import DomainError
from zmf.oracle import density_quadrature, monte_carlo, torus_quadrature
from zmf.types import QuadratureConfig, ZmfPoint
from zmf.zmf import w, w1

CFG = QuadratureConfig(tol=1e-10)


class TestTorus:
    def test_r1_light(self):
        res = torus_quadrature(ZmfPoint(1, 3.0, 2.0), CFG)
        assert res.value.real == pytest.approx(11.0, abs=1e-10)

    def test_r1_heavy(self):
        want = 1.0 / 3.0 + 2.0 * math.sqrt(3.0) / math.pi
        res = torus_quadrature(ZmfPoint(1, 1.0, 1.0), CFG)
        assert res.value.real == pytest.approx(want, abs=1e-10)

    def test_r1_boundary_negative_s(self):
        # the hardest r = 1 point: a near-double root with s = -0.4
        res = torus_quadrature(ZmfPoint(1, 2.0, -0.4), CFG)
        ref = w1(2.0, -0.4).value
        assert abs(res.value - ref) <= max(1e-9, res.abs_err + 1e-12)

    def test_r1_complex_s(self):
        s = 1.0 + 0.5j
        res = torus_quadrature(ZmfPoint(1, 1.0, s), CFG)
        ref = w1(1.0, s).value
        assert abs(res.value - ref) < 1e-9

    def test_r2_heavy(self):
        res = torus_quadrature(ZmfPoint(2, 3.9, 2.0), CFG)
        assert res.value.real == pytest.approx(3.9**2 + 4.0, abs=1e-9)

    def test_r2_vs_closed_form(self):
        res = torus_quadrature(ZmfPoint(2, 2.0, 0.7), CFG)
        ref = w(2, 2.0, 0.7).value
        assert abs(res.value - ref) < 1e-8

    def test_k_zero_factorizes(self):
        res = torus_quadrature(ZmfPoint(2, 0.0, 1.5), CFG)
        ref = w(2, 0.0, 1.5).value
        assert abs(res.value - ref) < 1e-9

    def test_rejects_large_r(self):
        with pytest.raises(DomainError):
            torus_quadrature(ZmfPoint(4, 1.0, 2.0), CFG)

    def test_rejects_nonintegrable(self):
        with pytest.raises(DomainError):
            torus_quadrature(ZmfPoint(1, 1.0, -1.2), CFG)


class TestMonteCarlo:
    def test_reproducible_bit_for_bit(self):
        cfg = QuadratureConfig(seed=42, samples=200_000)
        a = monte_carlo(ZmfPoint(3, 2.0, 1.5), cfg)
        b = monte_carlo(ZmfPoint(3, 2.0, 1.5), cfg)
        assert a.value == b.value
        assert a.abs_err == b.abs_err

    def test_seed_changes_stream(self):
        p = ZmfPoint(2, 1.0, 1.0)
        a = monte_carlo(p, QuadratureConfig(seed=1, samples=100_000))
        b = monte_carlo(p, QuadratureConfig(seed=2, samples=100_000))
        assert a.value != b.value

    def test_within_error_bars(self):
        # abs_err is 3 standard errors; the exact value 11 must be inside
        res = monte_carlo(ZmfPoint(1, 3.0, 2.0), QuadratureConfig(samples=400_000))
        assert abs(res.value.real - 11.0) < res.abs_err


class TestDensityRoute:
    def test_matches_closed_form_heavy(self):
        res = density_quadrature(ZmfPoint(2, 1.0, 1.5), CFG)
        ref = w(2, 1.0, 1.5).value
        assert abs(res.value - ref) < 1e-7

    def test_matches_closed_form_light(self):
        # interior singular abscissae of p_r cap the x-variable quadrature
        # near 1e-8 (sub-ulp mass at the segment ends)
        res = density_quadrature(ZmfPoint(1, 3.0, 2.0), CFG)
        assert res.value.real == pytest.approx(11.0, rel=1e-7)

    def test_rejects_low_s(self):
        with pytest.raises(DomainError):
            density_quadrature(ZmfPoint(1, 1.0, -1.5), CFG)
