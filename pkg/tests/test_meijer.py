import mpmath
import pytest

from zmf.errors import DomainError
from zmf.meijer import (
    MeijerSpec,
    meijer_mb,
    meijer_triple_integral,
    w2_g_spec,
    w3_g_spec,
)


def mp_g(spec: MeijerSpec) -> complex:
    m, n, p, q = spec.orders
    a = [list(spec.a_params[:n]), list(spec.a_params[n:])]
    b = [list(spec.b_params[:m]), list(spec.b_params[m:])]
    return complex(mpmath.meijerg(a, b, spec.argument))


@pytest.mark.parametrize("s,k", [(0.5, 1.0), (2.0, 3.0), (1.2, 6.0), (0.0, 2.0)])
def test_w3_block_against_mpmath(s, k):
    spec = w3_g_spec(s, k)
    got = meijer_mb(spec)
    want = mp_g(spec)
    assert got.value == pytest.approx(want, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("s,k", [(1.0, 1.0), (1.0, 2.0), (3.0, 1.0)])
def test_w2_block_against_mpmath(s, k):
    # half-integer left poles interleave the integer right family here, so
    # this exercises the indented contour with residue corrections
    spec = w2_g_spec(s, k)
    got = meijer_mb(spec)
    want = mp_g(spec)
    assert got.value == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_conjugation_symmetry():
    s = 1.5 + 0.4j
    up = meijer_mb(w3_g_spec(s, 2.0)).value
    dn = meijer_mb(w3_g_spec(s.conjugate(), 2.0)).value
    assert dn == pytest.approx(up.conjugate(), rel=1e-10)


def test_cross_method_triple_integral():
    # both routes return the bare G value, normalized identically
    for s, k in [(0.5, 1.0), (2.0, 4.0), (1.2, 6.0)]:
        a = meijer_mb(w3_g_spec(s, k))
        b = meijer_triple_integral(s, k)
        assert b.value == pytest.approx(a.value, rel=1e-7, abs=1e-8)


def test_invalid_spec_rejected():
    with pytest.raises(DomainError):
        MeijerSpec((0.5,) * 4, (0.0,) * 4, (2, 4, 4, 4), 1.5)
    with pytest.raises(DomainError):
        MeijerSpec((0.5,) * 3, (0.0,) * 3, (1, 1, 3, 3), 0.5)
