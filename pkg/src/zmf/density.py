"""Probability densities of prod_i (X_i + 1/X_i) and of |k + prod_i (X_i + 1/X_i)|.

Closed forms are available for r <= 3; the G_r recursion covers larger r by
nested singularity-aware quadrature.  Conventions: p_hat_r is the density of
the signed product (support [-2^r, 2^r]); p_r(k;.) is the folded density of
the absolute value (support [0, |k| + 2^r]).  The two are linked through
p_hat_r(x) = G_r(1 - x^2 / 4^r).
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import hyp2f1

from .errors import DomainError, EdgeSingularityError
from .gamma import log_gamma
from .types import EvalResult, Method
from .quadutil import tanh_sinh_relaxed

_TWO_PI = 2.0 * math.pi
_EDGE_TOL = 1e-14


def _hyp2f1_safe(a: float, b: float, c: float, y: np.ndarray) -> np.ndarray:
    """scipy hyp2f1 with an mpmath fallback in the last ~1e-13 before y = 1,
    where the scipy implementation overflows on these parameter triples."""
    out = hyp2f1(a, b, c, y)
    bad = ~np.isfinite(out) & (y < 1.0)
    if np.any(bad):
        import mpmath

        out[bad] = [float(mpmath.hyp2f1(a, b, c, yv)) for yv in np.atleast_1d(y[bad])]
    return out


def _g_closed_arr(r: int, y: np.ndarray) -> np.ndarray:
    """Closed-form G_r on arrays, r <= 3; zero outside (0, 1]."""
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    inside = (y > 0.0) & (y <= 1.0)
    yi = y[inside]
    if r >= 2:
        # Quadrature nodes can round onto the singular point exactly; nudge
        # inside so the (finite-weight) node gets a large finite value.
        yi = np.where(yi == 1.0, 1.0 - 1e-16, yi)
    if r == 1:
        out[inside] = 1.0 / (_TWO_PI * np.sqrt(yi))
    elif r == 2:
        out[inside] = _hyp2f1_safe(0.5, 0.5, 1.0, yi) / (4.0 * math.pi)
    elif r == 3:
        out[inside] = (
            np.sqrt(yi)
            / (4.0 * math.pi**2)
            * _hyp2f1_safe(0.25, 0.25, 0.5, yi)
            * _hyp2f1_safe(0.75, 0.75, 1.5, yi)
        )
    else:
        raise DomainError("closed-form G_r only for r <= 3")
    return out


def _p_hat_arr(r: int, x: np.ndarray) -> np.ndarray:
    """Vectorized p_hat_r without singular-point policing (quadrature use)."""
    x = np.asarray(x, dtype=float)
    return _g_closed_arr(r, 1.0 - x**2 / 4.0**r)


def p_hat(r: int, x: float) -> float:
    """Closed-form density of the signed product, r in {1, 2, 3}.

    Raises EdgeSingularityError at the exact singular abscissae (|x| = 2 for
    r = 1; x = 0 for r = 2, 3); returns 0 outside the support.
    """
    if r not in (1, 2, 3):
        raise DomainError("p_hat supports r in {1, 2, 3}")
    x = float(x)
    if r == 1 and abs(abs(x) - 2.0) <= _EDGE_TOL:
        raise EdgeSingularityError("p_hat_1 diverges at |x| = 2")
    if r in (2, 3) and abs(x) <= _EDGE_TOL:
        raise EdgeSingularityError(f"p_hat_{r} diverges at x = 0")
    if abs(x) >= 2.0**r:
        return 0.0
    return float(_p_hat_arr(r, np.array([x]))[0])


def _g_recursion_impl(r: int, y: float, tol: float, base_closed: int):
    """G_r(y) by the integral recursion; returns (value, error).

    Levels at or below `base_closed` use the closed form as base case.
    """
    if r <= base_closed:
        return float(_g_closed_arr(min(r, 3), np.array([y]))[0]), 0.0

    child_err = [0.0]

    def integrand(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if r - 1 <= base_closed:
            g = _g_closed_arr(min(r - 1, 3), y * v)
        else:
            g = np.empty(len(v))
            for i, vi in enumerate(v):
                g[i], e = _g_recursion_impl(r - 1, y * vi, tol / 2.0, base_closed)
                child_err[0] = max(child_err[0], e)
        # Floor the radicand: nodes can round onto v = 1 where the weight is
        # already negligible, and inf * tiny-weight would poison the sum.
        return g / np.sqrt(np.maximum((1.0 - v) * (1.0 - y * v), 1e-300))

    val, err = tanh_sinh_relaxed(integrand, 0.0, 1.0, tol)
    scale = math.sqrt(y) / _TWO_PI
    return scale * val.real, scale * (err + child_err[0])


def g_recursion(r: int, y: float, tol: float = 1e-10) -> EvalResult:
    """G_r(y) for 0 < y < 1 via the recursion with base case G_1.

    r > 6 is rejected (cost guard); r >= 4 bases the recursion on the
    closed-form G_3 to keep the nesting depth bounded.
    """
    if r < 2:
        raise DomainError("g_recursion requires r >= 2")
    if r > 6:
        raise DomainError("g_recursion depth capped at r = 6")
    if not 0.0 < y < 1.0:
        raise DomainError("g_recursion requires 0 < y < 1")
    base = 1 if r <= 3 else 3
    val, err = _g_recursion_impl(r, float(y), tol, base)
    return EvalResult(complex(val), err, Method.QUADRATURE)


def _singular_abscissae(r: int, k: float) -> list:
    """Candidate breakpoints of x -> p_r(k;x) inside (0, |k| + 2^r)."""
    k = abs(float(k))
    if r == 1:
        sigma = (-2.0, 2.0)
    else:
        sigma = (-(2.0**r), 0.0, 2.0**r)
    pts = {2.0**r - k}
    for sg in sigma:
        pts.add(sg + k)
        pts.add(sg - k)
    return sorted(p for p in pts if p > 0.0)


def _p_r_arr(r: int, k: float, x: np.ndarray) -> np.ndarray:
    """Vectorized folded density p_r(k; x) from the closed forms (r <= 3)."""
    k = abs(float(k))
    x = np.asarray(x, dtype=float)
    edge = 2.0**r
    out = _p_hat_arr(r, x - k)
    out = np.where((x >= 0.0) & (x < edge + k), out, 0.0)
    if k < edge:
        fold = np.where((x >= 0.0) & (x < edge - k), _p_hat_arr(r, x + k), 0.0)
        out = out + fold
    return out


def p_r(r: int, k: float, x: float) -> float:
    """Folded density of |k + prod(X_i + 1/X_i)| at a point.

    Closed-form path for r <= 3, recursion path for 4 <= r <= 6.
    Propagates EdgeSingularityError from the underlying p_hat branches.
    """
    k = abs(float(k))
    x = float(x)
    edge = 2.0**r
    if x < 0.0 or x >= edge + k:
        return 0.0
    if r <= 3:
        # Route through scalar p_hat so singular abscissae raise.
        val = p_hat(r, x - k) if abs(x - k) < edge else 0.0
        if k < edge and x < edge - k:
            val += p_hat(r, x + k)
        return val
    if r > 6:
        raise DomainError("p_r supports r <= 6")

    def ph(z: float) -> float:
        y = 1.0 - z**2 / 4.0**r
        if not 0.0 < y <= 1.0:
            return 0.0
        return g_recursion(r, min(y, 1.0 - 1e-15)).value.real

    val = ph(x - k) if abs(x - k) < edge else 0.0
    if k < edge and x < edge - k:
        val += ph(x + k)
    return val


def moment(r: int, v: complex, two_sided: bool) -> complex:
    """v-th moment of the signed product density, Re(v) > -1.

    One-sided integrates over (0, 2^r); the two-sided variant carries the
    (1 + e^{i pi v}) phase factor and vanishes at odd integers.
    """
    v = complex(v)
    if v.real <= -1.0:
        raise DomainError("moment requires Re(v) > -1")
    base = cmath.exp(
        v * math.log(2.0)
        - math.log(math.pi)
        + log_gamma(0.5)
        + log_gamma((v + 1.0) / 2.0)
        - log_gamma(1.0 + v / 2.0)
    )
    one_sided = 0.5 * base**r
    if not two_sided:
        return one_sided
    return (1.0 + cmath.exp(1j * math.pi * v)) * one_sided


# Laurent data of the Mellin transform at its s = -1 pole: mellin_H(r, s)
# has an order-r pole there, mellin_H = sum_j A_j / (s+1)^j + analytic, so
# H_r(u) = sum_j A_j log(1/u)^(j-1) / (j-1)! + O(u log^(r-1) u) as u -> 0.
# Coefficients from the Taylor series of Gamma(1+e) Gamma(1/2) /
# (2 pi Gamma(1/2+e)) raised to the r-th power (30-digit arithmetic).
_H_SMALL_COEFFS = {
    2: (0.070230492772683, 0.025330295910584),
    3: (0.014970162687827, 0.016766295120828, 0.0040314418041499),
    4: (
        0.00099371738860178,
        0.0056429282450903,
        0.0035579183277564,
        0.00064162389091777,
    ),
}


def _h_arr(r: int, u: np.ndarray) -> np.ndarray:
    """H_r(u) = G_r(1 - u) with full accuracy in small u, r <= 4.

    Forming 1 - u collapses sub-ulp u onto 1 exactly, which truncates the
    logarithmic divergence of G_r near its x = 0 point; below the crossover
    the pole expansion of the Mellin transform gives H_r directly in terms
    of log u (r = 4 additionally needs it because the recursion quadrature
    degrades near the divergence).
    """
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    # r = 4 has no closed form and a noisier recursion; hand off earlier.
    cross = 1e-13 if r <= 3 else 1e-6
    small = u < cross
    if np.any(~small):
        ub = u[~small]
        if r <= 3:
            out[~small] = _g_closed_arr(r, 1.0 - ub)
        else:
            out[~small] = [
                g_recursion(4, 1.0 - float(uv), 1e-8).value.real for uv in ub
            ]
    if np.any(small):
        with np.errstate(divide="ignore"):
            el = -np.log(u[small])
        if r == 1:
            out[small] = 1.0 / (_TWO_PI * np.sqrt(1.0 - u[small]))
        else:
            acc = np.zeros_like(el)
            for j, a in enumerate(_H_SMALL_COEFFS[r]):
                acc += a * el**j / math.factorial(j)
            out[small] = acc
    return out


def moment_quadrature(r: int, v: int, tol: float = 1e-12) -> EvalResult:
    """Two-sided integer moment int x^v p_hat_r(x) dx by direct quadrature.

    Substituting y = 1 - x^2/4^r turns the moment into
    2^r 4^(rn) int_0^1 (1-y)^(n-1/2) G_r(y) dy with v = 2n, which anchors
    the x = 2^r edge singularity at y = 0 and the x = 0 one at y = 1; the
    y = 1 end is integrated in u = 1 - y so both singular points sit at the
    origin of their local variable, where floats still resolve the mass.
    """
    if r not in (1, 2, 3):
        raise DomainError("moment_quadrature supports r in {1, 2, 3}")
    if not (isinstance(v, int) and v >= 0):
        raise DomainError("moment_quadrature requires an integer v >= 0")
    if v % 2 == 1:
        # Odd moments vanish by the x -> -x symmetry of p_hat_r.
        return EvalResult(0.0 + 0.0j, 0.0, Method.QUADRATURE)
    n = v // 2
    ex = n - 0.5

    def from_edge(y: np.ndarray) -> np.ndarray:
        return (1.0 - y) ** ex * _g_closed_arr(r, y)

    def from_zero(u: np.ndarray) -> np.ndarray:
        return u**ex * _h_arr(r, u)

    total = 0.0
    err = 0.0
    for f in (from_edge, from_zero):
        val, e = tanh_sinh_relaxed(f, 0.0, 0.5, tol / 2.0)
        total += val.real
        err += e
    scale = 2.0**r * 4.0 ** (r * n)
    return EvalResult(complex(scale * total), scale * err, Method.QUADRATURE)


def mellin_H(r: int, s: complex) -> complex:
    """Mellin transform int_0^1 y^s H_r(y) dy with H_r(y) = G_r(1-y)."""
    s = complex(s)
    if s.real <= -1.0:
        raise DomainError("mellin_H requires Re(s) > -1")
    factor = cmath.exp(
        log_gamma(0.5) + log_gamma(s + 1.0) - log_gamma(s + 1.5)
    ) / _TWO_PI
    return factor**r
