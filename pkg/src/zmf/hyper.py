"""Generalized hypergeometric series p+1Fp and their analytic continuation.

Three evaluation mechanisms live here:

* direct summation with a rigorous ratio-test tail bound (|z| < 1 or
  terminating series),
* unit-argument evaluation with a Hurwitz-zeta-accelerated tail (needed on
  the boundary |k| = 2^r),
* analytic continuation past z = 1 for the specific family
  (-s/2, (1-s)/2, 1/2, ..., 1/2; 1, ..., 1) by numerically integrating the
  order-(r+1) hypergeometric ODE along a half-plane detour path.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    ConvergenceError,
    DomainError,
    NearDegenerateParameterError,
    PoleError,
)
from .gamma import cpow, log_gamma
from .types import EvalResult, Method

_MAX_TERMS = 200_000
_INT_TOL = 1e-9


class ContinuationBranch(str, enum.Enum):
    FROM_ABOVE = "from-above"
    FROM_BELOW = "from-below"


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of a p+1Fp series: upper (a_1..a_{p+1}), lower (b_1..b_p)
    and the argument."""

    upper: tuple
    lower: tuple
    argument: complex

    def __post_init__(self):
        if len(self.upper) != len(self.lower) + 1:
            raise ValueError("need len(upper) == len(lower) + 1")
        object.__setattr__(self, "upper", tuple(complex(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in self.lower))
        object.__setattr__(self, "argument", complex(self.argument))


def _as_nonpositive_int(x: complex):
    """Return m >= 0 when x is numerically the non-positive integer -m."""
    if abs(x.imag) > _INT_TOL:
        return None
    n = round(x.real)
    if n <= 0 and abs(x.real - n) <= _INT_TOL:
        return -n
    return None


def _termination_order(spec: SeriesSpec):
    """Index after which every term vanishes, or None for a full series.

    Raises PoleError when a lower-parameter pole is hit before termination.
    """
    uppers = [m for m in map(_as_nonpositive_int, spec.upper) if m is not None]
    lowers = [m for m in map(_as_nonpositive_int, spec.lower) if m is not None]
    m_stop = min(uppers) if uppers else None
    if lowers:
        m_pole = min(lowers)
        if m_stop is None or m_stop > m_pole:
            raise PoleError(
                "pFq: lower parameter is a non-positive integer and the "
                "series does not terminate before the pole"
            )
    return m_stop


def _sum_terminating(spec: SeriesSpec, m_stop: int):
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(m_stop + 1):
        total += term
        num = 1.0 + 0.0j
        for a in spec.upper:
            num *= a + n
        den = float(n + 1)
        for b in spec.lower:
            den *= b + n
        term *= spec.argument * num / den
    return total


def _term_at(spec: SeriesSpec, n: float) -> complex:
    """n-th series term via Gamma ratios (valid for non-integer n too),
    excluding the z^n factor."""
    acc = 0.0 + 0.0j
    for a in spec.upper:
        acc += log_gamma(n + a) - log_gamma(a)
    for b in spec.lower:
        acc -= log_gamma(n + b) - log_gamma(b)
    acc -= log_gamma(n + 1.0)
    return cmath.exp(acc)


def _sum_near_unit(spec: SeriesSpec, tol: float) -> EvalResult:
    """pFq for z at or near 1: direct partial sum plus a tail fitted to the
    t_n ~ n^{-1-alpha} (c0 + c1/n + ...) asymptotics and summed exactly with
    Hurwitz zeta (z = 1) or Lerch transcendent (z != 1) functions."""
    z = spec.argument
    at_one = abs(z - 1.0) < 1e-14
    alpha = sum(spec.lower) - sum(spec.upper)
    if at_one and alpha.real <= 0:
        raise DomainError(
            "pFq at unit argument diverges: Re(sum(b)-sum(a)) must be > 0"
        )
    n_cut = 1000
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(n_cut + 1):
        total += term
        num = 1.0 + 0.0j
        for a in spec.upper:
            num *= a + n
        den = float(n + 1)
        for b in spec.lower:
            den *= b + n
        term *= z * num / den
    # Fit tail coefficients at geometrically spaced n (Richardson-style).
    n_fit = [n_cut * 2**m for m in range(6)]
    rhs = np.array(
        [_term_at(spec, float(nm)) * cmath.exp((1.0 + alpha) * math.log(nm)) for nm in n_fit]
    )
    vand = np.array([[(1.0 / nm) ** j for j in range(6)] for nm in n_fit])
    coef = np.linalg.solve(vand, rhs)

    def tail_sum(sigma: complex) -> complex:
        # sum_{n > n_cut} z^n n^{-sigma}
        if at_one:
            return complex(mpmath.zeta(complex(sigma), n_cut + 1))
        return complex(
            mpmath.lerchphi(complex(z), complex(sigma), n_cut + 1)
        ) * complex(z) ** (n_cut + 1)

    tail = 0.0 + 0.0j
    for j, c in enumerate(coef):
        tail += complex(c) * tail_sum(1.0 + alpha + j)
    err = (
        abs(coef[-1]) * abs(tail_sum(1.0 + alpha.real + 5)) * 1e-2
        + 1e-15 * abs(total + tail)
    )
    return EvalResult(total + tail, max(err, 2e-13 * abs(total + tail), 1e-15), Method.CLOSED_FORM)


def pfq(spec: SeriesSpec, tol: float = 1e-13) -> EvalResult:
    """Evaluate the generalized hypergeometric series with a tail bound.

    Supported: terminating series (any z), |z| < 1, and |z| = 1 with
    Re(sum(b) - sum(a)) > 0.  Raises DomainError otherwise.
    """
    m_stop = _termination_order(spec)
    if m_stop is not None:
        val = _sum_terminating(spec, m_stop)
        return EvalResult(val, 1e-15 * (1.0 + abs(val)), Method.CLOSED_FORM)
    az = abs(spec.argument)
    if az > 1.0 + 1e-14:
        raise DomainError(f"pFq series diverges for |z| = {az} > 1")
    if az > 1.0 - 1e-3:
        # Plain summation needs ~|log tol| / (1 - |z|) terms here; switch to
        # the asymptotic tail resummation instead.
        return _sum_near_unit(spec, tol)
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    z = spec.argument
    rho = 0.5 * (1.0 + az)  # majorant of the term ratio beyond the transient
    for n in range(_MAX_TERMS):
        total += term
        prev = abs(term)
        num = 1.0 + 0.0j
        for a in spec.upper:
            num *= a + n
        den = float(n + 1)
        for b in spec.lower:
            den *= b + n
        term *= z * num / den
        if term == 0.0:
            return EvalResult(total, 1e-15 * (1.0 + abs(total)), Method.CLOSED_FORM)
        # The ratio tends to |z| < rho; once it is actually below rho the
        # geometric majorant bounds the whole tail.
        if n >= 4 and prev > 0 and abs(term) <= rho * prev:
            bound = abs(term) * rho / (1.0 - rho)
            if bound < tol:
                return EvalResult(
                    total + term, bound + 1e-15 * abs(total), Method.CLOSED_FORM
                )
    raise ConvergenceError("pFq: series did not converge within the term budget")


def gauss_at_1(a: complex, b: complex, c: complex) -> EvalResult:
    """Gauss summation: 2F1(a, b; c; 1) = G(c)G(c-a-b) / (G(c-a)G(c-b))."""
    a, b, c = complex(a), complex(b), complex(c)
    if (c - a - b).real <= 0:
        raise DomainError("gauss_at_1 requires Re(c - a - b) > 0")
    if _as_nonpositive_int(c) is not None:
        raise PoleError("gauss_at_1: c is a non-positive integer")
    # Gamma poles in the denominator make the ratio vanish.
    for d in (c - a, c - b):
        if _as_nonpositive_int(d) is not None:
            return EvalResult(0.0 + 0.0j, 1e-16, Method.CLOSED_FORM)
    val = cmath.exp(
        log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b)
    )
    return EvalResult(val, 1e-14 * abs(val), Method.CLOSED_FORM)


def _f21(a, b, c, z, tol=1e-13) -> EvalResult:
    return pfq(SeriesSpec((a, b), (c,), z), tol)


def euler_transform_2f1(a, b, c, z, tol: float = 1e-13) -> EvalResult:
    """(1-z)^(c-a-b) 2F1(c-a, c-b; c; z), checked against the direct series."""
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise DomainError("euler_transform_2f1: z on the cut [1, inf)")
    a, b, c = complex(a), complex(b), complex(c)
    lhs = cpow(1.0 - z, c - a - b) * pfq(SeriesSpec((c - a, c - b), (c,), z), tol).value
    direct = pfq(SeriesSpec((a, b), (c,), z), tol)
    resid = abs(lhs - direct.value)
    if resid > 1e3 * (direct.abs_err + tol) + 1e-10 * (1 + abs(lhs)):
        raise ConvergenceError(
            f"euler_transform_2f1: identity residual {resid} out of bounds"
        )
    return EvalResult(lhs, resid + direct.abs_err, Method.CLOSED_FORM)


def pfaff_transform_2f1(a, b, c, z, tol: float = 1e-13) -> EvalResult:
    """(1-z)^(-a) 2F1(a, c-b; c; z/(z-1)); stated validity |z| <= 1/2."""
    z = complex(z)
    if abs(z) > 0.5 + 1e-12:
        raise DomainError("pfaff_transform_2f1 requires |z| <= 1/2")
    a, b, c = complex(a), complex(b), complex(c)
    w = z / (z - 1.0) if z != 0 else 0.0 + 0.0j
    lhs = cpow(1.0 - z, -a) * pfq(SeriesSpec((a, c - b), (c,), w), tol).value
    direct = pfq(SeriesSpec((a, b), (c,), z), tol)
    resid = abs(lhs - direct.value)
    if resid > 1e3 * (direct.abs_err + tol) + 1e-10 * (1 + abs(lhs)):
        raise ConvergenceError(
            f"pfaff_transform_2f1: identity residual {resid} out of bounds"
        )
    return EvalResult(lhs, resid + direct.abs_err, Method.CLOSED_FORM)


def family_spec(r: int, s: complex, w: complex) -> SeriesSpec:
    """The light-regime series (-s/2, (1-s)/2, 1/2...; 1...; w) of order r+1."""
    upper = (-s / 2.0, (1.0 - complex(s)) / 2.0) + ((0.5 + 0.0j),) * (r - 1)
    return SeriesSpec(upper, ((1.0 + 0.0j),) * r, w)


def _is_family(spec: SeriesSpec):
    """Recover (r, s) when spec has the family shape, else None."""
    r = len(spec.lower)
    if any(abs(b - 1.0) > 1e-12 for b in spec.lower):
        return None
    if any(abs(a - 0.5) > 1e-12 for a in spec.upper[2:]):
        return None
    s = -2.0 * spec.upper[0]
    if abs(spec.upper[1] - (1.0 - s) / 2.0) > 1e-12:
        return None
    return r, s


_DETOUR = 0.25
_ODE_RTOL = 1e-12
_ODE_ATOL = 1e-14


def _series_theta_derivatives(spec: SeriesSpec, z0: complex, order: int):
    """(theta^j F)(z0) for j = 0..order by term-wise differentiation."""
    vals = [0.0 + 0.0j] * (order + 1)
    term = 1.0 + 0.0j
    for n in range(_MAX_TERMS):
        for j in range(order + 1):
            vals[j] += term * (float(n) ** j)
        num = 1.0 + 0.0j
        for a in spec.upper:
            num *= a + n
        den = float(n + 1)
        for b in spec.lower:
            den *= b + n
        term *= z0 * num / den
        if n > 8 and abs(term) * (float(n) ** order) < 1e-16:
            break
    else:
        raise ConvergenceError("initial-condition series did not converge")
    return vals


def _theta_poly(params) -> np.ndarray:
    """Coefficients of prod(theta + p) as a polynomial in theta."""
    coeffs = np.array([1.0 + 0.0j])
    for p in params:
        coeffs = np.convolve(coeffs, np.array([complex(p), 1.0 + 0.0j]))
    return coeffs  # coeffs[m] multiplies theta^m


def pfq_continued(
    spec: SeriesSpec,
    branch: ContinuationBranch,
    tol: float = 1e-11,
) -> EvalResult:
    """Analytic continuation of the family pFq to real argument w > 1 along a
    path through the chosen half-plane (w < 1 is allowed and stays on the
    real axis; both branches then agree)."""
    fam = _is_family(spec)
    if fam is None:
        raise DomainError("pfq_continued supports only the family parameter shape")
    r, s = fam
    w = spec.argument
    if abs(w.imag) > 1e-13:
        raise DomainError("pfq_continued expects a real argument")
    w = w.real
    if w <= 0:
        raise DomainError("pfq_continued expects argument > 0")
    if abs(s.imag) < 1e-9 and s.real > 0:
        m = round((s.real - 1.0) / 2.0)
        if m >= 0 and abs(s.real - (2 * m + 1)) < 1e-6 and w > 1.0:
            raise NearDegenerateParameterError(
                "s within 1e-6 of an odd positive integer; use the limit formulas"
            )
    m_stop = _termination_order(spec)
    if m_stop is not None:
        val = _sum_terminating(spec, m_stop)
        return EvalResult(val, 1e-14 * (1.0 + abs(val)), Method.CLOSED_FORM)
    if abs(w - 1.0) < 10 * _ODE_ATOL:
        raise DomainError("pfq_continued: argument pinned at the singularity z = 1")

    z0 = 0.5 + 0.0j
    order = r  # ODE order is r+1; carry theta^0..theta^r
    y0 = np.array(
        _series_theta_derivatives(SeriesSpec(spec.upper, spec.lower, z0), z0, order)
    )
    if w < 1.0 - _DETOUR / 4.0:
        path = [z0, complex(w)]
    else:
        sigma = 1.0 if branch is ContinuationBranch.FROM_ABOVE else -1.0
        lift = 1j * sigma * _DETOUR
        path = [z0, z0 + lift, complex(w) + lift, complex(w)]

    r_coef = _theta_poly(spec.upper)  # degree r+1
    # lower params are all 1: L(theta) = theta^{r+1}

    def rhs(z, y):
        dy = np.empty_like(y)
        dy[:-1] = y[1:] / z
        top = np.dot(r_coef[: order + 1], y)  # sum R_m theta^m y, m<=r
        # (1 - z) theta^{r+1} y = z * (R_{r+1}=1) theta^{r+1} y ... rearranged:
        # theta^{r+1} y = z * sum_{m<=r} R_m theta^m y / (1 - z)
        dy[-1] = top / (1.0 - z)
        return dy

    y = y0
    for za, zb in zip(path[:-1], path[1:]):
        seg = zb - za

        def seg_rhs(t, yv, za=za, seg=seg):
            return seg * rhs(za + t * seg, yv)

        sol = solve_ivp(
            seg_rhs,
            (0.0, 1.0),
            y,
            method="DOP853",
            rtol=_ODE_RTOL,
            atol=_ODE_ATOL,
            dense_output=False,
        )
        if not sol.success:
            raise ConvergenceError(f"ODE continuation failed: {sol.message}")
        y = sol.y[:, -1]
    val = complex(y[0])
    err = max(1e-11 * (1.0 + abs(val)), 1e-14)
    return EvalResult(val, err, Method.CONTOUR)
