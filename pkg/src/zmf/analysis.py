"""Identity verification and analytic structure of W_1, plus Mahler measures.

Contents: the two functional equations in s, critical-line zero location by a
phase-normalized real form plus bisection, off-line zero exclusion by the
argument principle, the Jacobi-function machinery behind the critical-line
proof, the closed-form Mahler measures of k + prod(x_i + 1/x_i) for r = 2, 3
with their integral and derivative cross-routes, and rational reconstruction
of W_1(1;n).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy.special import ellipkm1

from .errors import ConvergenceError, DomainError, PoleError
from .gamma import cpow
from .hyper import SeriesSpec, pfq
from .meijer import meijer_mb, w3_g_spec
from .types import EvalResult, Method
from .quadutil import tanh_sinh_relaxed
from .zmf import w1, w2, w3


def check_fe_light(k: float, s: complex) -> float:
    """Residual of W_1(k;-s-1) = (k^2-4)^(-s-1/2) W_1(k;s), |k| > 2."""
    k = abs(float(k))
    s = complex(s)
    if k <= 2.0:
        raise DomainError("light functional equation requires |k| > 2")
    lhs = w1(k, -s - 1.0).value
    rhs = cpow(k * k - 4.0, -s - 0.5) * w1(k, s).value
    return abs(lhs - rhs)


def check_fe_heavy(k: float, s: complex) -> float:
    """Residual of W_1(k;-s-1) = cot(-pi s/2) (4-k^2)^(-s-1/2) W_1(k;s),
    |k| < 2, -1 < Re(s) < 0."""
    k = abs(float(k))
    s = complex(s)
    if k >= 2.0:
        raise DomainError("heavy functional equation requires |k| < 2")
    if not -1.0 < s.real < 0.0:
        raise DomainError("heavy functional equation strip is -1 < Re(s) < 0")
    sn = cmath.sin(-0.5 * math.pi * s)
    if abs(sn) < 1e-8:
        raise PoleError("cot(-pi s/2) pole too close")
    cot = cmath.cos(-0.5 * math.pi * s) / sn
    lhs = w1(k, -s - 1.0).value
    rhs = cot * cpow(4.0 - k * k, -s - 0.5) * w1(k, s).value
    return abs(lhs - rhs)


@dataclass(frozen=True)
class ZeroRecord:
    """A zero of t -> W_1(k; -1/2 + it) located on the critical line."""

    k: float
    t: float
    residual: float
    method: str


@dataclass(frozen=True)
class BoxCount:
    """Argument-principle winding (zeros minus poles) over a rectangle."""

    box: tuple
    winding: int


def _phase_factor(k: float, t: float) -> float:
    """arg of the reflection factor X(t) with conj(W(s)) = X(t) W(s) on the
    line s = -1/2 + it; |X| = 1 there in both regimes."""
    k = abs(k)
    s = complex(-0.5, t)
    if k > 2.0:
        return -t * math.log(k * k - 4.0)
    cot = cmath.cos(-0.5 * math.pi * s) / cmath.sin(-0.5 * math.pi * s)
    x = cot * cmath.exp(-1j * t * math.log(4.0 - k * k))
    return cmath.phase(x)


def _xi(k: float, t: float, phi: float) -> complex:
    """Phase-normalized W_1 on the line; real for the correct unwrapped phi."""
    return cmath.exp(0.5j * phi) * w1(k, complex(-0.5, t)).value


def _unwrap_near(phi: float, ref: float) -> float:
    two_pi = 2.0 * math.pi
    while phi - ref > math.pi:
        phi -= two_pi
    while phi - ref < -math.pi:
        phi += two_pi
    return phi


def find_zeros_w1(k: float, t_max: float, dt: float = 0.02) -> list:
    """All zeros of W_1(k; -1/2 + it) for t in [0, t_max], by sign tracking
    of the real phase-normalized form and bisection to |Delta t| < 1e-12."""
    k = abs(float(k))
    if abs(k - 2.0) < 1e-9:
        raise DomainError("|k| = 2 boundary case is excluded from the search")
    if t_max > 50.0:
        raise DomainError("t_max capped at 50")
    ts = np.arange(0.0, t_max + dt / 2, dt)
    phis = np.unwrap([_phase_factor(k, float(t)) for t in ts])
    xis = [_xi(k, float(t), float(p)) for t, p in zip(ts, phis)]
    scale = max(abs(x) for x in xis)
    if any(abs(x.imag) > 1e-9 * (1.0 + scale) for x in xis):
        raise ConvergenceError(
            "phase normalization failed: xi has a residual imaginary part"
        )
    zeros = []
    for i in range(len(ts) - 1):
        a, b = float(ts[i]), float(ts[i + 1])
        fa, fb = xis[i].real, xis[i + 1].real
        if fa == 0.0:
            continue
        if fa * fb > 0.0:
            continue
        phi_ref = float(phis[i])
        while b - a > 1e-12:
            m = 0.5 * (a + b)
            phi_m = _unwrap_near(_phase_factor(k, m), phi_ref)
            fm = _xi(k, m, phi_m).real
            if fa * fm <= 0.0:
                b = m
            else:
                a, fa, phi_ref = m, fm, phi_m
        t0 = 0.5 * (a + b)
        res = abs(w1(k, complex(-0.5, t0)).value)
        zeros.append(ZeroRecord(k, t0, res, "bisection-on-real-form"))
    return zeros


def _edge_phase_sum(f, za: complex, zb: complex, n: int = 64, depth: int = 0) -> float:
    """Total continuous argument change of f along the segment [za, zb]."""
    zs = za + (zb - za) * np.linspace(0.0, 1.0, n + 1)
    vals = [f(z) for z in zs]
    total = 0.0
    for i in range(n):
        dphi = cmath.phase(vals[i + 1] / vals[i])
        if abs(dphi) > 0.5 * math.pi:
            if depth >= 8:
                raise ConvergenceError(
                    "argument principle: phase step too large near the contour"
                )
            dphi = _edge_phase_sum(f, complex(zs[i]), complex(zs[i + 1]), 16, depth + 1)
        total += dphi
    return total


def count_zeros_box(k: float, box: tuple) -> BoxCount:
    """Winding number of W_1(k; .) around the rectangle box = (re_lo, re_hi,
    im_lo, im_hi), traversed counterclockwise."""
    re_lo, re_hi, im_lo, im_hi = map(float, box)
    k = abs(float(k))

    def f(z: complex) -> complex:
        return w1(k, z).value

    corners = [
        complex(re_lo, im_lo),
        complex(re_hi, im_lo),
        complex(re_hi, im_hi),
        complex(re_lo, im_hi),
        complex(re_lo, im_lo),
    ]
    total = 0.0
    for za, zb in zip(corners[:-1], corners[1:]):
        total += _edge_phase_sum(f, za, zb)
    wind = total / (2.0 * math.pi)
    if abs(wind - round(wind)) > 0.1:
        raise ConvergenceError(
            f"argument principle: winding {wind} is not close to an integer"
        )
    return BoxCount(tuple(box), int(round(wind)))


def jacobi_phi(alpha: float, beta: float, lam: complex, t: float) -> complex:
    """The hypergeometric eigenfunction phi_lambda^(alpha,beta)(t)."""
    lam = complex(lam)
    t = float(t)
    a = (alpha + beta + 1.0 + 1j * lam) / 2.0
    b = (alpha - beta + 1.0 + 1j * lam) / 2.0
    c = alpha + 1.0
    if abs(c - round(c)) < 1e-12 and round(c) <= 0:
        raise PoleError("jacobi_phi: alpha + 1 is a non-positive integer")
    th = math.tanh(t) ** 2
    f = pfq(SeriesSpec((a, b), (c,), th)).value
    return cmath.exp(-(alpha + beta + 1.0 + 1j * lam) * math.log(math.cosh(t))) * f


def jacobi_weight(alpha: float, beta: float, t) -> np.ndarray:
    """Orthogonality weight (2 sinh t)^(2a+1) (2 cosh t)^(2b+1)."""
    t = np.asarray(t, dtype=float)
    return (2.0 * np.sinh(t)) ** (2.0 * alpha + 1.0) * (
        2.0 * np.cosh(t)
    ) ** (2.0 * beta + 1.0)


def _phi_prime(alpha, beta, lam, t, h=1e-5) -> complex:
    d1 = (jacobi_phi(alpha, beta, lam, t + h) - jacobi_phi(alpha, beta, lam, t - h)) / (
        2.0 * h
    )
    d2 = (
        jacobi_phi(alpha, beta, lam, t + h / 2)
        - jacobi_phi(alpha, beta, lam, t - h / 2)
    ) / h
    return (4.0 * d2 - d1) / 3.0


def check_beauty(
    alpha: float, beta: float, lam: complex, mu: complex, x: float
) -> float:
    """Residual of the two-eigenfunction Wronskian identity:
    int_0^x phi_lam phi_mu Delta dt = (mu^2-lam^2)^-1 Delta(x) W[phi_lam, phi_mu](x)."""
    lam, mu = complex(lam), complex(mu)
    if abs(lam - mu) < 1e-12 or abs(lam + mu) < 1e-12:
        raise DomainError("check_beauty requires lambda != +-mu")
    x = float(x)

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.array(
            [
                jacobi_phi(alpha, beta, lam, float(ti))
                * jacobi_phi(alpha, beta, mu, float(ti))
                for ti in t
            ]
        ) * jacobi_weight(alpha, beta, t)

    lhs, _ = tanh_sinh_relaxed(integrand, 0.0, x, 1e-11)
    wron = _phi_prime(alpha, beta, lam, x) * jacobi_phi(alpha, beta, mu, x) - jacobi_phi(
        alpha, beta, lam, x
    ) * _phi_prime(alpha, beta, mu, x)
    rhs = float(jacobi_weight(alpha, beta, x)) * wron / (mu * mu - lam * lam)
    return abs(lhs - rhs)


def _fd_s_derivative(fn, h: float = 1e-4) -> complex:
    """d fn/ds at s = 0 by Richardson-extrapolated central differences."""
    d1 = (fn(h) - fn(-h)) / (2.0 * h)
    d2 = (fn(h / 2) - fn(-h / 2)) / h
    return (4.0 * d2 - d1) / 3.0


def mahler_w2_routes(k: float) -> dict:
    """The r = 2 Mahler measure by three independent routes: the 3F2 closed
    form, the double-integral form, and d/ds of the moment function at 0."""
    k = abs(float(k))
    if k >= 4.0:
        raise DomainError("requires |k| < 4")
    if k == 0.0:
        return {"series": 0.0, "integral": 0.0, "derivative": 0.0}
    z = k * k / 16.0
    series = k / 4.0 * pfq(SeriesSpec((0.5, 0.5, 0.5), (1.0, 1.5), z)).value.real

    def outer(x2: np.ndarray) -> np.ndarray:
        out = np.empty(len(x2), dtype=complex)
        for i, x2i in enumerate(x2):
            w = 1.0 / math.sqrt(x2i * (1.0 - x2i))

            def inner(x1: np.ndarray) -> np.ndarray:
                return 1.0 / np.sqrt(x1 * (1.0 - x1 * x2i * z))

            v, _ = tanh_sinh_relaxed(inner, 0.0, 1.0, 1e-11)
            out[i] = w * v
        return out

    v, _ = tanh_sinh_relaxed(outer, 0.0, 1.0, 1e-10)
    integral = k / (8.0 * math.pi) * v.real
    deriv = _fd_s_derivative(lambda h: w2(k, h).value).real
    return {"series": series, "integral": integral, "derivative": deriv}


def mahler_w2(k: float) -> EvalResult:
    routes = mahler_w2_routes(k)
    vals = list(routes.values())
    spread = max(vals) - min(vals)
    return EvalResult(complex(routes["series"]), max(spread, 1e-13), Method.CLOSED_FORM)


def mahler_w3_routes(k: float) -> dict:
    """The r = 3 Mahler measure: Meijer-G closed form, triple-integral form
    (inner coordinate reduced to a complete elliptic integral), and d/ds of
    the moment function at 0."""
    k = abs(float(k))
    if not 0.0 < k < 8.0:
        raise DomainError("requires 0 < |k| < 8")
    g = meijer_mb(w3_g_spec(0.0, k)).value.real
    closed = g / (2.0 * math.pi**2.5)
    c64 = k * k / 64.0

    def outer(x3: np.ndarray) -> np.ndarray:
        out = np.empty(len(x3), dtype=complex)
        for i, x3i in enumerate(x3):
            w = 1.0 / math.sqrt(x3i)

            def inner(x2: np.ndarray) -> np.ndarray:
                p = c64 * x2 * x3i
                with np.errstate(divide="ignore"):
                    kk = 2.0 * ellipkm1(p)
                # Guard underflow of the product: 2 K(1-p) -> log(16/p),
                # assembled per factor so sub-ulp x3 keeps its logarithm.
                under = p == 0.0
                if np.any(under):
                    kk[under] = (
                        math.log(16.0)
                        - math.log(c64)
                        - np.log(x2[under])
                        - math.log(x3i)
                    )
                return kk / np.sqrt(x2 * (1.0 - x2))

            v, _ = tanh_sinh_relaxed(inner, 0.0, 1.0, 1e-10)
            out[i] = w * v
        return out

    v, _ = tanh_sinh_relaxed(outer, 0.0, 1.0, 1e-9)
    integral = k / (16.0 * math.pi**2) * v.real
    deriv = _fd_s_derivative(lambda h: w3(k, h).value).real
    return {"meijer": closed, "integral": integral, "derivative": deriv}


def mahler_w3(k: float) -> EvalResult:
    routes = mahler_w3_routes(k)
    vals = list(routes.values())
    spread = max(vals) - min(vals)
    return EvalResult(complex(routes["meijer"]), max(spread, 1e-12), Method.CONTOUR)


def w1_rational_decomposition(n: int) -> tuple:
    """Rationals (q0, q1) with W_1(1;n) = q0 + q1 sqrt(3)/pi, n in {1, 3, 5}."""
    if n not in (1, 3, 5):
        raise DomainError("supported for n in {1, 3, 5} only")
    val = w1(1.0, float(n)).value.real
    basis = [mpmath.mpf(val), mpmath.mpf(1), mpmath.sqrt(3) / mpmath.pi]
    rel = mpmath.pslq(basis, tol=mpmath.mpf(10) ** -12, maxcoeff=10**8)
    if rel is None or rel[0] == 0:
        raise ConvergenceError("no integer relation found")
    a, b, c = rel
    q0 = Fraction(-b, a)
    q1 = Fraction(-c, a)
    if max(abs(q0.denominator), abs(q1.denominator)) > 10**4:
        raise ConvergenceError("reconstruction denominators implausibly large")
    resid = abs(val - float(q0) - float(q1) * math.sqrt(3.0) / math.pi)
    if resid > 1e-10:
        raise ConvergenceError(f"reconstruction residual {resid:.2e} too large")
    return q0, q1
