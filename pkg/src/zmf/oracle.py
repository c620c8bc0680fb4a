"""Independent ground truth for W_r(k;s): direct torus integration, Monte
Carlo sampling and 1-d integration against the closed-form densities.

The r-dimensional torus average reduces by Fubini to a nest of 1-d
integrals: with T_1(k;s) = (1/pi) int_0^pi |k + 2 cos t|^s dt,

    T_r(k;s) = (1/pi) int_0^pi |2 cos t|^s T_{r-1}(k / (2 cos t); s) dt,

and every level is integrated with singularity-splitting tanh-sinh rules
(zeros of k + 2 cos t at level one, light/heavy regime kinks above).
Nothing here touches the hypergeometric closed forms.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .types import EvalResult, Method, QuadratureConfig, ZmfPoint
from .quadutil import split_points, tanh_sinh_relaxed

_DEFAULT_CFG = QuadratureConfig()


def _abs_pow(base: np.ndarray, s: complex) -> np.ndarray:
    """|base|^s = exp(s log|base|), elementwise; 0^s -> 0 for Re s > 0."""
    mag = np.abs(base)
    if s == 0:
        return np.ones_like(mag, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(complex(s) * np.log(mag))
    out = np.where(mag == 0.0, 0.0, out)
    return out


def _t1(k: float, s: complex, tol: float, delta: float | None = None):
    """(1/pi) int_0^pi |k + 2 cos t|^s dt.

    Every (near-)singular point is mapped to the origin of a local variable
    u before quadrature.  Floats are dense near 0 but quantized at ~1e-16
    near an interior point or a right endpoint, so integrating |t - t0|^sigma
    in the t variable silently loses the mass within one ulp of t0 (as much
    as 1e-3 of the integral for sigma near -1); in the u variable that mass
    is resolved down to 1e-300.  The base |k + 2 cos t| is likewise evaluated
    in cancellation-free product or shifted form.
    """
    k = abs(float(k))
    # Signed distance to the |k| = 2 boundary; a caller that produced k by
    # division may supply it exactly, which matters when |k - 2| is below
    # the rounding of k itself.
    d0 = (k - 2.0) if delta is None else float(delta)
    jobs = []
    if d0 >= 0.0:
        # u = pi - t: |k + 2 cos t| = (k-2) + 4 sin^2(u/2), both terms >= 0.
        def base(u, d0=d0):
            return d0 + 4.0 * np.sin(0.5 * u) ** 2

        if 0.0 < d0 < 0.25:
            # Near-double root: the integrand behaves like (d0 + u^2)^s and
            # levels off below u ~ sqrt(d0); split there so each piece has a
            # single scale.
            ustar = 2.0 * math.sqrt(d0)
            jobs.append((0.0, ustar, base))
            jobs.append((ustar, math.pi, base))
        else:
            jobs.append((0.0, math.pi, base))
    else:
        # Zero at t0 = pi - eps with sin^2(eps/2) = (2-k)/4, resolved from
        # the exact boundary distance; |k + 2 cos t| in product form
        # 4 |sin((t+t0)/2)| |sin((t-t0)/2)| with both arguments kept exact.
        eps = 2.0 * math.asin(0.5 * math.sqrt(-d0))
        t0 = math.pi - eps

        def base_a(u, eps=eps):  # u = t0 - t
            return 4.0 * np.sin(eps + 0.5 * u) * np.sin(0.5 * u)

        if eps < 0.25:
            # Root nearly double (k just below 2): same two-scale split.
            ustar = min(2.0 * eps, t0)
            jobs.append((0.0, ustar, base_a))
            jobs.append((ustar, t0, base_a))
        else:
            jobs.append((0.0, t0, base_a))

        def base_b(u, eps=eps):  # u = t - t0, u <= eps
            return 4.0 * np.sin(eps - 0.5 * u) * np.sin(0.5 * u)

        jobs.append((0.0, eps, base_b))
    total = 0.0 + 0.0j
    err = 0.0
    for a, b, base in jobs:
        v, e = tanh_sinh_relaxed(
            lambda u, base=base: _abs_pow(base(u), s), a, b, tol / len(jobs)
        )
        total += v
        err += e
    return total / math.pi, err / math.pi


def _outer_segments(pts: list) -> list:
    """Halve each segment of [0, pi] between consecutive critical angles and
    anchor each half at its critical end: entries (anchor, direction, length)
    parameterize t = anchor + direction * u."""
    segs = split_points(0.0, math.pi, pts)
    jobs = []
    for a, b in zip(segs[:-1], segs[1:]):
        mid = 0.5 * (a + b)
        jobs.append((a, 1.0, mid - a))
        jobs.append((b, -1.0, b - mid))
    return jobs


def _t_nested(r: int, k: float, s: complex, tol: float):
    """T_r via the Fubini nest; returns (value, error_estimate)."""
    if r == 1:
        return _t1(k, s, tol)
    k = abs(float(k))
    if k == 0.0:
        # Factors are independent: T_r(0;s) = T_1(0;s)^r.
        v, e = _t1(0.0, s, tol / r)
        return v**r, r * abs(v) ** (r - 1) * e

    inner_err = [0.0]

    def make_outer(anchor: float, direction: float):
        # Stable |2 cos t| and 1 - |cos t| at t = anchor + direction * u; the
        # specializations keep full relative accuracy where the weight
        # vanishes (pi/2) and where a boundary-k kink sits (0 and pi).
        if anchor == 0.0 or anchor == math.pi:
            def cos_parts(u):
                absc = 2.0 * np.cos(u)
                return absc, 2.0 * np.sin(0.5 * u) ** 2
            sign = 1.0 if anchor == 0.0 else -1.0
        elif anchor == 0.5 * math.pi:
            def cos_parts(u):
                sn = np.sin(u)
                return 2.0 * sn, 1.0 - sn
            sign = -direction
        else:
            def cos_parts(u):
                c = np.cos(anchor + direction * u)
                return 2.0 * np.abs(c), 1.0 - np.abs(c)
            cs = math.cos(anchor)
            sign = 1.0 if cs > 0 else -1.0

        edge_in = 2.0 ** (r - 1)
        # |2cos t|^s T_{r-1}(k/|2cos t|) -> |k|^s as cos t -> 0; below this
        # threshold the first-order large-argument expansion is already
        # accurate to ~1e-28 relative, and it avoids both overflow in the
        # inner argument and the inner error floor blowing up under the
        # diverging weight.
        thr = 1e-7 * k / edge_in
        alpha = (-s / 2.0) * ((1.0 - s) / 2.0) * 0.5 ** (r - 2)
        k_pow_s = _abs_pow(np.array([k]), s)[0]

        def outer(uarr: np.ndarray) -> np.ndarray:
            out = np.empty(len(uarr), dtype=complex)
            absc_arr, onemc_arr = cos_parts(uarr)
            for i in range(len(uarr)):
                absc = float(absc_arr[i])
                if absc < thr:
                    z = edge_in * edge_in * (absc / k) ** 2
                    out[i] = k_pow_s * (1.0 + alpha * z)
                    continue
                wgt = abs(_abs_pow(np.array([absc]), s)[0])
                tol_in = tol / max(1.0, wgt)
                if r == 2:
                    # Hand the inner argument's signed distance to the edge
                    # over exactly: k/|2cos t| - 2 = ((k-4) + 4(1-|cos t|))/|2cos t|.
                    # The floor keeps a node that lands within rounding of
                    # the edge itself (true distance > 0, weight ~1e-300)
                    # from evaluating the genuinely divergent edge integral.
                    delta = ((k - 4.0) + 4.0 * float(onemc_arr[i])) / absc
                    if abs(delta) < 1e-250:
                        delta = 1e-250 if delta >= 0.0 else -1e-250
                    v, e = _t1(k / absc, s, tol_in, delta=delta)
                else:
                    v, e = _t_nested(r - 1, k / (sign * absc), s, tol_in)
                # Inner error enters the outer integrand scaled by |2 cos t|^Re s.
                inner_err[0] = max(inner_err[0], wgt * e)
                out[i] = _abs_pow(np.array([absc]), s)[0] * v
            return out

        return outer

    # Critical angles of the outer integrand: the vanishing weight at pi/2
    # and the inner regime boundary |k/(2cos t)| = 2^(r-1).
    pts = [math.pi / 2.0]
    edge = 2.0 ** (r - 1)
    for val in (k / (2.0 * edge), -k / (2.0 * edge)):
        if -1.0 < val < 1.0:
            pts.append(math.acos(val))
    jobs = _outer_segments(pts)
    total = 0.0 + 0.0j
    err = 0.0
    for anchor, direction, length in jobs:
        outer = make_outer(anchor, direction)
        v, e = tanh_sinh_relaxed(outer, 0.0, length, tol / len(jobs), max_level=7)
        total += v
        err += e
    return total / math.pi, err / math.pi + inner_err[0]


def torus_quadrature(point: ZmfPoint, cfg: QuadratureConfig = _DEFAULT_CFG) -> EvalResult:
    """Direct numerical value of W_r(k;s) from the defining torus average."""
    if point.r > 3:
        raise DomainError("torus_quadrature supports r <= 3 (use monte_carlo beyond)")
    s = complex(point.s)
    if s.real <= -1.0 and abs(point.k) < 2.0**point.r:
        raise DomainError("non-integrable: Re(s) <= -1 with zeros on the torus")
    val, err = _t_nested(point.r, float(point.k), s, cfg.tol)
    return EvalResult(val, err, Method.QUADRATURE)


_MC_CHUNK = 1 << 17


def monte_carlo(point: ZmfPoint, cfg: QuadratureConfig = _DEFAULT_CFG) -> EvalResult:
    """Sample mean of |k + prod 2 cos Theta_i|^s with a Philox counter-based
    generator; bit-for-bit reproducible for a given seed and sample count."""
    s = complex(point.s)
    if s.real <= -1.0 and abs(point.k) < 2.0**point.r:
        raise DomainError("non-integrable: Re(s) <= -1 with zeros on the torus")
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    n = cfg.samples
    total = 0.0 + 0.0j
    total_sq = 0.0
    done = 0
    while done < n:
        m = min(_MC_CHUNK, n - done)
        theta = rng.uniform(0.0, math.pi, size=(point.r, m))
        prod = np.prod(2.0 * np.cos(theta), axis=0)
        vals = _abs_pow(point.k + prod, s)
        total += vals.sum()
        total_sq += float(np.sum(np.abs(vals) ** 2))
        done += m
    mean = total / n
    var = max(total_sq / n - abs(mean) ** 2, 0.0)
    se = math.sqrt(var / n)
    return EvalResult(mean, 3.0 * se, Method.MONTE_CARLO)


def density_quadrature(point: ZmfPoint, cfg: QuadratureConfig = _DEFAULT_CFG) -> EvalResult:
    """W_r(k;s) = int_0^{|k|+2^r} x^s p_r(k;x) dx via the closed-form
    densities (r <= 3) or the density recursion (r = 4), split at every
    singular abscissa of the folded density."""
    from .density import _h_arr, _p_r_arr, _singular_abscissae

    if point.r > 4:
        raise DomainError("density_quadrature supports r <= 4")
    s = complex(point.s)
    if s.real <= -1.0:
        raise DomainError("requires Re(s) > -1")
    r, k = point.r, abs(float(point.k))
    hi = k + 2.0**r

    if r <= 3:
        def f(x: np.ndarray) -> np.ndarray:
            return _abs_pow(x, s) * _p_r_arr(r, k, x)
    else:
        edge = 2.0**r

        def ph4(z: float) -> float:
            # Work with u = z^2/4^r directly: near z = 0 the density is a
            # cubic in log u, and u stays resolved far below one ulp of 1.
            u = z * z / 4.0**r
            if not 0.0 < u < 1.0:
                return 0.0
            return float(_h_arr(r, np.array([u]))[0])

        def f(x: np.ndarray) -> np.ndarray:
            dens = np.empty(len(x))
            for i, xi in enumerate(x):
                xi = float(xi)
                v = ph4(xi - k) if abs(xi - k) < edge else 0.0
                if k < edge and xi < edge - k:
                    v += ph4(xi + k)
                dens[i] = v
            return _abs_pow(x, s) * dens

    segs = split_points(0.0, hi, _singular_abscissae(r, k))
    # The r = 4 integrand costs a nested quadrature per point; cap the level
    # ladder so the node count stays bounded.
    max_level = 9 if r <= 3 else 7
    total = 0.0 + 0.0j
    err = 0.0
    for a, b in zip(segs[:-1], segs[1:]):
        v, e = tanh_sinh_relaxed(f, a, b, cfg.tol / len(segs), max_level=max_level)
        total += v
        err += e
    return EvalResult(total, err, Method.QUADRATURE)
