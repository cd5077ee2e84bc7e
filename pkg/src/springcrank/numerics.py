"""Shared numeric helpers: the crank-angle grid, bisection, periodic integrals.

Every module samples the cycle on the same uniform half-open grid so that
profiles line up sample-by-sample and repeated runs are bit-identical.
"""
from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def theta_grid(n: int) -> np.ndarray:
    """Uniform half-open crank-angle grid: n samples on [0, 2*pi)."""
    if n < 2:
        raise ValueError("grid needs at least 2 samples")
    return np.linspace(0.0, TWO_PI, n, endpoint=False)


def wrap_angle(theta):
    """Map angles into [0, 2*pi)."""
    return np.mod(theta, TWO_PI)


def angle_in_arc(theta: float, start: float, end: float, ccw: bool, margin: float = 0.0) -> bool:
    """True if theta lies on the arc traversed from start to end.

    The arc is walked counterclockwise (increasing angle) when ``ccw`` is
    true, clockwise otherwise.  ``margin`` shrinks the arc at both ends, so
    membership is strict for margin > 0.
    """
    if ccw:
        span = wrap_angle(end - start)
        off = wrap_angle(theta - start)
    else:
        span = wrap_angle(start - end)
        off = wrap_angle(start - theta)
    return margin < off < span - margin


def bisect_root(f, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 200) -> float:
    """Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign."""
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError(f"root not bracketed on [{lo}, {hi}]")
    return bisect_signed(f, lo, hi, flo < 0.0, tol=tol, max_iter=max_iter)


def bisect_signed(f, lo: float, hi: float, lo_negative: bool,
                  tol: float = 1e-10, max_iter: int = 200) -> float:
    """Bisect a sign boundary using a caller-supplied sign at ``lo``.

    Never evaluates f at the endpoints, so brackets derived from grid samples
    stay valid even when re-evaluating an endpoint (e.g. at theta + 2*pi)
    would round the near-zero value to the opposite sign.
    """
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or (hi - lo) < tol:
            return mid
        if (fmid < 0.0) == lo_negative:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_signed_batch(f, lo, hi, lo_negative, tol: float = 1e-10,
                        max_iter: int = 200) -> np.ndarray:
    """Vectorized bisect_signed: refine many sign-boundary brackets at once.

    ``f`` must accept an array of abscissae.  Endpoints are never evaluated;
    the caller supplies the sign at each ``lo`` (from grid samples).
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    neg = np.asarray(lo_negative, dtype=bool)
    for _ in range(max_iter):
        if np.all(hi - lo < tol):
            break
        mid = 0.5 * (lo + hi)
        fmid = np.asarray(f(mid))
        zero = fmid == 0.0
        move_lo = ((fmid < 0.0) == neg) & ~zero
        lo = np.where(zero, mid, np.where(move_lo, mid, lo))
        hi = np.where(zero, mid, np.where(move_lo, hi, mid))
    return 0.5 * (lo + hi)


def periodic_sign_change_roots(f, y: np.ndarray, thetas: np.ndarray,
                               tol: float = 1e-10) -> list[float]:
    """Roots of a periodic scalar function sampled on the cycle grid.

    ``y = f(thetas)`` are the samples (passed in to avoid re-evaluation);
    ``f`` must accept arrays.  Exact zeros at grid points are taken as
    roots; strict sign changes between neighbours (wrapping around) are
    refined by bisection.  Nearby roots are merged to one representative.
    """
    n = len(thetas)
    step = TWO_PI / n
    roots = [float(thetas[i]) for i in np.nonzero(y == 0.0)[0]]
    nxt = np.roll(y, -1)
    brackets = np.nonzero(y * nxt < 0.0)[0]
    if brackets.size:
        lo = thetas[brackets]
        refined = bisect_signed_batch(f, lo, lo + step, y[brackets] < 0.0, tol=tol)
        roots.extend(wrap_angle(r) for r in refined)
    roots.sort()
    merged: list[float] = []
    for r in roots:
        if merged and (r - merged[-1]) < 100 * tol:
            continue
        merged.append(r)
    # wrap-around duplicate: a root near 2*pi equals one near 0
    if len(merged) > 1 and (TWO_PI - merged[-1] + merged[0]) < 100 * tol:
        merged.pop()
    return merged


def cycle_integral(y: np.ndarray, n: int | None = None) -> float:
    """Trapezoidal integral of periodic samples over one full cycle.

    On a uniform half-open grid the periodic trapezoidal rule reduces to
    step * sum(y).
    """
    if n is None:
        n = len(y)
    return float(np.sum(y) * (TWO_PI / n))


def contiguous_runs(mask: np.ndarray) -> list[np.ndarray]:
    """Index runs of True in a periodic boolean mask (wrapping runs joined)."""
    idx = np.nonzero(mask)[0]
    if idx.size == 0:
        return []
    if idx.size == len(mask):
        return [idx]
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    runs = np.split(idx, breaks + 1)
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == len(mask) - 1:
        runs[0] = np.concatenate([runs[-1], runs[0]])
        runs.pop()
    return runs
