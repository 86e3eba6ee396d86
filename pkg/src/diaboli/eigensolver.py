"""Eigensolvers for symmetric arrowhead matrices.

The fast path never materializes the matrix.  With body diagonal ``d``,
uniform border ``b != 0`` and head value ``a``, the non-trivial
eigenvalues are the roots of the secular function

    f(lam) = (a - lam) - sum_i b**2 / (d[i] - lam)

which has exactly one root below the smallest distinct body value, one
root between each pair of adjacent distinct body values, and one root
above the largest.  A body value repeated k times additionally yields
k - 1 eigenvalues equal to that value exactly (deflation): only the
uniform combination of the repeated states couples to the head.

Each root is bracketed by its interlacing interval and found by bisection
down to machine-level width, then polished with a single Newton step.
The ground eigenvector follows in closed form from the root:

    v[i] = b / (lam0 - d[i]),   v[head] = 1,   then normalize.

``eigen_dense`` provides the independent cross-check through
``numpy.linalg.eigh`` on the materialized matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionTooLarge
from .hamiltonian import DENSE_LIMIT, ArrowheadHamiltonian, ParameterPoint, build
from .instance import ViolationDiagonal

DEFLATION_RTOL = 1e-13  # body values closer than this (relative) share a group
_BISECT_ITER = 14  # bracket halvings before switching to Newton
_NEWTON_ITER = 44  # polish cap; rejected steps degrade to further halvings


@dataclass(eq=False)
class Spectrum:
    """Eigenvalues in ascending order, optionally with the ground vector."""

    eigenvalues: np.ndarray
    ground_vector: np.ndarray | None = None

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def gap01(self) -> float:
        return float(self.eigenvalues[1] - self.eigenvalues[0])


def _group_body(body: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort body values and merge near-equal ones into (values, counts)."""

    d = np.sort(body)
    if d.size == 1:
        return d, np.ones(1, dtype=np.int64)
    gaps = np.diff(d)
    scale = np.maximum(1.0, np.maximum(np.abs(d[:-1]), np.abs(d[1:])))
    breaks = gaps > DEFLATION_RTOL * scale
    starts = np.concatenate(([0], np.flatnonzero(breaks) + 1))
    counts = np.diff(np.concatenate((starts, [d.size])))
    return d[starts], counts.astype(np.int64)


def _secular_roots(values: np.ndarray, counts: np.ndarray, border: float, head: float) -> np.ndarray:
    """All p+1 non-deflated eigenvalues, one per interlacing bracket."""

    w2 = (border * border) * counts.astype(np.float64)
    p = values.size
    total = float(np.sqrt(counts.sum())) * abs(border) + 1.0
    lo = np.empty(p + 1)
    hi = np.empty(p + 1)
    lo[0] = min(values[0], head) - total
    lo[1:] = values
    hi[:p] = values
    hi[p] = max(values[-1], head) + total

    def evaluate(lam: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return (head - lam) - np.sum(w2[:, None] / (values[:, None] - lam[None, :]), axis=0)

    for _ in range(_BISECT_ITER):
        mid = 0.5 * (lo + hi)
        fm = evaluate(mid)
        positive = fm > 0  # NaN at an exact pole lands on the safe side
        lo = np.where(positive, mid, lo)
        hi = np.where(positive, hi, mid)

    # Newton finishes the job: f is strictly decreasing between poles, so
    # f > 0 always means the root lies to the right, and a step that
    # escapes its bracket is replaced by another halving.  A root is done
    # when the Newton correction itself (a direct estimate of the distance
    # to the root) or its bracket falls below machine tolerance.
    lam = 0.5 * (lo + hi)
    active = np.ones(lam.shape, dtype=bool)
    for _ in range(_NEWTON_ITER):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            flam = evaluate(lam)
            dcol = values[:, None] - lam[None, :]
            fprime = -1.0 - np.sum(w2[:, None] / (dcol * dcol), axis=0)
            corr = flam / fprime
            step = lam - corr
        positive = flam > 0
        lo = np.where(positive, lam, lo)
        hi = np.where(positive, hi, lam)
        tol = 2e-16 * np.maximum(1.0, np.abs(lam))
        active &= ~((np.abs(corr) <= tol) | ((hi - lo) <= tol))
        if not np.any(active):
            break
        inside = np.isfinite(step) & (step > lo) & (step < hi)
        lam = np.where(active, np.where(inside, step, 0.5 * (lo + hi)), lam)
    if not np.all(np.isfinite(lam)):
        raise ConvergenceFailure("secular root search produced non-finite values")
    return lam


def eigen_arrowhead(ham: ArrowheadHamiltonian, want_ground_vector: bool = False) -> Spectrum:
    """Full spectrum (and optionally the ground vector) of an arrowhead matrix."""

    body = ham.body_diag
    border = ham.border
    head = ham.head_diag
    n = body.size

    if border == 0.0:
        full = np.append(body, head)
        order = np.argsort(full, kind="stable")
        vector = None
        if want_ground_vector:
            vector = np.zeros(n + 1)
            vector[order[0]] = 1.0
        return Spectrum(eigenvalues=full[order], ground_vector=vector)

    values, counts = _group_body(body)
    roots = _secular_roots(values, counts, border, head)
    deflated = np.repeat(values, counts - 1)
    eigenvalues = np.sort(np.concatenate((roots, deflated)))

    vector = None
    if want_ground_vector:
        lam0 = float(roots[0])  # leftmost root sits below every body value
        den = lam0 - body
        if np.any(den >= 0.0):
            lam0 = float(np.nextafter(lam0, -np.inf))
            den = lam0 - body
        vector = np.empty(n + 1)
        vector[:n] = border / den
        vector[n] = 1.0
        norm = float(np.linalg.norm(vector))
        if not (math.isfinite(norm) and norm > 0.0):
            raise ConvergenceFailure("ground vector overflowed; root too close to a pole")
        vector /= norm
    return Spectrum(eigenvalues=eigenvalues, ground_vector=vector)


def eigen_dense(ham: ArrowheadHamiltonian, want_ground_vector: bool = True) -> Spectrum:
    """Reference diagonalization of the materialized matrix."""

    if ham.dimension > DENSE_LIMIT:
        raise DimensionTooLarge(f"dense solve of dimension {ham.dimension} exceeds {DENSE_LIMIT}")
    if want_ground_vector:
        w, v = np.linalg.eigh(ham.to_dense())
        ground = v[:, 0].copy()
        anchor = ground[-1]
        if anchor == 0.0:
            anchor = ground[int(np.argmax(np.abs(ground)))]
        if anchor < 0.0:
            ground = -ground
        return Spectrum(eigenvalues=w, ground_vector=ground)
    w = np.linalg.eigvalsh(ham.to_dense())
    return Spectrum(eigenvalues=w, ground_vector=None)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def min_gap_on_segment(
    diag: ViolationDiagonal,
    variant: str,
    sweep: str,
    fixed: float,
    lo: float,
    hi: float,
    samples: int = 65,
    tol: float = 1e-6,
) -> tuple[ParameterPoint, float]:
    """Locate the minimum of the first spectral gap along one parameter axis.

    ``sweep`` names the swept parameter ("x" or "z"); ``fixed`` pins the
    other one.  A coarse scan brackets the smallest sampled gap and a
    golden-section search refines the bracket to ``tol`` in the parameter.
    """

    if sweep not in ("x", "z"):
        raise ValueError(f"sweep must be 'x' or 'z', got {sweep!r}")
    if samples < 3:
        raise ValueError("need at least 3 coarse samples")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"bad sweep range [{lo}, {hi}]")

    def point_at(t: float) -> ParameterPoint:
        return ParameterPoint(x=t, z=fixed) if sweep == "x" else ParameterPoint(x=fixed, z=t)

    def gap_at(t: float) -> float:
        return eigen_arrowhead(build(diag, point_at(t), variant)).gap01

    ts = np.linspace(lo, hi, samples)
    gaps = np.array([gap_at(float(t)) for t in ts])
    best = int(np.argmin(gaps))
    a = float(ts[max(best - 1, 0)])
    b = float(ts[min(best + 1, samples - 1)])

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = gap_at(c)
    fd = gap_at(d)
    for _ in range(300):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = gap_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = gap_at(d)
    else:
        raise ConvergenceFailure("golden-section refinement did not shrink the bracket")

    t_star = 0.5 * (a + b)
    g_star = gap_at(t_star)
    # Keep whichever evaluation was lowest; the coarse grid guards against
    # a refinement bracket that missed the global sampled minimum.
    candidates = [(g_star, t_star), (float(gaps[best]), float(ts[best])), (fc, c), (fd, d)]
    g_min, t_min = min(candidates)
    return point_at(t_min), float(g_min)
