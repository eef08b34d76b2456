"""Quantum walk evaluation from spectral data: transition magnitudes, time
series, infimum estimation over a period or a bounded horizon, and the
closed-form evaluators for products of complete graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import product as iter_product
from typing import Callable, Sequence

import numpy as np

from .spectral import SpectralDecomposition

__all__ = [
    "WalkEvaluator",
    "InfimumMode",
    "InfimumEstimate",
    "product_diagonal_km_y",
    "complete_product_diagonal",
    "complete_product_cosine_terms",
    "join_perturbation_bound",
]

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class WalkEvaluator:
    """Evaluates U(t) = sum_j exp(i t lambda_j) E_j for one decomposition."""

    dec: SpectralDecomposition

    @property
    def n(self) -> int:
        return self.dec.n

    def amplitude(self, u: int, v: int, t: float) -> complex:
        entries = self.dec.projectors[:, u, v]
        phases = np.exp(1j * t * self.dec.eigenvalues)
        return complex(np.dot(phases, entries))

    def magnitude(self, u: int, v: int, t: float) -> float:
        return abs(self.amplitude(u, v, t))

    def matrix(self, t: float) -> np.ndarray:
        phases = np.exp(1j * t * self.dec.eigenvalues)
        return np.einsum("j,jab->ab", phases, self.dec.projectors)

    def diagonal_amplitudes(self, u: int, times: np.ndarray) -> np.ndarray:
        """Vectorized U(t)_{u,u} over an array of times."""
        weights = self.dec.diagonal_weights(u)
        phases = np.exp(1j * np.outer(times, self.dec.eigenvalues))
        return phases @ weights

    def pair_amplitudes(self, u: int, v: int, times: np.ndarray) -> np.ndarray:
        entries = self.dec.projectors[:, u, v]
        phases = np.exp(1j * np.outer(times, self.dec.eigenvalues))
        return phases @ entries

    def diagonal_series(self, u: int, t_max: float, steps: int) -> np.ndarray:
        """Uniform (t, |U(t)_{u,u}|) grid including both endpoints; shape (steps, 2)."""
        if t_max <= 0:
            raise ValueError("t_max must be positive")
        if steps < 2:
            raise ValueError("need at least 2 steps")
        times = np.linspace(0.0, t_max, steps)
        mags = np.abs(self.diagonal_amplitudes(u, times))
        return np.column_stack([times, mags])

    def infimum_diagonal(
        self,
        u: int,
        grid_points: int | None = None,
        horizon: float | None = None,
    ) -> "InfimumEstimate":
        """Estimate inf_{t>0} |U(t)_{u,u}|.

        Periodic vertices get the exact minimum over one period (dense grid
        plus golden-section refinement); everything else gets a bounded-horizon
        scan whose value is an upper bound on the infimum, never a certificate.
        """
        per = self.dec.periodicity(u)
        if per.constant_diagonal:
            return InfimumEstimate(
                value=1.0,
                attained_time=0.0,
                mode=InfimumMode.EXACT_ON_PERIOD,
                grid_points=1,
                horizon=0.0,
                error_estimate=0.0,
            )
        if per.recognized and per.period is not None:
            span = per.period
            pts = grid_points or 20001
            mode = InfimumMode.EXACT_ON_PERIOD
        else:
            gap = self.dec.min_gap()
            span = horizon if horizon is not None else 200.0 * 2.0 * math.pi / gap
            spread = float(self.dec.eigenvalues[0] - self.dec.eigenvalues[-1])
            auto = int(span * max(spread, 1.0) * 16 / (2 * math.pi))
            pts = grid_points or max(50001, min(1_000_001, auto))
            mode = InfimumMode.GRID_LOWER_CONFIDENCE
        times = np.linspace(0.0, span, pts)
        mags = np.abs(self.diagonal_amplitudes(u, times))
        order = np.argsort(mags)
        step = span / (pts - 1)
        f = lambda t: self.magnitude(u, u, t)
        best_val = float(mags[order[0]])
        best_t = float(times[order[0]])
        for i in order[:5]:
            a = max(0.0, float(times[i]) - step)
            b = min(span, float(times[i]) + step)
            t_ref, v_ref = _golden_min(f, a, b)
            if v_ref < best_val:
                best_val, best_t = v_ref, t_ref
        err = _curvature_error(f, best_t, step)
        return InfimumEstimate(
            value=best_val,
            attained_time=best_t,
            mode=mode,
            grid_points=pts,
            horizon=span,
            error_estimate=err,
        )


class InfimumMode(Enum):
    EXACT_ON_PERIOD = "exact-on-period"
    GRID_LOWER_CONFIDENCE = "grid-lower-confidence"


@dataclass(frozen=True)
class InfimumEstimate:
    """Minimum of the diagonal magnitude found by sampling.

    With mode EXACT_ON_PERIOD the search covered one full period, so the value
    is the true infimum up to the refinement error; GRID_LOWER_CONFIDENCE only
    upper-bounds the infimum.
    """

    value: float
    attained_time: float | None
    mode: InfimumMode
    grid_points: int
    horizon: float
    error_estimate: float

    @property
    def certified(self) -> bool:
        return self.mode is InfimumMode.EXACT_ON_PERIOD


def _golden_min(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-10
) -> tuple[float, float]:
    """Golden-section minimization on [a, b]; returns (argmin, min)."""
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
    t = (a + b) / 2
    return t, f(t)


def _curvature_error(f: Callable[[float], float], t: float, h: float) -> float:
    """Error bar from the local second derivative at a refined minimum."""
    h = max(h * 1e-3, 1e-9)
    fpp = (f(t + h) - 2 * f(t) + f(t - h)) / (h * h)
    return abs(fpp) * (1e-10) ** 2 / 2 + 1e-14


def product_diagonal_km_y(
    m: int, dec_y: SpectralDecomposition, v: int, t: float
) -> complex:
    """Diagonal amplitude of K_m x Y at vertex (j, v) via the factor walk.

    Equals (1/m) U_Y((m-1) t)_{v,v} + ((m-1)/m) U_Y(-t)_{v,v}; for m = 2 this
    is Re U_Y(t)_{v,v}, so the bipartite double has a real diagonal.
    """
    if m < 2:
        raise ValueError("factor m must be at least 2")
    ev = WalkEvaluator(dec_y)
    return (1 / m) * ev.amplitude(v, v, (m - 1) * t) + ((m - 1) / m) * ev.amplitude(
        v, v, -t
    )


def complete_product_diagonal(m_list: Sequence[int], t: float) -> complex:
    """Diagonal amplitude of the direct product of complete graphs K_{m_1} x ... x K_{m_n}.

    Subset-sum form: (1/prod m_j) * sum over S of prod_{j in S}(m_j - 1) *
    exp(i t (-1)^{|S|} prod_{j not in S}(m_j - 1)).  Every vertex has the same
    diagonal by vertex transitivity.
    """
    ms = [int(m) for m in m_list]
    if any(m < 2 for m in ms):
        raise ValueError("every factor must be at least 2")
    if len(ms) > 20:
        raise ValueError("subset enumeration capped at 20 factors")
    total = 0 + 0j
    for mask in iter_product((0, 1), repeat=len(ms)):
        in_s = sum(mask)
        coeff = 1
        outside = 1
        for pick, m in zip(mask, ms):
            if pick:
                coeff *= m - 1
            else:
                outside *= m - 1
        total += coeff * complex(math.cos(t * (-1) ** in_s * outside),
                                 math.sin(t * (-1) ** in_s * outside))
    return total / math.prod(ms)


def complete_product_cosine_terms(m_list: Sequence[int]) -> list[tuple[float, float]] | None:
    """Cosine form of the product diagonal when some factor equals 2.

    Pairing subsets through a fixed m = 2 factor collapses the phases into
    sum_S c_S cos(f_S t) with real coefficients; returns (coefficient,
    frequency) pairs with equal frequencies merged, or None when no factor
    is 2 (the diagonal is then not real in general).
    """
    ms = [int(m) for m in m_list]
    if any(m < 2 for m in ms):
        raise ValueError("every factor must be at least 2")
    try:
        pivot = ms.index(2)
    except ValueError:
        return None
    rest = [m for i, m in enumerate(ms) if i != pivot]
    denom = math.prod(ms)
    terms: dict[float, float] = {}
    for mask in iter_product((0, 1), repeat=len(rest)):
        coeff = 1
        outside = 1
        for pick, m in zip(mask, rest):
            if pick:
                coeff *= m - 1
            else:
                outside *= m - 1
        freq = float(outside)
        terms[freq] = terms.get(freq, 0.0) + 2.0 * coeff / denom
    return sorted(((c, f) for f, c in terms.items()), reverse=True)


def join_perturbation_bound(nx: int) -> float:
    """Uniform deviation bound 2/|V(X)| between walks on X and on X joined to anything."""
    if nx < 1:
        raise ValueError("graph must have at least one vertex")
    return 2.0 / nx
