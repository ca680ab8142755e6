"""Empirical universality probing: how close does a vertical shift of
zeta'/zeta come to a constant target on a horizontal segment.

For a shift tau and segment K in the right half of the critical strip the
probe measures

    sup_distance(tau) = max over the sample grid of
                        | zeta'/zeta(sigma + i(t_offset + tau)) - (U + iV) |,

a grid lower bound on the true sup. A scan over tau reports the fraction of
shifts below eps (the desk-scale proxy for the limit-measure density) and the
best shifts found. Witnesses are expected to be astronomically rare at desk
scale; the contract here is measurement, never existence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError, NearSingularity
from .precision import FAST_CONFIG, FLAG_RADIUS, PrecisionConfig
from .special_functions import log_deriv_batch
from .zero_finder import ZeroTable


@dataclass(frozen=True)
class SegmentK:
    """Horizontal sample segment inside the strip 1/2 < sigma < 1."""

    sigma_lo: float
    sigma_hi: float
    t_offset: float = 0.0
    samples: int = 33

    def __post_init__(self):
        if not (0.5 < self.sigma_lo < self.sigma_hi < 1.0):
            raise DomainError("segment must satisfy 1/2 < sigma_lo < sigma_hi < 1")
        if self.samples < 2:
            raise DomainError("need at least 2 samples")

    def grid(self) -> np.ndarray:
        return np.linspace(self.sigma_lo, self.sigma_hi, self.samples)


@dataclass(frozen=True)
class ProbeResult:
    tau: float
    sup_distance: float
    samples_used: int


@dataclass(frozen=True)
class ScanSummary:
    """Results sorted by sup_distance (ties by tau); good_fraction counts
    scanned shifts with sup_distance < eps among the non-skipped ones."""

    results: Tuple[ProbeResult, ...]
    eps: float
    good_fraction: float
    skipped: Tuple[float, ...]

    @property
    def best(self) -> Optional[ProbeResult]:
        return self.results[0] if self.results else None


def _segment_zero_distance(K: SegmentK, tau: float, zeros: ZeroTable) -> float:
    """Distance from the shifted segment to the nearest tabulated zero."""
    if not zeros.gammas:
        return math.inf
    t = K.t_offset + tau
    g = zeros.nearest_gamma(abs(t))
    return math.hypot(K.sigma_lo - 0.5, abs(t) - g)


def sup_distance(tau: float, K: SegmentK, U: float, V: float,
                 zeros: ZeroTable, cfg: PrecisionConfig = FAST_CONFIG,
                 exclusion: float = FLAG_RADIUS) -> ProbeResult:
    """Grid sup of |zeta'/zeta on the shifted segment minus (U+iV)|."""
    d = _segment_zero_distance(K, tau, zeros)
    if d < exclusion:
        raise NearSingularity(f"zero near shifted segment at tau={tau}", d)
    s = K.grid() + 1j * (K.t_offset + tau)
    vals, _ = log_deriv_batch(s, cfg)
    dist = np.abs(vals - complex(U, V))
    return ProbeResult(tau=float(tau), sup_distance=float(dist.max()),
                       samples_used=K.samples)


def scan(tau_lo: float, tau_hi: float, step: float, K: SegmentK,
         U: float, V: float, eps: float, zeros: ZeroTable,
         cfg: PrecisionConfig = FAST_CONFIG, *,
         exclusion: float = FLAG_RADIUS,
         batch: int = 2048) -> ScanSummary:
    """Deterministic tau scan; near-singularity shifts are skipped and
    reported, not errored."""
    if step <= 0:
        raise DomainError("step must be positive")
    if tau_hi < tau_lo:
        raise DomainError("need tau_hi >= tau_lo")
    count = int(math.floor((tau_hi - tau_lo) / step + 1e-12)) + 1
    taus = tau_lo + step * np.arange(count)
    keep = []
    skipped: List[float] = []
    for tau in taus:
        if _segment_zero_distance(K, float(tau), zeros) < exclusion:
            skipped.append(float(tau))
        else:
            keep.append(float(tau))
    sig = K.grid()
    results: List[ProbeResult] = []
    target = complex(U, V)
    for lo in range(0, len(keep), batch):
        chunk = np.asarray(keep[lo:lo + batch])
        s = (sig[None, :] + 1j * (K.t_offset + chunk)[:, None]).ravel()
        vals, _ = log_deriv_batch(s, cfg)
        sup = np.abs(vals.reshape(len(chunk), K.samples) - target).max(axis=1)
        results.extend(ProbeResult(tau=float(t), sup_distance=float(sd),
                                   samples_used=K.samples)
                       for t, sd in zip(chunk, sup))
    n_eval = len(results)
    good = sum(1 for r in results if r.sup_distance < eps)
    results.sort(key=lambda r: (r.sup_distance, r.tau))
    return ScanSummary(results=tuple(results), eps=eps,
                       good_fraction=(good / n_eval) if n_eval else 0.0,
                       skipped=tuple(skipped))
