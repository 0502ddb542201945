"""Monte Carlo estimators for successive decoding and downlink coverage.

Replicates are processed in fixed-size chunks; each chunk returns one value
per replicate and the reduction runs over the concatenated values in
replicate order. Results are therefore identical for any worker count.
"""

from __future__ import annotations

import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np

from .netmodel import ParameterError
from .sampler import (
    PlpfRealization,
    RealizationBatch,
    SamplerConfig,
    sample_splpf_batch,
)

__all__ = [
    "DecodeQuery",
    "CoverageQuery",
    "SicEstimate",
    "DepthTruncationWarning",
    "auto_k_max",
    "decode_count",
    "decode_counts",
    "decodable_without_sic",
    "hcn_covered",
    "coverage_indicators",
    "map_replicates",
    "summarize",
    "estimate_pk",
    "estimate_joint_tail",
    "estimate_en",
    "estimate_throughput",
    "estimate_laplace_xikIk",
    "estimate_coverage",
    "estimate_coverage_series",
]

log = logging.getLogger(__name__)

CHUNK = 2048
_BATCH_CELLS = 4_000_000


class DepthTruncationWarning(RuntimeWarning):
    """Decode depth or coverage search hit its cutoff in too many replicates."""


@dataclass(frozen=True)
class SicEstimate:
    value: float
    std_error: float
    replicates: int

    def __iter__(self):
        yield from (self.value, self.std_error, self.replicates)


@dataclass(frozen=True)
class DecodeQuery:
    """SIR threshold (linear), noise power and how deep to track decoding.

    ``k_max=None`` picks a depth from ``beta`` and ``theta`` (see
    :func:`auto_k_max`).
    """

    theta: float
    noise_w: float = 0.0
    k_max: Optional[int] = 50

    def __post_init__(self):
        if not self.theta > 0:
            raise ParameterError(f"theta must be > 0, got {self.theta!r}")
        if not self.noise_w >= 0:
            raise ParameterError(f"noise power must be >= 0, got {self.noise_w!r}")
        if self.k_max is not None and self.k_max < 1:
            raise ParameterError(f"k_max must be >= 1, got {self.k_max!r}")

    def depth(self, cfg: SamplerConfig) -> int:
        k = self.k_max if self.k_max is not None else auto_k_max(cfg.beta, self.theta, cfg.n_points)
        if k > cfg.n_points:
            raise ParameterError(f"k_max={k} exceeds n_points={cfg.n_points}")
        return int(k)


@dataclass(frozen=True)
class CoverageQuery:
    """Coverage event for a receiver that may cancel up to ``sic_layers - 1`` interferers.

    ``sic_layers=math.inf`` means unlimited cancellation. ``k_max`` bounds
    the index of the strongest accessible transmitter that is searched for.
    """

    theta: float
    eta: float
    sic_layers: float = math.inf
    k_max: int = 50
    l_max: Optional[int] = None

    def __post_init__(self):
        if not self.theta > 0:
            raise ParameterError(f"theta must be > 0, got {self.theta!r}")
        if not 0.0 < self.eta <= 1.0:
            raise ParameterError(f"eta must lie in (0, 1], got {self.eta!r}")
        if not (self.sic_layers == math.inf or (int(self.sic_layers) == self.sic_layers and self.sic_layers >= 1)):
            raise ParameterError(f"sic_layers must be a positive integer or inf, got {self.sic_layers!r}")

    @property
    def max_cancel(self) -> int:
        if self.sic_layers == math.inf:
            return self.l_max if self.l_max is not None else self.k_max
        return int(self.sic_layers) - 1


def auto_k_max(beta: float, theta: float, n_points: int) -> int:
    """Decode depth large enough that N rarely reaches it.

    E[N] grows like (1/beta - 1) / theta as theta -> 0; four times that
    (at least 50) leaves ample room for fluctuations.
    """
    want = max(50, math.ceil(4.0 * (1.0 - beta) / (beta * theta)))
    return int(min(n_points, want))


# --- single-realization kernels ---------------------------------------------


def decode_count(r: PlpfRealization, q: DecodeQuery) -> int:
    """Number of successively decodable users, capped at ``q.k_max``."""
    k_max = min(q.k_max if q.k_max is not None else r.n_points, r.n_points)
    inv = 1.0 / r.xi[:k_max]
    ok = inv > q.theta * (r.suffix[1 : k_max + 1] + q.noise_w)
    if ok.all():
        return k_max
    return int(np.argmin(ok))


def decodable_without_sic(r: PlpfRealization, theta: float) -> list[int]:
    """1-based indices whose power exceeds theta times everything else (no cancellation)."""
    inv = 1.0 / r.xi
    total = r.suffix[0]
    return [int(i) + 1 for i in np.flatnonzero(inv > theta * (total - inv))]


def _first_accessible(marks: np.ndarray) -> np.ndarray:
    """1-based index of the first mark equal to one per row, 0 if none."""
    has = marks.any(axis=1)
    first = np.argmax(marks, axis=1) + 1
    return np.where(has, first, 0)


def hcn_covered(r: PlpfRealization, q: CoverageQuery) -> bool:
    """Whether a receiver with ``q.sic_layers`` cancellation layers is covered.

    Covered iff for some number ``m <= sic_layers - 1`` of successively
    cancelled strongest transmitters, some accessible transmitter is decoded
    against the residual interference. Strongest-accessible ``M`` beyond
    ``q.k_max`` counts as not covered.
    """
    if r.marks is None:
        raise ValueError("coverage needs access marks on the realization")
    batch = RealizationBatch(xi=r.xi[None, :], tail_mean=np.array([r.tail_mean]), marks=r.marks[None, :])
    covered, _ = coverage_indicators(batch, q)
    return bool(covered[0])


# --- batch kernels -----------------------------------------------------------


def decode_counts(batch: RealizationBatch, theta: float, noise_w: float, k_max: int) -> np.ndarray:
    k_max = min(k_max, batch.xi.shape[1])
    inv = 1.0 / batch.xi[:, :k_max]
    ok = inv > theta * (batch.suffix[:, 1 : k_max + 1] + noise_w)
    full = ok.all(axis=1)
    return np.where(full, k_max, np.argmin(ok, axis=1)).astype(np.int64)


def coverage_indicators(batch: RealizationBatch, q: CoverageQuery) -> tuple[np.ndarray, np.ndarray]:
    """Per-replicate (covered, inconclusive) flags.

    For unlimited cancellation the strongest accessible transmitter M is
    reachable iff the first M users are successively decodable. With a
    layer limit, cancelling as many decodable users as allowed is optimal
    because residual interference only shrinks; the first accessible
    transmitter after the cancelled ones is then the best candidate.
    """
    if batch.marks is None:
        raise ValueError("coverage needs access marks")
    n = batch.xi.shape[1]
    k_max = min(q.k_max, n)
    first = _first_accessible(batch.marks[:, :k_max].astype(bool))
    inconclusive = first == 0
    m_idx = np.where(inconclusive, 1, first)  # placeholder index for rows without M
    rows = np.arange(len(batch))

    if q.sic_layers == math.inf and q.l_max is None:
        counts = decode_counts(batch, q.theta, 0.0, k_max)
        covered = (counts >= m_idx) & ~inconclusive
        return covered, inconclusive

    depth = min(q.max_cancel, n - 1)
    counts = decode_counts(batch, q.theta, 0.0, max(depth, 1)) if depth > 0 else np.zeros(len(batch), np.int64)
    m_star = np.minimum(counts, depth)
    already = m_idx <= m_star
    inv_m = 1.0 / batch.xi[rows, m_idx - 1]
    residual = batch.suffix[rows, m_star] - inv_m
    decoded_after = inv_m > q.theta * residual
    covered = (already | decoded_after) & ~inconclusive
    return covered, inconclusive


# --- replicate driver ----------------------------------------------------------


def _rows_per_batch(n_points: int, count: int) -> int:
    return max(1, min(count, _BATCH_CELLS // n_points))


def _run_chunk(kernel: Callable[[RealizationBatch], np.ndarray], cfg: SamplerConfig, span: tuple[int, int]):
    start, count = span
    out = []
    step = _rows_per_batch(cfg.n_points, count)
    for s in range(start, start + count, step):
        c = min(step, start + count - s)
        out.append(np.asarray(kernel(sample_splpf_batch(cfg, s, c))))
    return np.concatenate(out, axis=0)


def map_replicates(kernel: Callable[[RealizationBatch], np.ndarray], cfg: SamplerConfig, replicates: int,
                   workers: int = 1, first_replicate: int = 0) -> np.ndarray:
    """Apply ``kernel`` to replicates ``first_replicate ..`` and stack its per-replicate output.

    ``kernel`` must be picklable when ``workers > 1``.
    """
    if replicates < 1:
        raise ParameterError("need at least one replicate")
    spans = [(s, min(CHUNK, first_replicate + replicates - s))
             for s in range(first_replicate, first_replicate + replicates, CHUNK)]
    run = partial(_run_chunk, kernel, cfg)
    if workers <= 1 or len(spans) == 1:
        parts = [run(sp) for sp in spans]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, spans))
    return np.concatenate(parts, axis=0)


def summarize(values: np.ndarray) -> SicEstimate:
    """Sample mean with standard error ``std / sqrt(n)``."""
    values = np.asarray(values, dtype=float)
    n = values.size
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return SicEstimate(mean, se, n)


# --- estimators -----------------------------------------------------------------


def _check_replicates(replicates: int, minimum: int = 100) -> None:
    if replicates < minimum:
        raise ParameterError(f"need at least {minimum} replicates, got {replicates}")


def _counts_kernel(theta: float, noise_w: float, k_max: int, batch: RealizationBatch) -> np.ndarray:
    return decode_counts(batch, theta, noise_w, k_max)


def _warn_saturation(counts: np.ndarray, k_max: int) -> None:
    frac = float(np.mean(counts >= k_max))
    if frac > 1e-3:
        msg = f"decode depth k_max={k_max} reached in {frac:.2%} of replicates; estimates are biased low"
        log.warning(msg)
        warnings.warn(msg, DepthTruncationWarning, stacklevel=3)


def _decode_counts_for(cfg: SamplerConfig, q: DecodeQuery, replicates: int, workers: int) -> tuple[np.ndarray, int]:
    k_max = q.depth(cfg)
    kernel = partial(_counts_kernel, q.theta, q.noise_w, k_max)
    return map_replicates(kernel, cfg, replicates, workers), k_max


def estimate_pk(cfg: SamplerConfig, q: DecodeQuery, replicates: int, workers: int = 1) -> list[SicEstimate]:
    """P(N >= k) for k = 1 .. k_max, as a list indexed from k = 1."""
    _check_replicates(replicates)
    # counts saturate at k_max, which leaves P(N >= k) exact for every k <= k_max
    counts, k_max = _decode_counts_for(cfg, q, replicates, workers)
    return [summarize(counts >= k) for k in range(1, k_max + 1)]


def _joint_tail_kernel(theta: float, k: int, noise_w: float, batch: RealizationBatch) -> np.ndarray:
    return 1.0 / batch.xi[:, k - 1] > theta * (batch.suffix[:, k] + noise_w)


def estimate_joint_tail(cfg: SamplerConfig, theta: float, k: int, noise_w: float = 0.0,
                        replicates: int = 10_000, workers: int = 1) -> SicEstimate:
    """P(1/xi_k > theta (I_k + W)): decode user k as if the k-1 stronger ones were gone."""
    _check_replicates(replicates)
    if not 1 <= k <= cfg.n_points:
        raise ParameterError(f"k must lie in [1, n_points], got {k}")
    flags = map_replicates(partial(_joint_tail_kernel, theta, k, noise_w), cfg, replicates, workers)
    return summarize(flags)


def _joint_tails_kernel(thetas: tuple, ks: tuple, noise_w: float, batch: RealizationBatch) -> np.ndarray:
    idx = np.asarray(ks)
    ratio = (1.0 / batch.xi[:, idx - 1]) / (batch.suffix[:, idx] + noise_w)
    return np.concatenate([ratio > t for t in thetas], axis=1)


def estimate_joint_tails(cfg: SamplerConfig, thetas, ks, noise_w: float = 0.0, replicates: int = 10_000,
                         workers: int = 1) -> dict[tuple[float, int], SicEstimate]:
    """:func:`estimate_joint_tail` for every ``(theta, k)`` pair from one set of realizations."""
    _check_replicates(replicates)
    thetas, ks = tuple(float(t) for t in thetas), tuple(int(k) for k in ks)
    if not all(1 <= k <= cfg.n_points for k in ks):
        raise ParameterError(f"every k must lie in [1, n_points], got {ks}")
    flags = map_replicates(partial(_joint_tails_kernel, thetas, ks, noise_w), cfg, replicates, workers)
    out = {}
    for i, t in enumerate(thetas):
        for j, k in enumerate(ks):
            out[(t, k)] = summarize(flags[:, i * len(ks) + j])
    return out


def estimate_en(cfg: SamplerConfig, q: DecodeQuery, replicates: int, workers: int = 1) -> SicEstimate:
    """Mean number of successively decodable users."""
    _check_replicates(replicates)
    counts, k_max = _decode_counts_for(cfg, q, replicates, workers)
    _warn_saturation(counts, k_max)
    return summarize(counts)


def estimate_throughput(cfg: SamplerConfig, q: DecodeQuery, replicates: int, workers: int = 1) -> SicEstimate:
    """Aggregate throughput ln(1 + theta) E[N] in nats/s/Hz."""
    en = estimate_en(cfg, q, replicates, workers)
    rate = math.log1p(q.theta)
    return SicEstimate(rate * en.value, rate * en.std_error, en.replicates)


def _laplace_kernel(k: int, s: float, batch: RealizationBatch) -> np.ndarray:
    return np.exp(-s * batch.xi[:, k - 1] * batch.suffix[:, k])


def estimate_laplace_xikIk(cfg: SamplerConfig, k: int, s: float, replicates: int,
                           workers: int = 1) -> SicEstimate:
    """E[exp(-s xi_k I_k)]."""
    _check_replicates(replicates)
    if not s > 0:
        raise ParameterError(f"s must be > 0, got {s!r}")
    if not 1 <= k <= cfg.n_points:
        raise ParameterError(f"k must lie in [1, n_points], got {k}")
    return summarize(map_replicates(partial(_laplace_kernel, k, s), cfg, replicates, workers))


def _coverage_kernel(q: CoverageQuery, batch: RealizationBatch) -> np.ndarray:
    covered, inconclusive = coverage_indicators(batch, q)
    return np.stack([covered, inconclusive], axis=1)


def estimate_coverage(cfg: SamplerConfig, q: CoverageQuery, replicates: int,
                      workers: int = 1) -> tuple[SicEstimate, float]:
    """Coverage probability and the fraction of inconclusive replicates.

    ``cfg.mark_prob`` must equal ``q.eta``; marks are drawn by the sampler.
    """
    _check_replicates(replicates)
    if cfg.mark_prob is None or not math.isclose(cfg.mark_prob, q.eta):
        raise ParameterError("sampler mark_prob must be set to the coverage eta")
    if q.k_max > cfg.n_points:
        raise ParameterError(f"k_max={q.k_max} exceeds n_points={cfg.n_points}")
    flags = map_replicates(partial(_coverage_kernel, q), cfg, replicates, workers)
    inconclusive = float(flags[:, 1].mean())
    if inconclusive > 1e-3:
        msg = f"strongest accessible transmitter beyond k_max in {inconclusive:.2%} of replicates"
        log.warning(msg)
        warnings.warn(msg, DepthTruncationWarning, stacklevel=2)
    return summarize(flags[:, 0]), inconclusive


def estimate_coverage_series(cfg: SamplerConfig, theta: float, eta: float, terms: int = 20,
                             replicates: int = 10_000, workers: int = 1) -> SicEstimate:
    """sum_{k <= terms} (1 - eta)^(k-1) eta P(N >= k), estimated from decode counts.

    Per replicate the summand is the partial geometric sum up to
    ``min(N, terms)``, so its standard error is a plain sample error.
    """
    _check_replicates(replicates)
    weights = eta * (1.0 - eta) ** np.arange(terms)
    cum = np.concatenate([[0.0], np.cumsum(weights)])
    counts, _ = _decode_counts_for(cfg, DecodeQuery(theta, 0.0, terms), replicates, workers)
    return summarize(cum[np.minimum(counts, terms)])
