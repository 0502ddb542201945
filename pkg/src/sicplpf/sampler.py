"""Sampling truncated path loss processes.

The standard process with intensity measure ``a * r**beta`` is the image of a
unit-rate Poisson process on the half-line under ``t -> (t / a)**(1/beta)``,
so its first ``n`` points are ``(T_i / a)**(1/beta)`` with ``T_i`` cumulative
sums of unit exponentials. Points beyond the ``n``-th are replaced by their
conditional mean interference ``a * beta / (1 - beta) * xi_n**(beta - 1)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional

import numpy as np

from .netmodel import NetworkParams, ParameterError
from .rng import replicate_generator

__all__ = [
    "TAIL_MODES",
    "SamplerConfig",
    "PlpfRealization",
    "RealizationBatch",
    "tail_mean_interference",
    "sample_splpf",
    "sample_splpf_batch",
    "sample_ppnf",
    "sample_ppnf_batch",
    "suffix_interference",
    "scale_realization",
    "dump_realization_csv",
]

TAIL_MODES = ("compensate-mean", "drop")


@dataclass(frozen=True)
class SamplerConfig:
    """How to draw one truncated realization.

    ``intensity`` is the scale ``a`` of Lambda([0, r]) = a r^beta; the
    standard process has ``intensity=1``. It only matters once noise enters.
    """

    beta: float
    n_points: int = 1000
    tail_mode: str = "compensate-mean"
    master_seed: int = 0
    mark_prob: Optional[float] = None
    intensity: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ParameterError(f"beta must lie in (0, 1), got {self.beta!r}")
        if int(self.n_points) != self.n_points or self.n_points < 10:
            raise ParameterError(f"n_points must be an integer >= 10, got {self.n_points!r}")
        if self.tail_mode not in TAIL_MODES:
            raise ParameterError(f"tail_mode must be one of {TAIL_MODES}, got {self.tail_mode!r}")
        if self.mark_prob is not None and not 0.0 <= self.mark_prob <= 1.0:
            raise ParameterError(f"mark_prob must lie in [0, 1], got {self.mark_prob!r}")
        if not self.intensity > 0:
            raise ParameterError(f"intensity must be > 0, got {self.intensity!r}")


def tail_mean_interference(xi_last, beta: float, intensity: float = 1.0):
    """Mean of sum(1/xi) over the points beyond ``xi_last``."""
    return intensity * beta / (1.0 - beta) * np.power(xi_last, beta - 1.0)


@dataclass(frozen=True)
class PlpfRealization:
    """Increasing path loss values, optional access marks and the compensated tail."""

    xi: np.ndarray
    marks: Optional[np.ndarray] = None
    tail_mean: float = 0.0
    beta: Optional[float] = None
    intensity: float = 1.0

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=float)
        if xi.ndim != 1 or xi.size == 0:
            raise ValueError("xi must be a nonempty 1-d array")
        if np.any(xi <= 0) or np.any(np.diff(xi) <= 0):
            raise ValueError("xi must be positive and strictly increasing")
        object.__setattr__(self, "xi", xi)
        if self.marks is not None:
            marks = np.asarray(self.marks, dtype=np.int8)
            if marks.shape != xi.shape:
                raise ValueError("marks must have the same length as xi")
            object.__setattr__(self, "marks", marks)
        if self.tail_mean < 0:
            raise ValueError("tail_mean must be nonnegative")

    @property
    def n_points(self) -> int:
        return self.xi.size

    @cached_property
    def suffix(self) -> np.ndarray:
        """``suffix[k]`` is the interference left after removing the k strongest points."""
        inv = 1.0 / self.xi
        out = np.empty(inv.size + 1)
        out[:-1] = np.cumsum(inv[::-1])[::-1]
        out[-1] = 0.0
        return out + self.tail_mean


@dataclass
class RealizationBatch:
    """A stack of realizations with a common truncation length, one per row."""

    xi: np.ndarray
    tail_mean: np.ndarray
    marks: Optional[np.ndarray] = None
    first_index: int = 0
    _suffix: Optional[np.ndarray] = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.xi.shape[0]

    @property
    def suffix(self) -> np.ndarray:
        """Shape ``(B, n + 1)``; column k holds the interference after the k strongest."""
        if self._suffix is None:
            inv = 1.0 / self.xi
            out = np.empty((inv.shape[0], inv.shape[1] + 1))
            out[:, :-1] = np.cumsum(inv[:, ::-1], axis=1)[:, ::-1]
            out[:, -1] = 0.0
            out += self.tail_mean[:, None]
            self._suffix = out
        return self._suffix

    def row(self, i: int) -> PlpfRealization:
        return PlpfRealization(
            xi=self.xi[i].copy(),
            marks=None if self.marks is None else self.marks[i].copy(),
            tail_mean=float(self.tail_mean[i]),
        )


def _draw_splpf_row(cfg: SamplerConfig, replicate_index: int, xi_out: np.ndarray, marks_out):
    rng = replicate_generator(cfg.master_seed, replicate_index)
    arrivals = np.cumsum(rng.standard_exponential(cfg.n_points))
    np.power(arrivals / cfg.intensity, 1.0 / cfg.beta, out=xi_out)
    if marks_out is not None:
        marks_out[:] = rng.random(cfg.n_points) < cfg.mark_prob


def sample_splpf(cfg: SamplerConfig, replicate_index: int) -> PlpfRealization:
    """Deterministic realization number ``replicate_index`` under ``cfg``."""
    xi = np.empty(cfg.n_points)
    marks = None if cfg.mark_prob is None else np.empty(cfg.n_points, dtype=np.int8)
    _draw_splpf_row(cfg, replicate_index, xi, marks)
    tail = 0.0
    if cfg.tail_mode == "compensate-mean":
        tail = float(tail_mean_interference(xi[-1], cfg.beta, cfg.intensity))
    return PlpfRealization(xi=xi, marks=marks, tail_mean=tail, beta=cfg.beta, intensity=cfg.intensity)


def sample_splpf_batch(cfg: SamplerConfig, start: int, count: int) -> RealizationBatch:
    """Replicates ``start, ..., start + count - 1`` stacked row-wise."""
    xi = np.empty((count, cfg.n_points))
    marks = None if cfg.mark_prob is None else np.empty((count, cfg.n_points), dtype=np.int8)
    for r in range(count):
        _draw_splpf_row(cfg, start + r, xi[r], None if marks is None else marks[r])
    if cfg.tail_mode == "compensate-mean":
        tail = tail_mean_interference(xi[:, -1], cfg.beta, cfg.intensity)
    else:
        tail = np.zeros(count)
    return RealizationBatch(xi=xi, tail_mean=tail, marks=marks, first_index=start)


def _draw_ppnf_row(params: NetworkParams, n_points: int, master_seed: int, replicate_index: int,
                   mark_prob: Optional[float]):
    rng = replicate_generator(master_seed, replicate_index)
    d, b, alpha = params.d, params.b, params.alpha
    # ball-count measure a d c_d R^(b+d) / (b+d), inverted at unit-rate arrival times
    scale = params.a * d * params.c_d / (b + d)
    arrivals = np.cumsum(rng.standard_exponential(n_points))
    radii = np.power(arrivals / scale, 1.0 / (b + d))
    h = params.fading.draw(rng, n_points)
    with np.errstate(divide="ignore"):
        xi = np.sort(np.power(radii, alpha) / h)
    marks = None
    if mark_prob is not None:
        marks = (rng.random(n_points) < mark_prob).astype(np.int8)
    # mean received power from beyond the last sampled radius, E[h] = 1
    r_max = radii[-1]
    tail = params.a * d * params.c_d * r_max ** (b + d - alpha) / (alpha - b - d)
    return xi, marks, tail


def sample_ppnf(params: NetworkParams, n_points: int, master_seed: int, replicate_index: int,
                mark_prob: Optional[float] = None) -> PlpfRealization:
    """Sample the network in space, apply fading and map to path loss values.

    The ``n_points`` nearest transmitters are drawn by radius inversion and
    the received power from beyond the last one is replaced by its mean.
    Used to check the reductions; production paths sample the 1-d process.
    """
    xi, marks, tail = _draw_ppnf_row(params, n_points, master_seed, replicate_index, mark_prob)
    return PlpfRealization(xi=xi, marks=marks, tail_mean=float(tail), beta=params.beta,
                           intensity=params.a_bar)


def sample_ppnf_batch(params: NetworkParams, n_points: int, master_seed: int, start: int, count: int,
                      mark_prob: Optional[float] = None) -> RealizationBatch:
    xi = np.empty((count, n_points))
    tail = np.empty(count)
    marks = None if mark_prob is None else np.empty((count, n_points), dtype=np.int8)
    for r in range(count):
        row, m, t = _draw_ppnf_row(params, n_points, master_seed, start + r, mark_prob)
        xi[r] = row
        tail[r] = t
        if marks is not None:
            marks[r] = m
    return RealizationBatch(xi=xi, tail_mean=tail, marks=marks, first_index=start)


def suffix_interference(r: PlpfRealization, k: int) -> float:
    """Interference from all points after the k-th (k = 0 gives the total)."""
    if not 0 <= k <= r.n_points:
        raise IndexError(f"k={k} outside [0, {r.n_points}]")
    return float(r.suffix[k])


def scale_realization(r: PlpfRealization, c: float) -> PlpfRealization:
    """Multiply every path loss value by ``c``.

    The image process has intensity ``a * c**(-beta)``, so the compensated
    tail recomputed at the scaled last point is the old tail divided by ``c``.
    """
    if not c > 0:
        raise ValueError(f"scale must be > 0, got {c!r}")
    intensity = r.intensity * c ** (-r.beta) if r.beta is not None else r.intensity
    return PlpfRealization(xi=r.xi * c, marks=r.marks, tail_mean=r.tail_mean / c, beta=r.beta,
                           intensity=intensity)


def dump_realization_csv(r: PlpfRealization, path: str | Path) -> None:
    """Write ``index, xi, mark`` rows (1-based index, empty mark if unmarked)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "xi", "mark"])
        for i, x in enumerate(r.xi, start=1):
            mark = "" if r.marks is None else int(r.marks[i - 1])
            w.writerow([i, repr(float(x)), mark])
