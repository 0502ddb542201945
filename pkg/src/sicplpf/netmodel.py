"""Network parameters and their reductions to a one-dimensional path loss process.

A power-law Poisson network (density ``a * |x|**b`` in ``d`` dimensions, path
loss exponent ``alpha``, iid fading) maps to a Poisson process of path loss
values ``|x|**alpha / h`` on the half-line with intensity measure
``a_bar * r**beta``. Everything that matters for interference-limited
decoding is carried by ``beta``; the scale ``a_bar`` only matters with noise.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .rng import replicate_generator

__all__ = [
    "ParameterError",
    "FadingSpec",
    "NetworkParams",
    "TierParams",
    "HcnParams",
    "unit_ball_volume",
    "beta_of",
    "plpf_intensity_scale",
    "hcn_reduce",
    "theta_from_config",
    "db_to_linear",
    "linear_to_db",
    "network_from_dict",
    "hcn_from_dict",
    "load_config",
]

FADING_KINDS = ("none", "exponential", "custom")
_MOMENT_DRAWS = 1_000_000


class ParameterError(ValueError):
    """A parameter lies outside its validated domain."""


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class FadingSpec:
    """Unit-mean power fading.

    ``kind`` is ``"none"``, ``"exponential"`` (Rayleigh amplitude) or
    ``"custom"``. A custom fading needs a ``sampler(rng, size) -> ndarray``
    and optionally its fractional moment ``beta_moment = E[h**beta]``; if the
    moment is missing it is estimated by Monte Carlo.
    """

    kind: str = "none"
    sampler: Optional[Callable[[np.random.Generator, int], np.ndarray]] = field(
        default=None, compare=False, repr=False
    )
    beta_moment: Optional[float] = None

    def __post_init__(self):
        if self.kind not in FADING_KINDS:
            raise ParameterError(f"unknown fading kind {self.kind!r}; expected one of {FADING_KINDS}")
        if self.kind == "custom" and self.sampler is None and self.beta_moment is None:
            raise ParameterError("custom fading needs a sampler or a known E[h^beta]")

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "none":
            return np.ones(size)
        if self.kind == "exponential":
            return rng.standard_exponential(size)
        if self.sampler is None:
            raise ParameterError("custom fading without a sampler cannot be drawn")
        return np.asarray(self.sampler(rng, size), dtype=float)

    def moment(self, beta: float) -> float:
        """E[h**beta]; estimated from 10**6 draws for custom fading without a stated moment."""
        return self.moment_with_error(beta)[0]

    def moment_with_error(self, beta: float) -> tuple[float, float]:
        if self.kind == "none":
            return 1.0, 0.0
        if self.kind == "exponential":
            return math.gamma(1.0 + beta), 0.0
        if self.beta_moment is not None:
            return float(self.beta_moment), 0.0
        rng = replicate_generator(0x5EED, 0)
        h = self.draw(rng, _MOMENT_DRAWS)
        if np.any(h < 0):
            raise ParameterError("fading sampler returned negative values")
        hb = h**beta
        m = float(hb.mean())
        if not math.isfinite(m):
            raise ParameterError("E[h^beta] is not finite for this fading")
        return m, float(hb.std(ddof=1) / math.sqrt(hb.size))


def unit_ball_volume(d: int) -> float:
    """Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1)."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


@dataclass(frozen=True)
class NetworkParams:
    """Power-law Poisson network with fading.

    Valid iff ``-d < b < alpha - d``, i.e. ``beta = (d + b) / alpha`` in (0, 1).
    """

    d: int = 2
    alpha: float = 4.0
    a: float = 1.0
    b: float = 0.0
    fading: FadingSpec = field(default_factory=FadingSpec)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.d!r}")
        if self.d > 3:
            warnings.warn(f"dimension d={self.d} > 3 is outside the usual physical range", stacklevel=3)
        if not self.alpha > 0:
            raise ParameterError(f"path loss exponent must be > 0, got {self.alpha!r}")
        if not self.a > 0:
            raise ParameterError(f"density scale a must be > 0, got {self.a!r}")
        if not (-self.d < self.b < self.alpha - self.d):
            raise ParameterError(
                f"density exponent b={self.b} must lie in (-d, alpha - d) = ({-self.d}, {self.alpha - self.d})"
            )

    @property
    def delta(self) -> float:
        return self.d / self.alpha

    @property
    def beta(self) -> float:
        return (self.d + self.b) / self.alpha

    @property
    def c_d(self) -> float:
        return unit_ball_volume(self.d)

    @property
    def a_bar(self) -> float:
        return plpf_intensity_scale(self)


def beta_of(params: NetworkParams) -> float:
    return params.beta


def plpf_intensity_scale(params: NetworkParams) -> float:
    """The constant ``a_bar`` in Lambda([0, r]) = a_bar * r**beta."""
    beta = params.beta
    return params.a * params.delta * params.c_d * params.fading.moment(beta) / beta


@dataclass(frozen=True)
class TierParams:
    lam: float
    power: float = 1.0
    access_prob: float = 1.0
    fading: FadingSpec = field(default_factory=FadingSpec)

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"tier density must be > 0, got {self.lam!r}")
        if not self.power > 0:
            raise ParameterError(f"tier power must be > 0, got {self.power!r}")
        if not 0.0 <= self.access_prob <= 1.0:
            raise ParameterError(f"access probability must be in [0, 1], got {self.access_prob!r}")


@dataclass(frozen=True)
class HcnParams:
    """K-tier cellular downlink in the plane; all tiers share ``alpha``."""

    tiers: Sequence[TierParams]
    alpha: float = 4.0

    def __post_init__(self):
        if len(self.tiers) == 0:
            raise ParameterError("an HCN needs at least one tier")
        if not self.alpha > 2:
            raise ParameterError(f"HCN path loss exponent must exceed 2 (beta = 2/alpha < 1), got {self.alpha!r}")
        object.__setattr__(self, "tiers", tuple(self.tiers))

    @property
    def beta(self) -> float:
        return 2.0 / self.alpha


def hcn_reduce(hcn: HcnParams) -> tuple[float, float, float]:
    """Collapse the tiers to ``(Z, eta, beta)``.

    ``Z`` is the total power-law weight ``sum lam_i E[h_i^beta] P_i^beta`` and
    ``eta`` the accessible fraction of it.
    """
    beta = hcn.beta
    weights = [t.lam * t.fading.moment(beta) * t.power**beta for t in hcn.tiers]
    z = math.fsum(weights)
    eta = math.fsum(w * t.access_prob for w, t in zip(weights, hcn.tiers)) / z
    return z, min(1.0, max(0.0, eta)), beta


# --- config ingestion -------------------------------------------------------


def theta_from_config(cfg: dict) -> float:
    """Read a threshold given as ``{"value": x, "unit": "dB" | "linear"}`` or a bare linear number."""
    raw = cfg["theta"] if "theta" in cfg else cfg
    if isinstance(raw, (int, float)):
        theta = float(raw)
    else:
        unit = str(raw.get("unit", "linear")).lower()
        if unit == "db":
            theta = db_to_linear(float(raw["value"]))
        elif unit == "linear":
            theta = float(raw["value"])
        else:
            raise ParameterError(f"theta unit must be 'dB' or 'linear', got {unit!r}")
    if not theta > 0:
        raise ParameterError(f"theta must be > 0, got {theta!r}")
    return theta


def _fading_from(obj) -> FadingSpec:
    if obj is None:
        return FadingSpec()
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind", "none")
    if kind == "rayleigh":
        kind = "exponential"
    return FadingSpec(kind=kind, beta_moment=obj.get("beta_moment"))


def network_from_dict(obj: dict) -> NetworkParams:
    return NetworkParams(
        d=int(obj.get("d", 2)),
        alpha=float(obj.get("alpha", 4.0)),
        a=float(obj.get("a", 1.0)),
        b=float(obj.get("b", 0.0)),
        fading=_fading_from(obj.get("fading")),
    )


def hcn_from_dict(obj: dict) -> HcnParams:
    tiers = [
        TierParams(
            lam=float(t["lambda"]),
            power=float(t.get("power", 1.0)),
            access_prob=float(t.get("access_prob", 1.0)),
            fading=_fading_from(t.get("fading")),
        )
        for t in obj["tiers"]
    ]
    return HcnParams(tiers=tiers, alpha=float(obj.get("alpha", 4.0)))


def load_config(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
