"""Parameter sweeps, figure presets and CSV output.

A sweep evaluates Monte Carlo estimates and closed-form bounds on a grid: one
swept variable, optionally crossed with discrete ``series`` values. Every
point uses the same master seed (common random numbers), so curves are
smooth and reruns are byte-identical regardless of ``--workers``.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import logging
import math
import os
import sys
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import bounds as bd
from . import montecarlo as mc
from .netmodel import FadingSpec, NetworkParams, ParameterError, db_to_linear
from .sampler import SamplerConfig

log = logging.getLogger("sicplpf")

COMMANDS = ("pk", "en", "throughput", "laplace", "hcn")
SWEEP_VARS = ("theta_db", "theta", "beta", "eta", "alpha", "b", "W", "n")
DEFAULTS = {"d": 2, "b": 0.0, "W": 0.0, "a": 1.0, "fading": "none", "n_points": 1000, "ks": [1, 2, 3]}


class SweepError(ValueError):
    """An invalid sweep specification."""


@dataclass
class SweepSpec:
    """What to sweep, what to estimate and which bounds to tabulate.

    ``values`` overrides ``start/stop/count/spacing`` with an explicit grid.
    ``series`` maps further variables to discrete values crossed with the
    sweep. ``fixed`` holds everything else (``beta`` or ``alpha``/``b``/``d``,
    ``theta`` or ``theta_db``, ``eta``, ``W``, ``n``, ``ks``, ``n_points``).
    """

    command: str
    var: str
    start: Optional[float] = None
    stop: Optional[float] = None
    count: int = 2
    spacing: str = "linear"
    values: Optional[list] = None
    series: dict = field(default_factory=dict)
    fixed: dict = field(default_factory=dict)
    estimates: list = field(default_factory=list)
    bounds: list = field(default_factory=list)
    replicates: int = 10_000
    master_seed: int = 0
    workers: int = 1
    out: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SweepError(f"command must be one of {COMMANDS}, got {self.command!r}")
        for name in [self.var, *self.series]:
            if name not in SWEEP_VARS:
                raise SweepError(f"cannot sweep {name!r}; expected one of {SWEEP_VARS}")
        if self.values is None:
            if self.start is None or self.stop is None:
                raise SweepError("a sweep needs start and stop, or explicit values")
            if int(self.count) != self.count or self.count < 2:
                raise SweepError(f"count must be an integer >= 2, got {self.count!r}")
            if self.spacing not in ("linear", "log"):
                raise SweepError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
            if self.spacing == "log" and not (self.start > 0 and self.stop > 0):
                raise SweepError("log spacing needs positive start and stop")
        elif len(self.values) == 0:
            raise SweepError("explicit sweep values must be nonempty")
        if self.replicates < 100:
            raise SweepError(f"replicates must be >= 100, got {self.replicates!r}")
        if self.workers < 1:
            raise SweepError(f"workers must be >= 1, got {self.workers!r}")
        unknown_e = set(self.estimates) - set(ESTIMATES)
        unknown_b = set(self.bounds) - set(BOUNDS)
        if unknown_e:
            raise SweepError(f"unknown estimates {sorted(unknown_e)}; known: {sorted(ESTIMATES)}")
        if unknown_b:
            raise SweepError(f"unknown bounds {sorted(unknown_b)}; known: {sorted(BOUNDS)}")
        for p in self.points():
            resolve_point(self.command, p)

    def grid(self) -> list:
        if self.values is not None:
            return list(self.values)
        if self.spacing == "log":
            return list(np.geomspace(self.start, self.stop, int(self.count)))
        return list(np.linspace(self.start, self.stop, int(self.count)))

    def points(self) -> list[dict]:
        names = sorted(self.series)
        out = []
        for combo in itertools.product(*(self.series[k] for k in names)):
            for x in self.grid():
                p = dict(DEFAULTS)
                p.update(self.fixed)
                p.update(zip(names, combo))
                p[self.var] = x
                out.append(p)
        return out

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "SweepSpec":
        allowed = set(cls.__dataclass_fields__)
        extra = set(obj) - allowed
        if extra:
            raise SweepError(f"unknown sweep fields {sorted(extra)}")
        return cls(**obj)


# --- parameter resolution ----------------------------------------------------------


@dataclass(frozen=True)
class Point:
    """Fully resolved parameters at one sweep point."""

    theta: float
    beta: float
    a_bar: float
    W: float
    eta: Optional[float]
    n: Optional[int]
    ks: tuple
    n_points: int
    tail_mode: str


def resolve_point(command: str, p: dict) -> Point:
    """Turn raw sweep parameters into linear theta, beta and the process scale."""
    try:
        if "theta_db" in p:
            theta = db_to_linear(float(p["theta_db"]))
        elif "theta" in p:
            theta = float(p["theta"])
        else:
            raise SweepError("no threshold: set theta or theta_db")
        if not theta > 0:
            raise SweepError(f"theta must be > 0, got {theta!r}")
        a_bar = float(p.get("a_bar", 1.0))
        if "alpha" in p:
            alpha = float(p["alpha"])
            if command == "hcn":
                if not alpha > 2:
                    raise SweepError(f"HCN path loss exponent must exceed 2, got {alpha}")
                beta = 2.0 / alpha
            else:
                net = NetworkParams(d=int(p["d"]), alpha=alpha, a=float(p["a"]), b=float(p["b"]),
                                    fading=FadingSpec(kind=_fading_kind(p["fading"])))
                beta = net.beta
                if "a_bar" not in p:
                    a_bar = net.a_bar
        elif "beta" in p:
            beta = float(p["beta"])
        else:
            raise SweepError("no exponent: set beta or alpha")
        if not 0.0 < beta < 1.0:
            raise SweepError(f"beta must lie in (0, 1), got {beta!r}")
        W = float(p["W"])
        if W < 0:
            raise SweepError(f"noise power W must be >= 0, got {W!r}")
        eta = p.get("eta")
        if eta is not None:
            eta = float(eta)
            if not 0.0 < eta <= 1.0:
                raise SweepError(f"eta must lie in (0, 1], got {eta!r}")
        elif command == "hcn":
            raise SweepError("hcn sweeps need eta")
        n = p.get("n")
        if n is not None:
            if int(n) != n or n < 1:
                raise SweepError(f"n must be a positive integer, got {n!r}")
            n = int(n)
        ks = tuple(int(k) for k in p["ks"])
        if not ks or min(ks) < 1:
            raise SweepError(f"ks must be positive integers, got {p['ks']!r}")
        n_points = int(p["n_points"])
        if n_points < 10 or max(ks) > n_points:
            raise SweepError(f"n_points={n_points} must be >= 10 and >= max(ks)")
        return Point(theta, beta, a_bar, W, eta, n, ks, n_points, str(p.get("tail_mode", "compensate-mean")))
    except (ParameterError, KeyError, TypeError) as exc:
        raise SweepError(str(exc)) from exc


def _fading_kind(name: str) -> str:
    return "exponential" if name == "rayleigh" else name


# --- estimates ------------------------------------------------------------------------


def _sampler(pt: Point, spec: SweepSpec, mark_prob=None) -> SamplerConfig:
    return SamplerConfig(beta=pt.beta, n_points=pt.n_points, tail_mode=pt.tail_mode,
                         master_seed=spec.master_seed, mark_prob=mark_prob, intensity=pt.a_bar)


def _est_pk(pt, spec):
    q = mc.DecodeQuery(pt.theta, pt.W, max(pt.ks))
    ests = mc.estimate_pk(_sampler(pt, spec), q, spec.replicates, spec.workers)
    return {f"p{k}": ests[k - 1] for k in pt.ks}


def _est_joint_tail(pt, spec):
    ests = mc.estimate_joint_tails(_sampler(pt, spec), [pt.theta], pt.ks, pt.W, spec.replicates, spec.workers)
    return {f"tail{k}": ests[(pt.theta, k)] for k in pt.ks}


def _est_en(pt, spec):
    q = mc.DecodeQuery(pt.theta, pt.W, None)
    return {"en": mc.estimate_en(_sampler(pt, spec), q, spec.replicates, spec.workers)}


def _est_throughput(pt, spec):
    q = mc.DecodeQuery(pt.theta, pt.W, None)
    return {"throughput": mc.estimate_throughput(_sampler(pt, spec), q, spec.replicates, spec.workers)}


def _est_laplace(pt, spec):
    cfg = _sampler(pt, spec)
    return {f"laplace{k}": mc.estimate_laplace_xikIk(cfg, k, pt.theta, spec.replicates, spec.workers) for k in pt.ks}


def _coverage_depth(pt: Point) -> int:
    # search deep enough that the strongest accessible transmitter is found w.p. 1 - 1e-4
    want = 50 if pt.eta >= 1.0 else max(50, math.ceil(math.log(1e-4) / math.log1p(-pt.eta)))
    return min(pt.n_points, want)


def _coverage(pt, spec, layers):
    cfg = _sampler(pt, spec, mark_prob=pt.eta)
    q = mc.CoverageQuery(pt.theta, pt.eta, sic_layers=layers, k_max=_coverage_depth(pt))
    est, _ = mc.estimate_coverage(cfg, q, spec.replicates, spec.workers)
    return est


def _est_coverage(pt, spec):
    return {"coverage": _coverage(pt, spec, math.inf if pt.n is None else pt.n)}


def _est_coverage_no_sic(pt, spec):
    return {"coverage_no_sic": _coverage(pt, spec, 1)}


def _est_hcn_throughput(pt, spec):
    est = _coverage(pt, spec, math.inf if pt.n is None else pt.n)
    rate = math.log1p(pt.theta)
    return {"hcn_throughput": mc.SicEstimate(rate * est.value, rate * est.std_error, est.replicates)}


ESTIMATES: dict[str, Callable] = {
    "pk": _est_pk,
    "joint_tail": _est_joint_tail,
    "en": _est_en,
    "throughput": _est_throughput,
    "laplace": _est_laplace,
    "coverage": _est_coverage,
    "coverage_no_sic": _est_coverage_no_sic,
    "hcn_throughput": _est_hcn_throughput,
}


# --- bounds ---------------------------------------------------------------------------


def _per_k(fn):
    def run(pt):
        out = {}
        for k in pt.ks:
            try:
                out[k] = fn(k, pt.beta, pt.theta)
            except bd.BoundDomainError:
                out[k] = math.nan
        return out
    return run


def _scalar(fn):
    def run(pt):
        try:
            return {None: fn(pt)}
        except bd.BoundDomainError:
            return {None: math.nan}
    return run


def _rate(pt, value):
    return math.log1p(pt.theta) * float(value)


def _needs_eta(fn):
    def run(pt):
        if pt.eta is None:
            raise SweepError("HCN bounds need eta")
        return fn(pt)
    return run


def _needs_noise(fn):
    def run(pt):
        if not pt.W > 0:
            return math.nan
        return fn(pt)
    return run


BOUNDS: dict[str, Callable] = {
    "delta1": _per_k(bd.delta1),
    "delta2": _per_k(bd.delta2),
    "hr_lb": _per_k(bd.pk_hr_lb),
    "lr_lb": _per_k(bd.pk_lr_lb),
    "combined_ub": _per_k(bd.pk_combined_ub),
    "thm1_exact": _per_k(bd.thm1_exact),
    "smud_lb": _per_k(bd.pk_smud_lb),
    "smud_ub": _per_k(bd.pk_smud_ub),
    "laplace_closed": _per_k(lambda k, beta, theta: (1.0 + bd.c_of_s(theta, beta)) ** -k),
    "noisy_tail_ub": lambda pt: {k: (bd.noisy_tail_ub(k, pt.theta, pt.W, pt.a_bar, pt.beta) if pt.W > 0 else math.nan)
                                 for k in pt.ks},
    "en_lb": _scalar(lambda pt: bd.en_lb(pt.beta, pt.theta)),
    "en_lr_lb": _scalar(lambda pt: bd.en_lr_lb(pt.beta, pt.theta)),
    "en_ub": _scalar(lambda pt: bd.en_ub(pt.beta, pt.theta)),
    "en_smud_ub": _scalar(lambda pt: bd.en_smud_ub(pt.beta, pt.theta)),
    "r_lb": _scalar(lambda pt: _rate(pt, bd.en_lb(pt.beta, pt.theta))),
    "r_ub": _scalar(lambda pt: _rate(pt, min(bd.en_ub(pt.beta, pt.theta), bd.en_smud_ub(pt.beta, pt.theta)))),
    "r_asymptotic": _scalar(lambda pt: bd.r_asymptotic(pt.beta)),
    "r_lt_approx": _scalar(lambda pt: bd.r_lt_approx(pt.theta, pt.beta)),
    "noisy_en_ub": _scalar(_needs_noise(lambda pt: bd.noisy_en_ub(pt.theta, pt.W, pt.a_bar, pt.beta))),
    "noisy_r_ub": _scalar(_needs_noise(lambda pt: bd.noisy_r_ub(pt.theta, pt.W, pt.a_bar, pt.beta))),
    "hcn_pc_no_sic": _scalar(_needs_eta(lambda pt: bd.hcn_pc_no_sic(pt.theta, pt.beta, pt.eta))),
    "hcn_pc_sic_lb": _scalar(_needs_eta(lambda pt: bd.hcn_pc_sic_lb(pt.theta, pt.beta, pt.eta))),
    "hcn_pc_sic_ub": _scalar(_needs_eta(lambda pt: bd.hcn_pc_sic_ub(pt.theta, pt.beta, pt.eta))),
    "hcn_pc_sic_smud_ub": _scalar(_needs_eta(lambda pt: bd.hcn_pc_sic_smud_ub(pt.theta, pt.beta, pt.eta))),
    "hcn_pc_sic_smud_lb": _scalar(_needs_eta(lambda pt: bd.hcn_pc_sic_smud_lb(pt.theta, pt.beta, pt.eta))),
    "hcn_pc_sic_lta": _scalar(_needs_eta(lambda pt: bd.hcn_pc_sic_lta(pt.theta, pt.beta, pt.eta))),
    "hcn_pc_ml_closed": _scalar(_needs_eta(lambda pt: bd.hcn_pc_ml_closed(pt.beta, pt.eta))),
    "hcn_pcn_ub": _scalar(_needs_eta(lambda pt: bd.hcn_pcn_ub(pt.theta, pt.beta, pt.eta, pt.n or 1))),
    "hcn_throughput_no_sic": _scalar(_needs_eta(
        lambda pt: bd.hcn_avg_throughput(bd.hcn_pc_no_sic(pt.theta, pt.beta, pt.eta), pt.theta))),
    "hcn_throughput_ub": _scalar(_needs_eta(
        lambda pt: bd.hcn_avg_throughput(bd.hcn_pc_sic_ub(pt.theta, pt.beta, pt.eta), pt.theta))),
    "hcn_throughput_lta": _scalar(_needs_eta(
        lambda pt: bd.hcn_avg_throughput(bd.hcn_pc_sic_lta(pt.theta, pt.beta, pt.eta), pt.theta))),
}


# --- presets --------------------------------------------------------------------------

_THETA_GRID = {"var": "theta_db", "start": -10.0, "stop": 20.0, "count": 16}

PRESETS: dict[str, dict] = {
    "fig2": dict(command="pk", var="theta_db", start=-10.0, stop=10.0, count=21,
                 fixed={"beta": 0.5, "ks": [1, 2, 3, 4, 5]},
                 estimates=["joint_tail"], bounds=["thm1_exact"]),
    "fig3": dict(command="pk", var="theta_db", start=-10.0, stop=10.0, count=21,
                 fixed={"alpha": 3.0, "d": 2, "b": 0.0, "ks": [1, 2, 3]},
                 estimates=["pk"], bounds=["hr_lb", "lr_lb", "combined_ub", "smud_lb", "smud_ub"]),
    "fig4": dict(command="pk", var="b", values=[-1.0, 0.0, 1.0],
                 fixed={"alpha": 4.0, "d": 2, "theta": 1.0, "ks": [1, 2, 3]},
                 estimates=["pk"], bounds=["hr_lb", "combined_ub", "smud_lb", "smud_ub"]),
    "fig5": dict(command="en", var="theta_db", start=-10.0, stop=20.0, count=16,
                 fixed={"alpha": 4.0, "d": 2},
                 estimates=["en"], bounds=["en_lb", "en_lr_lb", "en_ub", "en_smud_ub"]),
    "fig6": dict(command="throughput", var="theta_db", start=-20.0, stop=20.0, count=9,
                 fixed={"alpha": 4.0, "d": 2, "n_points": 2000},
                 estimates=["throughput"], bounds=["r_lb", "r_ub", "r_asymptotic"]),
    "fig7": dict(command="throughput", var="theta_db", start=-20.0, stop=20.0, count=9,
                 series={"beta": [1.0 / 3.0, 0.5, 2.0 / 3.0]}, fixed={"n_points": 2000},
                 estimates=["throughput"], bounds=["r_lt_approx"]),
    "fig8": dict(command="throughput", var="theta_db", start=-20.0, stop=20.0, count=9,
                 series={"W": [0.1, 1.0, 10.0]}, fixed={"alpha": 4.0, "d": 2},
                 estimates=["throughput"], bounds=["noisy_r_ub"]),
    "fig10": dict(command="hcn", **_THETA_GRID, fixed={"alpha": 4.0, "eta": 0.6},
                  estimates=["coverage", "coverage_no_sic"],
                  bounds=["hcn_pc_no_sic", "hcn_pc_sic_lb", "hcn_pc_sic_ub", "hcn_pc_sic_smud_ub",
                          "hcn_pc_sic_smud_lb", "hcn_pc_sic_lta"]),
    "fig11": dict(command="hcn", var="alpha", start=2.5, stop=6.0, count=8,
                  fixed={"eta": 0.8, "theta": 1.0},
                  estimates=["coverage", "coverage_no_sic"],
                  bounds=["hcn_pc_no_sic", "hcn_pc_ml_closed", "hcn_pc_sic_smud_ub"]),
    "fig12": dict(command="hcn", **_THETA_GRID, fixed={"alpha": 4.0, "eta": 0.6},
                  estimates=["hcn_throughput"],
                  bounds=["hcn_throughput_no_sic", "hcn_throughput_ub", "hcn_throughput_lta"]),
    "fig13": dict(command="hcn", var="eta", start=0.1, stop=0.9, count=9,
                  series={"theta_db": [0.0, 2.0], "n": [1, 2, 10]}, fixed={"alpha": 4.0},
                  estimates=["coverage"], bounds=["hcn_pcn_ub"]),
    "fig14": dict(command="hcn", var="eta", start=0.1, stop=0.9, count=9,
                  series={"alpha": [3.3, 3.5, 3.7], "n": [1, 2, 10]}, fixed={"theta_db": 0.0},
                  estimates=["coverage"], bounds=["hcn_pcn_ub"]),
    "fig15": dict(command="hcn", var="theta_db", start=-5.0, stop=10.0, count=7,
                  series={"eta": [0.3, 0.6, 0.9], "n": [1, 2]}, fixed={"alpha": 4.0},
                  estimates=["coverage"], bounds=["hcn_pcn_ub"]),
}


def figure_preset(name: str) -> SweepSpec:
    """Sweep reproducing the data behind one figure."""
    if name not in PRESETS:
        raise SweepError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    raw = json.loads(json.dumps(PRESETS[name]))  # deep copy
    return SweepSpec(**raw)


# --- running ---------------------------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    return f"{x:.12g}"


def _columns(tag: str, results: dict) -> list[tuple[str, object]]:
    cols = []
    for key, val in results.items():
        name = tag if key is None else f"{tag}_k{key}"
        cols.append((name, val))
    return cols


def sweep_rows(spec: SweepSpec) -> tuple[list[str], list[list[str]]]:
    """Evaluate the sweep; returns the header and formatted rows."""
    header: Optional[list[str]] = None
    rows = []
    series_names = sorted(n for n in spec.series if n != spec.var)
    for raw in spec.points():
        pt = resolve_point(spec.command, raw)
        cols: list[tuple[str, object]] = [(spec.var, raw[spec.var])]
        cols += [(n, raw[n]) for n in series_names]
        cols += [(n, v) for n, v in (("theta", pt.theta), ("beta", pt.beta)) if n != spec.var and n not in series_names]
        for name in spec.estimates:
            for col, est in ESTIMATES[name](pt, spec).items():
                cols += [(col, est.value), (f"{col}_se", est.std_error)]
        for name in spec.bounds:
            cols += _columns(name, BOUNDS[name](pt))
        names = [c for c, _ in cols]
        if header is None:
            header = names
        elif names != header:
            raise SweepError("columns changed across sweep points; keep ks fixed within a sweep")
        rows.append([_fmt(v) for _, v in cols])
    return header or [], rows


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def run_sweep(spec: SweepSpec, out: Optional[str] = None) -> str:
    """Run ``spec`` and write its CSV to ``out`` (or ``spec.out``, or stdout when neither is set).

    Returns the CSV text. A partially written file is removed on failure.
    """
    path = out or spec.out
    header, rows = sweep_rows(spec)
    if path is None or path == "-":
        buf_lines = [",".join(header)] + [",".join(r) for r in rows]
        text = "\n".join(buf_lines) + "\n"
        sys.stdout.write(text)
        return text
    try:
        write_csv(path, header, rows)
    except BaseException:
        if os.path.exists(path):
            os.remove(path)
        raise
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# --- command line ------------------------------------------------------------------------


def _parse_grid(text: str) -> dict:
    """``start:stop:count`` or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise SweepError(f"range must be start:stop:count[:log], got {text!r}")
        grid = {"start": float(parts[0]), "stop": float(parts[1]), "count": int(parts[2])}
        if len(parts) == 4:
            grid["spacing"] = parts[3]
        return grid
    return {"values": [float(v) for v in text.split(",") if v.strip()]}


_DEFAULT_ESTIMATES = {
    "pk": ["pk"], "en": ["en"], "throughput": ["throughput"], "laplace": ["laplace"], "hcn": ["coverage"],
}
_DEFAULT_BOUNDS = {
    "pk": ["hr_lb", "combined_ub", "thm1_exact"],
    "en": ["en_lb", "en_ub", "en_smud_ub"],
    "throughput": ["r_lb", "r_ub", "r_asymptotic", "r_lt_approx"],
    "laplace": ["laplace_closed"],
    "hcn": ["hcn_pc_no_sic", "hcn_pc_sic_lb", "hcn_pc_sic_ub"],
}


def _spec_from_args(args) -> SweepSpec:
    if args.command == "figure":
        spec = figure_preset(args.name)
    elif args.config:
        with open(args.config, encoding="utf-8") as fh:
            obj = json.load(fh)
        obj.setdefault("command", args.command)
        if obj["command"] != args.command:
            raise SweepError(f"config is for {obj['command']!r}, not {args.command!r}")
        spec = SweepSpec.from_dict(obj)
    else:
        fixed = {}
        for name in ("beta", "alpha", "eta", "W", "a_bar", "n", "n_points"):
            v = getattr(args, name, None)
            if v is not None:
                fixed[name] = v
        if args.k is not None:
            fixed["ks"] = args.k
        if args.theta_db is not None:
            var, grid = "theta_db", _parse_grid(args.theta_db)
        elif args.theta is not None:
            var, grid = "theta", _parse_grid(args.theta)
        else:
            var, grid = "theta_db", {"start": -10.0, "stop": 20.0, "count": 7}
        if "beta" not in fixed and "alpha" not in fixed:
            fixed["beta"] = 0.5
        if args.command == "hcn" and "eta" not in fixed:
            raise SweepError("hcn needs --eta")
        spec = SweepSpec(command=args.command, var=var, **grid, fixed=fixed,
                         estimates=args.estimates or _DEFAULT_ESTIMATES[args.command],
                         bounds=args.bounds if args.bounds is not None else _DEFAULT_BOUNDS[args.command])
    for name in ("replicates", "workers"):
        v = getattr(args, name)
        if v is not None:
            setattr(spec, name, v)
    if args.seed is not None:
        spec.master_seed = args.seed
    spec.__post_init__()
    return spec


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with SweepSpec fields")
    common.add_argument("--seed", type=int, help="master seed (default 0)")
    common.add_argument("--replicates", type=int, help="Monte Carlo replicates per point (default 10000)")
    common.add_argument("--workers", type=int, help="worker processes (results do not depend on it)")
    common.add_argument("--out", help="output CSV path (default stdout)")
    th = common.add_mutually_exclusive_group()
    th.add_argument("--theta-db", help="threshold grid in dB: start:stop:count[:log] or a comma list")
    th.add_argument("--theta", help="threshold grid, linear units, same syntax")
    common.add_argument("--beta", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--eta", type=float, help="accessible fraction (hcn)")
    common.add_argument("--W", type=float, help="noise power")
    common.add_argument("--a-bar", dest="a_bar", type=float, help="process scale, only matters with noise")
    common.add_argument("--n", type=int, help="SIC layers for hcn coverage (default unlimited)")
    common.add_argument("--k", type=int, nargs="+", help="user indices for per-k columns")
    common.add_argument("--n-points", dest="n_points", type=int, help="points per realization")
    common.add_argument("--estimates", nargs="*", help=f"MC estimates: {', '.join(ESTIMATES)}")
    common.add_argument("--bounds", nargs="*", help="bound columns by stable name")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="sicplpf", description="SIC in Poisson path loss processes: sweeps and presets.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("pk", "P(N >= k)"), ("en", "mean number of decodable users"),
                        ("throughput", "aggregate throughput"), ("laplace", "E[exp(-theta xi_k I_k)]"),
                        ("hcn", "HCN coverage")]:
        sub.add_parser(name, parents=[common], help=help_)
    fig = sub.add_parser("figure", parents=[common], help="figure preset")
    fig.add_argument("name", choices=sorted(PRESETS, key=lambda s: int(s[3:])))
    sub.add_parser("list", help="list estimate and bound names")
    return parser


def _join_grid_args(argv: Sequence[str]) -> list[str]:
    """Let ``--theta-db -10:20:7`` through; argparse would read the value as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--theta-db", "--theta"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_grid_args(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "list":
        print("estimates:", ", ".join(ESTIMATES))
        print("bounds:", ", ".join(BOUNDS))
        print("presets:", ", ".join(PRESETS))
        return 0
    try:
        spec = _spec_from_args(args)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", mc.DepthTruncationWarning)
            run_sweep(spec, args.out)
    except (SweepError, ParameterError, bd.BoundDomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
