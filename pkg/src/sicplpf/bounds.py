"""Closed-form bounds, exact expressions and approximations.

All functions take the threshold ``theta`` in linear units. Probability-like
results come back as :class:`BoundValue`, a ``float`` that also records
whether it was clamped to [0, 1] and whether the formula is being used
inside the regime where it holds. Functions never extrapolate silently:
out-of-regime evaluations are returned with ``regime_ok=False``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import specfun as sf

__all__ = [
    "BoundDomainError",
    "BoundValue",
    "BoundReport",
    "c_of_s",
    "delta1",
    "delta2",
    "pk_hr_lb",
    "pk_lr_lb",
    "pk_combined_ub",
    "thm1_exact",
    "pk_smud_lb",
    "pk_smud_ub",
    "en_lb",
    "en_lb_error_bound",
    "en_lb_pick_K",
    "en_lr_lb",
    "en_ub",
    "en_smud_ub",
    "r_lt_approx",
    "r_asymptotic",
    "noisy_tail_ub",
    "noisy_en_ub",
    "noisy_r_ub",
    "hcn_default_K",
    "hcn_pc_no_sic",
    "hcn_pc_sic_lb",
    "hcn_pc_sic_ub",
    "hcn_pc_sic_smud_ub",
    "hcn_pc_sic_smud_lb",
    "hcn_pc_sic_lta",
    "hcn_pcn_ub",
    "hcn_pc_sic_erf_closed",
    "hcn_pcn_theta1",
    "hcn_pc_ml_closed",
    "hcn_avg_throughput",
    "bound_report",
]

EN_K_CAP = 200
EN_LB_TARGET = 1e-6
HCN_RESIDUAL = 1e-9


class BoundDomainError(ValueError):
    """Arguments outside the domain where a formula is defined."""


class BoundValue(float):
    """A float tagged with evaluation metadata.

    ``exact`` marks expressions that are equalities in the current regime,
    ``clamped`` that the raw value left [0, 1], ``regime_ok`` that the
    formula's validity conditions hold. Extra keyword data (``K``,
    ``error_bound``, ``raw``) is kept in ``info``.
    """

    def __new__(cls, value, *, exact=False, clamped=False, regime_ok=True, note="", **info):
        obj = super().__new__(cls, value)
        obj.exact = exact
        obj.clamped = clamped
        obj.regime_ok = regime_ok
        obj.note = note
        obj.info = info
        return obj

    def __getattr__(self, name):
        info = self.__dict__.get("info", {})
        if name in info:
            return info[name]
        raise AttributeError(name)

    def __reduce__(self):
        return (_rebuild_bound_value, (float(self), self.exact, self.clamped, self.regime_ok, self.note, self.info))


def _rebuild_bound_value(value, exact, clamped, regime_ok, note, info):
    return BoundValue(value, exact=exact, clamped=clamped, regime_ok=regime_ok, note=note, **info)


def _prob(raw: float, **kw) -> BoundValue:
    clamped = not 0.0 <= raw <= 1.0
    return BoundValue(min(1.0, max(0.0, raw)), clamped=clamped, raw=raw, **kw)


def _check(beta: float, theta: Optional[float] = None, k: Optional[int] = None) -> None:
    if not 0.0 < beta < 1.0:
        raise BoundDomainError(f"beta must lie in (0, 1), got {beta!r}")
    if theta is not None and not theta > 0:
        raise BoundDomainError(f"theta must be > 0, got {theta!r}")
    if k is not None and (int(k) != k or k < 1):
        raise BoundDomainError(f"k must be a positive integer, got {k!r}")


def _ordering_log(beta: float, k: int, base: float) -> float:
    """ln base^(-beta k (k-1) / 2)."""
    return -0.5 * beta * k * (k - 1) * math.log(base)


# --- building blocks ---------------------------------------------------------


def c_of_s(s: float, beta: float) -> float:
    """s^beta gamma(1 - beta, s) - 1 + e^-s."""
    _check(beta)
    if not s > 0:
        raise BoundDomainError(f"s must be > 0, got {s!r}")
    return s**beta * sf.lower_inc_gamma(1.0 - beta, s) + math.expm1(-s)


def _delta1_raw(k: int, beta: float, theta: float) -> float:
    x = (1.0 - beta) / (theta * beta)
    # gamma(k+1, x) / Gamma(k) = k * P(k+1, x)
    return sf.reg_lower_gamma(k, x) - (k / x) * sf.reg_lower_gamma(k + 1, x)


def delta1(k: int, beta: float, theta: float) -> BoundValue:
    """Markov lower bound on P(1/xi_k > theta I_k)."""
    _check(beta, theta, k)
    return _prob(_delta1_raw(k, beta, theta))


def delta2(k: int, beta: float, theta: float) -> BoundValue:
    """Induced-Rayleigh upper bound on P(1/xi_k > theta I_k)."""
    _check(beta, theta, k)
    c = c_of_s(theta, beta)
    raw = sf.reg_lower_gamma(k, 1.0 / c) + math.exp(1.0 - k * math.log1p(c)) * sf.reg_upper_gamma(k, 1.0 + 1.0 / c)
    return _prob(raw)


# --- bounds on p_k -------------------------------------------------------------


def pk_hr_lb(k: int, beta: float, theta: float) -> BoundValue:
    """High-rate lower bound (1 + theta)^(-beta k (k-1)/2) Delta1(k)."""
    _check(beta, theta, k)
    return _prob(math.exp(_ordering_log(beta, k, 1.0 + theta)) * _delta1_raw(k, beta, theta))


def pk_lr_lb(k: int, beta: float, theta: float) -> BoundValue:
    """Low-rate lower bound: Delta1(k) at theta / (1 - (k-1) theta); needs k < 1/theta + 1."""
    _check(beta, theta, k)
    if not k < 1.0 / theta + 1.0:
        raise BoundDomainError(f"low-rate bound needs k < 1/theta + 1 (k={k}, theta={theta})")
    theta_eff = theta / (1.0 - (k - 1) * theta)
    return _prob(_delta1_raw(k, beta, theta_eff))


def pk_combined_ub(k: int, beta: float, theta: float) -> BoundValue:
    """max(theta, 1)^(-beta k (k-1)/2) Delta2(k)."""
    _check(beta, theta, k)
    lead = math.exp(_ordering_log(beta, k, max(theta, 1.0)))
    return _prob(lead * float(delta2(k, beta, theta)))


def _thm1_log(k: int, beta: float, theta: float) -> float:
    return -k * beta * math.log(theta) - math.lgamma(1.0 + k * beta) - k * math.lgamma(1.0 - beta)


def thm1_exact(k: int, beta: float, theta: float) -> BoundValue:
    """1 / (theta^(k beta) Gamma(1 + k beta) Gamma(1 - beta)^k).

    Equals P(1/xi_k > theta I_k) for theta >= 1, an upper bound below.
    """
    _check(beta, theta, k)
    return _prob(math.exp(_thm1_log(k, beta, theta)), exact=theta >= 1.0)


def pk_smud_lb(k: int, beta: float, theta: float) -> BoundValue:
    """(1 + theta)^(-beta k (k-1)/2) times the exact tail; valid for theta >= 1."""
    _check(beta, theta, k)
    raw = math.exp(_ordering_log(beta, k, 1.0 + theta) + _thm1_log(k, beta, theta))
    ok = theta >= 1.0
    return _prob(raw, regime_ok=ok, note="" if ok else "SMUD lower bound needs theta >= 1")


def pk_smud_ub(k: int, beta: float, theta: float) -> BoundValue:
    """max(theta, 1)^(-beta k (k-1)/2) times the exact-tail expression; any theta > 0."""
    _check(beta, theta, k)
    raw = math.exp(_ordering_log(beta, k, max(theta, 1.0)) + _thm1_log(k, beta, theta))
    return _prob(raw)


# --- mean number of decodable users ----------------------------------------------


def en_lb_error_bound(beta: float, theta: float, K: int) -> float:
    """Bound on the tail sum_{k > K} of the high-rate lower-bound terms."""
    _check(beta, theta, K)
    lt = math.log1p(theta)
    pre = (1.0 + theta) ** (beta / 8.0) * _delta1_raw(K, beta, theta) * math.sqrt(math.pi) / math.sqrt(2.0 * beta * lt)
    return pre * math.erfc((K - 0.5) * math.sqrt(0.5 * beta * lt))


def en_lb_pick_K(beta: float, theta: float, target: float = EN_LB_TARGET, cap: int = EN_K_CAP) -> int:
    """Smallest K whose tail bound is below ``target`` (``cap`` if none is)."""
    for K in range(1, cap + 1):
        if en_lb_error_bound(beta, theta, K) < target:
            return K
    return cap


def en_lb(beta: float, theta: float, K: Optional[int] = None) -> BoundValue:
    """sum_{k <= K} of high-rate lower bounds; carries ``K`` and ``error_bound``."""
    _check(beta, theta)
    if K is None:
        K = en_lb_pick_K(beta, theta)
    _check(beta, theta, K)
    total = math.fsum(float(pk_hr_lb(k, beta, theta)) for k in range(1, K + 1))
    return BoundValue(total, K=K, error_bound=en_lb_error_bound(beta, theta, K))


def en_lr_lb(beta: float, theta: float) -> BoundValue:
    """sum_{k <= floor(1/theta)} of low-rate lower bounds (0 when theta > 1)."""
    _check(beta, theta)
    top = math.floor(1.0 / theta)
    return BoundValue(math.fsum(float(pk_lr_lb(k, beta, theta)) for k in range(1, top + 1)), K=top)


def _en_ub_at(beta: float, theta: float, K: int, c: float, d2_prefix: list[float]) -> float:
    ck = c * K
    head = math.exp(1.0 + K + (1.0 - K) * math.log(ck)) / math.sqrt(2.0 * math.pi) / (ck - 1.0)
    geo = math.e / c * math.exp((1.0 - K) * math.log1p(c))
    return head + geo + d2_prefix[K - 1]


def en_ub(beta: float, theta: float, K: Optional[int] = None, search: int = EN_K_CAP) -> BoundValue:
    """Upper bound on E[N] built from the combined bound; needs K >= e / c(theta).

    With ``K=None`` the bound is minimized over the ``search`` admissible K
    values starting at ceil(e / c).
    """
    _check(beta, theta)
    c = c_of_s(theta, beta)
    k_min = max(1, math.ceil(math.e / c))
    if K is not None:
        _check(beta, theta, K)
        if K < math.e / c:
            raise BoundDomainError(f"en_ub needs K >= e/c = {math.e / c:.6g}, got K={K}")
        candidates = [K]
    else:
        candidates = list(range(k_min, k_min + search))
    top = max(candidates)
    lead = max(theta, 1.0)
    prefix = [0.0]
    for k in range(1, top):
        prefix.append(prefix[-1] + math.exp(_ordering_log(beta, k, lead)) * float(delta2(k, beta, theta)))
    best = min(candidates, key=lambda kk: _en_ub_at(beta, theta, kk, c, prefix))
    return BoundValue(_en_ub_at(beta, theta, best, c, prefix), K=best)


def _smud_series(beta: float, theta: float, K: int, scale: float = 1.0) -> Optional[float]:
    """sum_{k<K} (s C(k)/G)^k / Gamma(1+k beta) + geometric tail at K; None if the tail diverges."""
    g = math.gamma(1.0 - beta)
    lead = max(theta, 1.0)

    def cc(k):
        return theta**-beta * lead ** (-0.5 * beta * (k - 1))

    ratio_k = scale * cc(K)
    if not ratio_k < g:
        return None
    head = math.fsum(
        math.exp(k * math.log(scale * cc(k) / g) - math.lgamma(1.0 + k * beta)) for k in range(1, K)
    )
    tail = math.exp(K * math.log(ratio_k / g) - math.lgamma(1.0 + K * beta)) * g / (g - ratio_k)
    return head + tail


def en_smud_ub(beta: float, theta: float, K: Optional[int] = None) -> BoundValue:
    """SMUD-type upper bound on E[N]; needs C(K) < Gamma(1 - beta).

    ``K=None`` minimizes over admissible K <= 200. If no K is admissible
    (small theta) the result is ``inf`` with ``regime_ok=False``.
    """
    _check(beta, theta)
    if K is not None:
        _check(beta, theta, K)
        val = _smud_series(beta, theta, K)
        if val is None:
            raise BoundDomainError(
                f"en_smud_ub needs C(K) < Gamma(1-beta); C({K}) = "
                f"{theta**-beta * max(theta, 1.0) ** (-0.5 * beta * (K - 1)):.6g} >= {math.gamma(1 - beta):.6g}"
            )
        return BoundValue(val, K=K)
    best = None
    for kk in range(1, EN_K_CAP + 1):
        val = _smud_series(beta, theta, kk)
        if val is not None and (best is None or val < best[1]):
            best = (kk, val)
    if best is None:
        return BoundValue(math.inf, regime_ok=False, note="C(K) >= Gamma(1-beta) for every K", K=None)
    return BoundValue(best[1], K=best[0])


# --- throughput ------------------------------------------------------------------


def r_lt_approx(theta: float, beta: float) -> float:
    """Laplace-transform approximation ln(1 + theta) / c(theta) of the aggregate throughput."""
    return math.log1p(theta) / c_of_s(theta, beta)


def r_asymptotic(beta: float) -> float:
    """Small-theta limit bound on the aggregate throughput, 1/beta - 1."""
    _check(beta)
    return 1.0 / beta - 1.0


def _noisy_mean(theta: float, noise_w: float, a_bar: float, beta: float) -> float:
    _check(beta, theta)
    if not noise_w > 0:
        raise BoundDomainError(f"noise power must be > 0, got {noise_w!r}")
    if not a_bar > 0:
        raise BoundDomainError(f"a_bar must be > 0, got {a_bar!r}")
    return a_bar / (theta * noise_w) ** beta


def noisy_tail_ub(k: int, theta: float, noise_w: float, a_bar: float, beta: float) -> BoundValue:
    """P(1/xi_k > theta (I_k + W)) <= P(at least k points below 1/(theta W))."""
    _check(beta, theta, k)
    return _prob(sf.reg_lower_gamma(k, _noisy_mean(theta, noise_w, a_bar, beta)))


def noisy_en_ub(theta: float, noise_w: float, a_bar: float, beta: float) -> float:
    """Mean number of path loss values below 1/(theta W)."""
    return _noisy_mean(theta, noise_w, a_bar, beta)


def noisy_r_ub(theta: float, noise_w: float, a_bar: float, beta: float) -> BoundValue:
    """ln(1+theta) times the smallest admissible upper bound on E[N].

    Noise can only remove decodable users, so the interference-limited
    bounds apply alongside the noise-limited one.
    """
    rate = math.log1p(theta)
    noisy = rate * noisy_en_ub(theta, noise_w, a_bar, beta)
    smud = en_smud_ub(beta, theta)
    combined = en_ub(beta, theta)
    return BoundValue(min(noisy, rate * float(smud), rate * float(combined)),
                      noisy=noisy, smud=rate * float(smud), combined=rate * float(combined))


# --- heterogeneous cellular downlink ---------------------------------------------


def _check_eta(eta: float) -> None:
    if not 0.0 < eta <= 1.0:
        raise BoundDomainError(f"eta must lie in (0, 1], got {eta!r}")


def hcn_default_K(eta: float, residual: float = HCN_RESIDUAL) -> int:
    """Smallest K with (1 - eta)^(K + 1) < residual."""
    _check_eta(eta)
    if eta >= 1.0:
        return 1
    return max(1, math.ceil(math.log(residual) / math.log1p(-eta) - 1.0))


def _geo(eta: float, k: int) -> float:
    """eta (1 - eta)^(k - 1)."""
    return eta * (1.0 - eta) ** (k - 1)


def hcn_pc_no_sic(theta: float, beta: float, eta: float) -> BoundValue:
    """eta sinc(beta) / theta^beta; exact for theta >= 1, an upper bound below."""
    _check(beta, theta)
    _check_eta(eta)
    return _prob(eta * sf.sinc(beta) / theta**beta, exact=theta >= 1.0, regime_ok=True,
                 note="" if theta >= 1.0 else "upper bound for theta < 1")


def hcn_pc_sic_lb(theta: float, beta: float, eta: float, K: Optional[int] = None) -> BoundValue:
    _check(beta, theta)
    _check_eta(eta)
    K = hcn_default_K(eta) if K is None else K
    val = math.fsum(_geo(eta, k) * float(pk_hr_lb(k, beta, theta)) for k in range(1, K + 1))
    return _prob(val, K=K)


def hcn_pc_sic_ub(theta: float, beta: float, eta: float, K: Optional[int] = None) -> BoundValue:
    """Combined-bound series plus the residual (1 - eta)^(K + 1)."""
    _check(beta, theta)
    _check_eta(eta)
    K = hcn_default_K(eta) if K is None else K
    val = math.fsum(_geo(eta, k) * float(pk_combined_ub(k, beta, theta)) for k in range(1, K + 1))
    return _prob(val + (1.0 - eta) ** (K + 1), K=K)


def hcn_pc_sic_smud_ub(theta: float, beta: float, eta: float, K: Optional[int] = None) -> BoundValue:
    """SMUD-type upper bound on coverage with unlimited cancellation; needs (1-eta) C(K) < Gamma(1-beta)."""
    _check(beta, theta)
    _check_eta(eta)
    K = hcn_default_K(eta) if K is None else K
    if eta >= 1.0:
        return _prob(float(pk_smud_ub(1, beta, theta)), K=K)
    series = _smud_series(beta, theta, K, scale=1.0 - eta)
    if series is None:
        return BoundValue(math.inf, regime_ok=False, note="(1-eta) C(K) >= Gamma(1-beta)", K=K)
    return _prob(eta / (1.0 - eta) * series, K=K)


def hcn_pc_sic_smud_lb(theta: float, beta: float, eta: float, K: Optional[int] = None) -> BoundValue:
    """SMUD lower bound (theta >= 1), truncated at K; ``error_bound`` bounds the dropped tail of the series."""
    _check(beta, theta)
    _check_eta(eta)
    K = hcn_default_K(eta) if K is None else K
    g = math.gamma(1.0 - beta)
    x = 1.0 / (theta**beta * g)
    val = math.fsum(
        _geo(eta, k) * math.exp(_ordering_log(beta, k, 1.0 + theta) + k * math.log(x) - math.lgamma(1.0 + k * beta))
        for k in range(1, K + 1)
    )
    c2 = (1.0 - eta) / ((1.0 + theta) ** (0.5 * beta * K) * theta**beta * g)
    err = c2 ** (K + 1) / (math.gamma(1.0 + (K + 1) * beta) * (1.0 - c2)) if c2 < 1.0 else math.inf
    ok = theta >= 1.0
    return _prob(val, K=K, error_bound=err, regime_ok=ok, note="" if ok else "SMUD lower bound needs theta >= 1")


def hcn_pc_sic_lta(theta: float, beta: float, eta: float) -> BoundValue:
    """Laplace-transform approximation eta / (eta + c(theta))."""
    _check(beta, theta)
    _check_eta(eta)
    return _prob(eta / (eta + c_of_s(theta, beta)))


def hcn_pcn_ub(theta: float, beta: float, eta: float, n: int) -> BoundValue:
    """Bound on coverage with n-layer cancellation; an upper bound for theta >= 1, an approximation below."""
    _check(beta, theta, n)
    _check_eta(eta)
    g = math.gamma(1.0 - beta)
    val = math.fsum(
        _geo(eta, k) * math.exp(-k * (0.5 * beta * (k + 1) * math.log(theta) + math.log(g)) - math.lgamma(1.0 + k * beta))
        for k in range(1, n + 1)
    )
    ok = theta >= 1.0
    return _prob(val, regime_ok=ok, exact=ok and n == 1,
                 note="" if ok else "approximation for theta < 1")


def hcn_pc_sic_erf_closed(theta: float, eta: float) -> BoundValue:
    """Closed-form coverage bound for beta = 1/2 with unlimited cancellation."""
    if not theta > 0:
        raise BoundDomainError(f"theta must be > 0, got {theta!r}")
    _check_eta(eta)
    ok = theta >= 1.0
    note = "" if ok else "upper bound derivation needs theta >= 1"
    if 1.0 - eta < 1e-3:
        # closed form cancels near eta = 1; the series is the same quantity
        val = math.fsum(_geo(eta, k) * (math.pi * theta) ** (-k / 2.0) / math.gamma(k / 2.0 + 1.0) for k in range(1, 60))
        return _prob(val, regime_ok=ok, note=note)
    z = (1.0 - eta) / math.sqrt(math.pi * theta)
    val = eta / (1.0 - eta) * (math.exp(z * z) * (1.0 + math.erf(z)) - 1.0)
    return _prob(val, regime_ok=ok, note=note)


def hcn_pcn_theta1(beta: float, eta: float, n: int) -> BoundValue:
    """The n-layer bound at theta = 1."""
    return hcn_pcn_ub(1.0, beta, eta, n)


def hcn_pc_ml_closed(beta: float, eta: float) -> BoundValue:
    """Unlimited-cancellation bound at theta = 1 through the Mittag-Leffler function E_{beta,1}."""
    _check(beta)
    _check_eta(eta)
    if eta >= 1.0:
        return _prob(sf.sinc(beta))
    z = (1.0 - eta) / math.gamma(1.0 - beta)
    return _prob(eta / (1.0 - eta) * (sf.mittag_leffler(beta, 1.0, z) - 1.0))


def hcn_avg_throughput(pc: float, theta: float) -> float:
    """ln(1 + theta) times a coverage probability."""
    if not theta > 0:
        raise BoundDomainError(f"theta must be > 0, got {theta!r}")
    return math.log1p(theta) * pc


# --- reports ----------------------------------------------------------------------


@dataclass
class BoundReport:
    """Named analytical values at one parameter point."""

    point: dict
    values: dict = field(default_factory=dict)

    def flags(self, name: str) -> str:
        v = self.values[name]
        parts = []
        if isinstance(v, BoundValue):
            if v.clamped:
                parts.append("clamped")
            if not v.regime_ok:
                parts.append("out-of-regime")
            if v.exact:
                parts.append("exact")
        return ";".join(parts)

    def rows(self) -> Iterable[list]:
        keys = sorted(self.point)
        for name in sorted(self.values):
            yield [name, *(self.point[k] for k in keys), f"{float(self.values[name]):.12g}", self.flags(name)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bound", *sorted(self.point), "value", "flags"])
        for row in self.rows():
            w.writerow(row)
        return buf.getvalue()


def bound_report(beta: float, theta: float, k: int = 1, K: Optional[int] = None, noise_w: Optional[float] = None,
                 a_bar: Optional[float] = None, eta: Optional[float] = None, n: Optional[int] = None) -> BoundReport:
    """Evaluate every formula that applies at the given point."""
    point = {"beta": beta, "theta": theta, "k": k}
    v = {
        "delta1": delta1(k, beta, theta),
        "delta2": delta2(k, beta, theta),
        "hr_lb": pk_hr_lb(k, beta, theta),
        "combined_ub": pk_combined_ub(k, beta, theta),
        "thm1_exact": thm1_exact(k, beta, theta),
        "smud_ub": pk_smud_ub(k, beta, theta),
        "en_lb": en_lb(beta, theta, K),
        "en_lr_lb": en_lr_lb(beta, theta),
        "en_ub": en_ub(beta, theta),
        "en_smud_ub": en_smud_ub(beta, theta),
        "r_asymptotic": r_asymptotic(beta),
        "r_lt_approx": r_lt_approx(theta, beta),
    }
    if k < 1.0 / theta + 1.0:
        v["lr_lb"] = pk_lr_lb(k, beta, theta)
    if theta >= 1.0:
        v["smud_lb"] = pk_smud_lb(k, beta, theta)
    if noise_w is not None and noise_w > 0 and a_bar is not None:
        point.update(W=noise_w, a_bar=a_bar)
        v["noisy_tail_ub"] = noisy_tail_ub(k, theta, noise_w, a_bar, beta)
        v["noisy_en_ub"] = noisy_en_ub(theta, noise_w, a_bar, beta)
        v["noisy_r_ub"] = noisy_r_ub(theta, noise_w, a_bar, beta)
    if eta is not None:
        point["eta"] = eta
        v["hcn_pc_no_sic"] = hcn_pc_no_sic(theta, beta, eta)
        v["hcn_pc_sic_lb"] = hcn_pc_sic_lb(theta, beta, eta)
        v["hcn_pc_sic_ub"] = hcn_pc_sic_ub(theta, beta, eta)
        v["hcn_pc_sic_smud_ub"] = hcn_pc_sic_smud_ub(theta, beta, eta)
        v["hcn_pc_sic_smud_lb"] = hcn_pc_sic_smud_lb(theta, beta, eta)
        v["hcn_pc_sic_lta"] = hcn_pc_sic_lta(theta, beta, eta)
        v["hcn_pc_ml_closed"] = hcn_pc_ml_closed(beta, eta)
        if math.isclose(beta, 0.5):
            v["hcn_pc_sic_erf_closed"] = hcn_pc_sic_erf_closed(theta, eta)
        if n is not None:
            point["n"] = n
            v["hcn_pcn_ub"] = hcn_pcn_ub(theta, beta, eta, n)
            v["hcn_pcn_theta1"] = hcn_pcn_theta1(beta, eta, n)
    return BoundReport(point=point, values=v)
