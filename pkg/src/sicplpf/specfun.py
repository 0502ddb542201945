"""Special functions used by the closed-form expressions.

Double precision throughout. ``log_gamma`` and ``erf``/``erfc`` delegate to
the C library through :mod:`math`; the incomplete gamma family, ``sinc`` and
the Mittag-Leffler series are implemented here.
"""

from __future__ import annotations

import math

__all__ = [
    "SpecialFunctionError",
    "log_gamma",
    "gamma",
    "lower_inc_gamma",
    "upper_inc_gamma",
    "reg_lower_gamma",
    "reg_upper_gamma",
    "erf",
    "erfc",
    "sinc",
    "mittag_leffler",
]

_EPS = 1e-16
_MAX_ITER = 100_000
_TINY = 1e-300


class SpecialFunctionError(ValueError):
    """Raised on a domain violation or a series that fails to converge."""


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0 or math.isinf(x):
        raise SpecialFunctionError(f"log_gamma requires finite x > 0, got {x!r}")
    return math.lgamma(x)


def gamma(x: float) -> float:
    if not x > 0:
        raise SpecialFunctionError(f"gamma requires x > 0, got {x!r}")
    return math.gamma(x)


def _check_sx(s: float, x: float) -> None:
    if not s > 0 or math.isinf(s):
        raise SpecialFunctionError(f"shape must be finite and > 0, got {s!r}")
    if not x >= 0:
        raise SpecialFunctionError(f"argument must be >= 0, got {x!r}")


def _log_prefactor(s: float, x: float) -> float:
    # ln(x^s e^{-x} / Gamma(s))
    return s * math.log(x) - x - math.lgamma(s)


def _series_p(s: float, x: float) -> float:
    """Regularized lower gamma P(s, x) by its power series (x < s + 1)."""
    term = 1.0 / s
    total = term
    a = s
    for _ in range(_MAX_ITER):
        a += 1.0
        term *= x / a
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(_log_prefactor(s, x))
    raise SpecialFunctionError(f"gamma series did not converge for s={s}, x={x}")


def _cf_q(s: float, x: float) -> float:
    """Regularized upper gamma Q(s, x) by modified Lentz continued fraction (x >= s + 1)."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(_log_prefactor(s, x)) * h
    raise SpecialFunctionError(f"gamma continued fraction did not converge for s={s}, x={x}")


def reg_lower_gamma(s: float, x: float) -> float:
    """Normalized lower incomplete gamma gamma(s, x) / Gamma(s)."""
    _check_sx(s, x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < s + 1.0:
        return min(1.0, _series_p(s, x))
    return max(0.0, 1.0 - _cf_q(s, x))


def reg_upper_gamma(s: float, x: float) -> float:
    """Normalized upper incomplete gamma Gamma(s, x) / Gamma(s)."""
    _check_sx(s, x)
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < s + 1.0:
        return max(0.0, 1.0 - _series_p(s, x))
    return min(1.0, _cf_q(s, x))


def lower_inc_gamma(s: float, x: float) -> float:
    """Lower incomplete gamma function, the integral of t^(s-1) e^(-t) over [0, x].

    Uses the power series below ``x = s + 1`` and the continued fraction of
    the upper function above it.
    """
    _check_sx(s, x)
    if x == 0.0:
        return 0.0
    if x < s + 1.0:
        # unnormalized series avoids overflow of Gamma(s) for tiny s
        term = 1.0 / s
        total = term
        a = s
        for _ in range(_MAX_ITER):
            a += 1.0
            term *= x / a
            total += term
            if abs(term) < abs(total) * _EPS:
                return total * math.exp(s * math.log(x) - x)
        raise SpecialFunctionError(f"gamma series did not converge for s={s}, x={x}")
    return math.gamma(s) * reg_lower_gamma(s, x)


def upper_inc_gamma(s: float, x: float) -> float:
    _check_sx(s, x)
    return math.gamma(s) * reg_upper_gamma(s, x)


def erf(x: float) -> float:
    return math.erf(x)


def erfc(x: float) -> float:
    return math.erfc(x)


def sinc(x: float) -> float:
    """Normalized sinc, sin(pi x) / (pi x), on the open interval (0, 1)."""
    if not 0.0 < x < 1.0:
        raise SpecialFunctionError(f"sinc is only used on (0, 1), got {x!r}")
    px = math.pi * x
    if px < 1e-4:
        # Taylor: avoids cancellation in sin(px)/px near zero
        return 1.0 - px * px / 6.0 + px**4 / 120.0
    return math.sin(px) / px


def mittag_leffler(a: float, b: float, z: float, max_terms: int = 10_000) -> float:
    """Two-parameter Mittag-Leffler function E_{a,b}(z) by direct power series.

    Supported for ``0 < a <= 1``, ``b > 0`` and ``|z| <= 10``. Terms are
    evaluated in log space. Summation stops once the terms are decreasing
    and the last one is below 1e-16 of the partial sum. For large negative
    ``z`` the alternating series cancels badly; the closed forms that call
    this only use ``|z|`` of order one.
    """
    if not 0.0 < a <= 1.0:
        raise SpecialFunctionError(f"mittag_leffler needs 0 < a <= 1, got {a!r}")
    if not b > 0.0:
        raise SpecialFunctionError(f"mittag_leffler needs b > 0, got {b!r}")
    if not abs(z) <= 10.0:
        raise SpecialFunctionError(f"|z| must be <= 10, got {z!r}")
    if z == 0.0:
        return 1.0 / math.gamma(b)
    logz = math.log(abs(z))
    negative = z < 0.0
    total = 1.0 / math.gamma(b)
    prev = abs(total)
    for k in range(1, max_terms):
        mag = math.exp(k * logz - math.lgamma(a * k + b))
        term = -mag if (negative and k % 2) else mag
        total += term
        if mag < prev and mag < _EPS * abs(total):
            return total
        prev = mag
    raise SpecialFunctionError(
        f"Mittag-Leffler series did not converge in {max_terms} terms (a={a}, b={b}, z={z})"
    )
