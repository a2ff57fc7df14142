"""Asymptotic estimators for restricted partition counts.

Scaled coordinates are measured against the typical size of the largest
part, ``s ln s`` with ``s = sqrt(6n)/pi``:

    r = s (ln s + x1),    j = s (ln s + y1).

All estimators return an :class:`Estimate` holding the natural log of the
value, because ``P(n)`` overflows a double past n ~ 2.6e5 and intermediate
products overflow much earlier.

Note on multi-part scalings: some statements of the k-th part law scale
``d_i`` as ``s + x_i s`` without the ``ln s`` shift.  Everything here uses
the shifted scaling ``s (ln s + x_i)`` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .distributions import yk_logcdf
from .errors import NumericError
from .exact import log_count, partitions_total

__all__ = [
    "INSIDE",
    "TAIL",
    "UNKNOWN",
    "WINDOW_FACTOR",
    "ScaledPoint",
    "Estimate",
    "scale",
    "mean_part",
    "scaled_coordinates",
    "classify",
    "hardy_ramanujan_pn",
    "theorem1_estimate",
    "saddlepoint_estimate",
    "saddle_terms",
    "c_estimate",
    "b_estimate",
    "rank_count_estimate",
    "theorem3_estimate",
    "theorem3_guard",
]

INSIDE = "inside_window"
TAIL = "outside_window_tail"
UNKNOWN = "outside_window_unknown"

# half-width of the validity window, in units of ln n
WINDOW_FACTOR = 0.2


def scale(n: float) -> float:
    """``sqrt(6n)/pi``: one unit of x1 in parts."""
    return math.sqrt(6.0 * n) / math.pi


def mean_part(n: float) -> float:
    """Typical largest part ``s ln s``."""
    s = scale(n)
    return s * math.log(s)


@dataclass(frozen=True)
class ScaledPoint:
    x1: float
    y1: float
    n: int

    def r(self) -> float:
        s = scale(self.n)
        return s * (math.log(s) + self.x1)

    def j(self) -> float:
        s = scale(self.n)
        return s * (math.log(s) + self.y1)


def _to_x(n: int, m: float) -> float:
    s = scale(n)
    return m / s - math.log(s)


def scaled_coordinates(n: int, j: float, r: float) -> ScaledPoint:
    if n < 2:
        raise ValueError("scaled coordinates need n >= 2")
    return ScaledPoint(_to_x(n, r), _to_x(n, j), n)


def _fmt_sci(log_value: float) -> str:
    if log_value == -math.inf:
        return "0"
    if not math.isfinite(log_value):
        return "inf" if log_value > 0 else "nan"
    l10 = log_value / math.log(10.0)
    e = math.floor(l10)
    m = 10.0 ** (l10 - e)
    if round(m, 3) >= 10.0:
        m /= 10.0
        e += 1
    return f"{m:.3f}e{e:+d}"


@dataclass(frozen=True)
class Estimate:
    """A positive quantity carried as its natural log, plus a regime flag."""

    log_value: float
    regime: str
    window: str = ""
    x1: float | None = None
    y1: float | None = None

    @property
    def value(self) -> float:
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    @property
    def value_sci(self) -> str:
        return _fmt_sci(self.log_value)

    def record(self) -> dict:
        return {
            "log_value": self.log_value,
            "value_sci": self.value_sci,
            "regime": self.regime,
            "x1": self.x1,
            "y1": self.y1,
        }


PnSource = Union[int, Estimate, None]


def _log_pn(n: int, pn: PnSource) -> float:
    if pn is None:
        return log_count(partitions_total(n))
    if isinstance(pn, Estimate):
        return pn.log_value
    return log_count(pn)


def _half_width(n: int, factor: float) -> float:
    return factor * math.log(n)


def classify(n: int, coords: Sequence[float], factor: float = WINDOW_FACTOR) -> str:
    """Regime of a point given all its scaled coordinates.

    At the exact boundary ``min = -w`` the point counts as inside.
    """
    w = _half_width(n, factor)
    if all(abs(c) <= w for c in coords):
        return INSIDE
    if min(coords) < -w:
        return TAIL
    return UNKNOWN


def _window_text(n: int, factor: float) -> str:
    return f"|x1|,|y1| <= {factor:g} ln n = {_half_width(n, factor):.6g}"


def hardy_ramanujan_pn(n: int) -> Estimate:
    """Leading Hardy–Ramanujan term ``exp(pi sqrt(2n/3)) / (4 sqrt(3) n)``."""
    if n < 1:
        raise ValueError("Hardy-Ramanujan estimate needs n >= 1")
    lv = math.pi * math.sqrt(2.0 * n / 3.0) - math.log(4.0 * math.sqrt(3.0) * n)
    return Estimate(lv, INSIDE, "n -> infinity")


def theorem1_estimate(
    n: int, j: float, r: float, pn: PnSource = None, factor: float = WINDOW_FACTOR
) -> Estimate:
    """``A(n,j,r) ~ P(n) exp(-e^-x1) exp(-e^-y1)``.

    In the lower tail (either coordinate below ``-factor ln n``) the value
    returned is the bound ``P(n) e^(-n^(1/5))``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    pt = scaled_coordinates(n, j, r)
    lp = _log_pn(n, pn)
    regime = classify(n, (pt.x1, pt.y1), factor)
    if regime == TAIL:
        lv = lp - n**0.2
    else:
        lv = lp - math.exp(-pt.x1) - math.exp(-pt.y1)
    return Estimate(lv, regime, _window_text(n, factor), pt.x1, pt.y1)


def saddle_terms(n: int, j: int, r: int, alpha: float) -> tuple[float, float, float]:
    """``(f, f', f'')`` of the log-integrand at the real point ``alpha``.

    ``f = n alpha - sum log(1 - e^(-alpha v)) + sum log(1 - e^(-alpha (j+v)))``
    with v = 1..r; derivatives are taken in alpha (so ``f'' > 0`` is the
    curvature along the circle).  Sums use exact rounding (``fsum``).
    """
    v = np.arange(1, r + 1, dtype=float)
    w = v + j
    av, aw = alpha * v, alpha * w
    f = n * alpha + math.fsum(-np.log(-np.expm1(-av))) + math.fsum(np.log(-np.expm1(-aw)))
    f1 = n - math.fsum(v / np.expm1(av)) + math.fsum(w / np.expm1(aw))
    # e^x / (e^x - 1)^2 == 1 / (4 sinh^2(x/2))
    f2 = math.fsum(v * v / (4.0 * np.sinh(av / 2) ** 2)) - math.fsum(
        w * w / (4.0 * np.sinh(aw / 2) ** 2)
    )
    return f, f1, f2


def _solve_saddle(n: int, j: int, r: int) -> float:
    a0 = math.pi / math.sqrt(6.0 * n)
    lo, hi = a0, a0
    # f' is increasing in alpha; it is negative near 0 while n < j r / 2
    while saddle_terms(n, j, r, lo)[1] > 0:
        lo /= 2.0
        if lo < 1e-12:
            raise NumericError("saddle equation has no positive root")
    while saddle_terms(n, j, r, hi)[1] < 0:
        hi *= 2.0
        if hi > 1e3:
            raise NumericError("saddle equation has no positive root")
    if lo == hi:
        return lo
    return brentq(lambda a: saddle_terms(n, j, r, a)[1], lo, hi, xtol=1e-15, rtol=1e-14)


def saddlepoint_estimate(
    n: int,
    j: int,
    r: int,
    alpha: str = "solve",
    factor: float = WINDOW_FACTOR,
) -> Estimate:
    """Gaussian evaluation of the Cauchy integral for ``A(n, j, r)``.

    ``log A ~ f(alpha) - 0.5 log(2 pi f''(alpha))`` with all sums evaluated
    numerically.  ``alpha="solve"`` puts the circle through the true saddle
    (``f'(alpha) = 0``); ``alpha="fixed"`` uses ``pi / sqrt(6n)``, which
    leaves a nonzero linear term and overestimates by a factor that only
    dies out slowly in n.

    Counts past half the box are reflected through ``A(n) = A(jr - n)``.
    """
    if n < 2 or j < 1 or r < 1:
        raise ValueError("saddlepoint estimate needs n >= 2, j >= 1, r >= 1")
    if n > j * r:
        raise ValueError(f"no partitions of {n} fit in a {j}x{r} box")
    pt = scaled_coordinates(n, j, r)
    regime = classify(n, (pt.x1, pt.y1), factor)
    m = min(n, j * r - n)
    if alpha == "fixed":
        a = math.pi / math.sqrt(6.0 * n)
        f, _, f2 = saddle_terms(m, j, r, a)
    elif alpha == "solve":
        if 2 * m == j * r:
            # saddle at alpha = 0: central q-binomial coefficient
            f = math.lgamma(j + r + 1) - math.lgamma(j + 1) - math.lgamma(r + 1)
            f2 = j * r * (j + r + 1) / 12.0
        else:
            a = _solve_saddle(m, j, r)
            f, _, f2 = saddle_terms(m, j, r, a)
    else:
        raise ValueError("alpha must be 'solve' or 'fixed'")
    if not f2 > 0:
        raise NumericError("non-positive saddle curvature: outside asymptotic regime")
    lv = f - 0.5 * math.log(2.0 * math.pi * f2)
    return Estimate(lv, regime, _window_text(n, factor), pt.x1, pt.y1)


def c_estimate(
    n: int, k: float, r: float, pn: PnSource = None, factor: float = WINDOW_FACTOR
) -> Estimate:
    """Partitions with largest part exactly ``r`` and exactly ``k`` parts."""
    if n < 2:
        raise ValueError("n must be >= 2")
    pt = scaled_coordinates(n, k, r)
    x1, y1 = pt.x1, pt.y1
    lp = _log_pn(n, pn)
    regime = classify(n, (x1, y1), factor)
    if regime == TAIL:
        lv = lp - n**0.2 - math.log(n)
    else:
        lv = 2.0 * math.log(1.0 / scale(n)) + lp - x1 - math.exp(-x1) - y1 - math.exp(-y1)
    return Estimate(lv, regime, _window_text(n, factor), x1, y1)


def b_estimate(
    n: int, k: float, r: float, pn: PnSource = None, factor: float = WINDOW_FACTOR
) -> Estimate:
    """Partitions with largest part exactly ``r`` and at most ``k`` parts.

    The pinned coordinate contributes the density factor ``e^(-x1 - e^-x1)``
    and the bounded one the CDF ``e^(-e^-y1)``; swapping which of the two
    is pinned swaps x1 and y1.  No tail bound is substituted.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    pt = scaled_coordinates(n, k, r)
    x1, y1 = pt.x1, pt.y1
    lp = _log_pn(n, pn)
    lv = math.log(1.0 / scale(n)) + lp - x1 - math.exp(-x1) - math.exp(-y1)
    return Estimate(lv, classify(n, (x1, y1), factor), _window_text(n, factor), x1, y1)


def rank_count_estimate(n: int, k: int, t: float, pn: PnSource = None) -> Estimate:
    """Partitions whose k-th rank equals ``floor(s t)``.

    ``P(n) / s * Gamma(2k) / Gamma(k)^2 * (1 + e^-t)^-k (1 + e^t)^-k``.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    lp = _log_pn(n, pn)
    sp_neg = math.log1p(math.exp(-abs(t))) + max(0.0, -t)  # log(1 + e^-t)
    sp_pos = math.log1p(math.exp(-abs(t))) + max(0.0, t)  # log(1 + e^t)
    lv = (
        lp
        - math.log(scale(n))
        + math.lgamma(2 * k)
        - 2.0 * math.lgamma(k)
        - k * sp_neg
        - k * sp_pos
    )
    return Estimate(lv, INSIDE, "t fixed, n -> infinity")


def theorem3_guard(n: int) -> float:
    """Largest K for which the joint multi-part law is claimed: n^(1/10) / ln^2 n."""
    return n**0.1 / math.log(n) ** 2


def theorem3_estimate(
    n: int,
    x: Sequence[float],
    y: Sequence[float],
    pn: PnSource = None,
    factor: float = WINDOW_FACTOR,
) -> Estimate:
    """Joint law of the K largest parts and K largest conjugate parts.

    ``P(n) * prod_i Y_i(x_i) Y_i(y_i)`` where the i-th coordinates bound the
    i-th largest part and the number of parts ``>= i``.
    """
    if len(x) != len(y) or not x:
        raise ValueError("x and y must be nonempty and of equal length")
    if n < 2:
        raise ValueError("n must be >= 2")
    K = len(x)
    lp = _log_pn(n, pn)
    lv = lp + math.fsum(
        yk_logcdf(i, xi) + yk_logcdf(i, yi) for i, (xi, yi) in enumerate(zip(x, y), 1)
    )
    if K > theorem3_guard(n):
        regime = UNKNOWN
    else:
        regime = classify(n, list(x) + list(y), factor)
    window = f"K <= n^0.1/ln^2 n = {theorem3_guard(n):.3g}; {_window_text(n, factor)}"
    return Estimate(lv, regime, window, x[0], y[0])
