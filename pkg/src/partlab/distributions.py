"""Limit laws for scaled parts and successive ranks.

* ``gumbel_cdf``: the extreme-value law exp(-exp(-x)).
* ``yk_cdf``: law of the scaled k-th largest part,
  ``Y_k(x) = exp(-e^-x) * sum_{m<k} e^(-m x) / m!`` (an upper incomplete
  gamma ratio in the variable ``e^-x``).
* ``rank_cdf`` / ``rank_pdf``: law of the scaled k-th successive rank, the
  difference of two independent ``Y_k`` variables.  It is the logit of a
  Beta(k, k) variable; at k = 1 it is the standard logistic law.

Gamma factors go through ``lgamma`` so k in the hundreds is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from scipy import integrate

from .errors import NumericError

__all__ = [
    "QuadratureSpec",
    "MomentRow",
    "MomentTable",
    "gumbel_cdf",
    "yk_logcdf",
    "yk_cdf",
    "yk_pdf",
    "rank_cdf",
    "rank_pdf",
    "rank_moment",
    "moment_table",
    "esseen_bound",
    "esseen_k0",
    "laplace_moment_asymptotics",
    "normal_tail",
    "ks_statistic",
]

_TINY = math.ulp(0.0)
_ONE_MINUS = 1.0 - 2.0**-53


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


def _softplus(z: float) -> float:
    # log(1 + e^z) without overflow
    if z > 0:
        return z + math.log1p(math.exp(-z))
    return math.log1p(math.exp(z))


def _clamp01(v: float) -> float:
    return min(max(v, _TINY), _ONE_MINUS)


def gumbel_cdf(x: float) -> float:
    return math.exp(-math.exp(-x)) if x > -700 else 0.0


def _log_lower_gamma(k: int, u: float) -> float:
    # log of the regularized lower incomplete gamma P(k, u), for u < k + 1:
    # e^-u u^k / k! * sum_i u^i k! / (k+i)!, geometric once i > 0
    term = total = 1.0
    i = 0
    while term > 1e-17 * total:
        i += 1
        term *= u / (k + i)
        total += term
    return -u + k * math.log(u) - math.lgamma(k + 1) + math.log(total)


def yk_logcdf(k: int, x: float) -> float:
    """log Y_k(x), accurate in both tails.

    With ``u = e^-x``, ``Y_k = e^-u sum_{m<k} u^m / m!``.  Below the bulk
    (u >= k) that sum is used directly in log space; above it the
    complement ``1 - e^-u sum_{m>=k} u^m/m!`` avoids cancellation near 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if -x > 700:
        return -math.inf
    u = math.exp(-x)
    if k == 1 or u == 0.0:
        return -u
    if u < k:
        return math.log1p(-math.exp(_log_lower_gamma(k, u)))
    # terms m*(-x) - log m!, m = 0..k-1
    terms = [-m * x - math.lgamma(m + 1) for m in range(k)]
    top = max(terms)
    return top + math.log(math.fsum(math.exp(t - top) for t in terms)) - u


def yk_cdf(k: int, x: float) -> float:
    return _clamp01(math.exp(yk_logcdf(k, x)))


def yk_pdf(k: int, x: float) -> float:
    """Density ``exp(-k x - e^-x) / Gamma(k)``."""
    if -x > 700:
        return 0.0
    return math.exp(-k * x - math.exp(-x) - math.lgamma(k))


def rank_cdf(k: int, t: float) -> float:
    """CDF of the scaled k-th successive rank."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sp = _softplus(-t)  # log(1 + e^-t)
    lgk = math.lgamma(k)
    terms = (
        math.lgamma(k + i - 1) - lgk - math.lgamma(i) - (i - 1) * t - (k + i - 1) * sp
        for i in range(1, k + 1)
    )
    return _clamp01(math.fsum(math.exp(v) for v in terms))


def _log_rank_norm(k: int) -> float:
    return math.lgamma(2 * k) - 2.0 * math.lgamma(k)


def rank_pdf(k: int, t: float) -> float:
    """Density ``Gamma(2k) e^(-kt) / (Gamma(k)^2 (1 + e^-t)^(2k))``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.exp(_log_rank_norm(k) - k * t - 2 * k * _softplus(-t))


def _tail_cutoff(k: int, p: int, tol: float) -> float:
    # density <= C e^(-k t) for t > 0; pick T with 2 * int_T^inf t^p C e^(-kt) < tol/10
    logc = _log_rank_norm(k)
    target = math.log(tol / 10.0)
    T = max(1.0, 2.0 * p / k)
    while True:
        # int_T^inf t^p e^(-kt) dt <= T^p e^(-kT) / (k - p/T) once kT > p
        bound = math.log(2.0) + logc + p * math.log(T) - k * T - math.log(k - p / T)
        if bound < target:
            return T
        T *= 1.25


def rank_moment(k: int, p: int, quad: QuadratureSpec | None = None) -> float:
    """Variance (p=2) or third absolute moment (p=3) of the k-th rank law."""
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    quad = quad or QuadratureSpec()
    T = _tail_cutoff(k, p, quad.abs_tol)
    logc = _log_rank_norm(k)

    def integrand(t: float) -> float:
        if t == 0.0:
            return 0.0
        return math.exp(p * math.log(t) + logc - k * t - 2 * k * _softplus(-t))

    # the bulk sits within a few multiples of 1/sqrt(k) of the origin
    brk = [b for b in (2.0 / math.sqrt(k), 6.0 / math.sqrt(k)) if b < T]
    if len(brk) >= quad.max_subdivisions:
        brk = []
    val, err, info = integrate.quad(
        integrand,
        0.0,
        T,
        epsabs=quad.abs_tol / 2,
        epsrel=quad.rel_tol,
        limit=quad.max_subdivisions,
        points=brk or None,
        full_output=1,
    )[:3]
    if err > max(quad.abs_tol, quad.rel_tol * abs(val)):
        raise NumericError(
            f"quadrature for k={k}, p={p} did not converge within "
            f"{quad.max_subdivisions} subdivisions (achieved error {err:.3g})"
        )
    return 2.0 * val


@dataclass(frozen=True)
class MomentRow:
    k: int
    sigma2: float
    rho: float
    s2_cum: float
    r_cum: float

    @property
    def bound(self) -> float:
        return 6.0 * self.r_cum / self.s2_cum**1.5


@dataclass(frozen=True)
class MomentTable:
    rows: tuple[MomentRow, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> MomentRow:
        return self.rows[i]


def moment_table(K: int, quad: QuadratureSpec | None = None) -> MomentTable:
    if K < 1:
        raise ValueError("K must be >= 1")
    rows = []
    s2 = r = 0.0
    sig: list[float] = []
    rho: list[float] = []
    for k in range(1, K + 1):
        sig.append(rank_moment(k, 2, quad))
        rho.append(rank_moment(k, 3, quad))
        s2 = math.fsum(sig)
        r = math.fsum(rho)
        rows.append(MomentRow(k, sig[-1], rho[-1], s2, r))
    return MomentTable(tuple(rows))


def esseen_bound(K: int, quad: QuadratureSpec | None = None) -> dict:
    """Aggregates ``s2 = sum sigma_k^2``, ``r = sum rho_k`` and ``6 r / s2^1.5``."""
    last = moment_table(K, quad).rows[-1]
    return {"s2": last.s2_cum, "r": last.r_cum, "bound": last.bound}


def esseen_k0(table: MomentTable) -> int:
    """Smallest K0 with ``r_K / s2_K^1.5`` strictly decreasing on [K0, K]."""
    ratios = [row.r_cum / row.s2_cum**1.5 for row in table.rows]
    k0 = len(ratios)
    while k0 > 1 and ratios[k0 - 2] > ratios[k0 - 1]:
        k0 -= 1
    return k0


def laplace_moment_asymptotics(k: int) -> dict:
    """Leading constants from a Gaussian approximation ``e^(-k t^2)``.

    These are the commonly quoted forms sigma_k^2 ~ pi/(2k) and
    rho_k ~ 12 sqrt(pi) k^(-3/2).  Expanding ``log(e^-t / (1+e^-t)^2)``
    gives ``-2 log 2 - t^2/4``, not ``-t^2``, so they disagree with the
    exact variance ``2 * trigamma(k) ~ 2/k``.  Reported for comparison only.
    """
    return {"sigma2": math.pi / (2 * k), "rho": 12 * math.sqrt(math.pi) * k**-1.5}


def normal_tail(x: float) -> float:
    """Upper tail ``1 - N(x)`` of the standard normal."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def ks_statistic(
    sample: Sequence[float],
    cdf: Callable[[float], float],
    weights: Sequence[float] | None = None,
) -> float:
    """Sup distance between an empirical CDF and ``cdf``.

    ``sample`` must be sorted ascending.  With ``weights`` each sample
    point carries that much mass (e.g. census counts of distinct values);
    without, every point has mass 1.  Checked on both sides of each jump.
    """
    if len(sample) == 0:
        raise ValueError("sample must be nonempty")
    for a, b in zip(sample, sample[1:]):
        if b < a:
            raise ValueError("sample must be sorted ascending")
    if weights is None:
        weights = [1.0] * len(sample)
    elif len(weights) != len(sample):
        raise ValueError("weights and sample differ in length")
    total = math.fsum(weights)
    acc = 0.0
    d = 0.0
    i = 0
    m = len(sample)
    while i < m:
        x = sample[i]
        f = cdf(x)
        below = acc / total
        while i < m and sample[i] == x:
            acc += weights[i]
            i += 1
        d = max(d, f - below, acc / total - f)
    return d
