# smcmartin/eg3/metric.py
"""
The Martin metric between eg3 boundary points.

With weights w_z = 16 * 4^(-2|z|) the limit kernels give
w_z K(z, xi) = 4^-(h+t) lambda^h (1 - lambda)^t for the single z = HaT whose
head and tail follow the streams of xi. Two points xi, eta with L-agreement n
and R-agreement m share z exactly for h <= n and t <= m, so

    rho = sum_{h<=n, t<=m} 4^-(h+t) |lambda^h (1-lambda)^t - mu^h (1-mu)^t|
          + c(lambda) [A + B - AB] + c(mu) [A' + B' - A'B']

where c(x) = 16 / ((3 + x)(4 - x)), A = (lambda/4)^(n+1),
B = ((1-lambda)/4)^(m+1). A side that is absent in either point counts as
agreeing forever (n or m infinite, tail term 0).
"""

import logging
from fractions import Fraction
from typing import Callable, Iterable, Optional, Tuple, Union

import numpy as np

from smcmartin.eg3.streams import BoundaryPoint, agreement_length
from smcmartin.errors import ParameterError
from smcmartin.settings import get_settings

logger = logging.getLogger(__name__)

Real = Union[Fraction, float]


def tail_constant(lam: Real) -> Real:
    return 16 / ((3 + lam) * (4 - lam))


def left_agreement(xi: BoundaryPoint, eta: BoundaryPoint) -> Optional[int]:
    if xi.left is None or eta.left is None:
        return None
    return agreement_length(xi.left, eta.left)


def right_agreement(xi: BoundaryPoint, eta: BoundaryPoint) -> Optional[int]:
    if xi.right is None or eta.right is None:
        return None
    return agreement_length(xi.right, eta.right)


def is_mixed_case(xi: BoundaryPoint, eta: BoundaryPoint) -> bool:
    """One point lies on the lambda in {0, 1} faces and the other does not."""
    def edge(p: BoundaryPoint) -> bool:
        return p.lam in (0, 1)
    return edge(xi) != edge(eta)


# -----------------------
# Kernel-mass sums
# -----------------------
def _exact_sum(lam: Fraction, mu: Fraction, cells: Iterable[Tuple[int, int]],
               same: Callable[[int, int], bool], top: int) -> Fraction:
    """sum over cells of |m_xi - m_eta| (shared z) or m_xi + m_eta, in integers.

    m(h, t) = p^h (q-p)^t / (4q)^(h+t) for lambda = p/q; every term is put over
    (4 q1 q2)^top with top >= h + t.
    """
    p1, q1 = lam.numerator, lam.denominator
    p2, q2 = mu.numerator, mu.denominator
    base = 4 * q1 * q2
    total = 0
    for h, t in cells:
        s = h + t
        a = p1 ** h * (q1 - p1) ** t * q2 ** s
        b = p2 ** h * (q2 - p2) ** t * q1 ** s
        term = abs(a - b) if same(h, t) else a + b
        if term:
            total += term * base ** (top - s)
    return Fraction(total, base ** top)


def _float_rectangle(lam: float, mu: float, h_max: int, t_max: int) -> float:
    h = np.arange(h_max + 1, dtype=float)[:, None]
    t = np.arange(t_max + 1, dtype=float)[None, :]
    scale = 0.25 ** (h + t)
    diff = np.abs(lam ** h * (1 - lam) ** t - mu ** h * (1 - mu) ** t)
    return float((scale * diff).sum())


def _tail(lam: Real, n: Optional[int], m: Optional[int]) -> Real:
    a = (lam / 4) ** (n + 1) if n is not None else 0
    b = ((1 - lam) / 4) ** (m + 1) if m is not None else 0
    return tail_constant(lam) * (a + b - a * b)


# -----------------------
# Operations
# -----------------------
def rho(xi: BoundaryPoint, eta: BoundaryPoint, exact: bool = True, series_cap: Optional[int] = None) -> Real:
    """Closed-form boundary metric; a Fraction when it can be evaluated exactly, else a float."""
    cap = series_cap or get_settings().series_cap
    n = left_agreement(xi, eta)
    m = right_agreement(xi, eta)
    lam, mu = xi.lam, eta.lam

    truncated = False
    if lam == mu:
        h_max = t_max = -1
    else:
        if n is not None:
            h_max = n
        else:
            h_max, truncated = cap, True
        if m is not None:
            t_max = m
        else:
            t_max, truncated = cap, True
        if h_max > cap or t_max > cap:
            h_max, t_max, truncated = min(h_max, cap), min(t_max, cap), True

    if exact and not truncated:
        if h_max < 0:
            double = Fraction(0)
        else:
            cells = ((h, t) for h in range(h_max + 1) for t in range(t_max + 1))
            double = _exact_sum(lam, mu, cells, lambda h, t: True, h_max + t_max)
        return double + _tail(lam, n, m) + _tail(mu, n, m)

    if truncated:
        logger.debug("rho double sum truncated at %d x %d terms", h_max + 1, t_max + 1)
    fl, fm = float(lam), float(mu)
    double = 0.0 if h_max < 0 else _float_rectangle(fl, fm, h_max, t_max)
    return double + float(_tail(fl, n, m)) + float(_tail(fm, n, m))


def truncation_tail_bound(depth: int) -> Fraction:
    """2 * sum_{s > depth} (s + 1) 4^-s, a bound on everything beyond h + t = depth."""
    x = Fraction(1, 4)
    k = depth + 1
    return 2 * x ** k * ((k + 1) - k * x) / (1 - x) ** 2


def theta_boundary_truncated(xi: BoundaryPoint, eta: BoundaryPoint, depth: int) -> Tuple[Fraction, Fraction]:
    """Direct weighted sum over z = HaT with h + t <= depth, plus a certified tail bound."""
    if depth < 0:
        raise ParameterError("depth must be >= 0")
    n = left_agreement(xi, eta)
    m = right_agreement(xi, eta)

    def shared(h: int, t: int) -> bool:
        return (n is None or h <= n) and (m is None or t <= m)

    cells = ((h, s - h) for s in range(depth + 1) for h in range(s + 1))
    value = _exact_sum(xi.lam, eta.lam, cells, shared, depth)
    return value, truncation_tail_bound(depth)
