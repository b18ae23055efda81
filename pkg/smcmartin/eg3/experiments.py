# smcmartin/eg3/experiments.py
"""
Numerical experiments on the eg3 boundary: fiber box-counting
dimension, Lipschitz scans of phi and psi, and the d^r / rho trend that
separates the metric from every power of the Cantor metric.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from smcmartin.eg3.embeddings import phi, phi_distance, psi_difference
from smcmartin.eg3.metric import is_mixed_case, rho, tail_constant
from smcmartin.eg3.streams import BoundaryPoint, Stream
from smcmartin.errors import DegenerateFitError, ParameterError
from smcmartin.settings import get_settings
from smcmartin.utils.rng import SeededRNG

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


# -----------------------
# Pydantic models
# -----------------------
class BoxDimensionEstimate(BaseModel):
    lam: float
    estimate: float
    analytic: float
    depth: int
    scales: int
    log_inverse_scales: List[float]
    log_counts: List[float]


class TrendRow(BaseModel):
    r: float
    lam: float
    side: str
    slope: float


class LipschitzTrend(BaseModel):
    rows: List[TrendRow]
    max_abs_slope: List[Tuple[float, float]]


class LipschitzReport(BaseModel):
    pairs_used: int
    skipped_degenerate: int
    unresolved_phi: int
    phi_ratio_sup: float
    phi_ratio_sup_aligned: float
    phi_ratio_sup_aligned_first_half: float
    aligned_pairs: int
    straddling_pairs: int
    psi_ratio_min: float
    psi_ratio_max: float
    mixed_case_pairs: int
    note: str = ""
    trend: Optional[LipschitzTrend] = None


# -----------------------
# Dimension
# -----------------------
def fiber_dimension(lam: float) -> float:
    """Analytic box dimension of the fixed-lambda fiber: one Cantor factor per present stream."""
    if not 0 <= lam <= 1:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam}")
    total = 0.0
    for ratio in (lam / 4, (1 - lam) / 4):
        if ratio > 0:
            total += math.log(2) / math.log(1 / ratio)
    return total


def _cylinder_depth(ratio: float, const: float, log_eps: float) -> int:
    """Least n with 2 c ratio^(n+1) <= eps / 2, worked in logs; 0 for an absent stream."""
    if ratio == 0:
        return 0
    base, log_ratio = math.log(4 * const), math.log(ratio)
    n = max(0, math.ceil((log_eps - base) / log_ratio) - 1)
    while n > 0 and base + n * log_ratio <= log_eps:
        n -= 1
    while base + (n + 1) * log_ratio > log_eps:
        n += 1
    return n


def box_dimension(lam: float, depth: int = 40, scales: int = 48) -> BoxDimensionEstimate:
    """Least-squares slope of log N(eps) against log(1/eps) on the fixed-lambda fiber.

    Within one lambda the metric reduces to its tail terms, so the sets with
    fixed first n L-symbols and first m R-symbols are balls whose diameter is
    known; N(eps) counts the cylinders of the coarsest (n, m) below eps.
    """
    if not 0 <= lam <= 1:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam}")
    if depth < 2 or scales < 2:
        raise ParameterError("depth and scales must both be >= 2")
    const = float(tail_constant(lam))
    left, right = lam / 4, (1 - lam) / 4
    r_max = max(left, right)
    # eps = 4 c r_max^s underflows for deep fits; keep log eps instead
    log_eps = math.log(4 * const) + np.linspace(1, depth, scales) * math.log(r_max)

    log_counts = []
    for e in log_eps:
        n = _cylinder_depth(left, const, float(e))
        m = _cylinder_depth(right, const, float(e))
        log_counts.append((n + m) * math.log(2))
    x = -log_eps
    y = np.array(log_counts)
    if np.ptp(y) == 0:
        raise DegenerateFitError(f"covering counts are constant for lambda = {lam}")
    slope, _ = np.polyfit(x, y, 1)
    logger.debug("box dimension at lambda=%s: %s", lam, slope)
    return BoxDimensionEstimate(
        lam=lam, estimate=float(slope), analytic=fiber_dimension(lam), depth=depth,
        scales=scales, log_inverse_scales=x.tolist(), log_counts=y.tolist(),
    )


# -----------------------
# Sampling
# -----------------------
def _random_stream(rng: SeededRNG) -> Stream:
    return Stream(kind="random", seed=rng.randint(0, 2 ** 31 - 1))


def sample_boundary_point(rng: SeededRNG, precision: Optional[int] = None) -> BoundaryPoint:
    """Dyadic lambda of the given precision; each face lambda = 0, 1 drawn 5% of the time."""
    precision = precision or get_settings().dyadic_precision
    u = rng.random()
    if u < 0.05:
        lam = Fraction(0)
    elif u < 0.10:
        lam = Fraction(1)
    else:
        lam = Fraction(rng.randint(1, 2 ** precision - 1), 2 ** precision)
    left = _random_stream(rng) if lam > 0 else None
    right = _random_stream(rng) if lam < 1 else None
    return BoundaryPoint(lam=lam, left=left, right=right)


def _flip(xi: BoundaryPoint, side: str, k: int) -> BoundaryPoint:
    if side == "L":
        return BoundaryPoint(lam=xi.lam, left=xi.left.flipped_at(k), right=xi.right)
    return BoundaryPoint(lam=xi.lam, left=xi.left, right=xi.right.flipped_at(k))


def _shift(xi: BoundaryPoint, mu: Fraction, rng: SeededRNG) -> BoundaryPoint:
    left = (xi.left or _random_stream(rng)) if mu > 0 else None
    right = (xi.right or _random_stream(rng)) if mu < 1 else None
    return BoundaryPoint(lam=mu, left=left, right=right)


def sample_nested_pair(rng: SeededRNG, precision: Optional[int] = None,
                       max_flip_depth: int = 16) -> Tuple[BoundaryPoint, BoundaryPoint]:
    """A point and a near neighbour: either one stream symbol flipped or lambda nudged."""
    precision = precision or get_settings().dyadic_precision
    xi = sample_boundary_point(rng, precision)
    if rng.random() < 0.5:
        sides = [s for s, stream in (("L", xi.left), ("R", xi.right)) if stream is not None]
        side = sides[rng.randbelow(len(sides))]
        return xi, _flip(xi, side, rng.randint(1, max_flip_depth))
    scale = 2 ** precision
    step = Fraction(rng.randint(1, max(1, scale >> 4)), scale)
    mu = xi.lam + step if rng.random() < 0.5 else xi.lam - step
    mu = min(max(mu, Fraction(0)), Fraction(1))
    if mu == xi.lam:
        mu = xi.lam - step if xi.lam == 1 else xi.lam + step
    return xi, _shift(xi, mu, rng)


# -----------------------
# Scans
# -----------------------
def _aligned(xi: BoundaryPoint, eta: BoundaryPoint) -> bool:
    return (xi.lam <= HALF) == (eta.lam <= HALF)


def lipschitz_scan(pairs: int, seed: int, precision: int = 12, max_flip_depth: int = 16,
                   out_depth: int = 256, psi_terms: int = 64,
                   r_grid: Optional[Sequence[float]] = None) -> LipschitzReport:
    """Ratios rho / d(phi, phi) and rho / |psi - psi| over seeded nested pairs."""
    if pairs < 1:
        raise ParameterError("pairs must be >= 1")
    rng = SeededRNG(seed)
    skipped = unresolved = aligned = straddling = mixed = 0
    sup_all = sup_aligned = sup_first_half = 0.0
    psi_lo, psi_hi = math.inf, 0.0
    for i in range(pairs):
        xi, eta = sample_nested_pair(rng, precision, max_flip_depth)
        r = float(rho(xi, eta, exact=False))
        if r == 0:
            skipped += 1
            continue
        if is_mixed_case(xi, eta):
            mixed += 1
        d = float(phi_distance(phi(xi, out_depth), phi(eta, out_depth)))
        if d == 0:
            unresolved += 1
        else:
            ratio = r / d
            sup_all = max(sup_all, ratio)
            if _aligned(xi, eta):
                aligned += 1
                sup_aligned = max(sup_aligned, ratio)
                if i < pairs // 2:
                    sup_first_half = max(sup_first_half, ratio)
            else:
                straddling += 1
        delta = psi_difference(xi, eta, psi_terms)
        if delta > 0:
            psi_lo, psi_hi = min(psi_lo, r / delta), max(psi_hi, r / delta)

    note = ""
    if mixed:
        note = f"{mixed} pairs mix the lambda in {{0, 1}} faces with interior points; rho uses the absent-side convention"
        logger.warning("Lipschitz scan: %s", note)
    used = pairs - skipped
    logger.info("Lipschitz scan over %d pairs: sup rho/d = %s, rho/|dpsi| in [%s, %s]",
                used, sup_all, psi_lo, psi_hi)
    trend = lipschitz_trend(r_grid, seed=seed) if r_grid else None
    return LipschitzReport(
        pairs_used=used, skipped_degenerate=skipped, unresolved_phi=unresolved,
        phi_ratio_sup=sup_all, phi_ratio_sup_aligned=sup_aligned,
        phi_ratio_sup_aligned_first_half=sup_first_half,
        aligned_pairs=aligned, straddling_pairs=straddling,
        psi_ratio_min=psi_lo if used else 0.0, psi_ratio_max=psi_hi,
        mixed_case_pairs=mixed, note=note, trend=trend,
    )


DEFAULT_TREND_LAMBDAS = (Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def lipschitz_trend(r_grid: Sequence[float], lambdas: Sequence[Fraction] = DEFAULT_TREND_LAMBDAS,
                    depths: Sequence[int] = tuple(range(2, 17)), seed: int = 0,
                    out_depth: int = 256) -> LipschitzTrend:
    """Slope of log2(d^r / rho) against flip depth, per r, lambda and flipped side.

    A nonzero slope means d^r / rho (or its inverse) is unbounded along that
    family, so no power r makes phi bi-Lipschitz for that r.
    """
    if len(depths) < 2:
        raise ParameterError("need at least two flip depths")
    rng = SeededRNG(seed)
    rows: List[TrendRow] = []
    for lam in lambdas:
        lam = Fraction(lam)
        xi = BoundaryPoint(
            lam=lam,
            left=_random_stream(rng) if lam > 0 else None,
            right=_random_stream(rng) if lam < 1 else None,
        )
        sides = [s for s, stream in (("L", xi.left), ("R", xi.right)) if stream is not None]
        base = phi(xi, out_depth)
        for side in sides:
            log_rho, log_d = [], []
            for k in depths:
                eta = _flip(xi, side, k)
                log_rho.append(math.log2(float(rho(xi, eta, exact=False))))
                d = float(phi_distance(base, phi(eta, out_depth)))
                if d == 0:
                    raise ParameterError(f"flip at depth {k} falls beyond {out_depth} output bits")
                log_d.append(math.log2(d))
            for r in r_grid:
                y = r * np.array(log_d) - np.array(log_rho)
                slope, _ = np.polyfit(np.array(depths, dtype=float), y, 1)
                rows.append(TrendRow(r=r, lam=float(lam), side=side, slope=float(slope)))
    max_abs = [(r, max(abs(row.slope) for row in rows if row.r == r)) for r in r_grid]
    return LipschitzTrend(rows=rows, max_abs_slope=max_abs)
