# smcmartin/eg3/embeddings.py
"""
Maps of the eg3 boundary into simpler spaces.

phi: (lambda, L, R) -> (lambda, bits) in [0, 1] x {0, 1}^N. For
lambda' = min(lambda, 1 - lambda) > 0 the sparse positions
p_{k-1} = floor(k log2(4 / lambda')) carry the stream on the lambda' side
(L when lambda <= 1/2, R otherwise); the other stream fills the remaining
positions in order. Bits are 1 for c and 0 for b.

psi: (lambda, L, R) -> (lambda, y, z) in R^3 with digit series
y = sum_k (1 + 2[L(k) = c]) (lambda/4)^k, z likewise with R and (1-lambda)/4.
"""

import csv
import io
import logging
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from smcmartin.eg3.streams import BoundaryPoint, Stream
from smcmartin.errors import BoundaryPointError, ParameterError
from smcmartin.settings import get_settings
from smcmartin.utils.formatting import format_real

logger = logging.getLogger(__name__)

BOUND_RTOL = 1e-12


# -----------------------
# Pydantic models
# -----------------------
class PhiImage(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: Fraction
    bits: Tuple[int, ...]
    sparse_positions: Tuple[int, ...]
    swapped: bool


class EmbeddedPoint(BaseModel):
    lam: float
    y: float
    z: float
    y_error: float = 0.0
    z_error: float = 0.0

    @model_validator(mode="after")
    def _check_bounds(self) -> "EmbeddedPoint":
        lam = self.lam
        y_lo, y_hi = lam / (4 - lam), 3 * lam / (4 - lam)
        z_lo, z_hi = (1 - lam) / (3 + lam), 3 * (1 - lam) / (3 + lam)
        if not within(self.y, y_lo, y_hi, self.y_error) or not within(self.z, z_lo, z_hi, self.z_error):
            raise BoundaryPointError(f"embedded point ({lam}, {self.y}, {self.z}) leaves the target set")
        return self


def within(value: float, lo: float, hi: float, slack: float = 0.0) -> bool:
    tol = BOUND_RTOL * max(1.0, abs(lo), abs(hi))
    return lo - slack - tol <= value <= hi + tol


# -----------------------
# phi
# -----------------------
def sparse_position(lam: Fraction, k: int) -> int:
    """floor(k log2(4 / lam)) by integer comparison: largest p with 2^p a^k <= (4b)^k."""
    a, b = lam.numerator, lam.denominator
    big, small = (4 * b) ** k, a ** k
    p = big.bit_length() - small.bit_length()
    while (small << (p + 1)) <= big:
        p += 1
    while p > 0 and (small << p) > big:
        p -= 1
    return p


def sparse_positions(lam: Fraction, out_depth: int) -> List[int]:
    positions: List[int] = []
    if lam == 0:
        return positions
    k = 1
    while True:
        p = sparse_position(lam, k)
        if p >= out_depth:
            return positions
        positions.append(p)
        k += 1


def phi(xi: BoundaryPoint, out_depth: int) -> PhiImage:
    if out_depth < 0:
        raise ParameterError("out_depth must be >= 0")
    swapped = xi.lam > Fraction(1, 2)
    lam = 1 - xi.lam if swapped else xi.lam
    sparse: Optional[Stream] = xi.right if swapped else xi.left
    dense: Optional[Stream] = xi.left if swapped else xi.right
    positions = sparse_positions(lam, out_depth)
    sparse_symbols = sparse.take(len(positions)) if positions else ()
    dense_symbols = dense.take(out_depth - len(positions)) if out_depth > len(positions) else ()
    bits: List[int] = []
    si = di = 0
    marks = set(positions)
    for i in range(out_depth):
        if i in marks:
            bits.append(1 if sparse_symbols[si] == "c" else 0)
            si += 1
        else:
            bits.append(1 if dense_symbols[di] == "c" else 0)
            di += 1
    return PhiImage(lam=xi.lam, bits=tuple(bits), sparse_positions=tuple(positions), swapped=swapped)


def first_difference(a: Tuple[int, ...], b: Tuple[int, ...]) -> Optional[int]:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


def phi_distance(u: PhiImage, v: PhiImage) -> Fraction:
    """|lambda - mu| + d_s(bits); bits equal over the computed depth count as equal."""
    i = first_difference(u.bits, v.bits)
    d_s = Fraction(0) if i is None else Fraction(1, 2 ** i)
    return abs(u.lam - v.lam) + d_s


# -----------------------
# psi
# -----------------------
def _digits(stream: Optional[Stream], terms: int) -> np.ndarray:
    if stream is None or terms == 0:
        return np.zeros(terms, dtype=float)
    return np.array([3.0 if s == "c" else 1.0 for s in stream.take(terms)])


def _series(digits: np.ndarray, ratio: float) -> float:
    if ratio == 0 or len(digits) == 0:
        return 0.0
    powers = ratio ** np.arange(1, len(digits) + 1, dtype=float)
    return float((digits * powers).sum())


def truncation_error(ratio: float, terms: int) -> float:
    if ratio == 0:
        return 0.0
    return 3 * ratio ** (terms + 1) / (1 - ratio)


def psi(xi: BoundaryPoint, terms: int) -> EmbeddedPoint:
    if terms < 0:
        raise ParameterError("terms must be >= 0")
    lam = float(xi.lam)
    ry, rz = lam / 4, (1 - lam) / 4
    return EmbeddedPoint(
        lam=lam,
        y=_series(_digits(xi.left, terms), ry),
        z=_series(_digits(xi.right, terms), rz),
        y_error=truncation_error(ry, terms),
        z_error=truncation_error(rz, terms),
    )


def psi_difference(xi: BoundaryPoint, eta: BoundaryPoint, terms: int) -> float:
    """Euclidean distance of the psi images, summed termwise so equal digits cancel exactly."""
    k = np.arange(1, terms + 1, dtype=float)
    lam, mu = float(xi.lam), float(eta.lam)
    dy = _digits(xi.left, terms) * (lam / 4) ** k - _digits(eta.left, terms) * (mu / 4) ** k
    dz = _digits(xi.right, terms) * ((1 - lam) / 4) ** k - _digits(eta.right, terms) * ((1 - mu) / 4) ** k
    return float(np.sqrt((lam - mu) ** 2 + dy.sum() ** 2 + dz.sum() ** 2))


# -----------------------
# Point clouds
# -----------------------
def _cloud_chunk(gen: np.random.Generator, size: int, terms: int) -> np.ndarray:
    lam = gen.random(size)
    left = gen.integers(0, 2, size=(size, terms))
    right = gen.integers(0, 2, size=(size, terms))
    k = np.arange(1, terms + 1, dtype=float)[None, :]
    y = ((1 + 2 * left) * (lam[:, None] / 4) ** k).sum(axis=1)
    z = ((1 + 2 * right) * ((1 - lam[:, None]) / 4) ** k).sum(axis=1)
    return np.column_stack([lam, y, z])


def generate_cloud(samples: int, terms: int, seed: int, chunk: Optional[int] = None) -> Iterator[str]:
    """CSV lines (header first) of psi images of uniformly sampled boundary points.

    Chunk i is drawn from the i-th child of SeedSequence(seed), so output
    depends only on (samples, terms, seed, chunk).
    """
    if samples < 0 or terms < 1:
        raise ParameterError("need samples >= 0 and terms >= 1")
    chunk = chunk or get_settings().cloud_chunk
    yield "lambda,y,z\n"
    if samples == 0:
        return
    n_chunks = -(-samples // chunk)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    remaining = samples
    for child in children:
        size = min(chunk, remaining)
        block = _cloud_chunk(np.random.default_rng(child), size, terms)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows([format_real(v) for v in row] for row in block)
        yield buf.getvalue()
        remaining -= size
    logger.info("Generated %d cloud points in %d chunks", samples, n_chunks)
