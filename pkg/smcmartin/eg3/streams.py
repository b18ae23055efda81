# smcmartin/eg3/streams.py
"""
Symbol streams over {b, c} and boundary points of the eg3 chain.

A stream is a finite prefix laid over a generator. Generator symbols are
indexed absolutely (position k of a "periodic:bc" stream is pattern[(k-1) % 2]
whatever the prefix), so overriding a prefix never shifts the tail. R streams
are read outside-in: R(1) is the rightmost symbol.

Text forms (used by the CLI):
    const:b          b, b, b, ...
    periodic:bcc     b, c, c, b, c, c, ...
    random:7         seeded fair bits, 0 -> b, 1 -> c
    cb+const:b       c, b, b, b, ...
    bcb              finite stream with available depth 3
    -                absent
A boundary point is "lambda,L,R", e.g. "1/2,const:b,random:7".
"""

import logging
import math
from fractions import Fraction
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from smcmartin.errors import BoundaryPointError, InsufficientDepthError
from smcmartin.settings import get_settings
from smcmartin.utils.formatting import parse_rational
from smcmartin.utils.words import Word

logger = logging.getLogger(__name__)

SYMBOLS = ("b", "c")
EVENTUALLY_PERIODIC = ("constant", "periodic")


def flip_symbol(s: str) -> str:
    return "c" if s == "b" else "b"


class Stream(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["constant", "periodic", "random", "finite"]
    prefix: Word = ()
    pattern: Word = ()
    seed: Optional[int] = None
    depth: Optional[int] = None

    _bits: Optional[np.ndarray] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check(self) -> "Stream":
        for s in self.prefix + self.pattern:
            if s not in SYMBOLS:
                raise BoundaryPointError(f"stream symbol {s!r} is not b or c")
        if self.kind == "constant" and len(self.pattern) != 1:
            raise BoundaryPointError("constant stream needs exactly one symbol")
        if self.kind == "periodic" and not self.pattern:
            raise BoundaryPointError("periodic stream needs a nonempty pattern")
        if self.kind == "random" and self.seed is None:
            raise BoundaryPointError("random stream needs a seed")
        if self.kind == "finite" and self.pattern:
            raise BoundaryPointError("finite stream has no generator pattern")
        if self.depth is not None and self.depth < 0:
            raise BoundaryPointError("stream depth must be >= 0")
        return self

    # -----------------------
    # Access
    # -----------------------
    @property
    def available(self) -> Optional[int]:
        """Number of symbols that can be read; None means unbounded."""
        if self.kind == "finite":
            return len(self.prefix) if self.depth is None else min(self.depth, len(self.prefix))
        return self.depth

    @property
    def period(self) -> Optional[int]:
        if self.kind == "constant":
            return 1
        if self.kind == "periodic":
            return len(self.pattern)
        return None

    def _random_bits(self, n: int) -> np.ndarray:
        bits = self._bits
        if bits is None or len(bits) < n:
            size = max(64, 1 << max(0, n - 1).bit_length())
            bits = np.random.default_rng(self.seed).random(size) < 0.5
            self._bits = bits
        return bits[:n]

    def _generated(self, start: int, stop: int) -> Word:
        """Generator symbols at 0-based positions [start, stop)."""
        if stop <= start:
            return ()
        if self.kind == "constant":
            return self.pattern * (stop - start)
        if self.kind == "periodic":
            p = len(self.pattern)
            return tuple(self.pattern[i % p] for i in range(start, stop))
        bits = self._random_bits(stop)[start:stop]
        return tuple("c" if bit else "b" for bit in bits)

    def take(self, n: int) -> Word:
        if n < 0:
            raise InsufficientDepthError("negative stream length requested")
        limit = self.available
        if limit is not None and n > limit:
            raise InsufficientDepthError(f"stream has depth {limit}, {n} symbols requested")
        head = self.prefix[:n]
        return head + self._generated(len(head), n)

    # -----------------------
    # Comparison
    # -----------------------
    def description(self) -> Tuple:
        return (self.kind, self.prefix, self.pattern, self.seed, self.available)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Stream) and self.description() == other.description()

    def __hash__(self) -> int:
        return hash(self.description())

    def flipped_at(self, k: int) -> "Stream":
        """Same stream with the k-th symbol (1-indexed) swapped between b and c."""
        head = list(self.prefix) if self.kind == "finite" else list(self.take(k))
        if k > len(head):
            head = list(self.take(k))
        head[k - 1] = flip_symbol(head[k - 1])
        return Stream(kind=self.kind, prefix=tuple(head), pattern=self.pattern, seed=self.seed, depth=self.depth)

    def to_text(self) -> str:
        prefix = "".join(self.prefix)
        if self.kind == "finite":
            return prefix or "ε"
        gen = {
            "constant": lambda: f"const:{self.pattern[0]}",
            "periodic": lambda: f"periodic:{''.join(self.pattern)}",
            "random": lambda: f"random:{self.seed}",
        }[self.kind]()
        return f"{prefix}+{gen}" if prefix else gen


def agreement_length(a: Stream, b: Stream, scan_limit: Optional[int] = None) -> Optional[int]:
    """Length of the longest common prefix of two streams; None stands for infinity.

    Infinity is only claimed for identical descriptions or for two eventually
    periodic streams that coincide over their common pre-period plus a joint
    period. A random pair that agrees over `scan_limit` symbols is reported as
    agreeing on exactly `scan_limit`.
    """
    if a.description() == b.description():
        return None
    limits = [x for x in (a.available, b.available) if x is not None]
    depth = min(limits) if limits else None
    horizon: Optional[int] = None
    if a.kind in EVENTUALLY_PERIODIC and b.kind in EVENTUALLY_PERIODIC:
        horizon = max(len(a.prefix), len(b.prefix)) + math.lcm(a.period, b.period)
    scan_limit = scan_limit or get_settings().stream_scan_limit
    stop = horizon if horizon is not None else scan_limit
    if depth is not None:
        stop = min(stop, depth)
    block = 64
    checked = 0
    while checked < stop:
        upto = min(stop, max(block, 2 * checked))
        left, right = a.take(upto), b.take(upto)
        for i in range(checked, upto):
            if left[i] != right[i]:
                return i
        checked = upto
    if horizon is not None and checked >= horizon:
        return None
    if depth is not None and checked >= depth:
        raise InsufficientDepthError(f"streams agree on all {depth} available symbols")
    logger.debug("Streams agree on the first %d symbols; reporting that as the agreement length", checked)
    return checked


class BoundaryPoint(BaseModel):
    """A point of the eg3 boundary: a ratio lambda plus the streams it needs."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: Fraction
    left: Optional[Stream] = None
    right: Optional[Stream] = None

    @field_validator("lam", mode="before")
    @classmethod
    def _coerce_lambda(cls, value) -> Fraction:
        if isinstance(value, str):
            return parse_rational(value)
        return Fraction(value)

    @model_validator(mode="after")
    def _check_presence(self) -> "BoundaryPoint":
        if not 0 <= self.lam <= 1:
            raise BoundaryPointError(f"lambda must lie in [0, 1], got {self.lam}")
        if (self.lam > 0) != (self.left is not None):
            raise BoundaryPointError("the L stream is present exactly when lambda > 0")
        if (self.lam < 1) != (self.right is not None):
            raise BoundaryPointError("the R stream is present exactly when lambda < 1")
        return self

    def to_text(self) -> str:
        def side(s: Optional[Stream]) -> str:
            return s.to_text() if s is not None else "-"
        lam = f"{self.lam.numerator}/{self.lam.denominator}" if self.lam.denominator != 1 else str(self.lam.numerator)
        return f"{lam},{side(self.left)},{side(self.right)}"


# -----------------------
# Parsing
# -----------------------
def parse_stream(text: str) -> Optional[Stream]:
    text = text.strip()
    if text == "-":
        return None
    prefix_text, _, gen = text.rpartition("+") if "+" in text else ("", "", text)
    if ":" not in gen:
        if prefix_text:
            raise BoundaryPointError(f"bad stream {text!r}: a finite stream takes no '+'")
        return Stream(kind="finite", prefix=tuple(gen))
    name, _, arg = gen.partition(":")
    prefix = tuple(prefix_text)
    if name == "const":
        return Stream(kind="constant", prefix=prefix, pattern=tuple(arg))
    if name == "periodic":
        return Stream(kind="periodic", prefix=prefix, pattern=tuple(arg))
    if name == "random":
        try:
            seed = int(arg)
        except ValueError:
            raise BoundaryPointError(f"bad random stream seed {arg!r}")
        return Stream(kind="random", prefix=prefix, seed=seed)
    raise BoundaryPointError(f"unknown stream generator {name!r}")


def parse_boundary_point(text: str) -> BoundaryPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise BoundaryPointError(f"expected 'lambda,L,R', got {text!r}")
    return BoundaryPoint(lam=parts[0].strip(), left=parse_stream(parts[1]), right=parse_stream(parts[2]))
