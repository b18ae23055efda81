# smcmartin/eg3/closed_form.py
"""
Closed forms for the eg3 chain (a -> ab | ba | ac | ca, each 1/4).

Every reachable word is L a R with L, R over {b, c}. For z = H a T and
x = H L a R T (|L| = l, |R| = r):

    G(z, x) = 4^-(l+r) * C(l+r, r)
    K(z, x) = 4^(h+t) * (h+l)_h * (t+r)_t / (h+t+l+r)_(h+t)

with (n)_k the falling factorial; both vanish when x does not extend z.
Along a boundary point with ratio lambda the kernel tends to
4^(h+t) lambda^h (1 - lambda)^t when H and reverse(T) are the stream heads.
"""

from fractions import Fraction
from math import comb, perm
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from smcmartin.eg3.streams import SYMBOLS, BoundaryPoint
from smcmartin.errors import BoundaryPointError, RootCountError
from smcmartin.utils.words import Word, anchor_decompose, format_word, reverse_word

ROOT = "a"


class HeadTail(BaseModel):
    model_config = ConfigDict(frozen=True)

    head: Word = ()
    tail: Word = ()

    @model_validator(mode="after")
    def _check(self) -> "HeadTail":
        for s in self.head + self.tail:
            if s not in SYMBOLS:
                raise RootCountError(f"head/tail symbol {s!r} is not b or c")
        return self

    @property
    def h(self) -> int:
        return len(self.head)

    @property
    def t(self) -> int:
        return len(self.tail)

    @property
    def word(self) -> Word:
        return self.head + (ROOT,) + self.tail

    @classmethod
    def from_word(cls, z: Word) -> "HeadTail":
        d = _decompose(z)
        return cls(head=d[0], tail=d[1])


def _decompose(x: Word) -> Tuple[Word, Word]:
    for s in x:
        if s != ROOT and s not in SYMBOLS:
            raise RootCountError(f"{format_word(x)} is not a word over a, b, c")
    d = anchor_decompose(x, ROOT)
    return d.left, d.right


def _match(z: HeadTail, x: Word) -> Optional[Tuple[int, int]]:
    """(l, r) when x = H L a R T, otherwise None."""
    left, right = _decompose(x)
    if len(left) < z.h or left[:z.h] != z.head:
        return None
    if len(right) < z.t or right[len(right) - z.t:] != z.tail:
        return None
    return len(left) - z.h, len(right) - z.t


def _kernel_from_counts(h: int, t: int, l: int, r: int) -> Fraction:
    return Fraction(4 ** (h + t) * perm(h + l, h) * perm(t + r, t), perm(h + t + l + r, h + t))


# -----------------------
# Operations
# -----------------------
def green_closed(z: HeadTail, x: Word) -> Fraction:
    lr = _match(z, tuple(x))
    if lr is None:
        return Fraction(0)
    l, r = lr
    return Fraction(comb(l + r, r), 4 ** (l + r))


def kernel_closed(z: HeadTail, x: Word) -> Fraction:
    lr = _match(z, tuple(x))
    if lr is None:
        return Fraction(0)
    return _kernel_from_counts(z.h, z.t, *lr)


def _heads_match(z: HeadTail, xi: BoundaryPoint) -> bool:
    if z.h and xi.left.take(z.h) != z.head:
        return False
    if z.t and xi.right.take(z.t) != reverse_word(z.tail):
        return False
    return True


def kernel_at_boundary(z: HeadTail, xi: BoundaryPoint) -> Fraction:
    lam = xi.lam
    if (z.h and lam == 0) or (z.t and lam == 1):
        return Fraction(0)
    if not _heads_match(z, xi):
        return Fraction(0)
    return 4 ** (z.h + z.t) * lam ** z.h * (1 - lam) ** z.t


def ray_split(xi: BoundaryPoint, n: int) -> Tuple[int, int]:
    """(|L_n|, |R_n|) with |L_n| = round(lambda n)."""
    if n < 0:
        raise BoundaryPointError("n must be >= 0")
    l = round(xi.lam * n)
    return l, n - l


def converge_to_boundary(xi: BoundaryPoint, n: int) -> Word:
    l, r = ray_split(xi, n)
    left = xi.left.take(l) if l else ()
    right = xi.right.take(r) if r else ()
    return left + (ROOT,) + reverse_word(right)


def kernel_along_ray(z: HeadTail, xi: BoundaryPoint, n: int) -> Fraction:
    """K(z, converge_to_boundary(xi, n)) without building the word."""
    l, r = ray_split(xi, n)
    if z.h > l or z.t > r:
        return Fraction(0)
    if not _heads_match(z, xi):
        return Fraction(0)
    return _kernel_from_counts(z.h, z.t, l - z.h, r - z.t)


def eg3_weight_admissibility(levels: int) -> List[Fraction]:
    """Partial sums of sum_z w_z / G(a, z) with w_z = 16 * 4^(-2|z|), one per level.

    Level n holds 2^n words L a R for each split l + r = n, and
    w_z / G(a, z) = 4^-n / C(n, r) for each of them.
    """
    sums: List[Fraction] = []
    total = Fraction(0)
    for n in range(levels + 1):
        total += sum((Fraction(1, 2 ** n * comb(n, r)) for r in range(n + 1)), Fraction(0))
        sums.append(total)
    return sums
