# smcmartin/utils/words.py
"""
Word algebra over finite alphabets.

A word is a plain tuple of letter tokens, e.g. ("b", "c", "a"). Tuples keep
words hashable and cheap to slice, which the Green's function tables rely on.
Text rendering is contiguous for single-character alphabets ("bca") and
dot-separated otherwise ("x1.x2.a").
"""

from fractions import Fraction
from typing import Iterable, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from smcmartin.errors import RootCountError, UnknownLetterError, WordError

Word = Tuple[str, ...]

EMPTY: Word = ()
SEPARATOR = "."
_EMPTY_MARKS = ("", "ε", "-")


class Alphabet(BaseModel):
    model_config = ConfigDict(frozen=True)

    symbols: Tuple[str, ...]

    @field_validator("symbols")
    @classmethod
    def _check_symbols(cls, symbols: Tuple[str, ...]) -> Tuple[str, ...]:
        if not symbols:
            raise WordError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise WordError(f"alphabet has duplicate symbols: {' '.join(symbols)}")
        for s in symbols:
            if not s or not s.isprintable() or any(ch.isspace() for ch in s) or SEPARATOR in s:
                raise WordError(f"invalid letter token {s!r}")
            if s in _EMPTY_MARKS or any(ch in s for ch in "|:=#,+"):
                raise WordError(f"reserved character in letter token {s!r}")
        return symbols

    def __contains__(self, letter: object) -> bool:
        return letter in self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, letter: str) -> int:
        return self.symbols.index(letter)

    @property
    def compact(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in _EMPTY_MARKS:
            return EMPTY
        if SEPARATOR in text or not self.compact:
            letters = tuple(text.split(SEPARATOR))
        else:
            letters = tuple(text)
        self.check_word(letters)
        return letters

    def check_word(self, word: Iterable[str]) -> None:
        for letter in word:
            if letter not in self.symbols:
                raise UnknownLetterError(f"letter {letter!r} is not in the alphabet {{{', '.join(self.symbols)}}}")

    def format_word(self, word: Word) -> str:
        return format_word(word, compact=self.compact)


class AnchoredWord(BaseModel):
    """w = left · root · right with the root letter absent from left and right."""

    model_config = ConfigDict(frozen=True)

    left: Word
    root: str
    right: Word

    @model_validator(mode="after")
    def _root_outside_sides(self) -> "AnchoredWord":
        if self.root in self.left or self.root in self.right:
            raise RootCountError(f"root {self.root!r} occurs outside the anchor")
        return self

    def reassemble(self) -> Word:
        return self.left + (self.root,) + self.right


# -----------------------
# Helpers
# -----------------------
def format_word(word: Word, compact: Optional[bool] = None) -> str:
    if not word:
        return "ε"
    if compact is None:
        compact = all(len(letter) == 1 for letter in word)
    return "".join(word) if compact else SEPARATOR.join(word)


def reverse_word(w: Word) -> Word:
    return tuple(reversed(w))


def common_prefix_length(w: Word, v: Word) -> int:
    n = 0
    for x, y in zip(w, v):
        if x != y:
            break
        n += 1
    return n


# -----------------------
# Operations
# -----------------------
def subword_count(w: Word, u: Word) -> int:
    """Number of (possibly overlapping) positions i with w[i:i+|u|] == u."""
    if not u:
        raise WordError("subword must be nonempty")
    k = len(u)
    return sum(1 for i in range(len(w) - k + 1) if w[i:i + k] == u)


def word_metric(w: Word, v: Word) -> Fraction:
    if w == v:
        return Fraction(0)
    return Fraction(1, 2 ** common_prefix_length(w, v))


def anchor_decompose(w: Word, root: str) -> AnchoredWord:
    positions = [i for i, letter in enumerate(w) if letter == root]
    if len(positions) != 1:
        raise RootCountError(
            f"{format_word(w)} contains the root {root!r} {len(positions)} times, expected exactly once"
        )
    i = positions[0]
    return AnchoredWord(left=w[:i], root=root, right=w[i + 1:])
