# smcmartin/chain/model.py
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from smcmartin.errors import (
    MissingRuleError,
    ProbabilitySumError,
    RootConditionError,
    UnknownLetterError,
    WordError,
)
from smcmartin.utils.words import Alphabet, Word, format_word


# -----------------------
# Pydantic models
# -----------------------
class LetterRule(BaseModel):
    """The law P_a of one letter: a finite map from nonempty words to weights."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    letter: str
    entries: Dict[Word, Fraction]

    _support: Tuple[Word, ...] = PrivateAttr(default=())
    _thresholds: Tuple[int, ...] = PrivateAttr(default=())
    _denominator: int = PrivateAttr(default=1)

    @model_validator(mode="after")
    def _check_law(self) -> "LetterRule":
        if not self.entries:
            raise ProbabilitySumError(self.letter, 0)
        for word, p in self.entries.items():
            if not word:
                raise WordError(f"rule {self.letter!r} has an empty support word")
            if p <= 0:
                raise WordError(f"rule {self.letter!r} gives non-positive weight {p} to {format_word(word)}")
        total = sum(self.entries.values(), Fraction(0))
        if total != 1:
            raise ProbabilitySumError(self.letter, total)
        return self

    def model_post_init(self, __context) -> None:
        support = tuple(sorted(self.entries))
        den = 1
        for word in support:
            q = self.entries[word].denominator
            den = math.lcm(den, q)
        cumulative, acc = [], 0
        for word in support:
            acc += int(self.entries[word] * den)
            cumulative.append(acc)
        self._support = support
        self._thresholds = tuple(cumulative)
        self._denominator = den

    @property
    def support(self) -> Tuple[Word, ...]:
        """Support words in lexicographic order."""
        return self._support

    @property
    def min_length(self) -> int:
        return min(len(w) for w in self.entries)

    def prob(self, word: Word) -> Fraction:
        return self.entries.get(word, Fraction(0))

    def draw(self, u: int) -> Word:
        """Map a uniform integer u in [0, denominator) onto a support word."""
        for word, threshold in zip(self._support, self._thresholds):
            if u < threshold:
                return word
        return self._support[-1]

    @property
    def denominator(self) -> int:
        return self._denominator


class SmcModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alphabet: Alphabet
    rules: Dict[str, LetterRule]
    root: Optional[str] = None
    params: Dict[str, Fraction] = {}
    name: Optional[str] = None

    @model_validator(mode="after")
    def _check_model(self) -> "SmcModel":
        for letter in self.alphabet.symbols:
            if letter not in self.rules:
                raise MissingRuleError(f"no rule for letter {letter!r}")
        for letter, rule in self.rules.items():
            if letter not in self.alphabet:
                raise UnknownLetterError(f"rule for unknown letter {letter!r}")
            for word in rule.entries:
                self.alphabet.check_word(word)
        if self.root is not None:
            if self.root not in self.alphabet:
                raise UnknownLetterError(f"root {self.root!r} is not in the alphabet")
            if not satisfies_root_condition(self, self.root):
                raise RootConditionError(f"declared root {self.root!r} does not satisfy the root condition")
        return self

    def rule(self, letter: str) -> LetterRule:
        return self.rules[letter]

    def parse_word(self, text: str) -> Word:
        return self.alphabet.parse_word(text)

    def format_word(self, word: Word) -> str:
        return self.alphabet.format_word(word)


class Classification(BaseModel):
    persistent_letters: Tuple[str, ...]
    expanding_letters: Tuple[str, ...]
    is_persistent: bool
    roots: Tuple[str, ...]
    is_constant_length: bool
    length: Optional[int] = None

    def summary_rows(self) -> List[Tuple[str, str]]:
        return [
            ("persistent_letters", " ".join(self.persistent_letters) or "-"),
            ("expanding_letters", " ".join(self.expanding_letters) or "-"),
            ("is_persistent", str(self.is_persistent).lower()),
            ("roots", " ".join(self.roots) or "-"),
            ("is_constant_length", str(self.is_constant_length).lower()),
            ("length", str(self.length) if self.length is not None else "-"),
        ]


# -----------------------
# Helpers
# -----------------------

def satisfies_root_condition(m: SmcModel, a: str) -> bool:
    """a occurs exactly once in each word of supp(P_a) and never in supp(P_b), b != a."""
    for letter, rule in m.rules.items():
        for word in rule.entries:
            count = word.count(a)
            if letter == a and count != 1:
                return False
            if letter != a and count != 0:
                return False
    return True
