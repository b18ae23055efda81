# smcmartin/harmonic/construction.py
"""
A positive non-constant harmonic function for constant-length chains.

Pick for every letter c a word sigma(c) that only P_c can produce. Along
the deterministic iterates sigma^n(a) of the root put

    s_0 = 1,  s_{n+1} = (s_n - k) / P(sigma^n(a), sigma^(n+1)(a)) + k

and let f = s_n on sigma^n(a) and f = k everywhere else. Exclusive
selector words make sigma^(n+1)(a) reachable in one step only from
sigma^n(a), which is exactly what Pf = f needs.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from smcmartin.chain.dynamics import classify, step_distribution
from smcmartin.chain.language import enumerate_language
from smcmartin.chain.model import SmcModel
from smcmartin.errors import DepthError, HypothesisError, ParameterError
from smcmartin.utils.words import Word, format_word

logger = logging.getLogger(__name__)


# -----------------------
# Pydantic models
# -----------------------
class HarmonicSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    root: str
    k: Fraction
    length: int
    selector: Dict[str, Word]
    iterates: List[Word]
    weights: List[Fraction]
    values: List[Fraction]

    @property
    def depth(self) -> int:
        return len(self.iterates) - 1


class HarmonicCheck(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    word: Word
    pf: Fraction
    f: Fraction
    equal: bool


class HarmonicSummary(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    max_length: int
    words_checked: int
    failures: List[HarmonicCheck]

    @property
    def all_equal(self) -> bool:
        return not self.failures


class HarmonicFunction:
    """f(w) = s_n when w = sigma^n(a) with n <= depth, k otherwise."""

    def __init__(self, spec: HarmonicSpec):
        self.spec = spec
        self._table = {w: s for w, s in zip(spec.iterates, spec.values)}

    def _exponent(self, size: int) -> Optional[int]:
        n, power = 0, 1
        while power < size:
            power *= self.spec.length
            n += 1
        return n if power == size else None

    def __call__(self, w: Word) -> Fraction:
        w = tuple(w)
        n = self._exponent(len(w))
        if n is not None and n > self.spec.depth:
            raise DepthError(
                f"{format_word(w)} has the length of sigma^{n}(a) but the table stops at depth {self.spec.depth}"
            )
        return self._table.get(w, self.spec.k)


# -----------------------
# Hypotheses
# -----------------------
def exclusive_words(m: SmcModel) -> Dict[str, List[Word]]:
    """Support words of each letter that no other letter's rule can produce."""
    out: Dict[str, List[Word]] = {}
    for letter, rule in m.rules.items():
        others = set()
        for other, other_rule in m.rules.items():
            if other != letter:
                others.update(other_rule.entries)
        out[letter] = [w for w in rule.support if w not in others]
    return out


def check_hypotheses(m: SmcModel, selector: Optional[Dict[str, Word]] = None) -> Dict[str, Word]:
    """Raise HypothesisError for the first failed condition; return the selector otherwise."""
    info = classify(m)
    if not info.is_constant_length:
        raise HypothesisError("constant_length", f"support words of {m.name or 'the model'} have different lengths")
    if not info.is_persistent:
        missing = [c for c in m.alphabet.symbols if c not in info.persistent_letters]
        raise HypothesisError("persistent", f"letters {', '.join(missing)} cannot reproduce themselves")
    root = m.root if m.root in info.roots else next(iter(info.roots), None)
    if root is None:
        raise HypothesisError("root", f"{m.name or 'the model'} has no root letter")
    if root not in info.expanding_letters:
        raise HypothesisError("root", f"root {root!r} is not expanding")
    if len(m.rule(root).support) < 2:
        raise HypothesisError("support_size", f"rule of root {root!r} has a single support word")

    candidates = exclusive_words(m)
    chosen: Dict[str, Word] = {}
    for letter in m.alphabet.symbols:
        options = candidates[letter]
        if selector and letter in selector:
            word = tuple(selector[letter])
            if word not in options:
                raise HypothesisError("exclusive_words", f"{format_word(word)} is not exclusive to {letter!r}")
        elif options:
            word = options[0]
        else:
            raise HypothesisError("exclusive_words", f"every support word of {letter!r} is shared")
        chosen[letter] = word
    return chosen


# -----------------------
# Construction
# -----------------------
def _apply(selector: Dict[str, Word], w: Word) -> Word:
    return tuple(s for letter in w for s in selector[letter])


def _deterministic_step_prob(m: SmcModel, selector: Dict[str, Word], w: Word) -> Fraction:
    # constant length: the factorization into sigma-blocks is unique
    p = Fraction(1)
    for letter, count in Counter(w).items():
        p *= m.rule(letter).prob(selector[letter]) ** count
    return p


def build_harmonic(m: SmcModel, k: Fraction, depth: int,
                   selector: Optional[Dict[str, Word]] = None) -> HarmonicFunction:
    k = Fraction(k)
    if k <= 0 or k == 1:
        raise ParameterError(f"k must be positive and different from 1, got {k}")
    if depth < 0:
        raise ParameterError("depth must be >= 0")
    chosen = check_hypotheses(m, selector)
    info = classify(m)
    root = m.root if m.root in info.roots else info.roots[0]

    iterates: List[Word] = [(root,)]
    weights: List[Fraction] = []
    values: List[Fraction] = [Fraction(1)]
    for n in range(depth):
        current = iterates[-1]
        p = _deterministic_step_prob(m, chosen, current)
        weights.append(p)
        iterates.append(_apply(chosen, current))
        values.append((values[-1] - k) / p + k)
        if values[-1] <= 0:
            logger.warning("Harmonic value s_%d = %s is not positive (k = %s)", n + 1, values[-1], k)

    spec = HarmonicSpec(
        root=root, k=k, length=info.length, selector=chosen,
        iterates=iterates, weights=weights, values=values,
    )
    return HarmonicFunction(spec)


# -----------------------
# Verification
# -----------------------
def verify_harmonic(m: SmcModel, f: Callable[[Word], Fraction], w: Word) -> HarmonicCheck:
    w = tuple(w)
    pf = sum((p * f(v) for v, p in step_distribution(m, w).items()), Fraction(0))
    fw = f(w)
    return HarmonicCheck(word=w, pf=pf, f=fw, equal=pf == fw)


def verify_harmonic_exhaustive(m: SmcModel, f: HarmonicFunction, max_length: int) -> HarmonicSummary:
    """Check Pf = f on every word reachable from the root with length <= max_length."""
    steps, size = 0, f.spec.length
    while size <= max_length:
        steps += 1
        size *= f.spec.length
    levels = enumerate_language(m, f.spec.root, steps)
    failures: List[HarmonicCheck] = []
    checked = 0
    for w in levels.union():
        if len(w) > max_length:
            continue
        result = verify_harmonic(m, f, w)
        checked += 1
        if not result.equal:
            failures.append(result)
    if failures:
        logger.warning("Pf != f on %d of %d words", len(failures), checked)
    return HarmonicSummary(max_length=max_length, words_checked=checked, failures=failures)
