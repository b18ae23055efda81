# smcmartin/chain/dynamics.py
import logging
from fractions import Fraction
from typing import Dict, List, Optional

from smcmartin.chain.model import Classification, SmcModel, satisfies_root_condition
from smcmartin.errors import BudgetError, WordError
from smcmartin.settings import get_settings
from smcmartin.utils.rng import SeededRNG
from smcmartin.utils.words import Word, format_word

logger = logging.getLogger(__name__)


def _require_nonempty(w: Word) -> None:
    if not w:
        raise WordError("the empty word is not a state of the chain")


# -----------------------
# Exact transition law
# -----------------------
def transition_prob(m: SmcModel, w: Word, v: Word) -> Fraction:
    """P(w, v): sum over factorizations v = v_1...v_|w| (nonempty blocks) of prod P_{w_i}(v_i).

    f[j] holds the probability that the letters of w processed so far
    produce exactly v[:j].
    """
    _require_nonempty(w)
    if len(v) < len(w):
        return Fraction(0)
    f: Dict[int, Fraction] = {0: Fraction(1)}
    for i, letter in enumerate(w):
        rule = m.rule(letter)
        remaining = len(w) - i - 1
        nxt: Dict[int, Fraction] = {}
        for j, p in f.items():
            for block, q in rule.entries.items():
                end = j + len(block)
                if end > len(v) - remaining or v[j:end] != block:
                    continue
                nxt[end] = nxt.get(end, Fraction(0)) + p * q
        if not nxt:
            return Fraction(0)
        f = nxt
    return f.get(len(v), Fraction(0))


def step_distribution(m: SmcModel, w: Word, max_length: Optional[int] = None) -> Dict[Word, Fraction]:
    """The full one-step law P(w, .), optionally restricted to images of length <= max_length."""
    _require_nonempty(w)
    cap = get_settings().level_cap
    dist: Dict[Word, Fraction] = {(): Fraction(1)}
    suffix_min = [0] * (len(w) + 1)
    for i in range(len(w) - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + m.rule(w[i]).min_length
    for i, letter in enumerate(w):
        nxt: Dict[Word, Fraction] = {}
        for prefix, p in dist.items():
            for block, q in m.rule(letter).entries.items():
                image = prefix + block
                if max_length is not None and len(image) + suffix_min[i + 1] > max_length:
                    continue
                nxt[image] = nxt.get(image, Fraction(0)) + p * q
        if len(nxt) > cap:
            raise BudgetError(f"one-step image of {format_word(w)} exceeds {cap} words")
        dist = nxt
    return dist


# -----------------------
# Sampling
# -----------------------
def sample_step(m: SmcModel, w: Word, rng: SeededRNG) -> Word:
    """Replace every letter independently by a draw from its rule; exact in the rational weights."""
    _require_nonempty(w)
    out: List[str] = []
    for letter in w:
        rule = m.rule(letter)
        out.extend(rule.draw(rng.randbelow(rule.denominator)))
    return tuple(out)


def simulate(m: SmcModel, start: Word, steps: int, seed: int) -> List[Word]:
    if steps < 0:
        raise WordError("steps must be >= 0")
    logger.debug("Simulating %s for %d steps from %s (seed %d)", m.name, steps, format_word(start), seed)
    rng = SeededRNG(seed)
    path = [tuple(start)]
    for _ in range(steps):
        path.append(sample_step(m, path[-1], rng))
    return path


# -----------------------
# Classification
# -----------------------
def classify(m: SmcModel) -> Classification:
    persistent, expanding = [], []
    for letter in m.alphabet.symbols:
        reproducing = [w for w in m.rule(letter).entries if letter in w]
        if reproducing:
            persistent.append(letter)
            if any(len(w) >= 2 for w in reproducing):
                expanding.append(letter)
    roots = [a for a in m.alphabet.symbols if satisfies_root_condition(m, a)]
    lengths = {len(w) for rule in m.rules.values() for w in rule.entries}
    constant = len(lengths) == 1
    return Classification(
        persistent_letters=tuple(persistent),
        expanding_letters=tuple(expanding),
        is_persistent=len(persistent) == len(m.alphabet),
        roots=tuple(roots),
        is_constant_length=constant,
        length=next(iter(lengths)) if constant else None,
    )
