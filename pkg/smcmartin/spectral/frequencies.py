# smcmartin/spectral/frequencies.py
"""
Letter-frequency analysis of a substitution chain.

The letter counts Z_n of X_n form a multitype branching process whose mean
matrix is M[c][c'] = sum_w P_{c'}(w) |w|_c. For primitive M the normalised
Perron eigenvector gives the limiting expected letter frequencies.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict

from smcmartin.chain.model import SmcModel
from smcmartin.errors import BudgetError, NotPrimitiveError, ParameterError
from smcmartin.utils.rng import SeededRNG
from smcmartin.utils.words import Alphabet, Word

logger = logging.getLogger(__name__)

POWER_TOLERANCE = 1e-14
POWER_MAX_ITER = 100_000
# letter counts are int64
COUNT_LIMIT = 2 ** 62


# -----------------------
# Pydantic models
# -----------------------
class FrequencyMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alphabet: Alphabet
    entries: Tuple[Tuple[Fraction, ...], ...]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in self.entries])

    def column_sums(self) -> Tuple[Fraction, ...]:
        n = len(self.entries)
        return tuple(sum((self.entries[i][j] for i in range(n)), Fraction(0)) for j in range(n))

    def support_pattern(self) -> np.ndarray:
        return np.array([[1 if x > 0 else 0 for x in row] for row in self.entries], dtype=np.int64)


class LetterCountVector(BaseModel):
    model_config = ConfigDict(frozen=True)

    alphabet: Alphabet
    counts: Tuple[int, ...]

    @property
    def length(self) -> int:
        return sum(self.counts)


class PerronResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalue: float
    vector: Tuple[float, ...]
    exact_eigenvalue: Optional[Fraction] = None
    exact_vector: Optional[Tuple[Fraction, ...]] = None
    iterations: int = 0


# -----------------------
# Operations
# -----------------------
def frequency_matrix(m: SmcModel) -> FrequencyMatrix:
    symbols = m.alphabet.symbols
    rows: List[List[Fraction]] = [[Fraction(0)] * len(symbols) for _ in symbols]
    for j, c_prime in enumerate(symbols):
        for word, p in m.rule(c_prime).entries.items():
            for i, c in enumerate(symbols):
                count = word.count(c)
                if count:
                    rows[i][j] += p * count
    return FrequencyMatrix(alphabet=m.alphabet, entries=tuple(tuple(r) for r in rows))


def is_primitive(M: FrequencyMatrix) -> bool:
    """Some power B^k, k <= n^2, of the 0/1 support pattern B is strictly positive."""
    pattern = M.support_pattern()
    n = pattern.shape[0]
    power = pattern.copy()
    for _ in range(n * n):
        if power.all():
            return True
        power = np.minimum(power @ pattern, 1)
    return bool(power.all())


def _exact_perron(M: FrequencyMatrix, approx: float) -> Tuple[Optional[Fraction], Optional[Tuple[Fraction, ...]]]:
    """Exact eigenpair when the dominant root of the characteristic polynomial is rational."""
    A = M.to_sympy()
    lam = sympy.Symbol("lam")
    poly = sympy.Poly(A.charpoly(lam).as_expr(), lam)
    rational_roots = [r for r in sympy.roots(poly, filter="Q")]
    candidates = [r for r in rational_roots if abs(float(r) - approx) < 1e-9 * max(1.0, abs(approx))]
    if not candidates:
        return None, None
    root = sympy.Rational(candidates[0])
    null = (A - root * sympy.eye(A.shape[0])).nullspace()
    if len(null) != 1:
        return None, None
    v = null[0]
    total = sum(v)
    v = v / total
    exact_vector = tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v)
    if any(x <= 0 for x in exact_vector):
        return None, None
    return Fraction(int(root.p), int(root.q)), exact_vector


def perron_frequencies(M: FrequencyMatrix) -> PerronResult:
    if not is_primitive(M):
        raise NotPrimitiveError("frequency matrix is not primitive: no power has all-positive support")
    A = M.to_numpy()
    n = A.shape[0]
    v = np.full(n, 1.0 / n)
    rho = 0.0
    it = 0
    for it in range(1, POWER_MAX_ITER + 1):
        w = A @ v
        rho = float(w.sum())
        w = w / rho
        change = float(np.max(np.abs(w - v) / np.maximum(np.abs(w), 1e-300)))
        v = w
        if change < POWER_TOLERANCE:
            break
    else:
        logger.warning("Power iteration stopped after %d iterations without reaching %g", it, POWER_TOLERANCE)
    logger.debug("Power iteration converged in %d iterations, rho ~ %.17g", it, rho)

    exact_value, exact_vector = None, None
    try:
        exact_value, exact_vector = _exact_perron(M, rho)
    except (sympy.PolynomialError, NotImplementedError):
        logger.exception("Exact eigen-solve failed; keeping floating-point result")
    if exact_vector is not None:
        # exact residual: M e == rho e in rationals
        for i in range(n):
            lhs = sum((M.entries[i][j] * exact_vector[j] for j in range(n)), Fraction(0))
            if lhs != exact_value * exact_vector[i]:
                logger.warning("Exact residual check failed at row %d; dropping exact eigenpair", i)
                exact_value, exact_vector = None, None
                break
    if exact_vector is not None:
        rho = float(exact_value)
        v = np.array([float(x) for x in exact_vector])
    return PerronResult(
        eigenvalue=rho,
        vector=tuple(float(x) for x in v),
        exact_eigenvalue=exact_value,
        exact_vector=exact_vector,
        iterations=it,
    )


def letter_counts(w: Word, alphabet: Alphabet) -> LetterCountVector:
    alphabet.check_word(w)
    return LetterCountVector(alphabet=alphabet, counts=tuple(w.count(c) for c in alphabet.symbols))


# -----------------------
# Branching view
# -----------------------
def _offspring_tables(m: SmcModel):
    symbols = m.alphabet.symbols
    tables = []
    for c in symbols:
        rule = m.rule(c)
        words = rule.support
        probs = np.array([float(rule.entries[w]) for w in words])
        probs = probs / probs.sum()
        offspring = np.array([[w.count(x) for x in symbols] for w in words], dtype=np.int64)
        tables.append((probs, offspring))
    return tables


def branching_step(m: SmcModel, counts: Sequence[int], gen: np.random.Generator, tables=None) -> np.ndarray:
    """Draw Z_{n+1} given Z_n: each letter's rule choices are multinomial in its count."""
    tables = tables or _offspring_tables(m)
    growth = max(int(offspring.sum(axis=1).max()) for _, offspring in tables)
    if int(np.sum(counts)) * growth > COUNT_LIMIT:
        raise BudgetError(f"letter counts could pass {COUNT_LIMIT} in one step")
    nxt = np.zeros(len(tables), dtype=np.int64)
    for z, (probs, offspring) in zip(counts, tables):
        if z:
            nxt += gen.multinomial(int(z), probs) @ offspring
    return nxt


def empirical_frequency(m: SmcModel, start: Word, steps: int, runs: int, seed: int) -> Tuple[float, ...]:
    """Monte-Carlo mean over runs of |X_steps|_c / |X_steps|, one forked generator per run."""
    if steps < 0 or runs < 1:
        raise ParameterError("need steps >= 0 and runs >= 1")
    start_counts = np.array(letter_counts(start, m.alphabet).counts, dtype=np.int64)
    if start_counts.sum() == 0:
        raise ParameterError("start word must be nonempty")
    tables = _offspring_tables(m)
    parent = SeededRNG(seed)
    total = np.zeros(len(m.alphabet), dtype=float)
    for _ in range(runs):
        gen = parent.fork().numpy()
        z = start_counts.copy()
        for _ in range(steps):
            z = branching_step(m, z, gen, tables)
        total += z / z.sum()
    return tuple(float(x) for x in total / runs)
