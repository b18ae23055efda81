# smcmartin/martin/engine.py
"""
Exact Green's functions, Martin kernels and the Martin metric at finite scale.

Rules never shrink words, so P^(n)(x, y) only involves words of length at
most |y|. A single-source pass from x therefore walks word lengths upwards:
the words of one length form a finite set whose internal transitions
(self-loops, letter permutations) are solved exactly from
    g = b + P_SS^T g
where b collects the mass flowing in from shorter words. The solved values
then flow on to longer words.
"""

import logging
from collections import defaultdict, deque
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Set, Tuple

import sympy
from pydantic import BaseModel, ConfigDict

from smcmartin.chain.dynamics import step_distribution
from smcmartin.chain.language import enumerate_language, resolve_root
from smcmartin.chain.model import SmcModel
from smcmartin.errors import BudgetError, NonTransientError, UnreachableTargetError, WordError
from smcmartin.settings import Settings, get_settings
from smcmartin.utils.words import Word, format_word

logger = logging.getLogger(__name__)

WeightScheme = Callable[[Word], Fraction]
Successors = Dict[Word, Dict[Word, Fraction]]


def default_weight(z: Word) -> Fraction:
    """w_z = 16 * 4^(-2|z|)."""
    return Fraction(16, 16 ** len(z))


# -----------------------
# Pydantic models
# -----------------------
class GreenTable(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: Word
    target: Word
    value: Fraction
    intermediate: Tuple[Word, ...]


class TransienceReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    word: Word
    eta: Fraction
    green_vv: Optional[Fraction]
    bound_ok: bool
    transient: bool
    note: str = ""


# -----------------------
# Engine
# -----------------------
class MartinEngine:
    """Caches single-source Green tables for one model."""

    def __init__(self, model: SmcModel, root: Optional[str] = None, settings: Optional[Settings] = None):
        self.model = model
        self.settings = settings or get_settings()
        self._root = root
        if any(rule.min_length < 1 for rule in model.rules.values()):
            raise WordError("green's function needs length-monotone rules")
        self._green: Dict[Word, Tuple[int, Dict[Word, Fraction]]] = {}
        self._graph: Optional[Tuple[int, Dict[Word, Set[Word]]]] = None

    @property
    def root(self) -> str:
        if self._root is None:
            self._root = resolve_root(self.model)
        return self._root

    # -----------------------
    # Propagation
    # -----------------------
    def _check_budget(self, max_length: int) -> None:
        if max_length > self.settings.max_target_length:
            raise BudgetError(f"target length {max_length} exceeds the cap {self.settings.max_target_length}")

    def _solve_level(self, level: List[Word], inflow: Dict[Word, Fraction], succ: Successors) -> Dict[Word, Fraction]:
        index = {y: i for i, y in enumerate(level)}
        off_diagonal = any(
            v in index and v != y for y in level for v in succ[y]
        )
        if not off_diagonal:
            out: Dict[Word, Fraction] = {}
            for y in level:
                loop = succ[y].get(y, Fraction(0))
                if loop == 1:
                    raise NonTransientError(f"{format_word(y)} returns to itself with probability 1")
                out[y] = inflow.get(y, Fraction(0)) / (1 - loop)
            return out
        n = len(level)
        A = sympy.eye(n)
        for j, y in enumerate(level):
            for v, p in succ[y].items():
                i = index.get(v)
                if i is not None:
                    A[i, j] -= sympy.Rational(p.numerator, p.denominator)
        if A.rank() < n:
            raise NonTransientError(
                f"same-length words {', '.join(format_word(y) for y in level[:5])} form a recurrent class"
            )
        rhs = [inflow.get(y, Fraction(0)) for y in level]
        b = sympy.Matrix([sympy.Rational(r.numerator, r.denominator) for r in rhs])
        g = A.LUsolve(b)
        return {y: Fraction(int(g[i].p), int(g[i].q)) for i, y in enumerate(level)}

    def _propagate(self, x: Word, max_length: int) -> Tuple[Dict[Word, Fraction], Successors]:
        self._check_budget(max_length)
        values: Dict[Word, Fraction] = {}
        succ: Successors = {}
        if len(x) > max_length:
            return values, succ
        inflow: Dict[int, Dict[Word, Fraction]] = defaultdict(dict)
        inflow[len(x)][x] = Fraction(1)
        cap = self.settings.intermediate_cap
        for length in range(len(x), max_length + 1):
            b = inflow.pop(length, None)
            if not b:
                continue
            # close the level under same-length transitions
            level: List[Word] = []
            seen: Set[Word] = set()
            queue = deque(sorted(b))
            while queue:
                y = queue.popleft()
                if y in seen:
                    continue
                seen.add(y)
                level.append(y)
                succ[y] = step_distribution(self.model, y, max_length)
                for v in succ[y]:
                    if len(v) == length and v not in seen:
                        queue.append(v)
            g = self._solve_level(level, b, succ)
            values.update(g)
            if len(values) > cap:
                raise BudgetError(f"green table from {format_word(x)} exceeds {cap} words")
            for y in level:
                gy = g[y]
                for v, p in succ[y].items():
                    if len(v) > length:
                        bucket = inflow[len(v)]
                        bucket[v] = bucket.get(v, Fraction(0)) + gy * p
        return values, succ

    def green_from(self, x: Word, max_length: int) -> Dict[Word, Fraction]:
        """G(x, y) for every y with |y| <= max_length and G(x, y) > 0."""
        x = tuple(x)
        cached = self._green.get(x)
        if cached is not None and cached[0] >= max_length:
            return cached[1]
        logger.debug("Computing green table from %s up to length %d", format_word(x), max_length)
        values, _ = self._propagate(x, max_length)
        self._green[x] = (max_length, values)
        return values

    # -----------------------
    # Operations
    # -----------------------
    def nstep_prob(self, x: Word, y: Word, n: int) -> Fraction:
        if n < 0:
            raise WordError("n must be >= 0")
        x, y = tuple(x), tuple(y)
        self._check_budget(len(y))
        dist: Dict[Word, Fraction] = {x: Fraction(1)} if len(x) <= len(y) else {}
        cap = self.settings.intermediate_cap
        for _ in range(n):
            nxt: Dict[Word, Fraction] = {}
            for w, p in dist.items():
                for v, q in step_distribution(self.model, w, len(y)).items():
                    nxt[v] = nxt.get(v, Fraction(0)) + p * q
            if len(nxt) > cap:
                raise BudgetError(f"n-step support exceeds {cap} words")
            dist = nxt
            if not dist:
                break
        return dist.get(y, Fraction(0))

    def green(self, x: Word, y: Word) -> Fraction:
        x, y = tuple(x), tuple(y)
        if len(y) < len(x):
            return Fraction(0)
        return self.green_from(x, len(y)).get(y, Fraction(0))

    def green_table(self, x: Word, y: Word) -> GreenTable:
        """G(x, y) together with {z : x ~> z ~> y}."""
        x, y = tuple(x), tuple(y)
        values, succ = self._propagate(x, len(y))
        self._green.setdefault(x, (len(y), values))
        value = values.get(y, Fraction(0))
        intermediate: Tuple[Word, ...] = ()
        if value > 0:
            intermediate = tuple(sorted(_co_reachable(succ, y, set(values)), key=lambda w: (len(w), w)))
        return GreenTable(source=x, target=y, value=value, intermediate=intermediate)

    def _language_graph(self, max_length: int) -> Dict[Word, Set[Word]]:
        """Reverse edges of the rooted language restricted to lengths <= max_length."""
        if self._graph is not None and self._graph[0] >= max_length:
            return self._graph[1]
        values, succ = self._propagate((self.root,), max_length)
        self._green[(self.root,)] = (max_length, values)
        reverse: Dict[Word, Set[Word]] = defaultdict(set)
        for w, images in succ.items():
            for v in images:
                reverse[v].add(w)
        self._graph = (max_length, reverse)
        return reverse

    def ancestors(self, x: Word) -> List[Word]:
        """Words z of the language with G(z, x) > 0, including x itself."""
        x = tuple(x)
        self._require_in_language(x)
        reverse = self._language_graph(len(x))
        seen = {x}
        queue = deque([x])
        while queue:
            v = queue.popleft()
            for w in reverse.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return sorted(seen, key=lambda w: (len(w), w))

    def _require_in_language(self, x: Word) -> Fraction:
        g = self.green((self.root,), x)
        if g == 0:
            raise UnreachableTargetError(f"{format_word(x)} is not reachable from the root {self.root!r}")
        return g

    def kernel(self, z: Word, x: Word) -> Fraction:
        """K(z, x) = G(z, x) / G(root, x)."""
        z, x = tuple(z), tuple(x)
        base = self._require_in_language(x)
        return self.green(z, x) / base

    def theta(self, x: Word, y: Word, weights: Optional[WeightScheme] = None) -> Fraction:
        x, y = tuple(x), tuple(y)
        weights = weights or default_weight
        if x == y:
            self._require_in_language(x)
            return Fraction(0)
        zs = set(self.ancestors(x)) | set(self.ancestors(y))
        total = Fraction(0)
        for z in sorted(zs, key=lambda w: (len(w), w)):
            total += weights(z) * abs(self.kernel(z, x) - self.kernel(z, y))
        return total

    def transience_check(self, v: Word) -> TransienceReport:
        v = tuple(v)
        same_length = step_distribution(self.model, v, len(v))
        eta = 1 - sum(same_length.values(), Fraction(0))
        green_vv: Optional[Fraction] = None
        note = ""
        try:
            green_vv = self.green(v, v)
        except NonTransientError as exc:
            note = f"NonTransientError: {exc.detail}"
        if eta == 0:
            note = note or "eta = 0: no length-increasing image, transience hypothesis fails"
            logger.warning("Transience hypothesis fails at %s: eta = 0", format_word(v))
        bound_ok = eta > 0 and green_vv is not None and green_vv * eta <= 1
        return TransienceReport(
            word=v, eta=eta, green_vv=green_vv, bound_ok=bound_ok,
            transient=eta > 0 and green_vv is not None, note=note,
        )

    def weight_admissibility(self, max_level: int, weights: Optional[WeightScheme] = None) -> List[Fraction]:
        """Partial sums of sum_z w_z / G(root, z) over distinct words first seen by each level.

        Only a heuristic for convergence: the series is reported, not certified.
        """
        weights = weights or default_weight
        levels = enumerate_language(self.model, self.root, max_level)
        longest = max(len(w) for level in levels.levels for w in level)
        base = self.green_from((self.root,), longest)
        seen: Set[Word] = set()
        sums: List[Fraction] = []
        total = Fraction(0)
        for level in levels.levels:
            for z in sorted(level):
                if z not in seen:
                    seen.add(z)
                    total += weights(z) / base[z]
            sums.append(total)
        return sums


def _co_reachable(succ: Successors, target: Word, forward: Set[Word]) -> Set[Word]:
    reverse: Dict[Word, Set[Word]] = defaultdict(set)
    for w, images in succ.items():
        for v in images:
            reverse[v].add(w)
    seen = {target}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for w in reverse.get(v, ()):
            if w not in seen and w in forward:
                seen.add(w)
                queue.append(w)
    return seen
