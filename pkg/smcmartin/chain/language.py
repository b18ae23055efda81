# smcmartin/chain/language.py
import logging
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from smcmartin.chain.dynamics import step_distribution
from smcmartin.chain.model import SmcModel, satisfies_root_condition
from smcmartin.errors import BudgetError, RootConditionError
from smcmartin.settings import get_settings
from smcmartin.utils.words import Word

logger = logging.getLogger(__name__)


class LanguageLevels(BaseModel):
    """levels[n] maps every w with P^(n)(root, w) > 0 to that exact probability."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    root: str
    levels: List[Dict[Word, Fraction]]

    def level(self, n: int) -> List[Word]:
        return sorted(self.levels[n])

    def union(self) -> List[Word]:
        seen: Dict[Word, None] = {}
        for level in self.levels:
            for w in sorted(level):
                seen.setdefault(w, None)
        return list(seen)


def resolve_root(m: SmcModel, root: Optional[str] = None) -> str:
    root = root or m.root
    if root is None:
        raise RootConditionError(f"model {m.name or ''} declares no root")
    if not satisfies_root_condition(m, root):
        raise RootConditionError(f"{root!r} is not a root of model {m.name or ''}")
    return root


def enumerate_language(m: SmcModel, root: Optional[str] = None, max_steps: int = 0,
                       cap: Optional[int] = None) -> LanguageLevels:
    root = resolve_root(m, root)
    cap = cap or get_settings().level_cap
    current: Dict[Word, Fraction] = {(root,): Fraction(1)}
    levels = [current]
    for n in range(1, max_steps + 1):
        nxt: Dict[Word, Fraction] = {}
        for w, p in current.items():
            for v, q in step_distribution(m, w).items():
                nxt[v] = nxt.get(v, Fraction(0)) + p * q
            if len(nxt) > cap:
                raise BudgetError(f"language level {n} exceeds {cap} words")
        logger.debug("Level %d of %s has %d words", n, m.name, len(nxt))
        levels.append(nxt)
        current = nxt
    return LanguageLevels(root=root, levels=levels)
