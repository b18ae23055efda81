# smcmartin/chain/presets.py
"""Built-in models: the five worked examples plus the harmonic test chain."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional

from smcmartin.chain.model import LetterRule, SmcModel
from smcmartin.chain.parse_model import parse_model
from smcmartin.errors import ConfigSyntaxError, ParameterError, UnknownPresetError
from smcmartin.utils.words import Alphabet

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _build(name: str, symbols: str, rules: Dict[str, Dict[str, Fraction]], root: Optional[str] = None,
           params: Optional[Dict[str, Fraction]] = None) -> SmcModel:
    return SmcModel(
        alphabet=Alphabet(symbols=tuple(symbols)),
        rules={
            letter: LetterRule(letter=letter, entries={tuple(w): p for w, p in law.items() if p != 0})
            for letter, law in rules.items()
        },
        root=root,
        params=params or {},
        name=name,
    )


def _four_way(weight: Fraction) -> Dict[str, Fraction]:
    return {"ab": weight, "ba": weight, "ac": weight, "ca": weight}


def eg1() -> SmcModel:
    return _build("eg1", "ab", {"a": {"ab": HALF, "ba": HALF}, "b": {"b": Fraction(1)}}, root="a")


def eg2() -> SmcModel:
    return _build("eg2", "ab", {"a": {"aa": HALF, "ab": HALF}, "b": {"ba": Fraction(1)}})


def eg3() -> SmcModel:
    return _build(
        "eg3", "abc",
        {"a": _four_way(QUARTER), "b": {"b": Fraction(1)}, "c": {"c": Fraction(1)}},
        root="a",
    )


def eg4(q: Fraction = HALF) -> SmcModel:
    q = Fraction(q)
    if not 0 < q <= 1:
        raise ParameterError(f"eg4 needs 0 < q <= 1, got {q}")
    law = _four_way(q / 4)
    law["a"] = 1 - q
    return _build("eg4", "abc", {"a": law, "b": {"b": Fraction(1)}, "c": {"c": Fraction(1)}},
                  root="a", params={"q": q})


def eg5() -> SmcModel:
    return _build(
        "eg5", "abcde",
        {
            "a": _four_way(QUARTER),
            "b": {"bde": HALF, "edb": HALF},
            "c": {"c": Fraction(1)},
            "d": {"d": Fraction(1)},
            "e": {"e": Fraction(1)},
        },
        root="a",
    )


def harmonic_test_chain() -> SmcModel:
    return _build("test-harmonic", "ab", {"a": {"ab": HALF, "ba": HALF}, "b": {"bb": Fraction(1)}}, root="a")


PRESETS: Dict[str, Callable[..., SmcModel]] = {
    "eg1": eg1,
    "eg2": eg2,
    "eg3": eg3,
    "eg4": eg4,
    "eg5": eg5,
    "test-harmonic": harmonic_test_chain,
}


def preset(name: str, **params: Fraction) -> SmcModel:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise UnknownPresetError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    try:
        return builder(**params)
    except TypeError:
        raise ParameterError(f"preset {name!r} does not take parameters {sorted(params)}")


def load_model(source: str, params: Optional[Dict[str, Fraction]] = None) -> SmcModel:
    """Resolve a preset name or a config file path into a model."""
    params = params or {}
    if source in PRESETS:
        logger.debug("Loading preset %s with params %s", source, params)
        return preset(source, **params)
    path = Path(source)
    if not path.is_file():
        raise UnknownPresetError(f"{source!r} is neither a preset nor a readable config file")
    if params:
        raise ParameterError("parameters only apply to presets; edit the config file instead")
    logger.debug("Parsing model config %s", path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ConfigSyntaxError(f"config is not UTF-8: {exc}")
    return parse_model(text, name=path.stem)
