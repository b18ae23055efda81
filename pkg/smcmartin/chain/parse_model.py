# smcmartin/chain/parse_model.py
"""
Parse the line-oriented model config into an SmcModel, and write it back.

    # comment
    alphabet = a b c
    rule a = 1/4: ab | 1/4: ba | 1/4: ac | 1/4: ca
    rule b = 1: b
    rule c = 1: c
    root = a
    param q = 1/2

Weights are exact rationals ("1" means 1/1). Every error cites the line it
was found on.
"""

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from smcmartin.chain.model import LetterRule, SmcModel
from smcmartin.errors import (
    ConfigSyntaxError,
    MissingRuleError,
    ProbabilitySumError,
    SmcError,
    UnknownLetterError,
)
from smcmartin.utils.formatting import format_rational
from smcmartin.utils.words import Alphabet, Word

_ALPHABET_RE = re.compile(r"^alphabet\s*=\s*(?P<symbols>.+)$")
_RULE_RE = re.compile(r"^rule\s+(?P<letter>\S+)\s*=\s*(?P<body>.+)$")
_ROOT_RE = re.compile(r"^root\s*=\s*(?P<letter>\S+)$")
_PARAM_RE = re.compile(r"^param\s+(?P<name>[A-Za-z_]\w*)\s*=\s*(?P<value>\S+)$")
_WEIGHT_RE = re.compile(r"^(?P<weight>\d+(?:/\d+)?)\s*:\s*(?P<word>\S+)$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_weight(text: str, lineno: int) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigSyntaxError(f"bad weight {text!r}", lineno)
    return value


def _parse_rule_body(alphabet: Alphabet, letter: str, body: str, lineno: int) -> Dict[Word, Fraction]:
    entries: Dict[Word, Fraction] = {}
    for part in body.split("|"):
        match = _WEIGHT_RE.match(part.strip())
        if not match:
            raise ConfigSyntaxError(f"expected '<p>/<q>: <word>', got {part.strip()!r}", lineno)
        weight = _parse_weight(match.group("weight"), lineno)
        if weight <= 0:
            raise ConfigSyntaxError(f"weight of rule {letter!r} must be positive", lineno)
        try:
            word = alphabet.parse_word(match.group("word"))
        except UnknownLetterError as exc:
            raise UnknownLetterError(exc.detail, lineno)
        if not word:
            raise ConfigSyntaxError(f"rule {letter!r} has an empty support word", lineno)
        entries[word] = entries.get(word, Fraction(0)) + weight
    total = sum(entries.values(), Fraction(0))
    if total != 1:
        raise ProbabilitySumError(letter, total, lineno)
    return entries


def parse_model(config_text: str, name: Optional[str] = None) -> SmcModel:
    lines: List[Tuple[int, str]] = [
        (i, _strip_comment(raw)) for i, raw in enumerate(config_text.splitlines(), start=1)
    ]
    lines = [(i, line) for i, line in lines if line]

    alphabet: Optional[Alphabet] = None
    for lineno, line in lines:
        match = _ALPHABET_RE.match(line)
        if match:
            if alphabet is not None:
                raise ConfigSyntaxError("alphabet declared twice", lineno)
            try:
                alphabet = Alphabet(symbols=tuple(match.group("symbols").split()))
            except SmcError as exc:
                raise ConfigSyntaxError(exc.detail, lineno)
    if alphabet is None:
        raise ConfigSyntaxError("missing 'alphabet = ...' line")

    rules: Dict[str, LetterRule] = {}
    root: Optional[str] = None
    params: Dict[str, Fraction] = {}
    for lineno, line in lines:
        if _ALPHABET_RE.match(line):
            continue
        match = _RULE_RE.match(line)
        if match:
            letter = match.group("letter")
            if letter not in alphabet:
                raise UnknownLetterError(f"rule for unknown letter {letter!r}", lineno)
            if letter in rules:
                raise ConfigSyntaxError(f"rule {letter!r} declared twice", lineno)
            entries = _parse_rule_body(alphabet, letter, match.group("body"), lineno)
            rules[letter] = LetterRule(letter=letter, entries=entries)
            continue
        match = _ROOT_RE.match(line)
        if match:
            root = match.group("letter")
            if root not in alphabet:
                raise UnknownLetterError(f"root {root!r} is not in the alphabet", lineno)
            continue
        match = _PARAM_RE.match(line)
        if match:
            params[match.group("name")] = _parse_weight(match.group("value"), lineno)
            continue
        raise ConfigSyntaxError(f"unrecognised line {line!r}", lineno)

    for letter in alphabet.symbols:
        if letter not in rules:
            raise MissingRuleError(f"no rule for letter {letter!r}")
    return SmcModel(alphabet=alphabet, rules=rules, root=root, params=params, name=name)


def format_model(m: SmcModel) -> str:
    """Render a model in the config grammar; parse_model(format_model(m)) rebuilds it."""
    out: List[str] = []
    if m.name:
        out.append(f"# {m.name}")
    out.append("alphabet = " + " ".join(m.alphabet.symbols))
    for letter in m.alphabet.symbols:
        rule = m.rule(letter)
        body = " | ".join(
            f"{format_rational(rule.entries[word])}: {m.format_word(word)}" for word in rule.support
        )
        out.append(f"rule {letter} = {body}")
    if m.root is not None:
        out.append(f"root = {m.root}")
    for key, value in sorted(m.params.items()):
        out.append(f"param {key} = {format_rational(value)}")
    return "\n".join(out) + "\n"
