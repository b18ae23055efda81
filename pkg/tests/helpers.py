# tests/helpers.py
from smcmartin.utils.words import Word


def w(text: str) -> Word:
    """Single-character word literal: w("bca") == ("b", "c", "a")."""
    return tuple(text) if text not in ("", "ε") else ()
