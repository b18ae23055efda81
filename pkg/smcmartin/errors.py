# smcmartin/errors.py
"""
Structured domain errors.

Every error raised by the library derives from SmcError. The CLI reports
them as "<Name>: <detail>" and exits with `exit_code`, the way the HTTP
routers map failures onto HTTPException(status_code, detail).

SmcError does not derive from ValueError; pydantic only wraps
ValueError/AssertionError raised inside validators, so these propagate
unchanged out of model construction.
"""

from typing import Optional


class SmcError(Exception):
    exit_code = 1

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    @property
    def name(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        return self.detail


# -----------------------
# Words and configuration
# -----------------------
class WordError(SmcError):
    pass


class RootCountError(WordError):
    pass


class ConfigSyntaxError(SmcError):
    def __init__(self, detail: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)


class ProbabilitySumError(ConfigSyntaxError):
    def __init__(self, letter: str, total, line: Optional[int] = None):
        self.letter = letter
        self.total = total
        super().__init__(f"weights of rule {letter!r} sum to {total}, expected 1", line)


class UnknownLetterError(ConfigSyntaxError):
    pass


class MissingRuleError(ConfigSyntaxError):
    pass


class RootConditionError(SmcError):
    pass


class UnknownPresetError(SmcError):
    pass


class ParameterError(SmcError):
    pass


# -----------------------
# Computation
# -----------------------
class BudgetError(SmcError):
    pass


class NotPrimitiveError(SmcError):
    pass


class NonTransientError(SmcError):
    pass


class UnreachableTargetError(SmcError):
    pass


class InsufficientDepthError(SmcError):
    pass


class BoundaryPointError(SmcError):
    pass


class DegenerateFitError(SmcError):
    pass


class HypothesisError(SmcError):
    def __init__(self, hypothesis: str, detail: str):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}: {detail}")


class DepthError(SmcError):
    pass
