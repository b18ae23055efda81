# smcmartin/routers/base.py
"""
Command routing for the CLI.

A CommandRouter collects handlers the way an HTTP router collects
endpoints; CliApp mounts routers under an optional prefix (a nested
subcommand group) and turns each handler's pydantic request model into
argparse arguments.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Callable, ClassVar, Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Type, Union, get_origin

from pydantic import BaseModel, ValidationError, model_validator

from smcmartin.chain.model import SmcModel
from smcmartin.chain.presets import load_model
from smcmartin.errors import ParameterError, SmcError
from smcmartin.utils.formatting import parse_rational, render_rows

logger = logging.getLogger(__name__)

Output = Union[str, Iterable[str]]


class RunSpec(BaseModel):
    """Flags shared by every subcommand."""

    command: str
    source: Optional[str] = None
    format: Literal["table", "csv"] = "table"
    seed: Optional[int] = None
    output: Optional[str] = None
    randomized: bool = False

    @model_validator(mode="after")
    def _seed_for_randomized(self) -> "RunSpec":
        if self.randomized and self.seed is None:
            raise ValueError(f"'{self.command}' is randomized and needs --seed")
        return self


class CommandRequest(BaseModel):
    """Base request model; names listed in `positional` become positional arguments."""

    positional: ClassVar[Tuple[str, ...]] = ()


Handler = Callable[[CommandRequest, RunSpec], Output]


class Command:
    def __init__(self, name: str, handler: Handler, request: Type[CommandRequest], help: str,
                 randomized: bool, default_format: str):
        self.name = name
        self.handler = handler
        self.request = request
        self.help = help
        self.randomized = randomized
        self.default_format = default_format


class CommandRouter:
    def __init__(self):
        self.commands: List[Command] = []

    def command(self, name: str, request: Type[CommandRequest], help: str = "",
                randomized: bool = False, default_format: str = "table"):
        def decorator(fn: Handler) -> Handler:
            self.commands.append(Command(name, fn, request, help, randomized, default_format))
            return fn
        return decorator


# -----------------------
# Shared helpers for handlers
# -----------------------
def parse_params(items: Sequence[str]) -> Dict[str, Fraction]:
    """Turn repeated `--param q=1/3` values into a parameter dict."""
    params: Dict[str, Fraction] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ParameterError(f"expected NAME=VALUE, got {item!r}")
        params[key.strip()] = parse_rational(value)
    return params


def load_source(source: str, params: Sequence[str] = ()) -> SmcModel:
    return load_model(source, parse_params(params))


def render_value(run: RunSpec, header: Sequence[str], row: Sequence[str]) -> str:
    """A single result: the bare value for tables, header plus one row for CSV."""
    if run.format == "csv":
        return render_rows(header, [row], "csv")
    return f"{row[-1]}\n"


# -----------------------
# Application
# -----------------------
class CliApp:
    def __init__(self, prog: str, description: str):
        self.parser = argparse.ArgumentParser(prog=prog, description=description)
        # shared flags may also come before the subcommand
        self.parser.add_argument("--format", dest="global_format", choices=("table", "csv"), default=None)
        self.parser.add_argument("--seed", dest="global_seed", type=int, default=None)
        self.parser.add_argument("--output", dest="global_output", default=None)
        self._subparsers = self.parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
        self._groups: Dict[str, argparse._SubParsersAction] = {}

    def include_router(self, router: CommandRouter, prefix: str = "") -> None:
        target = self._subparsers
        if prefix:
            if prefix not in self._groups:
                group = self._subparsers.add_parser(prefix, help=f"{prefix} subcommands")
                self._groups[prefix] = group.add_subparsers(dest=f"{prefix}_command", metavar="COMMAND", required=True)
            target = self._groups[prefix]
        for command in router.commands:
            sub = target.add_parser(command.name, help=command.help, description=command.help)
            self._add_request_arguments(sub, command.request)
            sub.add_argument("--format", choices=("table", "csv"), default=None)
            sub.add_argument("--seed", type=int, default=None)
            sub.add_argument("--output", default=None, help="write to this path instead of stdout")
            sub.set_defaults(_command=command, _parser=sub)

    @staticmethod
    def _add_request_arguments(parser: argparse.ArgumentParser, request: Type[CommandRequest]) -> None:
        for name, field in request.model_fields.items():
            if name in request.positional:
                parser.add_argument(name, help=field.description)
                continue
            flag = "--" + name.replace("_", "-")
            if field.annotation is bool:
                parser.add_argument(flag, dest=name, action="store_true", help=field.description)
            elif get_origin(field.annotation) in (list, List):
                parser.add_argument(flag, dest=name, action="append", default=None, help=field.description)
            else:
                parser.add_argument(flag, dest=name, default=None, help=field.description)

    @staticmethod
    def _emit(output: Output, path: Optional[str]) -> None:
        chunks = [output] if isinstance(output, str) else output
        if path:
            try:
                with open(path, "w", encoding="utf-8", newline="") as fh:
                    for chunk in chunks:
                        fh.write(chunk)
            except OSError as exc:
                raise ParameterError(f"cannot write {path}: {exc.strerror or exc}") from exc
            return
        for chunk in chunks:
            sys.stdout.write(chunk)
        sys.stdout.flush()

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            ns = self.parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        command: Command = ns._command
        parser: argparse.ArgumentParser = ns._parser
        values = {
            name: value for name, value in vars(ns).items()
            if name in command.request.model_fields and value is not None
        }
        try:
            request = command.request.model_validate(values)
            run = RunSpec(
                command=command.name, source=values.get("source"),
                format=ns.format or ns.global_format or command.default_format,
                seed=ns.seed if ns.seed is not None else ns.global_seed,
                output=ns.output or ns.global_output, randomized=command.randomized,
            )
            self._emit(command.handler(request, run), run.output)
        except ValidationError as exc:
            problems = "; ".join(err["msg"] for err in exc.errors())
            sys.stderr.write(parser.format_usage())
            sys.stderr.write(f"{parser.prog}: error: {problems}\n")
            return 2
        except SmcError as exc:
            logger.debug("%s failed", command.name, exc_info=True)
            sys.stderr.write(f"{exc.name}: {exc.detail}\n")
            return exc.exit_code
        return 0
