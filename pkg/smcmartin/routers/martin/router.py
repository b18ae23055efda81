# smcmartin/routers/martin/router.py
from typing import ClassVar, Tuple

from smcmartin.martin.engine import MartinEngine
from smcmartin.routers.base import CommandRouter, RunSpec, load_source, render_value
from smcmartin.routers.chain.router import ModelRequest
from smcmartin.utils.formatting import format_rational, render_rows

router = CommandRouter()


class PairRequest(ModelRequest):
    positional: ClassVar[Tuple[str, ...]] = ("source", "x", "y")

    x: str
    y: str
    intermediate: bool = False


class KernelRequest(ModelRequest):
    positional: ClassVar[Tuple[str, ...]] = ("source", "z", "x")

    z: str
    x: str


class WordRequest(ModelRequest):
    positional: ClassVar[Tuple[str, ...]] = ("source", "v")

    v: str


@router.command("green", PairRequest, help="Green's function G(x, y)")
def green_command(req: PairRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    engine = MartinEngine(m)
    x, y = m.parse_word(req.x), m.parse_word(req.y)
    if not req.intermediate:
        return render_value(run, ["x", "y", "green"], [req.x, req.y, format_rational(engine.green(x, y))])
    table = engine.green_table(x, y)
    rows = [("green", format_rational(table.value))]
    rows += [("intermediate", m.format_word(z)) for z in table.intermediate]
    return render_rows(["field", "value"], rows, run.format)


@router.command("kernel", KernelRequest, help="Martin kernel K(z, x) = G(z, x) / G(root, x)")
def kernel_command(req: KernelRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    value = MartinEngine(m).kernel(m.parse_word(req.z), m.parse_word(req.x))
    return render_value(run, ["z", "x", "kernel"], [req.z, req.x, format_rational(value)])


@router.command("theta", PairRequest, help="Martin metric theta(x, y) with weights 16 * 4^(-2|z|)")
def theta_command(req: PairRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    value = MartinEngine(m).theta(m.parse_word(req.x), m.parse_word(req.y))
    return render_value(run, ["x", "y", "theta"], [req.x, req.y, format_rational(value)])


@router.command("transience", WordRequest, help="eta and the bound G(v, v) <= 1 / eta")
def transience_command(req: WordRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    report = MartinEngine(m).transience_check(m.parse_word(req.v))
    rows = [
        ("eta", format_rational(report.eta)),
        ("green_vv", format_rational(report.green_vv) if report.green_vv is not None else "-"),
        ("bound_ok", str(report.bound_ok).lower()),
        ("transient", str(report.transient).lower()),
    ]
    if report.note:
        rows.append(("note", report.note))
    return render_rows(["field", "value"], rows, run.format)
