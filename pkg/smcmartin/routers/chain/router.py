# smcmartin/routers/chain/router.py
from typing import ClassVar, List, Optional, Tuple

from pydantic import Field

from smcmartin.chain.dynamics import classify, simulate, transition_prob
from smcmartin.chain.parse_model import format_model
from smcmartin.chain.presets import preset
from smcmartin.martin.engine import MartinEngine
from smcmartin.routers.base import CommandRequest, CommandRouter, RunSpec, load_source, parse_params, render_value
from smcmartin.utils.formatting import format_rational, render_rows

router = CommandRouter()


# Request models
class ModelRequest(CommandRequest):
    positional: ClassVar[Tuple[str, ...]] = ("source",)

    source: str = Field(description="preset name or config file")
    param: List[str] = Field(default=[], description="preset parameter NAME=VALUE, repeatable")


class SimulateRequest(ModelRequest):
    start: Optional[str] = Field(default=None, description="start word (default: the root)")
    steps: int = Field(default=10, ge=0)


class ProbRequest(ModelRequest):
    positional: ClassVar[Tuple[str, ...]] = ("source", "w", "v")

    w: str
    v: str


class NstepRequest(ModelRequest):
    positional: ClassVar[Tuple[str, ...]] = ("source", "x", "y", "n")

    x: str
    y: str
    n: int = Field(ge=0)


class ExportRequest(CommandRequest):
    positional: ClassVar[Tuple[str, ...]] = ("name",)

    name: str
    param: List[str] = []


@router.command("classify", ModelRequest, help="persistent/expanding letters, roots, constant length")
def classify_command(req: ModelRequest, run: RunSpec) -> str:
    info = classify(load_source(req.source, req.param))
    return render_rows(["property", "value"], info.summary_rows(), run.format)


@router.command("simulate", SimulateRequest, help="seeded trajectory X_0 .. X_steps", randomized=True)
def simulate_command(req: SimulateRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    start = m.parse_word(req.start) if req.start is not None else ((m.root or m.alphabet.symbols[0]),)
    path = simulate(m, start, req.steps, run.seed)
    rows = [(str(i), m.format_word(w)) for i, w in enumerate(path)]
    return render_rows(["step", "word"], rows, run.format)


@router.command("prob", ProbRequest, help="one-step transition probability P(w, v)")
def prob_command(req: ProbRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    w, v = m.parse_word(req.w), m.parse_word(req.v)
    return render_value(run, ["w", "v", "prob"], [req.w, req.v, format_rational(transition_prob(m, w, v))])


@router.command("nstep", NstepRequest, help="n-step transition probability")
def nstep_command(req: NstepRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    value = MartinEngine(m).nstep_prob(m.parse_word(req.x), m.parse_word(req.y), req.n)
    return render_value(run, ["x", "y", "n", "prob"], [req.x, req.y, str(req.n), format_rational(value)])


@router.command("export-preset", ExportRequest, help="print a built-in model in the config grammar")
def export_preset_command(req: ExportRequest, run: RunSpec) -> str:
    return format_model(preset(req.name, **parse_params(req.param)))
