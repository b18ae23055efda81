# smcmartin/routers/harmonic/router.py
from typing import Optional

from pydantic import Field

from smcmartin.harmonic.construction import build_harmonic, verify_harmonic_exhaustive
from smcmartin.routers.base import CommandRouter, RunSpec, load_source
from smcmartin.routers.chain.router import ModelRequest
from smcmartin.settings import get_settings
from smcmartin.utils.formatting import format_rational, parse_rational, render_rows

router = CommandRouter()


class HarmonicRequest(ModelRequest):
    k: Optional[str] = Field(default=None, description="constant k as p/q (default SMC_HARMONIC_K)")
    depth: int = Field(default=8, ge=0)
    verify_len: int = Field(default=32, ge=0)


@router.command("harmonic", HarmonicRequest, help="harmonic function along deterministic substitution iterates")
def harmonic_command(req: HarmonicRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    k = parse_rational(req.k) if req.k is not None else get_settings().harmonic_k
    f = build_harmonic(m, k, req.depth)
    rows = [
        (str(n), m.format_word(w), format_rational(s))
        for n, (w, s) in enumerate(zip(f.spec.iterates, f.spec.values))
    ]
    out = render_rows(["n", "iterate", "value"], rows, run.format)
    summary = verify_harmonic_exhaustive(m, f, req.verify_len)
    status = "Pf = f on all" if summary.all_equal else f"Pf != f on {len(summary.failures)}"
    return out + f"verified {summary.words_checked} words of length <= {summary.max_length}: {status}\n"
