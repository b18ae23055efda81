# smcmartin/routers/spectral/router.py
from typing import Optional

from pydantic import Field

from smcmartin.routers.base import CommandRouter, RunSpec, load_source
from smcmartin.routers.chain.router import ModelRequest
from smcmartin.spectral.frequencies import empirical_frequency, frequency_matrix, perron_frequencies
from smcmartin.utils.formatting import format_matrix, format_number, format_real, format_vector, render_rows

router = CommandRouter()


class FreqSimRequest(ModelRequest):
    start: Optional[str] = Field(default=None, description="start word (default: the root or first letter)")
    steps: int = Field(default=15, ge=0)
    runs: int = Field(default=200, ge=1)


@router.command("freq", ModelRequest, help="frequency matrix M and its Perron eigenpair")
def freq_command(req: ModelRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    M = frequency_matrix(m)
    perron = perron_frequencies(M)
    eigenvalue = perron.exact_eigenvalue if perron.exact_eigenvalue is not None else perron.eigenvalue
    vector = perron.exact_vector if perron.exact_vector is not None else perron.vector
    if run.format == "csv":
        rows = [(c, format_number(e)) for c, e in zip(m.alphabet.symbols, vector)]
        return render_rows(["letter", "frequency"], rows, "csv")
    return (
        f"M = {format_matrix(M.entries)}\n"
        f"eigenvalue = {format_number(eigenvalue)}\n"
        f"e = {format_vector(vector)}\n"
    )


@router.command("freq-sim", FreqSimRequest, help="Monte-Carlo letter frequencies of X_steps",
                randomized=True, default_format="csv")
def freq_sim_command(req: FreqSimRequest, run: RunSpec) -> str:
    m = load_source(req.source, req.param)
    start = m.parse_word(req.start) if req.start is not None else ((m.root or m.alphabet.symbols[0]),)
    freqs = empirical_frequency(m, start, req.steps, req.runs, run.seed)
    rows = [(c, format_real(f)) for c, f in zip(m.alphabet.symbols, freqs)]
    return render_rows(["letter", "frequency"], rows, run.format)
