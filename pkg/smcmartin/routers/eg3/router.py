# smcmartin/routers/eg3/router.py
from typing import ClassVar, Iterator, Optional, Tuple

from pydantic import Field

from smcmartin.eg3.embeddings import generate_cloud, phi, psi
from smcmartin.eg3.experiments import box_dimension, lipschitz_scan
from smcmartin.eg3.metric import is_mixed_case, rho, theta_boundary_truncated
from smcmartin.eg3.streams import parse_boundary_point
from smcmartin.errors import ParameterError
from smcmartin.routers.base import CommandRequest, CommandRouter, RunSpec, render_value
from smcmartin.utils.formatting import format_number, format_real, parse_rational, render_rows

router = CommandRouter()


# Request models
class PairRequest(CommandRequest):
    positional: ClassVar[Tuple[str, ...]] = ("xi", "eta")

    xi: str = Field(description="boundary point 'lambda,L,R', e.g. 1/2,const:b,random:7")
    eta: str
    float_only: bool = Field(default=False, description="evaluate in floating point")
    check_depth: Optional[int] = Field(default=None, ge=0, description="also sum the metric directly to this depth")


class PointRequest(CommandRequest):
    positional: ClassVar[Tuple[str, ...]] = ("xi",)

    xi: str
    out_depth: int = Field(default=32, ge=0)
    terms: int = Field(default=40, ge=0)


class CloudRequest(CommandRequest):
    samples: int = Field(default=1000, ge=0)
    terms: int = Field(default=40, ge=1)
    chunk: Optional[int] = Field(default=None, ge=1)


class DimRequest(CommandRequest):
    positional: ClassVar[Tuple[str, ...]] = ("lam",)

    lam: str
    depth: int = Field(default=40, ge=2)
    scales: int = Field(default=48, ge=2)


class LipschitzRequest(CommandRequest):
    pairs: int = Field(default=1000, ge=1)
    precision: int = Field(default=12, ge=1)
    max_flip_depth: int = Field(default=16, ge=1)
    r_grid: str = Field(default="0.5,1,2", description="comma-separated exponents for the d^r / rho trend")


@router.command("rho", PairRequest, help="closed-form boundary metric between two points")
def rho_command(req: PairRequest, run: RunSpec) -> str:
    xi, eta = parse_boundary_point(req.xi), parse_boundary_point(req.eta)
    value = rho(xi, eta, exact=not req.float_only)
    if is_mixed_case(xi, eta):
        note = "mixed lambda-face pair: absent sides count as agreeing forever"
    else:
        note = ""
    if req.check_depth is None and not note:
        return render_value(run, ["xi", "eta", "rho"], [req.xi, req.eta, format_number(value)])
    rows = [("rho", format_number(value))]
    if req.check_depth is not None:
        direct, tail = theta_boundary_truncated(xi, eta, req.check_depth)
        rows += [("direct_sum", format_real(float(direct))), ("tail_bound", format_real(float(tail)))]
    if note:
        rows.append(("note", note))
    return render_rows(["field", "value"], rows, run.format)


@router.command("phi", PointRequest, help="Cantor-product image (lambda, bits)")
def phi_command(req: PointRequest, run: RunSpec) -> str:
    image = phi(parse_boundary_point(req.xi), req.out_depth)
    rows = [
        ("lambda", format_number(image.lam)),
        ("bits", "".join(str(b) for b in image.bits)),
        ("sparse_positions", " ".join(str(p) for p in image.sparse_positions) or "-"),
        ("swapped", str(image.swapped).lower()),
    ]
    return render_rows(["field", "value"], rows, run.format)


@router.command("psi", PointRequest, help="Euclidean image (lambda, y, z) with truncation errors")
def psi_command(req: PointRequest, run: RunSpec) -> str:
    p = psi(parse_boundary_point(req.xi), req.terms)
    row = [format_real(v) for v in (p.lam, p.y, p.z, p.y_error, p.z_error)]
    return render_rows(["lambda", "y", "z", "y_error", "z_error"], [row], run.format)


@router.command("cloud", CloudRequest, help="CSV point cloud of psi images", randomized=True, default_format="csv")
def cloud_command(req: CloudRequest, run: RunSpec) -> Iterator[str]:
    return generate_cloud(req.samples, req.terms, run.seed, req.chunk)


@router.command("dim", DimRequest, help="box-counting dimension of the fixed-lambda fiber")
def dim_command(req: DimRequest, run: RunSpec) -> str:
    est = box_dimension(float(parse_rational(req.lam)), req.depth, req.scales)
    row = [format_real(est.lam), format_real(est.estimate), format_real(est.analytic)]
    return render_rows(["lambda", "estimate", "analytic"], [row], run.format)


@router.command("lipschitz", LipschitzRequest, help="Lipschitz ratios of phi and psi over seeded pairs",
                randomized=True)
def lipschitz_command(req: LipschitzRequest, run: RunSpec) -> str:
    try:
        r_grid = [float(r) for r in req.r_grid.split(",") if r.strip()]
    except ValueError:
        raise ParameterError(f"bad exponent list {req.r_grid!r}")
    report = lipschitz_scan(req.pairs, run.seed, precision=req.precision,
                            max_flip_depth=req.max_flip_depth, r_grid=r_grid)
    rows = [
        ("pairs_used", str(report.pairs_used)),
        ("skipped_degenerate", str(report.skipped_degenerate)),
        ("unresolved_phi", str(report.unresolved_phi)),
        ("aligned_pairs", str(report.aligned_pairs)),
        ("straddling_pairs", str(report.straddling_pairs)),
        ("phi_ratio_sup", format_real(report.phi_ratio_sup)),
        ("phi_ratio_sup_aligned", format_real(report.phi_ratio_sup_aligned)),
        ("psi_ratio_min", format_real(report.psi_ratio_min)),
        ("psi_ratio_max", format_real(report.psi_ratio_max)),
        ("mixed_case_pairs", str(report.mixed_case_pairs)),
    ]
    if report.trend is not None:
        rows += [(f"trend_max_abs_slope_r={r:g}", format_real(s)) for r, s in report.trend.max_abs_slope]
    return render_rows(["metric", "value"], rows, run.format)
