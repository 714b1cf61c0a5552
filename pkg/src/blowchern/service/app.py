"""FastAPI application wrapping the verification and computation engine.

The service is stateless: every request builds its contexts from scratch
and answers from exact rational arithmetic.  Invalid parameters map to
422 responses whose detail carries the engine's own message; report
lists are emitted in a fixed deterministic order.
"""

from __future__ import annotations

from typing import List, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..blowup import (
    BlowupError,
    TwistedOperator,
    VerificationReport,
    bl_restrict,
    difflp_context,
    difflp_operator,
    main_normal_chern,
    newnormal_chern,
    oldrec_operator,
    porteous_alpha,
    simlem_operator,
    universal_context,
    verify_difflp_equals_porteous,
    verify_newnormal_extremes,
    verify_oldrec_equals_porteous,
    verify_pushforward_identity,
    verify_restriction_identity,
)
from ..bundles import BundleClass
from ..chowring import ChowError, RingPresentation
from ..geometry import (
    CATALOG,
    blowup_total_chern,
    difflp_agreement_check,
    euler_identity_check,
    scenario_from_dict,
    simlem_agreement_check,
)
from ..gradedpoly import VarTable
from .schemas import (
    ComputeRequest,
    ComputeResponse,
    ExpandRequest,
    ExpandResponse,
    HealthResponse,
    ReportModel,
    VerifyRequest,
    VerifyResponse,
)

SIMLEM_CASES = 20
NEWNORMAL_EXCESS = (0, 1, 2)


def run_suite(max_codim: int = 6, max_rank: Optional[int] = None) -> List[VerificationReport]:
    """The full verification battery, in deterministic order.

    Universal pushforward/restriction identities for every codimension up
    to max_codim; the operator equivalences (tautological-restriction and
    divisor-exchange forms against the classical correction class, ambient
    rank up to min(max_rank, d+3)); proper-transform extremes; the
    concrete catalog's Euler and divisor-exchange checks; and the random
    agreement of the two normal-bundle routes.
    """
    if max_codim < 1:
        raise BlowupError("max_codim must be at least 1")
    if max_rank is None:
        max_rank = max_codim + 3
    if max_rank < 1:
        raise BlowupError("max_rank must be at least 1")
    reports: List[VerificationReport] = []
    for d in range(1, max_codim + 1):
        reports.append(verify_pushforward_identity(d))
        reports.append(verify_restriction_identity(d))
    for d in range(1, max_codim + 1):
        for rank in range(d, min(d + 3, max_rank) + 1):
            reports.append(verify_oldrec_equals_porteous(d, rank))
    for d in range(1, max_codim + 1):
        reports.append(verify_difflp_equals_porteous(d))
    for dprime in range(0, max_codim + 1):
        for e in NEWNORMAL_EXCESS:
            reports.append(verify_newnormal_extremes(dprime, e))
    for s in CATALOG:
        reports.append(euler_identity_check(s))
        reports.append(difflp_agreement_check(s))
    for d in range(1, min(max_codim, 5) + 1):
        reports.append(simlem_agreement_check(d, cases=SIMLEM_CASES))
    return reports


def _formal_pair_ring(codim: int, excess: int) -> RingPresentation:
    """A free ring carrying n_1..n_codim and q_1..q_excess (never empty)."""
    entries = [(f"n{i}", i) for i in range(1, codim + 1)]
    entries += [(f"q{j}", j) for j in range(1, excess + 1)]
    if not entries:
        entries = [("_t", 1)]
    return RingPresentation(VarTable(entries))


def _formal_bundle(ring: RingPresentation, prefix: str, rank: int) -> BundleClass:
    comps = (ring.one(),) + tuple(ring.var(f"{prefix}{i}") for i in range(1, rank + 1))
    return BundleClass(rank, comps)


def validate_expand(formula: str, codim: int, excess: int, max_degree: Optional[int]) -> None:
    """Reject unsupported (formula, parameter) combinations."""
    if formula in ("porteous", "oldrec", "difflp") and excess != 0:
        raise BlowupError(f"formula {formula!r} takes no excess bundle")
    if excess < 0:
        raise BlowupError("excess must be nonnegative")
    min_codim = 0 if formula == "newnormal" else 1
    if codim < min_codim:
        raise BlowupError(f"formula {formula!r} needs codim >= {min_codim}")
    if max_degree is not None and max_degree < 0:
        raise BlowupError("max-degree must be nonnegative")


def expand_lines(
    formula: str, codim: int, excess: int, max_degree: Optional[int]
) -> tuple:
    """Canonical printout of one formula at one (codim, excess).

    Returns (effective truncation degree, lines).  The correction class
    and the divisor-exchange factor print in reduced form; the operator
    formulas print their raw z-free and z-positive parts.
    """
    validate_expand(formula, codim, excess, max_degree)
    dmax = max_degree if max_degree is not None else 2 * codim + 2

    if formula == "porteous":
        ctx = universal_context(codim, dmax=dmax)
        return dmax, [f"alpha = {porteous_alpha(ctx).value}"]
    if formula == "difflp":
        ctx = difflp_context(codim, dmax=dmax)
        zs = [ctx.ringY.var(f"Z{i}") for i in range(1, codim + 1)]
        op = difflp_operator(ctx, zs)
        return dmax, [str(ctx.xt_class(op.expr).value)]

    op: TwistedOperator
    if formula == "oldrec":
        ctx = universal_context(codim, dmax=dmax)
        op = oldrec_operator(ctx)
    elif formula == "main":
        ctx = universal_context(codim, e_excess=excess, dmax=dmax)
        op = main_normal_chern(ctx, _formal_bundle(ctx.ringX, "q", excess))
    elif formula == "simlem":
        ctx = universal_context(codim, e_excess=excess, dmax=dmax)
        Nhat = _formal_bundle(ctx.ringY, "n", codim)
        Chat = _formal_bundle(ctx.ringY, "q", excess)
        op = simlem_operator(Nhat, Chat, ctx)
    elif formula == "newnormal":
        ring = _formal_pair_ring(codim, excess)
        NXW = _formal_bundle(ring, "n", codim)
        C = _formal_bundle(ring, "q", excess)
        op = newnormal_chern(NXW, C)
    else:  # pragma: no cover - schema restricts the names
        raise BlowupError(f"unknown formula {formula!r}")
    return dmax, [f"F0 = {op.f0}", f"F+ = {op.fplus}"]


def create_app() -> FastAPI:
    app = FastAPI(
        title="blowchern",
        version=__version__,
        description="Exact blow-up Chern class computations over the rationals.",
    )

    @app.exception_handler(ChowError)
    async def _chow_error(request: Request, exc: ChowError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        max_rank = req.max_rank if req.max_rank is not None else req.max_codim + 3
        reports = run_suite(req.max_codim, max_rank)
        models = [ReportModel.from_report(r) for r in reports]
        return VerifyResponse(
            max_codim=req.max_codim,
            max_rank=max_rank,
            all_pass=all(m.passed for m in models),
            reports=models,
        )

    @app.post("/compute", response_model=ComputeResponse)
    def compute(req: ComputeRequest) -> ComputeResponse:
        s = scenario_from_dict(req.scenario)
        total, pushed, chi = blowup_total_chern(s)
        euler = euler_identity_check(s)
        return ComputeResponse(
            label=s.label,
            ambient_dim=s.ambient_dim,
            codim=s.codim,
            y_part=str(total.y_part.value),
            x_part=str(total.x_part.value),
            pushforward=str(pushed.value),
            restriction=str(bl_restrict(total).value),
            chi=str(chi),
            euler=ReportModel.from_report(euler),
        )

    @app.post("/expand", response_model=ExpandResponse)
    def expand(req: ExpandRequest) -> ExpandResponse:
        dmax, lines = expand_lines(req.formula, req.codim, req.excess, req.max_degree)
        return ExpandResponse(
            formula=req.formula,
            codim=req.codim,
            excess=req.excess,
            max_degree=dmax,
            lines=lines,
        )

    return app
