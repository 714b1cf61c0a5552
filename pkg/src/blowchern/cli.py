"""Command-line client for the verification and computation service.

The client is thin: every command builds a request, sends it to the
FastAPI application (in-process by default, or to a running server via
--server), and formats the response.  Results go to standard out,
diagnostics to standard error.  Exit codes: 0 success (and, for verify,
every check passed), 1 a check failed, 2 configuration or input error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

import httpx

from .blowup import BlowupError
from .service import create_app
from .service.app import validate_expand
from .service.schemas import FORMULAS, ReportModel

DEFAULT_MAX_CODIM = 6
DEFAULT_PORT = 8437


class CliError(Exception):
    """Invalid configuration or unusable input; maps to exit code 2."""


@dataclass
class CliConfig:
    """Everything one invocation needs, validated before any computation."""

    command: str
    max_codim: int = DEFAULT_MAX_CODIM
    max_rank: Optional[int] = None
    scenario_path: Optional[str] = None
    formula: Optional[str] = None
    codim: Optional[int] = None
    excess: int = 0
    format: str = "text"
    max_degree: Optional[int] = None
    server: Optional[str] = None
    host: str = "127.0.0.1"
    port: int = DEFAULT_PORT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowchern",
        description=(
            "Exact blow-up Chern class engine: verify the operator "
            "identities, compute concrete scenarios, expand formulas."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="send requests to a running service instead of computing in-process",
    )
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify", parents=[common], help="run the verification battery"
    )
    verify.add_argument(
        "--max-codim",
        type=int,
        default=DEFAULT_MAX_CODIM,
        help=f"largest codimension checked (default: {DEFAULT_MAX_CODIM})",
    )
    verify.add_argument(
        "--max-rank",
        type=int,
        default=None,
        help="largest ambient-bundle rank in the operator equivalences "
        "(default: max-codim + 3)",
    )

    compute = sub.add_parser(
        "compute", parents=[common], help="blow-up invariants of one scenario"
    )
    compute.add_argument(
        "--scenario",
        dest="scenario_path",
        required=True,
        metavar="FILE",
        help="path to a scenario JSON document",
    )

    expand = sub.add_parser(
        "expand", parents=[common], help="print one formula's expansion"
    )
    expand.add_argument("--formula", choices=FORMULAS, required=True)
    expand.add_argument("--codim", type=int, required=True)
    expand.add_argument("--excess", type=int, default=0)
    expand.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="truncation degree (default: 2*codim + 2)",
    )

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    cfg = CliConfig(command=args.command)
    for name in (
        "max_codim",
        "max_rank",
        "scenario_path",
        "formula",
        "codim",
        "excess",
        "format",
        "max_degree",
        "server",
        "host",
        "port",
    ):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if cfg.command == "verify":
        if cfg.max_codim < 1:
            raise CliError("max-codim must be at least 1")
        if cfg.max_rank is not None and cfg.max_rank < 1:
            raise CliError("max-rank must be at least 1")
    if cfg.command == "expand":
        try:
            validate_expand(cfg.formula, cfg.codim, cfg.excess, cfg.max_degree)
        except BlowupError as exc:
            raise CliError(str(exc)) from None
    return cfg


# ---------------------------------------------------------------------------
# service transport
# ---------------------------------------------------------------------------


def _request(cfg: CliConfig, path: str, payload: dict) -> Tuple[int, object]:
    """POST one request, in-process unless a server URL is configured."""

    async def go() -> Tuple[int, object]:
        if cfg.server:
            async with httpx.AsyncClient(base_url=cfg.server, timeout=300.0) as client:
                response = await client.post(path, json=payload)
                return response.status_code, response.json()
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://blowchern.internal"
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    try:
        return asyncio.run(go())
    except httpx.HTTPError as exc:
        raise CliError(f"service request failed: {exc}") from None


def _detail(data: object) -> str:
    if isinstance(data, dict) and "detail" in data:
        detail = data["detail"]
        return detail if isinstance(detail, str) else json.dumps(detail)
    return json.dumps(data)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def run_verify(cfg: CliConfig) -> int:
    payload = {"max_codim": cfg.max_codim, "max_rank": cfg.max_rank}
    status, data = _request(cfg, "/verify", payload)
    if status != 200:
        print(f"error: {_detail(data)}", file=sys.stderr)
        return 2
    reports = [ReportModel.model_validate(r) for r in data["reports"]]
    if cfg.format == "json":
        print(json.dumps([r.model_dump(by_alias=True) for r in reports], indent=2))
    else:
        for report in reports:
            print(report.to_report().to_text())
        passed = sum(1 for r in reports if r.passed)
        print(f"{passed}/{len(reports)} checks passed")
    return 0 if data["all_pass"] else 1


def run_compute(cfg: CliConfig) -> int:
    try:
        with open(cfg.scenario_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read scenario file: {exc}", file=sys.stderr)
        return 2
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        print(
            f"error: {cfg.scenario_path} is not valid JSON: {exc}",
            file=sys.stderr,
        )
        return 2
    status, data = _request(cfg, "/compute", {"scenario": document})
    if status != 200:
        print(f"error: {_detail(data)}", file=sys.stderr)
        return 2
    if cfg.format == "json":
        print(json.dumps(data, indent=2))
    else:
        label = data["label"] or "(unlabeled)"
        print(f"scenario: {label} (P^{data['ambient_dim']}, codim {data['codim']})")
        print("c(T) pair form:")
        print(f"  y: {data['y_part']}")
        print(f"  x: {data['x_part']}")
        print(f"pushforward = {data['pushforward']}")
        print(f"restriction = {data['restriction']}")
        print(f"chi = {data['chi']}")
        print(ReportModel.model_validate(data["euler"]).to_report().to_text())
    return 0 if data["euler"]["pass"] else 1


def run_expand(cfg: CliConfig) -> int:
    payload = {
        "formula": cfg.formula,
        "codim": cfg.codim,
        "excess": cfg.excess,
        "max_degree": cfg.max_degree,
    }
    status, data = _request(cfg, "/expand", payload)
    if status != 200:
        print(f"error: {_detail(data)}", file=sys.stderr)
        return 2
    if cfg.format == "json":
        print(json.dumps(data, indent=2))
    else:
        for line in data["lines"]:
            print(line)
    return 0


def run_serve(cfg: CliConfig) -> int:
    import uvicorn

    uvicorn.run(create_app(), host=cfg.host, port=cfg.port)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.command == "verify":
            return run_verify(cfg)
        if cfg.command == "compute":
            return run_compute(cfg)
        if cfg.command == "expand":
            return run_expand(cfg)
        if cfg.command == "serve":
            return run_serve(cfg)
        raise CliError(f"unknown command {cfg.command!r}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
