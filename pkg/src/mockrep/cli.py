"""Command-line client.

Thin wrapper over the service handlers: parses arguments into the shared
configuration models, runs the command (in process by default, or against a
running service with --server), writes the JSON report and exits with

    0  every checked criterion passed,
    1  a criterion failed,
    2  configuration or usage error.

Set MOCKREP_THREADS to cap the worker count of the compute kernels.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from pydantic import ValidationError

from .errors import MockrepError, ParameterError, PreconditionError
from .reporting import dump_report

COMMANDS = ("validate", "classify", "coarea", "transform", "energy",
            "reproduce", "admissible")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mockrep",
        description="Voice transforms and admissibility checks for "
                    "semidirect-product systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--system", help="system identifier")
        p.add_argument("--gamma", type=float, default=None,
                       help="shear system parameter")
        p.add_argument("--config", default=None,
                       help="JSON configuration document")
        p.add_argument("--out", default=None, help="report output path")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--server", default=None,
                       help="base URL of a running service; runs remotely")

    for name in COMMANDS:
        p = sub.add_parser(name)
        common(p)
        if name in ("transform", "energy", "reproduce"):
            p.add_argument("--f", dest="f_name", default=None,
                           help="test-field constructor name")
            p.add_argument("--eta", dest="eta_name", default=None,
                           help="analyzing-vector constructor name")
        if name == "admissible":
            p.add_argument("--eta", dest="eta_name", default=None)
        if name == "coarea":
            p.add_argument("--f", dest="f_name", default=None)
            p.add_argument("--y-resolution", type=int, default=None)
            p.add_argument("--angular-resolution", type=int, default=None)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _assemble_config(args) -> dict:
    cfg: dict = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    if args.system:
        cfg["system"] = args.system
    if args.gamma is not None:
        cfg.setdefault("params", {})["gamma"] = args.gamma
    if args.seed is not None:
        cfg["seed"] = args.seed
    if getattr(args, "f_name", None):
        cfg["f"] = {"name": args.f_name}
    if getattr(args, "eta_name", None):
        cfg["eta"] = {"name": args.eta_name}
    if getattr(args, "y_resolution", None):
        cfg["y_resolution"] = args.y_resolution
    if getattr(args, "angular_resolution", None):
        cfg["angular_resolution"] = args.angular_resolution
    if args.command == "transform" and args.out:
        cfg["out"] = args.out
    if "system" not in cfg:
        raise ParameterError("missing system: pass --system or a config file")
    return cfg


def _run_remote(server: str, command: str, cfg: dict) -> dict:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/{command}", json=cfg, timeout=None)
    if resp.status_code == 422:
        raise ParameterError(resp.text)
    resp.raise_for_status()
    return resp.json()


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        cfg = _assemble_config(args)
        if args.server:
            result = _run_remote(args.server, args.command, cfg)
            report, exit_code = result["report"], int(result["exit_code"])
        else:
            from .service.handlers import HANDLERS

            model, handler = HANDLERS[args.command]
            result = handler(model(**cfg))
            report, exit_code = result.report, result.exit_code
    except (ValidationError, ParameterError, PreconditionError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=_sys.stderr)
        return 2
    except MockrepError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2

    out = args.out if args.command != "transform" else None
    text = dump_report(report, out)
    print(text)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
