"""Command-line client for the campaign service.

The CLI is a thin HTTP client: without --server it mounts the FastAPI app
in-process and speaks to it over an ASGI transport, so the same request and
response models are exercised either way. Exit codes: 0 all checks passed,
1 campaign assertion failure, 2 config or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

from . import __version__
from .campaigns import CAMPAIGN_NAMES

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schur-asymptotics",
        description="Run Schur polynomial verification campaigns",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in CAMPAIGN_NAMES:
        p = sub.add_parser(name, help=f"run the {name} campaign")
        p.add_argument("--config", required=True, help="path to the campaign config JSON")
        p.add_argument("--out", default=None, help="output file (default: config 'out' or stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--jobs", type=int, default=1, help="parallel rows (default 1)")
        p.add_argument("--server", default=None, help="remote service base URL (default: in-process)")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    from .service import app

    return httpx.Client(
        transport=httpx.ASGITransport(app=app), base_url="http://service", timeout=None
    )


def _run_campaign(args) -> int:
    try:
        config_data = json.loads(Path(args.config).read_text())
    except OSError as exc:
        print(f"config error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"config error: {args.config} is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    request = {"config": config_data, "format": args.format, "jobs": args.jobs}
    try:
        with _client(args.server) as client:
            response = client.post(f"/campaigns/{args.command}", json=request)
    except httpx.HTTPError as exc:
        print(f"service error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if response.status_code in (400, 422):
        print(f"config error: {response.json().get('detail')}", file=sys.stderr)
        return EXIT_CONFIG
    if response.status_code != 200:
        print(f"service error: HTTP {response.status_code}: {response.text}", file=sys.stderr)
        return EXIT_CONFIG

    body = response.json()
    out_path = args.out or (config_data.get("out") if isinstance(config_data, dict) else None)
    if out_path:
        Path(out_path).write_text(body["output"])
        print(f"{body['campaign']}: {'PASS' if body['passed'] else 'FAIL'} -> {out_path}")
    else:
        sys.stdout.write(body["output"])
    return EXIT_OK if body["passed"] else EXIT_FAILED


def _serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the config-error code
        return int(exc.code) if exc.code else EXIT_OK
    if args.command == "serve":
        return _serve(args)
    return _run_campaign(args)


if __name__ == "__main__":
    sys.exit(main())
