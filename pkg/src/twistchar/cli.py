"""Command-line client for the twistchar service.

Every subcommand builds a request model and sends it through the FastAPI
app, in-process by default (no server needed) or to a remote instance via
--server-url.  Exit codes: 0 success or all checks pass, 1 a verification
check failed, 2 usage or precondition error, 3 insufficient precision.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
import tempfile
from typing import Any

import httpx

from .rational import RationalFormatError, parse_rational

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


def _client(server_url: str | None) -> httpx.AsyncClient:
    if server_url:
        return httpx.AsyncClient(base_url=server_url, timeout=600.0)
    from .service.app import app

    transport = httpx.ASGITransport(app=app)
    return httpx.AsyncClient(
        transport=transport, base_url="http://twistchar.local", timeout=None
    )


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _check_rational(text: str, name: str) -> str | None:
    try:
        value = parse_rational(text)
    except RationalFormatError:
        return f"{name} must be an exact rational 'p', '-p' or 'p/q', got {text!r}"
    if value < 0:
        return f"{name} must be nonnegative, got {text!r}"
    return None


def _write_output(payload: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".twistchar-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(payload)
        os.replace(tmp_path, out)
    except BaseException:
        os.unlink(tmp_path)
        raise


def _post(server_url: str | None, path: str, body: dict) -> tuple[int, Any]:
    async def run() -> tuple[int, Any]:
        async with _client(server_url) as client:
            response = await client.post(path, json=body)
            if response.status_code >= 400:
                print(f"error: {_error_detail(response)}", file=sys.stderr)
                return EXIT_USAGE, None
            return EXIT_OK, response.json()

    return asyncio.run(run())


def _error_detail(response: httpx.Response) -> str:
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        return response.text
    if isinstance(detail, list):
        # Pydantic validation errors: compress to field: message pairs.
        parts = []
        for item in detail:
            loc = ".".join(str(x) for x in item.get("loc", []) if x != "body")
            parts.append(f"{loc}: {item.get('msg', 'invalid')}")
        return "; ".join(parts)
    return str(detail)


def _post_stream(server_url: str | None, path: str, body: dict) -> tuple[int, list[str]]:
    async def run() -> tuple[int, list[str]]:
        async with _client(server_url) as client:
            async with client.stream("POST", path, json=body) as response:
                if response.status_code >= 400:
                    await response.aread()
                    print(f"error: {response.text}", file=sys.stderr)
                    return EXIT_USAGE, []
                lines = []
                async for line in response.aiter_lines():
                    if line:
                        lines.append(line)
                return EXIT_OK, lines

    return asyncio.run(run())


def _datum_text(data: dict) -> str:
    lines = [
        f"series {data['series']}  twisted rank {data['rank']}  "
        f"rank(g) {data['rk_g']}  j-node {data['j_node']}",
        "nu: " + " ".join(str(v) for v in data["nu"]),
        "mu: (" + ", ".join(data["mu"]) + ")",
        "gram0:",
    ]
    for row in data["gram0"]:
        lines.append("  [" + ", ".join(f"{v:>5}" for v in row) + "]")
    lines.append("gamma: (" + ", ".join(data["gamma"]) + ")")
    lines.append("positive-root orbits (projection : halfnorm : size):")
    for orbit in data["orbits"]:
        a = ",".join(str(v) for v in orbit["a"])
        lines.append(f"  ({a}) : {orbit['halfnorm']} : {orbit['size']}")
    return "\n".join(lines)


def _series_text(data: dict) -> str:
    meta = data["meta"]
    lines = [
        f"object {meta['object']}  series {meta['series']}  rank {meta['rank']}  "
        f"k0 {meta['k0']}  kj {meta['kj']}  qmax {meta['qmax']}  "
        f"denominator {meta['denominator']}",
        f"terms: {len(data['terms'])}",
    ]
    for term in data["terms"]:
        ys = " ".join(term["y"])
        lines.append(f"  q {term['q']:>8}   y ({ys})   c {term['c']}")
    return "\n".join(lines)


def _report_text(report: dict) -> str:
    params = " ".join(f"{k}={v}" for k, v in report["parameters"].items())
    line = (
        f"{report['status'].upper():<8} {report['check']:<14} {params} "
        f"({report['terms_compared']} terms, {report['elapsed_seconds']}s)"
    )
    if report["witness"] is not None:
        w = report["witness"]
        line += (
            f"  witness q={w['q']} y=({','.join(w['y'])}) "
            f"lhs={w['lhs']} rhs={w['rhs']}"
        )
    return line


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistchar",
        description="Exact characters and quasi-particle bases for twisted "
        "series A and D.",
    )
    parser.add_argument(
        "--server-url",
        default=None,
        help="send requests to a running service instead of in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, weights: bool = True) -> None:
        p.add_argument("--series", choices=("A", "D"), required=True)
        p.add_argument("--rank", type=int, required=True, help="twisted rank l >= 2")
        if weights:
            p.add_argument("--k0", type=int, default=1)
            p.add_argument("--kj", type=int, default=0)
        p.add_argument("--out", default=None, help="write JSON atomically to a file")

    p_datum = sub.add_parser("datum", help="print the folded root datum")
    common(p_datum, weights=False)
    p_datum.add_argument("--format", choices=("text", "json"), default="text")

    p_char = sub.add_parser("char", help="evaluate a character series")
    common(p_char)
    p_char.add_argument(
        "--object",
        required=True,
        choices=("psp-std", "psp-verma", "product", "std", "vacuum", "para"),
    )
    p_char.add_argument("--qmax", required=True)
    p_char.add_argument(
        "--method", choices=("formula", "enumerate"), default="formula"
    )
    p_char.add_argument("--track-colors", action="store_true")
    p_char.add_argument("--format", choices=("text", "json"), default="text")

    p_enum = sub.add_parser(
        "enumerate", help="stream basis monomials as JSON lines"
    )
    common(p_enum)
    p_enum.add_argument("--kind", choices=("standard", "verma"), default="standard")
    p_enum.add_argument(
        "--cap", type=int, default=None, help="charge cap (default: level for standard)"
    )
    p_enum.add_argument("--qmax", required=True)

    p_verify = sub.add_parser("verify", help="run named identity checks")
    p_verify.add_argument(
        "--check",
        required=True,
        choices=(
            "corollary",
            "psp",
            "verma",
            "para",
            "para-examples",
            "minsum",
            "level-one",
            "all",
        ),
    )
    p_verify.add_argument("--series", choices=("A", "D"), default=None)
    p_verify.add_argument("--rank", type=int, default=None)
    p_verify.add_argument("--k0", type=int, default=None)
    p_verify.add_argument("--kj", type=int, default=None)
    p_verify.add_argument("--qmax", default=None)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--trials", type=int, default=500)
    p_verify.add_argument(
        "--all-roots",
        action="store_true",
        help="negative control: per-root product instead of per-orbit",
    )
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--out", default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _cmd_datum(args: argparse.Namespace) -> int:
    code, data = _post(
        args.server_url, "/datum", {"series": args.series, "rank": args.rank}
    )
    if code:
        return code
    if args.format == "json":
        _write_output(json.dumps(data, indent=2, sort_keys=True), args.out)
    else:
        _write_output(_datum_text(data), args.out)
    return EXIT_OK


def _cmd_char(args: argparse.Namespace) -> int:
    problem = _check_rational(args.qmax, "--qmax")
    if problem:
        return _fail_usage(problem)
    body = {
        "series": args.series,
        "rank": args.rank,
        "k0": args.k0,
        "kj": args.kj,
        "object": args.object,
        "qmax": args.qmax,
        "method": args.method,
        "track_colors": args.track_colors,
    }
    code, data = _post(args.server_url, "/char", body)
    if code:
        return code
    if args.format == "json":
        _write_output(json.dumps(data, indent=2, sort_keys=True), args.out)
    else:
        _write_output(_series_text(data), args.out)
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    problem = _check_rational(args.qmax, "--qmax")
    if problem:
        return _fail_usage(problem)
    body = {
        "series": args.series,
        "rank": args.rank,
        "k0": args.k0,
        "kj": args.kj,
        "kind": args.kind,
        "cap": args.cap,
        "qmax": args.qmax,
    }
    code, lines = _post_stream(args.server_url, "/enumerate", body)
    if code:
        return code
    _write_output("\n".join(lines), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.qmax is not None:
        problem = _check_rational(args.qmax, "--qmax")
        if problem:
            return _fail_usage(problem)
    if args.rank is not None and args.rank < 2:
        return _fail_usage(f"invalid rank {args.rank}: twisted rank must be >= 2")
    if args.trials < 1:
        return _fail_usage("trials must be positive")
    body = {
        "check": args.check,
        "series": args.series,
        "rank": args.rank,
        "k0": args.k0,
        "kj": args.kj,
        "qmax": args.qmax,
        "seed": args.seed,
        "trials": args.trials,
        "all_roots": args.all_roots,
    }
    code, data = _post(args.server_url, "/verify", body)
    if code:
        return code
    if args.format == "json":
        _write_output(json.dumps(data, indent=2, sort_keys=True), args.out)
    else:
        lines = [_report_text(report) for report in data["reports"]]
        lines.append(f"overall: {data['overall']}")
        _write_output("\n".join(lines), args.out)
    if data["overall"] == "fail":
        return EXIT_FAIL
    if data["overall"] == "insufficient-precision":
        return EXIT_PRECISION
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    handlers = {
        "datum": _cmd_datum,
        "char": _cmd_char,
        "enumerate": _cmd_enumerate,
        "verify": _cmd_verify,
        "serve": _cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
