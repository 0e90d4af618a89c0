"""Command-line front end.

    homotopy-calc <command> [--input FILE | --input-dir DIR] [--json]
                  [--method auto|thm-main|thm-pi2|both] [--oracle] [--stable]

Exit codes: 0 success, 2 hypothesis gate failed, 3 invalid input,
4 internal cross-check disagreement.  Output is deterministic; --stable
drops the timing field so --json output is byte-reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import api


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homotopy-calc",
        description="Exact homotopy invariants of complex homogeneous spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in api.COMMANDS:
        p = sub.add_parser(command)
        if command != "catalog-list":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--input", type=Path, help="input JSON document")
            src.add_argument("--input-dir", type=Path, help="directory of input documents")
        p.add_argument("--json", action="store_true", help="emit the JSON output document")
        p.add_argument(
            "--method",
            choices=api.METHODS,
            default="auto",
            help="fundamental-group route (pi1/all only)",
        )
        p.add_argument("--oracle", action="store_true", help="cross-check with the second route")
        p.add_argument("--stable", action="store_true", help="omit timing for byte-stable output")
    return parser


def _load(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        return None, f"cannot read {path}: {exc}"
    try:
        return json.loads(text), None
    except json.JSONDecodeError as exc:
        return None, f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}"


def _run_one(args, doc) -> tuple[dict, str]:
    started = time.perf_counter()
    out, status = api.run_command(args.command, doc, method=args.method, oracle=args.oracle)
    if not args.stable:
        out["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return out, status


def _emit(args, out: dict, prefix: dict | None = None) -> None:
    if args.json:
        doc = dict(prefix or {}, **out) if prefix else out
        print(api.render_json(doc, stable=args.stable))
    else:
        if prefix:
            print(f"== {prefix['file']}")
        text = api.render_pretty(out)
        stream = sys.stderr if "error" in out and not args.json else sys.stdout
        print(text, file=stream)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog-list":
        out, status = _run_one(args, None)
        _emit(args, out)
        return api.EXIT_CODES[status]
    if args.input is not None:
        doc, problem = _load(args.input)
        if problem is not None:
            print(problem, file=sys.stderr)
            return api.EXIT_CODES["invalid"]
        out, status = _run_one(args, doc)
        _emit(args, out)
        return api.EXIT_CODES[status]
    directory = args.input_dir
    if not directory.is_dir():
        print(f"not a directory: {directory}", file=sys.stderr)
        return api.EXIT_CODES["invalid"]
    worst = 0
    for path in sorted(directory.glob("*.json")):
        doc, problem = _load(path)
        if problem is not None:
            print(problem, file=sys.stderr)
            worst = max(worst, api.EXIT_CODES["invalid"])
            continue
        out, status = _run_one(args, doc)
        _emit(args, out, prefix={"file": path.name})
        worst = max(worst, api.EXIT_CODES[status])
    return worst


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
