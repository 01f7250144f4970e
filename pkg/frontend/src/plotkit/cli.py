"""plotkit command line: render figures from the laboratory's CSV outputs.

Exit codes: 0 success, 1 usage error or schema mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import RENDERERS, render
from .schemas import SchemaError


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plotkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one figure from one CSV file")
    r.add_argument("--kind", required=True, choices=sorted(RENDERERS))
    r.add_argument("--in", dest="in_path", required=True, type=Path)
    r.add_argument("--out", dest="out_path", required=True, type=Path)
    return p


def dispatch(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        args.out_path.parent.mkdir(parents=True, exist_ok=True)
        render(args.kind, args.in_path, args.out_path)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch())
