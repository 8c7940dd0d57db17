"""Command-line driver: nfc classify|normalize|first-level|verify."""

import argparse
import sys

from gmpy2 import mpq

from .classification import PivotError
from .driver import InputError, run
from .parser import MODES, ParseError, parse_input
from .report import emit
from .suites import SUITES, verify

EXIT_OK, EXIT_INPUT, EXIT_PIVOT, EXIT_VERIFY = 0, 1, 2, 3


def _subst(text):
    name, sep, value = text.partition("=")
    try:
        if not sep or not name.strip():
            raise ValueError
        return name.strip(), mpq(value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected name=p/q, got {text!r}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="nfc", description="Exact normal forms of double-Hopf vector fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    for cmd in ("classify", "normalize", "first-level"):
        p = sub.add_parser(cmd)
        p.add_argument("input", nargs="?", default="-", help="input file, - for stdin")
        p.add_argument("--mode", choices=MODES)
        p.add_argument("--degree", type=int, metavar="N")
        p.add_argument("--mu-degree", type=int, metavar="M")
        p.add_argument("--subst", type=_subst, action="append", default=[], metavar="name=p/q")
        p.add_argument("--format", choices=("text", "json", "latex"), default="text")
        p.add_argument("--out", metavar="FILE")
    p = sub.add_parser("verify")
    p.add_argument("suites", nargs="*", choices=SUITES + ("all",), default=["all"], metavar="SUITE",
                   help=f"one or more of {', '.join(SUITES)} (default all)")
    p.add_argument("--out", metavar="FILE")
    return ap


def _write(data: bytes, out):
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        names = SUITES if "all" in args.suites else args.suites
        results = [verify(n) for n in names]
        _write("".join(r.text() for r in results).encode(), args.out)
        return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY
    try:
        spec = parse_input(_read(args.input))
        report = run(spec, args.command, args.mode, args.degree, args.mu_degree, dict(args.subst))
    except OSError as e:
        print(f"nfc: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, InputError) as e:
        print(f"nfc: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PivotError as e:
        print(f"nfc: {args.command}: {e}", file=sys.stderr)
        return EXIT_PIVOT
    _write(emit(report, args.format), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
