"""Command-line front end.

    orehermite hermite -i A.txt --emit-u --report
    orehermite gcrd "D^2" "D" --ring differential

Exit status: 0 ok, 1 parse or usage error, 2 computation error or failed
verification, 3 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .detform import ddet_degree, ddet_degree_ore, embed, is_unimodular
from .euclid import gcrd_ext
from .hermite import HermitePair, hermite, hermite_naive, verify_hermite
from .matrix import OreMatrix
from .scalar import NEG_INF
from .textio import ParseError, format_matrix, parse_matrices, parse_orepoly, parse_poly_list, parse_ring

EXIT_OK, EXIT_PARSE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3

VERBS = ("hermite", "hermite-naive", "gcrd", "lclm", "ddet-degree", "unimodular", "verify")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orehermite", description="Hermite forms of Ore polynomial matrices.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("polys", nargs="*", metavar="POLY",
                   help="polynomial literals for gcrd/lclm (instead of an input file)")
    p.add_argument("-i", "--input", default="-", help="input file, '-' for stdin (default)")
    p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout (default)")
    p.add_argument("--ring", help="ring for literal polynomials, e.g. 'differential' or 'qshift q=2'")
    p.add_argument("--emit-u", action="store_true", help="also print the unimodular multiplier U")
    p.add_argument("--report", action="store_true", help="append a verification report")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.add_argument("--oracle", action="store_true", help="use naive elimination for hermite")
    p.add_argument("--cross-check", action="store_true",
                   help="run both algorithms and fail with status 3 if they disagree")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _bool(x) -> str:
    return "na" if x is None else str(bool(x)).lower()


def _deg(x) -> str:
    return "-inf" if x == NEG_INF else str(x)


def _matrix_kv(name: str, M: OreMatrix) -> list:
    out = [f"{name}.rows = {M.nrows}", f"{name}.cols = {M.ncols}"]
    for i, row in enumerate(M.rows, 1):
        for j, e in enumerate(row, 1):
            out.append(f"{name}[{i},{j}] = {e}")
    return out


def _report_lines(A: OreMatrix, pair: HermitePair) -> list:
    rep = verify_hermite(A, pair.H, pair.U)
    lines = [
        f"rank = {rep.rank}",
        "diag_degrees = " + " ".join(str(d) for d in rep.diag_degrees),
        f"verified = {_bool(rep.ok)}",
    ]
    lines += [f"check.{k} = {_bool(v)}" for k, v in rep.checks.items()]
    return lines


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list = []

    def matrix(self, name: str, M: OreMatrix):
        if self.fmt == "kv":
            self.lines += _matrix_kv(name, M)
        else:
            self.lines.append(f"# {name}")
            self.lines += format_matrix(M).splitlines()

    def kv(self, pairs):
        # in text mode key-value lines are comments so the output stays a valid matrix file
        prefix = "" if self.fmt == "kv" else "# "
        self.lines += [prefix + s for s in pairs]

    def plain(self, text: str):
        self.lines.append(text)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _two_polys(args, text_source):
    ring = parse_ring("ring " + args.ring, None) if args.ring else None
    if args.polys:
        if ring is None:
            raise UsageError("literal polynomials need --ring")
        polys = [parse_orepoly(s, ring, None) for s in args.polys]
    else:
        ring, polys = parse_poly_list(text_source(), ring)
    if len(polys) != 2:
        raise UsageError(f"{args.verb} needs exactly two polynomials, got {len(polys)}")
    return polys


def _one_matrix(args, text_source) -> OreMatrix:
    ring = parse_ring("ring " + args.ring, None) if args.ring else None
    mats = parse_matrices(text_source(), ring)
    if len(mats) != 1:
        raise UsageError(f"{args.verb} needs one matrix block, got {len(mats)}")
    return mats[0]


def _check_flags(args):
    if args.emit_u and args.verb not in ("hermite", "hermite-naive"):
        raise UsageError("--emit-u only applies to hermite and hermite-naive")
    if args.report and args.verb not in ("hermite", "hermite-naive"):
        raise UsageError("--report only applies to hermite and hermite-naive")
    if args.oracle and args.verb != "hermite":
        raise UsageError("--oracle only applies to hermite")
    if args.cross_check and args.verb not in ("hermite", "ddet-degree"):
        raise UsageError("--cross-check only applies to hermite and ddet-degree")
    if args.polys and args.verb not in ("gcrd", "lclm"):
        raise UsageError(f"{args.verb} takes no positional polynomials")


def run(args, text_source) -> tuple:
    """Dispatch one command; returns (exit status, output text, diagnostic or None)."""
    _check_flags(args)
    out = _Out(args.format)
    status, diag = EXIT_OK, None
    verb = args.verb

    if verb in ("hermite", "hermite-naive"):
        A = _one_matrix(args, text_source)
        if verb == "hermite-naive" or args.oracle:
            pair = hermite_naive(A)[0]
        else:
            pair = hermite(A)
        if args.cross_check:
            other = hermite_naive(A)[0]
            if other.H != pair.H or other.U != pair.U:
                status, diag = EXIT_MISMATCH, "cross-check mismatch between linear-system and naive Hermite forms"
        out.matrix("H", pair.H)
        if args.emit_u:
            out.matrix("U", pair.U)
        if args.report:
            out.kv(_report_lines(A, pair))

    elif verb in ("gcrd", "lclm"):
        a, b = _two_polys(args, text_source)
        cert = gcrd_ext(a, b)
        if verb == "gcrd":
            # u*a + v*b = gcrd, s*a + t*b = 0
            lines = [f"gcrd = {cert.g}", f"u = {cert.u}", f"v = {cert.v}", f"s = {cert.s}", f"t = {cert.t}"]
        else:
            if a.is_zero() or b.is_zero():
                raise ArithmeticError("lclm of a zero polynomial")
            # s*a = -t*b = lclm
            lines = [f"lclm = {cert.s * a}", f"s = {cert.s}", f"t = {cert.t}"]
        out.lines += lines

    elif verb == "ddet-degree":
        A = _one_matrix(args, text_source)
        deg = ddet_degree_ore(A)
        if args.cross_check:
            other = ddet_degree(embed(A))
            if other != deg:
                status, diag = EXIT_MISMATCH, f"cross-check mismatch: ring elimination {_deg(deg)}, skew-field pivots {_deg(other)}"
        out.plain(f"ddet_degree = {_deg(deg)}" if args.format == "kv" else _deg(deg))

    elif verb == "unimodular":
        A = _one_matrix(args, text_source)
        val = _bool(is_unimodular(A))
        out.plain(f"unimodular = {val}" if args.format == "kv" else val)

    elif verb == "verify":
        ring = parse_ring("ring " + args.ring, None) if args.ring else None
        mats = parse_matrices(text_source(), ring)
        if len(mats) != 3:
            raise UsageError(f"verify needs three matrix blocks (A, H, U), got {len(mats)}")
        A, H, U = mats
        rep = verify_hermite(A, H, U)
        out.plain(f"verified = {_bool(rep.ok)}")
        out.lines += [f"check.{k} = {_bool(v)}" for k, v in rep.checks.items()]
        if not rep.ok:
            status, diag = EXIT_COMPUTE, "verification failed: " + ", ".join(rep.failed())

    return status, out.text(), diag


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except UsageError as exc:
        print(f"orehermite: {exc}", file=sys.stderr)
        return EXIT_PARSE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        status, text, diag = run(args, lambda: _read(args.input))
    except (ParseError, UsageError, OSError, UnicodeDecodeError) as exc:
        print(f"orehermite: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ArithmeticError, ValueError) as exc:
        print(f"orehermite: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if diag:
        print(f"orehermite: {diag}", file=sys.stderr)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
