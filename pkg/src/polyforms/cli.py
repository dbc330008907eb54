"""Command line front end working on ``pmat 1`` text files.

File layout::

    pmat 1
    p 7
    dims 2 3
    shift 0,0,0          (optional)
    0 0 1                (m*n entry lines, row-major, ascending coefficients)
    ...

The zero polynomial is the single token ``0``.  ``#`` starts a comment.
Column indices printed by ``pivot-support`` are 1-based.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import numpy as np

from .bases import (
    SingularMatrixError,
    VerificationError,
    approximant_basis_owp,
    minimal_kernel_basis,
    row_basis,
    weak_popov_reduce,
)
from .gfp import PrimeField
from .normalforms import (
    CompletionFailure,
    PivotSupportError,
    hermite_form,
    popov_form,
    wide_matrix_pivot_support,
)
from .polymat import (
    PolyMatrix,
    dtype_for,
    is_hermite,
    is_ordered_weak_popov,
    is_popov,
    is_reduced,
    is_weak_popov,
)
from .testkit import random_matrix

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

FORMS = {
    "reduced": is_reduced,
    "weak-popov": is_weak_popov,
    "ordered-weak-popov": is_ordered_weak_popov,
    "popov": is_popov,
    "hermite": is_hermite,
}


class MatrixFileError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line
        self.msg = msg


# ---------------------------------------------------------------------------
# text format


def _content_lines(text: str):
    for no, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body


def _ints(tokens, no: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MatrixFileError(no, f"{what}: expected integers") from None


def parse_shift(text: str, n: Optional[int] = None, line: int = 0) -> tuple:
    parts = [t for t in text.replace(" ", "").split(",") if t != ""] if text.strip() else []
    s = tuple(_ints(parts, line, "shift"))
    if n is not None and len(s) != n:
        raise MatrixFileError(line, f"shift has {len(s)} entries, expected {n}")
    return s


def parse(text: str) -> tuple[PolyMatrix, Optional[tuple]]:
    """Parse a matrix file; returns ``(matrix, shift or None)``."""
    lines = list(_content_lines(text))
    last = text.count("\n") + 1

    def header(k: int, key: str):
        if k >= len(lines):
            raise MatrixFileError(last, f"missing '{key}' header")
        no, body = lines[k]
        tok = body.split()
        if tok[0] != key:
            raise MatrixFileError(no, f"expected '{key}' header, found {tok[0]!r}")
        return no, tok[1:]

    no, rest = header(0, "pmat")
    if rest != ["1"]:
        raise MatrixFileError(no, f"unknown format version {' '.join(rest)!r}")
    no, rest = header(1, "p")
    if len(rest) != 1:
        raise MatrixFileError(no, "expected one prime")
    (p,) = _ints(rest, no, "p")
    try:
        field = PrimeField(p)
    except ValueError:
        raise MatrixFileError(no, f"{p} is not a prime") from None
    no, rest = header(2, "dims")
    if len(rest) != 2:
        raise MatrixFileError(no, "expected two dimensions")
    m, n = _ints(rest, no, "dims")
    if m < 0 or n < 0:
        raise MatrixFileError(no, "negative dimension")

    k = 3
    shift = None
    if k < len(lines) and lines[k][1].split()[0] == "shift":
        no, body = lines[k]
        shift = parse_shift(body[len("shift"):], n, no)
        k += 1

    body = lines[k:]
    if len(body) < m * n:
        raise MatrixFileError(last, f"expected {m * n} entries, found {len(body)}")
    if len(body) > m * n:
        raise MatrixFileError(body[m * n][0], f"expected {m * n} entries, found {len(body)}")
    entries = []
    for no, line in body:
        c = _ints(line.split(), no, "coefficients")
        if any(v < 0 or v >= p for v in c):
            raise MatrixFileError(no, f"coefficient outside [0, {p})")
        if c == [0]:
            c = []
        elif c and c[-1] == 0:
            raise MatrixFileError(no, "trailing zero coefficient")
        entries.append(c)
    L = max((len(c) for c in entries), default=0)
    arr = np.zeros((m, n, L), dtype=dtype_for(p))
    for idx, c in enumerate(entries):
        if c:
            arr[idx // n, idx % n, : len(c)] = c
    return PolyMatrix(field, arr), shift


def serialize(M: PolyMatrix, s: Optional[Sequence[int]] = None) -> str:
    m, n = M.shape
    out = ["pmat 1", f"p {M.field.p}", f"dims {m} {n}"]
    if s is not None:
        out.append("shift " + ",".join(str(int(v)) for v in s))
    for row in M.to_lists():
        for c in row:
            out.append(" ".join(str(v) for v in c) if c else "0")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    F, s = parse(_read(args.input))
    if getattr(args, "shift", None) is not None:
        s = parse_shift(args.shift, F.ncols, 0)
    return F, s


def cmd_popov(args) -> int:
    F, s = _load(args)
    rng = np.random.default_rng(args.seed)
    res = popov_form(F, s, strategy=args.strategy, rng=rng, max_tries=args.max_tries)
    _emit(args, serialize(res.popov, s))
    return EXIT_OK


def cmd_hermite(args) -> int:
    F, _ = _load(args)
    _emit(args, serialize(hermite_form(F).popov))
    return EXIT_OK


def cmd_pivot_support(args) -> int:
    F, s = _load(args)
    pi = wide_matrix_pivot_support(F, s)
    _emit(args, " ".join(str(j + 1) for j in pi) + "\n")
    return EXIT_OK


def cmd_kernel(args) -> int:
    F, _ = _load(args)
    B = row_basis(F) if F.nrows > F.ncols else F
    _emit(args, serialize(minimal_kernel_basis(B)))
    return EXIT_OK


def cmd_approx(args) -> int:
    F, _ = parse(_read(args.input))
    try:
        order = [int(v) for v in args.order.split(",")]
    except ValueError:
        raise MatrixFileError(0, "--order: expected comma-separated integers") from None
    if len(order) != F.ncols or any(v < 1 for v in order):
        raise MatrixFileError(0, f"--order needs {F.ncols} positive entries")
    # the basis shift indexes the rows of the input, so only the flag applies here
    s = parse_shift(args.shift, F.nrows, 0) if args.shift is not None else None
    _emit(args, serialize(approximant_basis_owp(F, order, s), s))
    return EXIT_OK


def cmd_reduce(args) -> int:
    F, s = _load(args)
    W, _ = weak_popov_reduce(F, s)
    _emit(args, serialize(W.rows(range(F.nrows - len(W.zero_rows()))), s))
    return EXIT_OK


def cmd_check(args) -> int:
    F, s = _load(args)
    ok = bool(FORMS[args.form](F, s))
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_rand(args) -> int:
    try:
        field = PrimeField(args.p)
    except ValueError as exc:
        raise MatrixFileError(0, f"--p: {exc}") from None
    if args.rows < 0 or args.cols < 0 or args.deg < 0:
        raise MatrixFileError(0, "dimensions and degree must be nonnegative")
    F = random_matrix(field, args.rows, args.cols, args.deg, np.random.default_rng(args.seed))
    _emit(args, serialize(F))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyforms", description="Normal forms of polynomial matrices over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, shift=True, inp=True):
        sp = sub.add_parser(name, help=help_)
        if inp:
            sp.add_argument("input", help="matrix file, '-' for stdin")
        if shift:
            sp.add_argument("--shift", help="comma-separated shift, overrides the file")
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("popov", cmd_popov, "shifted Popov row basis")
    sp.add_argument("--strategy", choices=("auto", "completion", "support_pipeline"), default="auto")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-tries", type=int, default=10)
    add("hermite", cmd_hermite, "Hermite row basis", shift=False)
    add("pivot-support", cmd_pivot_support, "1-based shifted pivot support")
    add("kernel", cmd_kernel, "minimal right kernel basis", shift=False)
    sp = add("approx", cmd_approx, "ordered weak Popov approximant basis")
    sp.add_argument("--order", required=True, help="comma-separated order per column")
    add("reduce", cmd_reduce, "shifted weak Popov row basis")
    sp = add("check", cmd_check, "test a normal form predicate")
    sp.add_argument("--form", required=True, choices=sorted(FORMS))
    sp = add("rand", cmd_rand, "random matrix", shift=False, inp=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CompletionFailure as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (VerificationError, PivotSupportError, SingularMatrixError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        # shape or shift mismatches not caught by the parser
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
