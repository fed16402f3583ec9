"""gkmfilter command line: export, query, verify and estimate.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 a size guard refused the request.
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from fractions import Fraction
from pathlib import Path

import yaml

from .checks import format_report, run_checks
from .filter import (
    DEFAULT_MAX_ENTRIES,
    SizeLimitExceeded,
    estimate_counts,
    format_decimal,
    format_rational,
    h_entry,
    h_matrix,
    matrix_csv,
    w_entry,
    w_matrix,
)
from .incidence import build_A, build_A_upto, to_csv, to_matrix_market
from .spectral import build_spectral_system, spectrum_csv
from .words import AlphabetSpec, enumerate_U, u_index

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
DEFAULT_MAX_WORDS = 4096


class InputError(Exception):
    pass


def load_config(path: str) -> AlphabetSpec:
    """Read B (and optional symbols) from a YAML or JSON file."""
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict) or "B" not in data:
        raise InputError(f"config {path} must be a mapping with a 'B' entry")
    unknown = set(data) - {"B", "symbols"}
    if unknown:
        raise InputError(f"config {path}: unknown keys {sorted(unknown)}")
    B = data["B"]
    if not isinstance(B, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in B):
        raise InputError(f"config {path}: B must be a list of integers")
    symbols = data.get("symbols")
    if symbols is not None:
        if not isinstance(symbols, list) or not all(isinstance(t, list) for t in symbols):
            raise InputError(f"config {path}: symbols must be a list of lists")
        symbols = [[str(s) for s in t] for t in symbols]
    return AlphabetSpec(tuple(B), symbols)


def parse_inline_B(text: str) -> AlphabetSpec:
    try:
        B = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--B expects comma-separated integers, got {text!r}") from None
    return AlphabetSpec(B)


def resolve_spec(args) -> AlphabetSpec:
    if (args.config is None) == (args.B is None):
        raise InputError("give exactly one of --config or --B")
    if args.config is not None:
        return load_config(args.config)
    return parse_inline_B(args.B)


def check_k(spec: AlphabetSpec, k: int) -> None:
    if not 0 <= k <= spec.ell:
        raise InputError(f"k must satisfy 0 <= k <= {spec.ell}, got {k}")


def check_digits(digits: int) -> None:
    if digits < 0:
        raise InputError(f"--digits must be >= 0, got {digits}")


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- commands ----------------------------------------------------------------

def cmd_matrix(args) -> int:
    spec = resolve_spec(args)
    check_k(spec, args.k)
    A = build_A_upto(spec, args.k) if args.upto else build_A(spec, args.k)
    emit(to_matrix_market(A) if args.format == "mtx" else to_csv(A), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    spec = resolve_spec(args)
    check_k(spec, args.k)
    emit(spectrum_csv(build_spectral_system(spec, args.k)), args.out)
    return EXIT_OK


def _split_pair(text: str) -> tuple[str, str]:
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != 2:
        raise InputError(f"--entry expects two words separated by a comma, got {text!r}")
    return parts[0], parts[1]


def cmd_filter(args) -> int:
    spec = resolve_spec(args)
    check_k(spec, args.k)
    check_digits(args.digits)
    if args.entry is not None:
        a, b = _split_pair(args.entry)
        u, v = spec.parse_word(a), spec.parse_word(b)
        q = w_entry(spec, args.k, u, v) if args.which == "W" else h_entry(spec, args.k, u, v)
        text = format_rational(q) if args.format == "rational" else format_decimal(q, args.digits)
        emit(text + "\n", args.out)
        return EXIT_OK
    build = w_matrix if args.which == "W" else h_matrix
    M = build(spec, args.k, max_entries=args.max_entries)
    emit(matrix_csv(M, spec, exact=args.format == "rational", digits=args.digits), args.out)
    return EXIT_OK


def _parse_cell(text: str) -> tuple[int, int]:
    try:
        r, c = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--tamper-entry expects ROW,COL, got {text!r}") from None
    return r, c


def cmd_verify(args) -> int:
    spec = resolve_spec(args)
    check_k(spec, args.k)
    if spec.size > args.max_words:
        raise SizeLimitExceeded(
            f"{spec.size} gap-free words exceeds the verification limit {args.max_words}"
        )
    A = build_A(spec, args.k)
    if args.tamper_entry is not None:
        r, c = _parse_cell(args.tamper_entry)
        if not (0 <= r < A.shape[0] and 0 <= c < A.shape[1]):
            raise InputError(f"--tamper-entry {r},{c} is outside the {A.shape[0]}x{A.shape[1]} matrix")
        A = A.with_flipped_entry(r, c)
    results = run_checks(spec, args.k, tol=args.tol, A=A)
    sys.stdout.write(format_report(results) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


_FIELD_SPLIT = re.compile(r"[,\t ]+")


def read_counts(spec: AlphabetSpec, path: str) -> list[int]:
    """Counts in canonical order from "word,count" lines.

    Fields may be separated by commas, tabs or spaces. Blank lines and lines
    starting with '#' are skipped, as is a leading "word,count" header.
    Repeated words accumulate.
    """
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read counts {path}: {exc}") from None
    raw = [0] * spec.size
    seen_data = False
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = _FIELD_SPLIT.split(line)
        if not seen_data and [f.lower() for f in fields] == ["word", "count"]:
            seen_data = True
            continue
        seen_data = True
        if len(fields) != 2:
            raise InputError(f"{path}:{lineno}: expected 'word,count', got {line!r}")
        try:
            w = spec.check_word(spec.parse_word(fields[0]), gapped=False)
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
        try:
            c = int(fields[1])
        except ValueError:
            raise InputError(f"{path}:{lineno}: count {fields[1]!r} is not an integer") from None
        if c < 0:
            raise InputError(f"{path}:{lineno}: count {c} is negative")
        raw[u_index(spec, w)] += c
    return raw


def clip_nonneg(est: list[Fraction], total: int) -> list[Fraction]:
    """Zero out negative estimates and rescale so the total is unchanged."""
    clipped = [max(q, Fraction(0)) for q in est]
    mass = sum(clipped, Fraction(0))
    if mass == 0:
        return clipped
    return [q * total / mass for q in clipped]


def cmd_estimate(args) -> int:
    spec = resolve_spec(args)
    check_k(spec, args.k)
    check_digits(args.digits)
    raw = read_counts(spec, args.counts)
    est = estimate_counts(spec, args.k, raw, args.mode)
    if args.clip_nonneg:
        est = clip_nonneg(est, sum(raw))
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["word", "raw", "estimate"])
    for w, r, q in zip(enumerate_U(spec), raw, est):
        writer.writerow([spec.format_word(w), r, format_decimal(q, args.digits)])
    writer.writerow(["total", sum(raw), format_decimal(sum(est, Fraction(0)), args.digits)])
    emit(out.getvalue(), args.out)
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkmfilter",
        description="Gapped k-mer incidence matrices, their pseudo-inverse and filter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("alphabet")
    src.add_argument("--config", help="YAML/JSON file with B and optional symbols")
    src.add_argument("--B", help="inline alphabet sizes, e.g. 2,3,4")
    common.add_argument("-k", "--k", type=int, required=True, help="number of letters kept")

    p = sub.add_parser("matrix", parents=[common], help="export the incidence matrix A")
    p.add_argument("--upto", action="store_true", help="stack the rows for every order <= k")
    p.add_argument("--format", choices=("mtx", "csv"), default="mtx")
    p.add_argument("--out")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("spectrum", parents=[common], help="export every eigenpair label and value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("filter", parents=[common], help="export W or H, or query one entry")
    p.add_argument("--which", choices=("W", "H"), default="H")
    p.add_argument("--entry", help="two words 'u,v'; prints that single entry")
    p.add_argument("--format", choices=("rational", "decimal"), default="rational")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--max-entries", type=int, default=DEFAULT_MAX_ENTRIES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("verify", parents=[common], help="run every cross-check against the oracle")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-words", type=int, default=DEFAULT_MAX_WORDS)
    p.add_argument("--tamper-entry", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("estimate", parents=[common], help="filtered counts from a count table")
    p.add_argument("counts", help="file of 'word,count' lines")
    p.add_argument("--mode", choices=("project", "from_gapped"), default="project")
    p.add_argument("--clip-nonneg", action="store_true",
                   help="clamp negative estimates to zero and rescale to the input total")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitExceeded as exc:
        print(f"gkmfilter: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, ValueError) as exc:
        print(f"gkmfilter: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
