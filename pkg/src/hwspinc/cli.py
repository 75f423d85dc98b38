"""Command-line surface for batch runs and report generation.

Subcommands::

    validate <file>              structural predicates per matrix
    spinc <file>                 spin / spin-c reports per matrix
    enumerate <n>                stream HW-matrices (raw or --canonical)
    canon <file>                 canonical form per matrix
    equiv <fileA> <fileB>        pairwise orbit-equivalence of two files
    verify <lemma-id> <n>        run one lemma verification

Matrix files use the digit format: one row per line, entries 0-3,
'#' comments, blank lines between matrices.  ``--json`` switches every
command from tables to one stable JSON document on stdout.

Exit codes: 0 success (and PASS for verify), 2 usage error, 3 file or
parse error, 4 precondition violation, 5 verification FAIL.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .action import canonical_form, are_equivalent
from .enumeration import classify_hw, enumerate_hw
from .smatrix import (
    CompletionError,
    MatrixParseError,
    PreconditionError,
    SMatrix,
    format_matrix,
    mask_to_indices,
    matrix_to_strings,
    parse_blocks,
)
from .spinc import analyze
from .verification import DEFAULT_BUDGET, LEMMA_IDS, verify_lemma

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_FAIL = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> list[SMatrix]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    try:
        matrices = parse_blocks(text)
    except MatrixParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc
    if not matrices:
        raise CliError(f"{path}: no matrices found", EXIT_PARSE)
    return matrices


def _emit(doc, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


def _cmd_validate(args) -> int:
    matrices = _read_file(args.file)
    records = []
    lines = []
    for idx, m in enumerate(matrices):
        rec = {
            "index": idx,
            "rows": m.d,
            "cols": m.n,
            "distinguished": None,
            "free": m.is_free(),
            "effective": m.is_effective(),
            "hw": None,
            "hw_violation": None,
        }
        if m.d <= m.n:
            rec["distinguished"] = m.is_distinguished()
        if m.is_square:
            reason = m.hw_violation()
            rec["hw"] = reason is None
            rec["hw_violation"] = reason
        records.append(rec)
        flags = ", ".join(
            f"{key}={rec[key]}" for key in ("distinguished", "free", "effective", "hw")
        )
        lines.append(f"[{idx}] {m.d}x{m.n}: {flags}")
        if rec["hw_violation"]:
            lines.append(f"      ({rec['hw_violation']})")
    _emit({"command": "validate", "file": args.file, "matrices": records}, args.json, lines)
    return EXIT_OK


def _cmd_spinc(args) -> int:
    matrices = _read_file(args.file)
    records = []
    lines = []
    for idx, m in enumerate(matrices):
        try:
            report = analyze(m)
        except PreconditionError as exc:
            raise CliError(f"matrix {idx}: {exc}", EXIT_PRECONDITION) from exc
        doc = report.to_dict()
        doc["index"] = idx
        if args.criterion == "linear":
            doc.pop("spinc_set")
        elif args.criterion == "set":
            doc.pop("spinc_linear")
            doc.pop("spinc_linear_witness")
        records.append(doc)
        spin_set = (
            "none" if report.spinc_set is None
            else "{" + ",".join(map(str, mask_to_indices(report.spinc_set))) + "}"
        )
        lines.append(
            f"[{idx}] {m.d}x{m.n}: spin={report.spin} "
            f"spinc_linear={report.spinc_linear} spinc_set={spin_set} "
            f"consistent={report.consistent}"
        )
    _emit({"command": "spinc", "file": args.file, "reports": records}, args.json, lines)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    try:
        if args.canonical:
            result = classify_hw(args.n, threads=args.threads, allow_large=args.allow_large)
            matrices = list(result.representatives)
            header = (
                f"# degree {args.n}, mode canonical, classes {result.class_count}, "
                f"raw {result.raw_count}, hwspinc {__version__}"
            )
        else:
            matrices = list(
                enumerate_hw(args.n, "raw", threads=args.threads, allow_large=args.allow_large)
            )
            header = f"# degree {args.n}, mode raw, count {len(matrices)}, hwspinc {__version__}"
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    chunks = [header] + [format_matrix(m) for m in matrices]
    text = "\n\n".join(chunks) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(matrices)} matrices to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_canon(args) -> int:
    matrices = _read_file(args.file)
    forms = []
    for idx, m in enumerate(matrices):
        if not m.is_square:
            raise CliError(
                f"matrix {idx}: canonical form requires a square matrix", EXIT_PRECONDITION
            )
        forms.append(canonical_form(m))
    text = "\n\n".join(format_matrix(m) for m in forms) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_equiv(args) -> int:
    left = _read_file(args.file_a)
    right = _read_file(args.file_b)
    if len(left) != len(right):
        raise CliError(
            f"files hold {len(left)} and {len(right)} matrices; cannot pair them",
            EXIT_PRECONDITION,
        )
    records = []
    lines = []
    for idx, (a, b) in enumerate(zip(left, right)):
        if not a.is_square or not b.is_square or a.n != b.n:
            raise CliError(
                f"pair {idx}: equivalence needs square matrices of equal degree",
                EXIT_PRECONDITION,
            )
        eq = are_equivalent(a, b)
        records.append({"index": idx, "equivalent": eq})
        lines.append(f"[{idx}] equivalent={eq}")
    _emit(
        {"command": "equiv", "files": [args.file_a, args.file_b], "pairs": records},
        args.json,
        lines,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        result = verify_lemma(args.lemma, args.n, budget=args.budget, seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc
    if args.json:
        print(result.to_json())
    else:
        status = "PASS" if result.passed else "FAIL"
        extra = f", space {result.space}" if result.space is not None else ""
        print(f"{status} {result.lemma} n={result.n}: {result.cases} cases{extra}")
        if result.counterexample is not None:
            print(f"counterexample: {json.dumps(result.counterexample)}")
    return EXIT_OK if result.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("HWSPINC_THREADS", "1")),
        help="worker count for sharded searches (results do not depend on it)",
    )
    common.add_argument("--json", action="store_true", help="emit JSON instead of tables")

    parser = argparse.ArgumentParser(
        prog="hwspinc",
        description="Spin/spin-c decisions, enumeration and lemma checks "
        "for HW-matrices.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"hwspinc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="structural predicates per matrix")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("spinc", parents=[common], help="spin / spin-c report per matrix")
    p.add_argument("file")
    p.add_argument(
        "--criterion",
        choices=("linear", "set", "both"),
        default="both",
        help="which criterion to report (both also cross-checks)",
    )
    p.set_defaults(func=_cmd_spinc)

    p = sub.add_parser("enumerate", parents=[common], help="stream HW-matrices of a degree")
    p.add_argument("n", type=int)
    p.add_argument("--canonical", action="store_true", help="one matrix per class")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.add_argument(
        "--allow-large", action="store_true", help="permit degrees above 7 (long runs)"
    )
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("canon", parents=[common], help="canonical form per matrix")
    p.add_argument("file")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("equiv", parents=[common], help="orbit-equivalence of paired matrices")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("verify", parents=[common], help="run one lemma verification")
    p.add_argument("lemma", choices=LEMMA_IDS)
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PreconditionError, CompletionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MatrixParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
