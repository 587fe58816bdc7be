"""``revnnc`` command-line front end.

Exit codes: 0 ok, 1 not equivalent, 2 parse or width error, 3 decomposition
error, 4 synthesis budget exhausted, 5 non-Boolean circuit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .circuit import Layer, bits_of, counterexample
from .decompose import DecompositionOptions, decompose_circuit
from .errors import InsufficientFreeLines, NotBooleanReversible, NotFound, RealParseError, RevNNCError
from .macros import MacroLibrary, builtin_specs, default_library, generate_macro_library, load_specs
from .metrics import full_report, nnc, quantum_cost, reports_to_csv, reports_to_json, reports_to_text
from .passes import STRATEGIES, best_of, run_strategy
from .realfile import read_real, write_real
from .synth import DEFAULT_MAX_COST, MAX_SYNTH_WIDTH

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_PARSE = 2
EXIT_DECOMPOSITION = 3
EXIT_NOT_FOUND = 4
EXIT_NON_BOOLEAN = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load(path: str, layer: Layer | None = None):
    try:
        return read_real(path, layer)
    except RealParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror or exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _options(args) -> DecompositionOptions:
    return DecompositionOptions(ancilla_policy=args.ancilla_policy)


# ----------------------------------------------------------------- commands


def cmd_metrics(args) -> int:
    # parse everything first so a bad file produces no partial output
    circuits = [(Path(p).stem, _load(p)) for p in args.files]
    try:
        reports = [full_report(c, name, _options(args)) for name, c in circuits]
    except InsufficientFreeLines as exc:
        raise CliError(EXIT_DECOMPOSITION, str(exc)) from exc
    render = {"text": reports_to_text, "json": reports_to_json, "csv": reports_to_csv}[args.format]
    _emit(render(reports), args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    circuit = _load(args.file, Layer.REVERSIBLE)
    try:
        elementary = decompose_circuit(circuit, _options(args))
    except InsufficientFreeLines as exc:
        raise CliError(EXIT_DECOMPOSITION, str(exc)) from exc
    _emit(write_real(elementary), args.out)
    return EXIT_OK


def _load_library(path: str | None) -> MacroLibrary:
    if not path:
        return default_library()
    try:
        return MacroLibrary.load(path)
    except (OSError, ValueError, KeyError, RevNNCError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def cmd_optimize(args) -> int:
    circuit = _load(args.file, Layer.REVERSIBLE)
    options = _options(args)
    library = _load_library(args.macros) if args.strategy in ("macro", "best") else None
    try:
        realized = decompose_circuit(circuit, options)
        if args.strategy == "best":
            result, chosen = best_of(circuit, library, args.restore_order, options)
        else:
            result = run_strategy(circuit, args.strategy, library, args.restore_order, options)
            chosen = args.strategy
    except InsufficientFreeLines as exc:
        raise CliError(EXIT_DECOMPOSITION, str(exc)) from exc

    table_qc = quantum_cost(circuit)
    summary = {
        "file": args.file,
        "strategy": chosen,
        "table_qc": table_qc,
        "realized_qc": len(realized.gates),
        "result_qc": result.qc,
        "overhead": round(result.qc / table_qc, 2) if table_qc else None,
        "nnc_before": nnc(realized),
        "nnc_after": result.nnc,
        "input_relabeling": list(result.input_relabeling) if result.input_relabeling else None,
        "output_permutation": list(result.output_permutation) if result.output_permutation else None,
        "restoring_swaps": result.restored_swaps,
    }
    if args.out:
        Path(args.out).write_text(write_real(result.circuit))
    else:
        sys.stdout.write(write_real(result.circuit))
    stream = sys.stderr if not args.out else sys.stdout
    if args.format == "json":
        stream.write(json.dumps(summary, indent=2) + "\n")
    else:
        overhead = "-" if summary["overhead"] is None else f"{summary['overhead']:.2f}"
        stream.write(
            f"strategy {chosen}: qc {table_qc} (table) / {summary['realized_qc']} (realized)"
            f" -> {result.qc}, overhead {overhead}, NNC {summary['nnc_before']} -> {result.nnc}\n"
        )
        if result.input_relabeling:
            stream.write(f"input relabeling: {list(result.input_relabeling)}\n")
        if result.output_permutation:
            stream.write(f"output permutation: {list(result.output_permutation)}\n")
        if args.restore_order and result.restored_swaps:
            stream.write(f"restoring SWAPs: {result.restored_swaps} (+{3 * result.restored_swaps} qc)\n")
    return EXIT_OK


def cmd_macro_gen(args) -> int:
    try:
        specs = load_specs(Path(args.specs).read_text()) if args.specs else builtin_specs()
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(EXIT_PARSE, f"{args.specs}: {exc}") from exc
    if any(s.width > MAX_SYNTH_WIDTH for s in specs):
        raise CliError(EXIT_PARSE, f"macro patterns are limited to {MAX_SYNTH_WIDTH} lines")
    try:
        library = generate_macro_library(specs, args.max_cost)
    except NotFound as exc:
        raise CliError(EXIT_NOT_FOUND, str(exc)) from exc
    rows = []
    for m in library:
        rows.append(f"{m.name:<10} naive {m.naive_cost:>3}  exact {m.cost:>3}  impr {round(100 * float(m.improvement)):>3}%")
    report = "\n".join(rows) + "\n"
    if args.out:
        library.save(args.out)
        sys.stdout.write(report)
    else:
        sys.stdout.write(library.to_json())
        sys.stderr.write(report)
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = _load(args.file_a), _load(args.file_b)
    if a.width != b.width:
        raise CliError(EXIT_PARSE, f"width mismatch: {a.width} vs {b.width}")
    try:
        cex = counterexample(a, b, args.modulo_permutation)
    except NotBooleanReversible as exc:
        raise CliError(EXIT_NON_BOOLEAN, str(exc)) from exc
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    if cex is None:
        print("equivalent")
        return EXIT_OK
    assignment = " ".join(f"{name}={bit}" for name, bit in zip(a.inputs, bits_of(cex, a.width)))
    print(f"not equivalent; first differing input: {assignment}")
    return EXIT_NOT_EQUIVALENT


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revnnc", description="Nearest-neighbor optimization of reversible circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_help="write output here instead of stdout"):
        p.add_argument("--out", help=out_help)
        p.add_argument(
            "--ancilla-policy",
            choices=("use-free-lines", "fail-if-insufficient"),
            default="use-free-lines",
            help="how t_m with m >= 3 is decomposed",
        )

    p = sub.add_parser("metrics", help="cost metric table for .real files")
    p.add_argument("files", nargs="+")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("decompose", help="standard elementary decomposition")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("optimize", help="produce an NNC-0 elementary circuit")
    p.add_argument("file")
    p.add_argument("--strategy", choices=STRATEGIES + ("best",), default="best")
    p.add_argument("--macros", help="macro library JSON (defaults to the shipped library)")
    p.add_argument("--restore-order", action="store_true", help="undo the line permutation left by local reordering")
    p.add_argument("--format", choices=("text", "json"), default="text", help="summary format")
    common(p, "write the optimized circuit here (summary goes to stdout)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("macro-gen", help="synthesize a macro library")
    p.add_argument("specs", nargs="?", help="pattern spec JSON (defaults to the built-in 13 configurations)")
    p.add_argument("--max-cost", type=int, default=DEFAULT_MAX_COST)
    p.add_argument("--out", help="write the library here; the summary table goes to stdout")
    p.set_defaults(func=cmd_macro_gen)

    p = sub.add_parser("verify", help="check two circuits for equivalence")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--modulo-permutation", action="store_true", help="align lines through signal names")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"revnnc: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
