"""Command-line front end.

Every random choice derives from ``--seed`` (default :data:`DEFAULT_SEED`):
trial ``i`` of a benchmark uses ``seed + i`` for its split, and the coding
matrix of a randomized family is drawn from a seed derived from the trial
seed.  ``gen-matrix`` and ``train`` pass ``--seed`` straight to the matrix
construction.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import codes, datasets
from . import decode as _decode
from .evaluation import format_text, format_tsv, run_experiment
from .exceptions import OrthoEcocError
from .learners import ECOCClassifier, load_model, save_model

__all__ = ["main", "build_parser", "DEFAULT_SEED", "THREADS_ENV"]

DEFAULT_SEED = 0
THREADS_ENV = "ORTHO_ECOC_THREADS"
SOLVERS = ("auto",) + tuple(k.value for k in _decode.SolverKind)

log = logging.getLogger("ortho_ecoc")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ortho-ecoc",
        description="Multi-class classification with orthogonal error-correcting output codes.",
        allow_abbrev=False,
        epilog=f"{THREADS_ENV}=N runs benchmark trials and column training on N threads (0 or unset: sequential).",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, allow_abbrev=False)
        p.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="log progress to stderr")
        return p

    def matrix_args(p, family_default="ortho-dense"):
        p.add_argument("--family", choices=codes.FAMILIES, default=family_default, help="coding-matrix family")
        p.add_argument("--codes", type=int, default=None, help="code length n for families that take one")
        p.add_argument("--matrix", default=None, help="read the coding matrix from this file instead")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")

    p = add("gen-matrix", "write a coding matrix in the text format")
    p.add_argument("--family", choices=codes.FAMILIES, required=True)
    p.add_argument("--classes", type=int, required=True, help="number of classes m")
    p.add_argument("--codes", type=int, default=None, help="code length n for families that take one")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    p.add_argument("--out", default=None, help="output file (default stdout)")

    p = add("validate-matrix", "check a matrix file and print its Gram matrix and diagnostics")
    p.add_argument("--matrix", required=True)
    p.add_argument(
        "--family",
        choices=codes.FAMILIES,
        default=None,
        help="also check the invariants of this family",
    )

    p = add("train", "train a classifier on a sparse dataset and write a model file")
    p.add_argument("--dataset", required=True)
    matrix_args(p)
    p.add_argument("--solver", choices=SOLVERS, default="auto")
    p.add_argument("--model", required=True, help="model file to write")

    p = add("predict", "classify a dataset with a model, or decode a decision-value file")
    p.add_argument("--model", default=None, help="model file from 'train'")
    p.add_argument("--dataset", default=None, help="sparse dataset to classify")
    p.add_argument("--decisions", default=None, help="decision values, one row of n values per sample")
    p.add_argument("--matrix", default=None, help="coding matrix for --decisions without a model")
    p.add_argument("--solver", choices=SOLVERS, default=None, help="decoder (default: the model's, or auto)")
    p.add_argument("--out", default=None, help="output file (default stdout)")

    p = add("benchmark", "repeated 70/30 split experiment; prints a TSV report")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset", help="sparse dataset file")
    src.add_argument(
        "--synthetic",
        action="store_true",
        help="use the Gaussian surrogate (150 samples per class, 8 features)",
    )
    p.add_argument("--classes", type=int, default=6, help="classes of the synthetic surrogate (default 6)")
    matrix_args(p)
    p.add_argument("--solver", choices=SOLVERS, default="auto")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--format", choices=("tsv", "text"), default="tsv")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    return parser


def _threads() -> int | None:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a non-negative integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"{THREADS_ENV} must be a non-negative integer, got {n}")
    return n or None


def _emit(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_dataset(path) -> datasets.Dataset:
    ds = datasets.read_sparse_dataset(path)
    print(f"label map: {ds.label_map()}", file=sys.stderr)
    log.info("%s: %d samples, %d features, %d classes", path, ds.n_samples, ds.n_features, ds.n_classes)
    return ds


def _yes(flag) -> str:
    return "yes" if flag else "no"


def _cmd_gen_matrix(args) -> int:
    A = codes.make_coding_matrix(args.family, args.classes, args.codes, seed=args.seed)
    _emit(codes.format_matrix(A), args.out)
    return 0


def _cmd_validate_matrix(args) -> int:
    A = codes.read_matrix(args.matrix)
    kind = codes.MatrixKind(args.family) if args.family else codes.MatrixKind.CUSTOM
    note = None
    if kind is codes.MatrixKind.ORTHOGONAL_ZEROS:
        # a file holds the pruned matrix; orthogonality belongs to the unpruned one
        note = "ortho-zeros row orthogonality applies before column pruning and is not checked here"
        kind = codes.MatrixKind.CUSTOM
    problems = codes.CodingMatrix(A.entries, kind).violations()
    report = codes.validate(A)
    lines = [
        f"shape: {A.n_classes} {A.n_codes}",
        f"orthogonal: {_yes(report.is_orthogonal)}",
        f"dense_orthogonal: {_yes(A.is_dense_orthogonal)}",
        "gram:",
        *(" ".join(str(int(v)) for v in row) for row in report.gram),
        f"mixed_sign_columns: {_yes(report.mixed_sign_columns)}",
        "duplicate_columns: " + (" ".join(f"{i},{j}" for i, j in report.duplicate_columns) or "none"),
        "constant_columns: " + (" ".join(map(str, report.constant_columns)) or "none"),
        "row_nonzero_counts: " + " ".join(map(str, report.row_nonzero_counts)),
    ]
    if note:
        lines.append(f"note: {note}")
    lines.append("violations: " + ("; ".join(problems) if problems else "none"))
    print("\n".join(lines))
    if problems:
        print(f"ortho-ecoc: {args.matrix}: invalid coding matrix", file=sys.stderr)
        return 1
    return 0


def _matrix_from_args(args):
    if args.matrix is None:
        return None
    return codes.read_matrix(args.matrix).check()


def _cmd_train(args) -> int:
    ds = _load_dataset(args.dataset)
    model = ECOCClassifier(
        family=args.family,
        solver=args.solver,
        n_codes=args.codes,
        coding_matrix=_matrix_from_args(args),
        random_state=args.seed,
        n_jobs=_threads(),
    )
    model.fit(ds.X, ds.y)
    save_model(model, args.model, ds.label_names)
    A = model.coding_matrix_
    print(
        f"trained {A.n_codes} columns ({A.kind.value}, {A.n_classes} classes), solver {model.solver_.value}",
        file=sys.stderr,
    )
    return 0


def _format_predictions(names, probs, idx) -> str:
    if probs is None:
        return "".join(f"{names[k]}\n" for k in idx)
    return "".join(
        f"{names[k]} " + " ".join(f"{v:.6f}" for v in row) + "\n" for k, row in zip(idx, probs)
    )


def _cmd_predict(args) -> int:
    if (args.dataset is None) == (args.decisions is None):
        raise ValueError("predict needs exactly one of --dataset or --decisions")
    if args.model is not None and args.matrix is not None:
        raise ValueError("--matrix cannot be combined with --model")

    if args.model is not None:
        model, names = load_model(args.model)
        A = model.coding_matrix_
        names = names or [str(c) for c in model.classes_]
        if args.solver is not None:
            model.solver_ = _decode.check_solver(A, args.solver)
        solver = model.solver_
    else:
        if args.decisions is None or args.matrix is None:
            raise ValueError("without --model, predict needs --matrix and --decisions")
        model = None
        A = codes.read_matrix(args.matrix).check()
        names = [str(k) for k in range(A.n_classes)]
        solver = _decode.check_solver(A, args.solver)

    truth = None
    if args.decisions is not None:
        R = datasets.read_decision_values(args.decisions, A.n_codes)
    else:
        ds = _load_dataset(args.dataset)
        R = model.decision_function(ds.X)
        truth = [float(ds.label_names[k]) for k in ds.y]

    if solver is _decode.SolverKind.VOTE_ONLY:
        probs, idx = None, _decode.vote(A, R)
    else:
        probs = _decode.decode_batch(A, R, solver)
        idx = np.argmax(probs, axis=1)
    _emit(_format_predictions(names, probs, idx), args.out)

    if truth is not None:
        try:
            pred = [float(names[k]) for k in idx]
        except ValueError:
            pred = None
        if pred is not None:
            acc = float(np.mean(np.array(pred) == np.array(truth)))
            print(f"accuracy: {acc:.6f}", file=sys.stderr)
    return 0


def _cmd_benchmark(args) -> int:
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    if args.synthetic:
        ds = datasets.make_gaussian_blobs(n_classes=args.classes, seed=args.seed)
        print(f"label map: {ds.label_map()}", file=sys.stderr)
        source = f"synthetic gaussian ({args.classes} classes)"
    else:
        ds = _load_dataset(args.dataset)
        source = args.dataset
    summary = run_experiment(
        ds,
        args.family,
        args.solver,
        args.trials,
        args.seed,
        n_jobs=_threads(),
        n_codes=args.codes,
        coding_matrix=_matrix_from_args(args),
    )
    if args.format == "tsv":
        text = format_tsv(summary)
    else:
        header = {
            "dataset": source,
            "family": "custom" if args.matrix else args.family,
            "solver": args.solver,
            "trials": args.trials,
            "seed": args.seed,
        }
        text = format_text(summary, header)
    _emit(text, args.out)
    return 0


COMMANDS = {
    "gen-matrix": _cmd_gen_matrix,
    "validate-matrix": _cmd_validate_matrix,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "benchmark": _cmd_benchmark,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (OrthoEcocError, ValueError, RuntimeError, OSError) as exc:
        print(f"ortho-ecoc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
