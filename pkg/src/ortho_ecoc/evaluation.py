"""Metrics and the repeated 70/30 split benchmark protocol."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .datasets import Dataset
from .decode import SolverKind, vote
from .learners import ECOCClassifier

__all__ = [
    "confusion_matrix",
    "uncertainty_coefficient",
    "brier_score",
    "accuracy",
    "split_70_30",
    "EvalReport",
    "ExperimentSummary",
    "run_trial",
    "run_experiment",
    "REPORT_FIELDS",
    "format_tsv",
    "format_text",
]

REPORT_FIELDS = ("uc", "brier", "accuracy", "total_time_s", "solution_time_s", "seed")
TRAIN_FRACTION = 0.7
MAX_SPLIT_RETRIES = 10


def confusion_matrix(truth, pred, n_classes: int) -> np.ndarray:
    """Counts with rows indexed by true class and columns by prediction."""
    out = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(out, (np.asarray(truth), np.asarray(pred)), 1)
    return out


def _entropy(p):
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def uncertainty_coefficient(confusion) -> float:
    """``I(truth; prediction) / H(truth)`` in nats from a confusion matrix.

    When the truth is constant, returns 1 if the prediction is constant at
    the same class and 0 otherwise.
    """
    c = np.asarray(confusion, dtype=np.float64)
    total = c.sum()
    if c.ndim != 2 or c.shape[0] != c.shape[1] or total <= 0:
        raise ValueError("need a non-empty square confusion matrix")
    joint = c / total
    p_truth = joint.sum(axis=1)
    p_pred = joint.sum(axis=0)
    h_truth = _entropy(p_truth)
    if h_truth == 0.0:
        k = int(np.argmax(p_truth))
        return 1.0 if joint[k, k] == 1.0 else 0.0
    mutual = _entropy(p_truth) + _entropy(p_pred) - _entropy(joint.ravel())
    return float(min(1.0, max(0.0, mutual / h_truth)))


def brier_score(probs, truth) -> float:
    """Root-mean-square error of probabilities against one-hot truth.

    The mean runs over all ``T * m`` entries.
    """
    probs = np.asarray(probs, dtype=np.float64)
    truth = np.asarray(truth)
    if probs.ndim != 2 or probs.shape[0] != truth.shape[0]:
        raise ValueError("probs must be (n_samples, n_classes) matching truth")
    onehot = np.zeros_like(probs)
    onehot[np.arange(truth.size), truth] = 1.0
    return float(np.sqrt(np.mean((probs - onehot) ** 2)))


def accuracy(truth, pred) -> float:
    return float(np.mean(np.asarray(truth) == np.asarray(pred)))


def _derived_seed(seed, *salt) -> int:
    return int(np.random.SeedSequence([int(seed), *salt]).generate_state(1)[0])


def split_70_30(ds: Dataset, seed=0) -> tuple[Dataset, Dataset]:
    """Random 70/30 train/test split, retried until training sees every class.

    The first ``floor(0.7 N)`` samples of a seeded permutation train.  If a
    class is missing from that part, the split is redrawn with a seed
    derived from ``(seed, attempt)``, at most 10 times.
    """
    n = ds.n_samples
    if n == 0:
        raise ValueError("cannot split an empty dataset")
    n_train = math.floor(TRAIN_FRACTION * n)
    rng = np.random.default_rng(seed)
    for attempt in range(MAX_SPLIT_RETRIES + 1):
        if attempt:
            rng = np.random.default_rng(_derived_seed(seed, attempt))
        order = rng.permutation(n)
        train, test = order[:n_train], order[n_train:]
        if np.unique(ds.y[train]).size == ds.n_classes:
            return ds.subset(train), ds.subset(test)
    raise ValueError(f"training split misses a class after {MAX_SPLIT_RETRIES} retries")


@dataclass
class EvalReport:
    uc: float
    brier: float | None
    accuracy: float
    total_time_s: float
    solution_time_s: float
    n_test: int
    seed: int
    n_codes: int = 0

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in REPORT_FIELDS}


@dataclass
class ExperimentSummary:
    n_trials: int
    mean: dict
    std: dict
    reports: list = field(default_factory=list)


def run_trial(
    ds: Dataset,
    family="ortho-dense",
    solver="auto",
    seed=0,
    *,
    n_codes=None,
    coding_matrix=None,
    **estimator_params,
) -> EvalReport:
    """One split / train / classify / score cycle.

    Randomized matrix families draw a fresh matrix from ``seed``.
    ``total_time_s`` covers classifying the test set (binary decision
    values plus decoding); ``solution_time_s`` only the decoding.
    """
    train, test = split_70_30(ds, seed)
    model = ECOCClassifier(
        family=family,
        solver=solver,
        n_codes=n_codes,
        coding_matrix=coding_matrix,
        random_state=_derived_seed(seed, 1),
        **estimator_params,
    )
    model.fit(train.X, train.y)
    A = model.coding_matrix_

    t0 = time.perf_counter()
    R = model.decision_function(test.X)
    t1 = time.perf_counter()
    if model.solver_ is SolverKind.VOTE_ONLY:
        pred_idx = vote(A, R)
        probs = None
    else:
        probs = model.decode(R)
    t2 = time.perf_counter()
    if probs is not None:
        pred_idx = np.argmax(probs, axis=1)
    pred = model.classes_[pred_idx]

    truth = test.y
    conf = confusion_matrix(truth, pred, ds.n_classes)
    return EvalReport(
        uc=uncertainty_coefficient(conf),
        brier=None if probs is None else brier_score(probs, np.searchsorted(model.classes_, truth)),
        accuracy=accuracy(truth, pred),
        total_time_s=t2 - t0,
        solution_time_s=t2 - t1,
        n_test=test.n_samples,
        seed=int(seed),
        n_codes=A.n_codes,
    )


def _summarize(reports) -> ExperimentSummary:
    mean, std = {}, {}
    for key in ("uc", "brier", "accuracy", "total_time_s", "solution_time_s"):
        vals = [getattr(r, key) for r in reports]
        if any(v is None for v in vals):
            mean[key] = std[key] = None
            continue
        vals = np.array(vals, dtype=np.float64)
        mean[key] = float(vals.mean())
        std[key] = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
    return ExperimentSummary(len(reports), mean, std, list(reports))


def run_experiment(
    ds: Dataset,
    family="ortho-dense",
    solver="auto",
    n_trials: int = 10,
    base_seed: int = 0,
    *,
    n_jobs: int | None = None,
    **trial_params,
) -> ExperimentSummary:
    """Run trials with seeds ``base_seed + i`` and report mean and sample std.

    Trials may run on ``n_jobs`` threads; each trial's own pipeline stays
    sequential and the reports keep trial order.
    """
    if n_trials < 1:
        raise ValueError("need at least one trial")

    def one(i):
        try:
            return run_trial(ds, family, solver, base_seed + i, **trial_params)
        except Exception as exc:
            raise RuntimeError(f"trial {i} (seed {base_seed + i}) failed: {exc}") from exc

    if n_jobs and n_jobs > 1:
        with ThreadPoolExecutor(n_jobs) as pool:
            reports = list(pool.map(one, range(n_trials)))
    else:
        reports = [one(i) for i in range(n_trials)]
    return _summarize(reports)


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.6g}" if abs(value) < 1e-3 and value != 0 else f"{value:.6f}"


def format_tsv(summary: ExperimentSummary) -> str:
    """One row per trial, then ``mean`` and ``std`` rows (labelled in ``seed``)."""
    lines = ["\t".join(REPORT_FIELDS)]
    for rep in summary.reports:
        lines.append("\t".join(_fmt(v) for v in rep.as_row().values()))
    for label, stats in (("mean", summary.mean), ("std", summary.std)):
        lines.append("\t".join([*(_fmt(stats[k]) for k in REPORT_FIELDS[:-1]), label]))
    return "\n".join(lines) + "\n"


def format_text(summary: ExperimentSummary, header: dict | None = None) -> str:
    """``key: value`` blocks separated by blank lines."""
    blocks = []
    if header:
        blocks.append("\n".join(f"{k}: {v}" for k, v in header.items()))
    for i, rep in enumerate(summary.reports):
        lines = [f"trial: {i}"] + [f"{k}: {_fmt(v)}" for k, v in rep.as_row().items()]
        blocks.append("\n".join(lines))
    lines = [f"summary: {summary.n_trials} trials"]
    for k in REPORT_FIELDS[:-1]:
        lines.append(f"{k}: {_fmt(summary.mean[k])} +- {_fmt(summary.std[k])}")
    blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
