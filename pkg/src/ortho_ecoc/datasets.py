"""Datasets, the sparse ``label index:value`` text format and decision-value files."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .exceptions import DatasetFormatError

__all__ = [
    "Dataset",
    "parse_sparse_dataset",
    "read_sparse_dataset",
    "format_sparse_dataset",
    "write_sparse_dataset",
    "parse_decision_values",
    "read_decision_values",
    "make_gaussian_blobs",
]


@dataclass
class Dataset:
    """Feature matrix plus contiguous integer labels ``0 .. n_classes - 1``.

    ``label_names[k]`` is the label token that class ``k`` had in the source
    file (first-appearance order).
    """

    X: sp.csr_matrix | np.ndarray
    y: np.ndarray
    label_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.y = np.asarray(self.y, dtype=np.int64)
        if self.X.shape[0] != self.y.shape[0]:
            raise ValueError("X and y disagree on the number of samples")
        if not self.label_names:
            top = int(self.y.max()) + 1 if self.y.size else 0
            self.label_names = [str(k) for k in range(top)]
        if self.y.size and (self.y.min() < 0 or self.y.max() >= len(self.label_names)):
            raise ValueError("labels must lie in [0, n_classes)")

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.label_names)

    def subset(self, index) -> Dataset:
        return Dataset(self.X[index], self.y[index], list(self.label_names))

    def dense(self) -> np.ndarray:
        return self.X.toarray() if sp.issparse(self.X) else np.asarray(self.X, dtype=np.float64)

    def label_map(self) -> str:
        return " ".join(f"{name}->{k}" for k, name in enumerate(self.label_names))


def _parse_number(token, lineno, what):
    try:
        value = float(token)
    except ValueError:
        raise DatasetFormatError(f"malformed {what} {token!r}", lineno) from None
    if not math.isfinite(value):
        raise DatasetFormatError(f"non-finite {what} {token!r}", lineno)
    return value


def parse_sparse_dataset(lines) -> Dataset:
    """Parse ``label idx:value ...`` lines (1-based, strictly increasing indices).

    Labels may be integers or reals; they are mapped to class indices in
    order of first appearance.  Blank lines are skipped.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    names: list[str] = []
    class_of: dict[float, int] = {}
    y, indptr, indices, data = [], [0], [], []
    n_features = 0
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        key = _parse_number(tokens[0], lineno, "label")
        if key not in class_of:
            class_of[key] = len(names)
            names.append(tokens[0])
        y.append(class_of[key])
        last = 0
        for tok in tokens[1:]:
            idx_tok, sep, val_tok = tok.partition(":")
            if not sep or not idx_tok.isdigit():
                raise DatasetFormatError(f"malformed feature {tok!r}", lineno)
            idx = int(idx_tok)
            if idx < 1:
                raise DatasetFormatError(f"feature index must be >= 1, got {idx}", lineno)
            if idx <= last:
                raise DatasetFormatError(f"feature indices must increase ({last} then {idx})", lineno)
            last = idx
            indices.append(idx - 1)
            data.append(_parse_number(val_tok, lineno, "feature value"))
        n_features = max(n_features, last)
        indptr.append(len(indices))
    if not y:
        raise DatasetFormatError("no samples")
    X = sp.csr_matrix(
        (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(len(y), n_features),
    )
    return Dataset(X, np.array(y), names)


def read_sparse_dataset(path) -> Dataset:
    with open(path) as fh:
        return parse_sparse_dataset(fh)


def format_sparse_dataset(ds: Dataset) -> str:
    X = sp.csr_matrix(ds.X)
    out = []
    for i in range(ds.n_samples):
        start, stop = X.indptr[i], X.indptr[i + 1]
        feats = " ".join(f"{j + 1}:{float(v)!r}" for j, v in zip(X.indices[start:stop], X.data[start:stop]))
        label = ds.label_names[ds.y[i]]
        out.append(f"{label} {feats}" if feats else label)
    return "\n".join(out) + "\n"


def write_sparse_dataset(ds: Dataset, path) -> None:
    Path(path).write_text(format_sparse_dataset(ds))


def parse_decision_values(lines, n_codes: int, n_samples: int | None = None) -> np.ndarray:
    """Read rows of ``n_codes`` decision values in [-1, 1].

    Returns an array of shape ``(n_samples, n_codes)``.  Errors name the
    offending line and column.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    rows = []
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != n_codes:
            raise DatasetFormatError(f"expected {n_codes} decision values, found {len(tokens)}", lineno)
        row = []
        for col, tok in enumerate(tokens, start=1):
            value = _parse_number(tok, lineno, "decision value")
            if not -1.0 <= value <= 1.0:
                raise DatasetFormatError(f"column {col}: decision value {value} outside [-1, 1]", lineno)
            row.append(value)
        rows.append(row)
    if n_samples is not None and len(rows) != n_samples:
        raise DatasetFormatError(f"expected {n_samples} rows of decision values, found {len(rows)}")
    if not rows:
        raise DatasetFormatError("no decision values")
    return np.array(rows, dtype=np.float64)


def read_decision_values(path, n_codes: int, n_samples: int | None = None) -> np.ndarray:
    with open(path) as fh:
        return parse_decision_values(fh, n_codes, n_samples)


def make_gaussian_blobs(
    n_classes: int = 6,
    n_per_class: int = 150,
    n_features: int = 8,
    spread: float = 1.0,
    separation: float = 2.0,
    seed=0,
) -> Dataset:
    """Isotropic Gaussian classes with centres drawn at ``separation`` scale.

    Centres are ``separation * N(0, I)`` and samples are
    ``centre + spread * N(0, I)``; the rows are shuffled.
    """
    rng = np.random.default_rng(seed)
    centres = separation * rng.standard_normal((n_classes, n_features))
    y = np.repeat(np.arange(n_classes), n_per_class)
    X = centres[y] + spread * rng.standard_normal((y.size, n_features))
    order = rng.permutation(y.size)
    return Dataset(X[order], y[order], [str(k) for k in range(n_classes)])
