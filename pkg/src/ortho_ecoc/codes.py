"""Coding matrices: construction, validation and the plain-text matrix format.

A coding matrix ``A`` has one row per class and one column per binary
problem.  Entry ``a[i, j]`` is ``+1``/``-1`` when class ``i`` sits on the
positive/negative side of classifier ``j`` and ``0`` when the class is left
out.  All arithmetic here is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path

import numpy as np

from .exceptions import InvalidCodingMatrix, SearchFailed

__all__ = [
    "MatrixKind",
    "CodingMatrix",
    "ValidationReport",
    "Type2Params",
    "validate",
    "harmonic_rows",
    "harmonic_matrix",
    "dense_code_length",
    "greedy_orthogonal_dense",
    "type2_params",
    "orthogonal_with_zeros",
    "prune_columns",
    "one_vs_one",
    "one_vs_rest",
    "random_dense",
    "max_random_columns",
    "make_coding_matrix",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
]


class MatrixKind(str, Enum):
    ONE_VS_ONE = "one-vs-one"
    ONE_VS_REST = "one-vs-rest"
    RANDOM_DENSE = "random"
    ORTHOGONAL_DENSE = "ortho-dense"
    ORTHOGONAL_ZEROS = "ortho-zeros"
    HARMONIC = "harmonic"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class CodingMatrix:
    """An ``m x n`` matrix over {-1, 0, +1} together with its family.

    Parameters
    ----------
    entries : array_like of int, shape (n_classes, n_codes)
    kind : MatrixKind
    unpruned : ndarray, optional
        For ``ORTHOGONAL_ZEROS`` matrices, the searched matrix before
        redundant columns were removed.  Row orthogonality and the fixed
        number of nonzeros per row hold for this matrix.
    """

    entries: np.ndarray
    kind: MatrixKind = MatrixKind.CUSTOM
    unpruned: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        entries = _as_code_array(self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "kind", MatrixKind(self.kind))
        if self.unpruned is not None:
            object.__setattr__(self, "unpruned", _as_code_array(self.unpruned))

    @property
    def n_classes(self) -> int:
        return self.entries.shape[0]

    @property
    def n_codes(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, CodingMatrix):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.entries, other.entries)

    __hash__ = None

    @cached_property
    def gram(self) -> np.ndarray:
        return self.entries @ self.entries.T

    @cached_property
    def is_dense(self) -> bool:
        return bool(np.all(self.entries != 0))

    @cached_property
    def is_orthogonal(self) -> bool:
        return _offdiag_zero(self.gram)

    @cached_property
    def is_dense_orthogonal(self) -> bool:
        """True iff there are no zeros and ``A A^T = n I`` exactly."""
        return self.is_dense and self.is_orthogonal

    @cached_property
    def as_float(self) -> np.ndarray:
        out = self.entries.astype(np.float64)
        out.setflags(write=False)
        return out

    def violations(self) -> list[str]:
        """List every broken invariant; empty when the matrix is admissible."""
        a = self.entries
        m, n = a.shape
        problems = []
        zero_rows = np.flatnonzero(~np.any(a, axis=1))
        if zero_rows.size:
            problems.append(f"all-zero rows {zero_rows.tolist()}")
        report = validate(self)
        if not report.mixed_sign_columns:
            problems.append(f"columns without both signs {report.constant_columns}")
        if report.duplicate_columns and not (self.kind is MatrixKind.ONE_VS_REST and m == 2):
            problems.append(f"duplicate or negated columns {report.duplicate_columns}")

        if self.kind is MatrixKind.ORTHOGONAL_DENSE:
            if not self.is_dense_orthogonal:
                problems.append("dense orthogonal matrix must satisfy A A^T = n I with no zeros")
        elif self.kind is MatrixKind.HARMONIC:
            if not self.is_dense_orthogonal:
                problems.append("harmonic rows are not orthogonal")
        elif self.kind is MatrixKind.ORTHOGONAL_ZEROS:
            base = a if self.unpruned is None else self.unpruned
            if not _offdiag_zero(base @ base.T):
                problems.append("unpruned rows are not pairwise orthogonal")
            if len(set(np.count_nonzero(base, axis=1).tolist())) != 1:
                problems.append("unpruned rows differ in number of nonzeros")
        elif self.kind is MatrixKind.ONE_VS_ONE:
            pos = np.sum(a == 1, axis=0)
            neg = np.sum(a == -1, axis=0)
            if n != m * (m - 1) // 2 or np.any(pos != 1) or np.any(neg != 1):
                problems.append("one-vs-one columns must pair exactly one +1 with one -1")
        elif self.kind is MatrixKind.ONE_VS_REST:
            if not np.array_equal(a, _one_vs_rest_entries(m)):
                problems.append("one-vs-rest matrix must be 2I - J")
        elif self.kind is MatrixKind.RANDOM_DENSE:
            if not self.is_dense:
                problems.append("random dense matrix contains zeros")
        return problems

    def check(self) -> CodingMatrix:
        """Raise :class:`InvalidCodingMatrix` if any invariant is broken."""
        problems = self.violations()
        if problems:
            raise InvalidCodingMatrix(
                f"invalid {self.kind.value} coding matrix: " + "; ".join(problems), problems
            )
        return self


def _as_code_array(values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64, copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidCodingMatrix(f"coding matrix must be a non-empty 2-D array, got shape {arr.shape}")
    raw = np.asarray(values)
    if raw.dtype.kind == "f" and not np.array_equal(raw, arr):
        raise InvalidCodingMatrix("coding matrix entries must be integers")
    if not np.all(np.isin(arr, (-1, 0, 1))):
        raise InvalidCodingMatrix("coding matrix entries must be in {-1, 0, +1}")
    arr.setflags(write=False)
    return arr


def _offdiag_zero(gram: np.ndarray) -> bool:
    off = gram - np.diag(np.diag(gram))
    return not np.any(off)


@dataclass(frozen=True)
class ValidationReport:
    is_orthogonal: bool
    gram: np.ndarray
    mixed_sign_columns: bool
    duplicate_columns: list[tuple[int, int]]
    constant_columns: list[int]
    row_nonzero_counts: list[int]

    @property
    def has_violations(self) -> bool:
        return (not self.mixed_sign_columns) or bool(self.duplicate_columns)


def validate(A) -> ValidationReport:
    """Compute the exact Gram matrix and column diagnostics of ``A``.

    A column is *constant* when all of its nonzero entries share one sign
    (all-zero columns included); such a column gives a binary problem with
    only one side.  Duplicate detection treats a column and its negation
    as the same partition.
    """
    a = A.entries if isinstance(A, CodingMatrix) else _as_code_array(A)
    gram = a @ a.T
    has_pos = np.any(a > 0, axis=0)
    has_neg = np.any(a < 0, axis=0)
    constant = np.flatnonzero(~(has_pos & has_neg)).tolist()

    duplicates = []
    first_seen: dict[bytes, int] = {}
    for j in range(a.shape[1]):
        col = a[:, j]
        nz = np.flatnonzero(col)
        canon = col if nz.size == 0 or col[nz[0]] > 0 else -col
        key = canon.tobytes()
        if key in first_seen:
            duplicates.append((first_seen[key], j))
        else:
            first_seen[key] = j

    return ValidationReport(
        is_orthogonal=_offdiag_zero(gram),
        gram=gram,
        mixed_sign_columns=not constant,
        duplicate_columns=duplicates,
        constant_columns=constant,
        row_nonzero_counts=np.count_nonzero(a, axis=1).tolist(),
    )


# --------------------------------------------------------------------------
# harmonic (Walsh) construction


def _log2_exact(n: int) -> int | None:
    if n < 2 or n & (n - 1):
        return None
    return n.bit_length() - 1


def harmonic_rows(n: int) -> np.ndarray:
    """All ``2 log2 n`` harmonic rows for code length ``n = 2**t``.

    The rows are, in order: the all-ones row; square waves of period
    ``n, n/2, ..., 2`` (each starting low); then, for each period
    ``P = n, n/2, ..., 4``, the quarter-period-shifted wave, built as the
    product of the waves of period ``P`` and ``P/2``.  The shifted wave of
    period ``P`` is negated when ``log2 P`` is even.
    """
    t = _log2_exact(n)
    if t is None:
        raise ValueError(f"code length must be a power of two >= 2, got {n}")
    j = np.arange(n)
    waves = []
    for i in range(t):
        period = n >> i
        waves.append(np.where(j % period < period // 2, -1, 1))
    rows = [np.ones(n, dtype=np.int64), *waves]
    for i in range(t - 1):
        log_period = t - i
        sign = 1 if log_period % 2 else -1
        rows.append(sign * waves[i] * waves[i + 1])
    return np.array(rows, dtype=np.int64)


def harmonic_matrix(n_classes: int, n_codes: int) -> CodingMatrix:
    """First ``n_classes`` harmonic rows of length ``n_codes``.

    Raises
    ------
    ValueError
        If ``n_codes`` is not a power of two or ``n_classes`` exceeds
        ``floor(2 log2 n_codes)``.
    InvalidCodingMatrix
        If the selected rows leave a column without both signs or repeat a
        partition (e.g. ``n_classes=1``).
    """
    t = _log2_exact(n_codes)
    if t is None:
        raise ValueError(f"code length must be a power of two >= 2, got {n_codes}")
    bound = 2 * t
    if not 1 <= n_classes <= bound:
        raise ValueError(f"harmonic codes of length {n_codes} support at most {bound} classes")
    rows = harmonic_rows(n_codes)[:n_classes]
    return CodingMatrix(rows, MatrixKind.HARMONIC).check()


# --------------------------------------------------------------------------
# dense orthogonal, greedy search

_ENUMERATE_MAX_N = 16


def dense_code_length(n_classes: int) -> int:
    """Smallest multiple of four that is at least ``n_classes``."""
    return 4 * max(1, math.ceil(n_classes / 4))


def _bits_to_signs(codes: np.ndarray, n: int) -> np.ndarray:
    bits = (codes[:, None] >> np.arange(n, dtype=np.int64)) & 1
    return (2 * bits - 1).astype(np.int64)


def _greedy_rows_enumerated(rng, m, n, max_draws):
    # Walk a random permutation of all mixed-sign rows; a candidate rejected
    # once stays non-orthogonal, so the first orthogonal candidate after the
    # cursor is exactly what one-at-a-time draws without repetition yield.
    order = rng.permutation(np.arange(1, 2**n - 1, dtype=np.int64))
    cand = _bits_to_signs(order, n)
    limit = min(max_draws, cand.shape[0])
    rows = np.empty((0, n), dtype=np.int64)
    pos = 0
    while rows.shape[0] < m:
        if pos >= limit:
            return None
        window = cand[pos:limit]
        ok = ~np.any(window @ rows.T, axis=1) if rows.shape[0] else np.ones(len(window), bool)
        hits = np.flatnonzero(ok)
        if hits.size == 0:
            return None
        rows = np.vstack([rows, window[hits[0]]])
        pos += hits[0] + 1
    return rows


def _greedy_rows_sampled(rng, m, n, max_draws):
    seen = set()
    rows = np.empty((0, n), dtype=np.int64)
    draws = 0
    while rows.shape[0] < m and draws < max_draws:
        cand = 2 * rng.integers(0, 2, size=n, dtype=np.int64) - 1
        draws += 1
        if abs(cand.sum()) == n:
            continue
        key = cand.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if rows.shape[0] == 0 or not np.any(rows @ cand):
            rows = np.vstack([rows, cand])
    return rows if rows.shape[0] == m else None


def greedy_orthogonal_dense(
    n_classes: int, seed=0, *, max_draws: int = 10_000, max_restarts: int = 100
) -> CodingMatrix:
    """Search for a ``+-1`` matrix with ``A A^T = n I`` by greedy row picks.

    ``n`` is the smallest multiple of 4 not below ``n_classes``.  Random
    mixed-sign candidate rows are drawn without repetition and kept when
    orthogonal to every row chosen so far.  A finished matrix whose columns
    do not all carry both signs is discarded and the search restarts.

    Notes
    -----
    No solution exists for 2 or 3 classes: pairwise-orthogonal ``+-1`` rows
    always share a constant column there (n/2 of them for two rows, n/4 for
    three), so the search exhausts its restart budget.
    """
    m = int(n_classes)
    if m < 2:
        raise ValueError("need at least two classes")
    n = dense_code_length(m)
    rng = np.random.default_rng(seed)
    search = _greedy_rows_enumerated if n <= _ENUMERATE_MAX_N else _greedy_rows_sampled
    for _ in range(max_restarts):
        rows = search(rng, m, n, max_draws)
        if rows is None:
            continue
        A = CodingMatrix(rows, MatrixKind.ORTHOGONAL_DENSE)
        if not A.violations():
            return A
    hint = " (no admissible matrix exists for fewer than 4 classes)" if m < 4 else ""
    raise SearchFailed(f"no {m}x{n} dense orthogonal coding matrix found{hint}", max_restarts)


# --------------------------------------------------------------------------
# orthogonal with zeros

_TYPE2_TABLE = {4: (7, 4), 6: (12, 6), 7: (15, 7), 8: (17, 8), 9: (20, 9), 10: (23, 10)}


@dataclass(frozen=True)
class Type2Params:
    n_classes: int
    initial_codes: int
    row_nonzeros: int

    def __post_init__(self):
        if self.n_classes < 2:
            raise ValueError("need at least two classes")
        if self.initial_codes < self.n_classes:
            raise ValueError("initial code length must be at least the number of classes")
        if not 1 <= self.row_nonzeros <= self.initial_codes:
            raise ValueError("row_nonzeros must lie in [1, initial_codes]")


def type2_params(n_classes: int) -> Type2Params:
    """Search parameters for orthogonal codes with zeros.

    Tabulated values are used where available; otherwise the initial code
    length is ``round(m log2 m)`` (at least ``m + 1``) with ``m`` nonzeros
    per row.
    """
    m = int(n_classes)
    if m < 2:
        raise ValueError("need at least two classes")
    if m in _TYPE2_TABLE:
        n0, k = _TYPE2_TABLE[m]
    else:
        n0, k = max(m + 1, round(m * math.log2(m))), m
    return Type2Params(m, n0, k)


def prune_columns(entries) -> tuple[np.ndarray, list[int]]:
    """Drop all-zero, single-signed and repeated (or negated) columns.

    Returns the kept columns and the indices that were removed.
    """
    a = _as_code_array(entries)
    keep, removed = [], []
    seen = set()
    for j in range(a.shape[1]):
        col = a[:, j]
        if not (np.any(col > 0) and np.any(col < 0)):
            removed.append(j)
            continue
        canon = col if col[np.flatnonzero(col)[0]] > 0 else -col
        key = canon.tobytes()
        if key in seen:
            removed.append(j)
            continue
        seen.add(key)
        keep.append(j)
    return a[:, keep], removed


_SIGN_ENUMERATE_MAX_K = 12
_SIGN_SAMPLES = 4096


def _zeros_attempt(rng, m, n0, k, budget, stall, batch=256):
    """One row-by-row construction; returns (rows or None, supports drawn)."""
    enumerate_signs = k <= _SIGN_ENUMERATE_MAX_K
    if enumerate_signs:
        all_signs = np.array(list(itertools.product((-1, 1), repeat=k)), dtype=np.int64)
    rows = np.zeros((0, n0), dtype=np.int64)
    used = 0
    while rows.shape[0] < m:
        misses = 0
        while True:
            if used >= budget or misses >= stall:
                return None, used
            supports = np.sort(np.argsort(rng.random((batch, n0)), axis=1)[:, :k], axis=1)
            if rows.shape[0]:
                # a zero dot product needs an even overlap with every row
                overlap = (rows != 0).astype(np.int64)[:, supports].sum(axis=2)
                viable = np.flatnonzero(np.all(overlap % 2 == 0, axis=0))
            else:
                viable = np.arange(batch)
            picked = None
            for g in viable:
                if used + g + 1 > budget:
                    break
                signs = (
                    all_signs
                    if enumerate_signs
                    else 2 * rng.integers(0, 2, size=(_SIGN_SAMPLES, k), dtype=np.int64) - 1
                )
                sub = rows[:, supports[g]]
                ok = np.flatnonzero(~np.any(signs @ sub.T, axis=1)) if sub.size else np.arange(len(signs))
                if ok.size:
                    picked = g
                    choice = signs[ok[rng.integers(ok.size)]]
                    break
            if picked is not None:
                used += picked + 1
                row = np.zeros(n0, dtype=np.int64)
                row[supports[picked]] = choice
                rows = np.vstack([rows, row])
                break
            step = min(batch, budget - used)
            used += step
            misses += step
    return rows, used


def orthogonal_with_zeros(
    params: Type2Params, seed=0, *, max_trials: int = 1_000_000, stall: int = 5_000
) -> CodingMatrix:
    """Randomized search for an orthogonal coding matrix containing zeros.

    Rows are built one at a time.  Each trial draws a random support of
    ``row_nonzeros`` positions and tries every sign pattern on it (a random
    sample of patterns when the support is large); a row is accepted when
    orthogonal to all previous rows.  Past trials are not remembered.  An
    attempt that goes ``stall`` trials without placing a row starts over.

    The returned matrix has redundant columns removed (see
    :func:`prune_columns`); the searched matrix is kept in ``unpruned``.
    Removing columns generally breaks exact orthogonality, which is why
    these matrices are decoded with the general least-squares solver.
    """
    if not isinstance(params, Type2Params):
        params = Type2Params(*params)
    m, n0, k = params.n_classes, params.initial_codes, params.row_nonzeros
    rng = np.random.default_rng(seed)
    used = 0
    attempts = 0
    while used < max_trials:
        attempts += 1
        rows, spent = _zeros_attempt(rng, m, n0, k, max_trials - used, stall)
        used += spent
        if rows is None:
            continue
        kept, _ = prune_columns(rows)
        if kept.shape[1] == 0:
            continue
        A = CodingMatrix(kept, MatrixKind.ORTHOGONAL_ZEROS, unpruned=rows)
        if not A.violations():
            return A
    # the attempt count reported is the number of support draws (trials)
    raise SearchFailed(
        f"no {m}x{n0} orthogonal coding matrix with {k} nonzeros per row ({attempts} restarts)",
        used,
    )


# --------------------------------------------------------------------------
# classical families


def one_vs_one(n_classes: int) -> CodingMatrix:
    """One column per class pair ``(i, j)``, ``i < j``, in lexicographic order."""
    m = int(n_classes)
    if m < 2:
        raise ValueError("need at least two classes")
    pairs = list(itertools.combinations(range(m), 2))
    a = np.zeros((m, len(pairs)), dtype=np.int64)
    for col, (i, j) in enumerate(pairs):
        a[i, col] = 1
        a[j, col] = -1
    return CodingMatrix(a, MatrixKind.ONE_VS_ONE).check()


def _one_vs_rest_entries(m):
    return 2 * np.eye(m, dtype=np.int64) - 1


def one_vs_rest(n_classes: int) -> CodingMatrix:
    """Column ``j`` puts class ``j`` on the +1 side and all others on -1."""
    m = int(n_classes)
    if m < 2:
        raise ValueError("need at least two classes")
    return CodingMatrix(_one_vs_rest_entries(m), MatrixKind.ONE_VS_REST).check()


def max_random_columns(n_classes: int) -> int:
    """Number of distinct mixed-sign ``+-1`` columns up to negation."""
    return 2 ** (n_classes - 1) - 1


def random_dense(n_classes: int, n_codes: int | None = None, seed=0) -> CodingMatrix:
    """Random ``+-1`` coding matrix with distinct, mixed-sign columns.

    Columns are drawn uniformly from the mixed-sign vectors and kept when
    they do not repeat (or negate) an earlier column.  Each column is stored
    with a +1 for class 0.  ``n_codes`` defaults to
    :func:`dense_code_length`.
    """
    m = int(n_classes)
    if m < 2:
        raise ValueError("need at least two classes")
    n = dense_code_length(m) if n_codes is None else int(n_codes)
    if n < 1:
        raise ValueError("need at least one column")
    available = max_random_columns(m)
    if n > available:
        raise ValueError(f"only {available} distinct admissible columns exist for {m} classes, asked for {n}")
    rng = np.random.default_rng(seed)
    cols, seen = [], set()
    while len(cols) < n:
        col = 2 * rng.integers(0, 2, size=m, dtype=np.int64) - 1
        if abs(col.sum()) == m:
            continue
        if col[0] < 0:
            col = -col
        key = col.tobytes()
        if key in seen:
            continue
        seen.add(key)
        cols.append(col)
    return CodingMatrix(np.column_stack(cols), MatrixKind.RANDOM_DENSE).check()


FAMILIES = tuple(k.value for k in MatrixKind if k is not MatrixKind.CUSTOM)


def make_coding_matrix(family, n_classes: int, n_codes: int | None = None, seed=0) -> CodingMatrix:
    """Build a matrix of the named family (see :class:`MatrixKind` values)."""
    kind = MatrixKind(family)
    if kind is MatrixKind.ONE_VS_ONE:
        return one_vs_one(n_classes)
    if kind is MatrixKind.ONE_VS_REST:
        return one_vs_rest(n_classes)
    if kind is MatrixKind.RANDOM_DENSE:
        return random_dense(n_classes, n_codes, seed)
    if kind is MatrixKind.ORTHOGONAL_DENSE:
        return greedy_orthogonal_dense(n_classes, seed)
    if kind is MatrixKind.ORTHOGONAL_ZEROS:
        params = type2_params(n_classes)
        if n_codes is not None:
            params = Type2Params(params.n_classes, int(n_codes), min(params.row_nonzeros, int(n_codes)))
        return orthogonal_with_zeros(params, seed)
    if kind is MatrixKind.HARMONIC:
        if n_codes is not None:
            return harmonic_matrix(n_classes, n_codes)
        # smallest admissible length; not every (m, n) gives valid columns
        t0 = max(1, math.ceil(n_classes / 2))
        for t in range(t0, t0 + 4):
            try:
                return harmonic_matrix(n_classes, 2**t)
            except InvalidCodingMatrix as exc:
                last = exc
        raise last
    raise ValueError("custom matrices must be read from a file")


# --------------------------------------------------------------------------
# text format: "m n" header, then m rows of n integers from {-1, 0, 1}

_TOKENS = {"-1": -1, "0": 0, "1": 1}


def format_matrix(A) -> str:
    a = A.entries if isinstance(A, CodingMatrix) else _as_code_array(A)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in a)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, kind=MatrixKind.CUSTOM) -> CodingMatrix:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InvalidCodingMatrix("empty matrix text")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise InvalidCodingMatrix(f"line 1: expected 'm n', got {lines[0]!r}")
    m, n = int(header[0]), int(header[1])
    if m < 1 or n < 1:
        raise InvalidCodingMatrix("line 1: dimensions must be positive")
    if len(lines) != m + 1:
        raise InvalidCodingMatrix(f"expected {m} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != n:
            raise InvalidCodingMatrix(f"line {lineno}: expected {n} entries, found {len(tokens)}")
        try:
            rows.append([_TOKENS[t] for t in tokens])
        except KeyError as exc:
            raise InvalidCodingMatrix(f"line {lineno}: invalid token {exc.args[0]!r}") from None
    return CodingMatrix(np.array(rows, dtype=np.int64), kind)


def read_matrix(path, kind=MatrixKind.CUSTOM) -> CodingMatrix:
    return parse_matrix(Path(path).read_text(), kind)


def write_matrix(A, path) -> None:
    Path(path).write_text(format_matrix(A))
