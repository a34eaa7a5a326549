"""Logistic-regression base learner and the coding-matrix meta-classifier."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.special import expit
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.multiclass import check_classification_targets
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import decode as _decode
from .codes import CodingMatrix, MatrixKind, format_matrix, make_coding_matrix, parse_matrix
from .exceptions import TrainingDiverged, UntrainableColumn

__all__ = [
    "LogisticBinaryClassifier",
    "ECOCClassifier",
    "partition_dataset",
    "train_logistic",
    "train_multiclass",
    "predict_proba",
    "predict_class",
    "save_model",
    "load_model",
]

MODEL_FORMAT = "ortho-ecoc-model"
MODEL_VERSION = 1


def _dense(X):
    if sp.issparse(X):
        return X.toarray()
    return np.asarray(X, dtype=np.float64)


class LogisticBinaryClassifier(ClassifierMixin, BaseEstimator):
    """L2-regularized logistic regression trained by batch gradient descent.

    The decision value is ``2 sigmoid(w.x + b) - 1 = P(+1|x) - P(-1|x)``.

    Parameters
    ----------
    l2_lambda : float
        Weight of ``0.5 |w|^2`` added to the mean log-loss (bias excluded).
    learning_rate : float
        Initial step; halved whenever a step would raise the loss and
        grown by 25% after each accepted step.
    max_epochs : int
    tol : float
        Stop once the gradient norm falls below this.
    """

    def __init__(self, l2_lambda=1e-3, learning_rate=1.0, max_epochs=1000, tol=1e-6):
        self.l2_lambda = l2_lambda
        self.learning_rate = learning_rate
        self.max_epochs = max_epochs
        self.tol = tol

    def _loss_grad(self, X, s, w, b):
        z = X @ w + b
        margin = s * z
        loss = np.mean(np.logaddexp(0.0, -margin)) + 0.5 * self.l2_lambda * (w @ w)
        coef = -s * expit(-margin) / X.shape[0]
        return loss, X.T @ coef + self.l2_lambda * w, coef.sum()

    def fit(self, X, y):
        X, y = check_X_y(X, y, accept_sparse="csr", dtype=np.float64)
        X = _dense(X)
        check_classification_targets(y)
        self.classes_ = np.unique(y)
        if self.classes_.size != 2:
            raise ValueError(f"binary training needs exactly two classes, got {self.classes_.size}")
        s = np.where(y == self.classes_[1], 1.0, -1.0)

        w = np.zeros(X.shape[1])
        b = 0.0
        lr = float(self.learning_rate)
        loss, gw, gb = self._loss_grad(X, s, w, b)
        epoch = 0
        for epoch in range(1, int(self.max_epochs) + 1):
            if np.sqrt(gw @ gw + gb * gb) < self.tol:
                break
            for _ in range(60):
                w_new, b_new = w - lr * gw, b - lr * gb
                new_loss, new_gw, new_gb = self._loss_grad(X, s, w_new, b_new)
                if not np.isfinite(new_loss):
                    raise TrainingDiverged(f"non-finite loss at epoch {epoch} with step {lr:.3g}")
                if new_loss <= loss:
                    break
                lr *= 0.5
            else:
                break
            w, b, loss, gw, gb = w_new, b_new, new_loss, new_gw, new_gb
            lr *= 1.25
        self.coef_ = w
        self.intercept_ = float(b)
        self.n_epochs_ = epoch
        self.loss_ = float(loss)
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        check_is_fitted(self)
        X = _dense(check_array(X, accept_sparse="csr", dtype=np.float64))
        return 2.0 * expit(X @ self.coef_ + self.intercept_) - 1.0

    def predict_proba(self, X):
        pos = 0.5 * (self.decision_function(X) + 1.0)
        return np.column_stack([1.0 - pos, pos])

    def predict(self, X):
        return self.classes_[(self.decision_function(X) > 0).astype(int)]


def partition_dataset(X, y, column):
    """Relabel samples for one coding-matrix column.

    Classes marked +1/-1 become +1/-1 samples; classes marked 0 are dropped.

    Raises
    ------
    UntrainableColumn
        If either side ends up without samples.
    """
    column = np.asarray(column)
    y = np.asarray(y)
    signs = column[y]
    keep = signs != 0
    labels = signs[keep].astype(np.float64)
    if not (np.any(labels > 0) and np.any(labels < 0)):
        raise UntrainableColumn("column leaves one side of the partition empty")
    return X[keep], labels


def train_logistic(X, y, **params) -> LogisticBinaryClassifier:
    return LogisticBinaryClassifier(**params).fit(X, y)


class ECOCClassifier(ClassifierMixin, BaseEstimator):
    """Multi-class classifier built from one logistic model per code column.

    Parameters
    ----------
    family : str
        Coding-matrix family: ``"ortho-dense"``, ``"ortho-zeros"``,
        ``"harmonic"``, ``"one-vs-one"``, ``"one-vs-rest"`` or ``"random"``.
    solver : str
        ``"auto"``, ``"fast"``, ``"lsq"``, ``"kkt"`` or ``"vote"``.  Auto
        picks the fast orthogonal decoder for dense orthogonal matrices, the
        KKT decoder for one-vs-one and least squares otherwise.
    n_codes : int, optional
        Code length for families that take one.
    coding_matrix : CodingMatrix or array-like, optional
        Use this matrix instead of generating one.
    random_state : int
        Seed for randomized matrix families.
    standardize : bool
        Scale features to zero mean and unit variance on the training data.
    l2_lambda, learning_rate, max_epochs, tol
        Passed to every :class:`LogisticBinaryClassifier`.
    n_jobs : int, optional
        Threads used to train the columns; results do not depend on it.
    """

    def __init__(
        self,
        family="ortho-dense",
        solver="auto",
        n_codes=None,
        coding_matrix=None,
        random_state=0,
        standardize=True,
        l2_lambda=1e-3,
        learning_rate=1.0,
        max_epochs=1000,
        tol=1e-6,
        n_jobs=None,
    ):
        self.family = family
        self.solver = solver
        self.n_codes = n_codes
        self.coding_matrix = coding_matrix
        self.random_state = random_state
        self.standardize = standardize
        self.l2_lambda = l2_lambda
        self.learning_rate = learning_rate
        self.max_epochs = max_epochs
        self.tol = tol
        self.n_jobs = n_jobs

    def _base_params(self):
        return dict(
            l2_lambda=self.l2_lambda,
            learning_rate=self.learning_rate,
            max_epochs=self.max_epochs,
            tol=self.tol,
        )

    def _build_matrix(self, n_classes):
        if self.coding_matrix is not None:
            A = self.coding_matrix
            A = A if isinstance(A, CodingMatrix) else CodingMatrix(A)
            if A.n_classes != n_classes:
                raise ValueError(f"coding matrix has {A.n_classes} rows but the data has {n_classes} classes")
            return A
        return make_coding_matrix(self.family, n_classes, self.n_codes, seed=self.random_state)

    def fit(self, X, y):
        X, y = check_X_y(X, y, accept_sparse="csr", dtype=np.float64)
        X = _dense(X)
        check_classification_targets(y)
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        A = self._build_matrix(self.classes_.size)
        self.solver_ = _decode.check_solver(A, self.solver)
        self.coding_matrix_ = A

        if self.standardize:
            self.mean_ = X.mean(axis=0)
            scale = X.std(axis=0)
            self.scale_ = np.where(scale > 0, scale, 1.0)
        else:
            self.mean_ = np.zeros(X.shape[1])
            self.scale_ = np.ones(X.shape[1])
        Z = (X - self.mean_) / self.scale_

        def fit_column(j):
            try:
                Xj, sj = partition_dataset(Z, y_idx, A.entries[:, j])
            except UntrainableColumn as exc:
                raise UntrainableColumn(f"column {j}: {exc}", column=j) from None
            return train_logistic(Xj, sj, **self._base_params())

        if self.n_jobs and self.n_jobs > 1:
            with ThreadPoolExecutor(self.n_jobs) as pool:
                self.estimators_ = list(pool.map(fit_column, range(A.n_codes)))
        else:
            self.estimators_ = [fit_column(j) for j in range(A.n_codes)]
        self._stack()
        self.n_features_in_ = X.shape[1]
        return self

    def _stack(self):
        self.coef_ = np.array([est.coef_ for est in self.estimators_])
        self.intercept_ = np.array([est.intercept_ for est in self.estimators_])

    def decision_function(self, X):
        """Binary decision values, shape ``(n_samples, n_codes)``."""
        check_is_fitted(self)
        X = _dense(check_array(X, accept_sparse="csr", dtype=np.float64))
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        Z = (X - self.mean_) / self.scale_
        return 2.0 * expit(Z @ self.coef_.T + self.intercept_) - 1.0

    def decode(self, R):
        """Decode decision values with the fitted solver."""
        check_is_fitted(self)
        return _decode.decode_batch(self.coding_matrix_, R, self.solver_)

    def predict_proba(self, X):
        if self.solver_ is _decode.SolverKind.VOTE_ONLY:
            raise ValueError("the vote-only solver does not produce probabilities")
        return self.decode(self.decision_function(X))

    def predict(self, X):
        R = self.decision_function(X)
        if self.solver_ is _decode.SolverKind.VOTE_ONLY:
            idx = _decode.vote(self.coding_matrix_, R)
        else:
            idx = np.argmax(self.decode(R), axis=1)
        return self.classes_[idx]


def train_multiclass(X, y, matrix, solver="auto", **params) -> ECOCClassifier:
    """Fit an :class:`ECOCClassifier` on a given coding matrix."""
    return ECOCClassifier(coding_matrix=matrix, solver=solver, **params).fit(X, y)


def predict_proba(model: ECOCClassifier, x) -> np.ndarray:
    """Class probabilities for one feature vector."""
    return model.predict_proba(np.atleast_2d(x))[0]


def predict_class(model: ECOCClassifier, x) -> int:
    """Index into ``model.classes_`` of the predicted class for one feature vector."""
    R = model.decision_function(np.atleast_2d(x))
    if model.solver_ is _decode.SolverKind.VOTE_ONLY:
        return int(_decode.vote(model.coding_matrix_, R)[0])
    return int(np.argmax(model.decode(R)[0]))


# --------------------------------------------------------------------------
# model file: JSON with the matrix in its text format and floats as decimals


def save_model(model: ECOCClassifier, path, label_names=None) -> None:
    check_is_fitted(model)
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "kind": model.coding_matrix_.kind.value,
        "matrix": format_matrix(model.coding_matrix_),
        "solver": model.solver_.value,
        "classes": model.classes_.tolist(),
        "label_names": list(label_names) if label_names is not None else None,
        "mean": model.mean_.tolist(),
        "scale": model.scale_.tolist(),
        "columns": [{"bias": est.intercept_, "weights": est.coef_.tolist()} for est in model.estimators_],
        "params": model._base_params(),
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_model(path) -> tuple[ECOCClassifier, list | None]:
    """Read a model file; returns the fitted classifier and its label names."""
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path} is not an {MODEL_FORMAT} file")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {doc.get('version')}")
    A = parse_matrix(doc["matrix"], MatrixKind(doc["kind"]))
    model = ECOCClassifier(coding_matrix=A, solver=doc["solver"], **doc["params"])
    model.coding_matrix_ = A
    model.solver_ = _decode.check_solver(A, doc["solver"])
    model.classes_ = np.array(doc["classes"])
    model.mean_ = np.array(doc["mean"], dtype=np.float64)
    model.scale_ = np.array(doc["scale"], dtype=np.float64)
    model.estimators_ = []
    for col in doc["columns"]:
        est = LogisticBinaryClassifier(**doc["params"])
        est.classes_ = np.array([-1.0, 1.0])
        est.coef_ = np.array(col["weights"], dtype=np.float64)
        est.intercept_ = float(col["bias"])
        est.n_features_in_ = est.coef_.size
        model.estimators_.append(est)
    if len(model.estimators_) != A.n_codes:
        raise ValueError("model file has a different number of columns than its matrix")
    model._stack()
    model.n_features_in_ = model.mean_.size
    return model, doc.get("label_names")
