"""scikit-learn compatible wrappers around the SVM and GSVM trainers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.multiclass import unique_labels
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .core import DataSet
from .generalized import (
    GsvmModel,
    gsvm_objective_min,
    gsvm_row_solution,
    gsvm_train,
)
from .svm import svm_oracle, svm_train


def _encode_binary(estimator, y):
    classes = unique_labels(y)
    if len(classes) != 2:
        raise ValueError(
            f"{type(estimator).__name__} is a binary classifier; got {len(classes)} classes")
    estimator.classes_ = classes
    # classes_[1] is the positive class
    return np.where(y == classes[1], 1, -1)


def _decode(estimator, signed):
    return estimator.classes_[(np.asarray(signed) > 0).astype(int)]


class HardMarginSVC(ClassifierMixin, BaseEstimator):
    """Hard-margin linear support vector classifier.

    Parameters
    ----------
    tol : float, default=1e-9
        Feasibility and complementarity tolerance.
    solver : {"active-set", "enumeration"}, default="active-set"
        ``"enumeration"`` runs the brute-force subset solver, which is only
        available for up to 12 points in at most 4 dimensions.

    Attributes
    ----------
    coef_ : ndarray of shape (n_features,)
    intercept_ : float
    support_ : ndarray of int
        Indices of points with functional margin 1.
    dual_coef_ : ndarray of shape (n_samples,)
        KKT multipliers, one per training point.
    classes_ : ndarray of shape (2,)
        Class labels; ``classes_[1]`` plays the role of +1.
    """

    def __init__(self, tol=1e-9, solver="active-set"):
        self.tol = tol
        self.solver = solver

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        signed = _encode_binary(self, y)
        if self.solver == "active-set":
            solve = svm_train
        elif self.solver == "enumeration":
            solve = svm_oracle
        else:
            raise ValueError(f"unknown solver {self.solver!r}")
        sol = solve(DataSet(X, signed), tol=self.tol)
        self.solution_ = sol
        self.coef_ = np.array(sol.w)
        self.intercept_ = sol.b
        self.support_ = np.array(sol.support_indices, dtype=int)
        self.dual_coef_ = np.array(sol.dual_coef)
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X):
        check_is_fitted(self, ["coef_", "intercept_"])
        X = check_array(X)
        return X @ self.coef_ + self.intercept_

    def predict(self, X):
        # ties (decision value 0) go to the positive class
        return _decode(self, self.decision_function(X) >= 0)


class GSVMClassifier(ClassifierMixin, BaseEstimator):
    """Generalized SVM with control function F(x) = W x + B.

    Parameters
    ----------
    tol : float, default=1e-9
        Residual gate for the margin-equality system.
    active : {"all", "svm"} or array-like, default="all"
        Which training points are margin equalities; see
        :func:`gsvm.generalized.gsvm_train`.

    Attributes
    ----------
    model_ : GsvmModel
    W_, B_ : ndarray
    coef_, intercept_ :
        The common row of W and component of B when the rows agree,
        otherwise None.
    g_min_ : ndarray
        Componentwise minimum of the norm map over the rows of W.
    """

    def __init__(self, tol=1e-9, active="all"):
        self.tol = tol
        self.active = active

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if X.shape[1] < 1:
            raise ValueError("need at least one feature")
        signed = _encode_binary(self, y)
        model = gsvm_train(DataSet(X, signed), tol=self.tol, active=self.active)
        self.model_ = model
        self.W_ = np.array(model.W)
        self.B_ = np.array(model.B)
        self.g_min_ = gsvm_objective_min(model)
        if model.rows_equal(self.tol):
            h = gsvm_row_solution(model, tol=self.tol)
            self.coef_, self.intercept_ = np.array(h.w), h.b
        else:
            self.coef_, self.intercept_ = None, None
        self.n_features_in_ = X.shape[1]
        return self

    def control_function(self, X):
        """F(x) for every row of X, shape (n_samples, n_features)."""
        check_is_fitted(self, ["W_", "B_"])
        X = check_array(X)
        return X @ self.W_.T + self.B_

    def decision_function(self, X):
        # mean over components; equal to each component for a trained model
        return self.control_function(X).mean(axis=1)

    def predict(self, X):
        return _decode(self, self.decision_function(X) >= 0)


__all__ = ["HardMarginSVC", "GSVMClassifier", "GsvmModel"]
