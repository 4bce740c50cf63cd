"""L2-regularized logistic regression fitted by Newton's method."""

import numpy as np
from scipy.special import expit


def objective(params, X, y, alpha):
    """Penalized negative log-likelihood and its gradient.

    ``params`` is ``[w_1, ..., w_d, b]``; the intercept ``b`` is not
    penalized.
    """
    w, b = params[:-1], params[-1]
    raw = X @ w + b
    loss = np.sum(np.logaddexp(0.0, raw) - y * raw) + 0.5 * alpha * w @ w
    r = expit(raw) - y
    grad = np.empty_like(params)
    grad[:-1] = X.T @ r + alpha * w
    grad[-1] = r.sum()
    return float(loss), grad


class LogisticRegression:
    kind = "logistic_regression"

    def __init__(self, alpha=1.0, tol=1e-6, max_iter=100):
        self.alpha = alpha
        self.tol = tol
        self.max_iter = max_iter

    def get_params(self):
        return {"alpha": self.alpha, "tol": self.tol, "max_iter": self.max_iter}

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n, d = X.shape
        Xb = np.hstack([X, np.ones((n, 1))])
        reg = np.full(d + 1, self.alpha)
        reg[-1] = 0.0
        params = np.zeros(d + 1)
        loss, grad = objective(params, X, y, self.alpha)
        self.n_iter_ = 0
        for it in range(self.max_iter):
            if np.max(np.abs(grad)) <= self.tol * max(1.0, n):
                break
            p = expit(Xb @ params)
            H = (Xb * (p * (1 - p))[:, None]).T @ Xb + np.diag(reg) + 1e-10 * np.eye(d + 1)
            direction = np.linalg.solve(H, grad)
            t = 1.0
            while True:
                trial = params - t * direction
                new_loss, new_grad = objective(trial, X, y, self.alpha)
                if new_loss <= loss - 1e-4 * t * grad @ direction or t < 1e-10:
                    break
                t /= 2.0
            step = np.max(np.abs(trial - params))
            params, loss, grad = trial, new_loss, new_grad
            self.n_iter_ = it + 1
            if step <= self.tol:
                break
        self.coef_ = params[:-1].copy()
        self.intercept_ = float(params[-1])
        return self

    def decision_function(self, X):
        return np.asarray(X, dtype=float) @ self.coef_ + self.intercept_

    def predict_proba(self, X):
        return expit(self.decision_function(X))

    def to_dict(self):
        return {"params": self.get_params(), "coef": self.coef_.tolist(),
                "intercept": self.intercept_}

    @classmethod
    def from_dict(cls, d):
        m = cls(**d["params"])
        m.coef_ = np.asarray(d["coef"], dtype=float)
        m.intercept_ = float(d["intercept"])
        return m
