"""Dense primal-dual interior-point method for small mixed SDP/LP problems.

Problem form (``y`` free, one PSD block plus a nonnegative block)::

    maximize    b . y
    subject to  Z(y) = C - sum_k y_k A_k   is PSD      (order N)
                z(y) = c - G y             >= 0        (L rows)

The paired problem minimises ``<C, X> + c . x`` over ``X`` PSD, ``x >= 0`` with
``<A_k, X> + G[:, k] . x = b_k``.  Iterates keep ``y`` strictly feasible (``Z``
and ``z`` are recomputed from ``y`` every step), so ``b . y`` is attained by an
actual feasible point.  The upper bound is certified from the final ``X, x``
using a priori bounds on ``y``; it does not rely on ``X, x`` being exactly
feasible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)


@dataclass
class SdpProblem:
    b: np.ndarray  # (p,)
    C: np.ndarray  # (N, N)
    A: np.ndarray  # (p, N, N), symmetric slices
    c: np.ndarray  # (L,)
    G: np.ndarray  # (L, p)
    y_lower: np.ndarray | None = None  # a priori box on y, used for the certified bound
    y_upper: np.ndarray | None = None

    @property
    def p(self) -> int:
        return self.b.shape[0]

    def slack(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        Z = self.C - np.tensordot(y, self.A, axes=1)
        return (Z + Z.T) / 2, self.c - self.G @ y


@dataclass
class SdpResult:
    status: str  # "optimal" | "max-iterations" | "infeasible"
    value: float  # b . y at a feasible y
    bound: float  # certified upper bound on the optimum (inf if unavailable)
    y: np.ndarray
    Z: np.ndarray
    iterations: int
    history: list[tuple[float, float]] = field(default_factory=list, repr=False)


def _max_step(M: np.ndarray, dM: np.ndarray) -> float:
    """Largest ``a`` (capped at an arbitrary large value) with ``M + a dM`` PSD; ``M`` PD."""
    try:
        L = np.linalg.cholesky(M)
    except np.linalg.LinAlgError:
        return 0.0
    Li = np.linalg.inv(L)
    S = Li @ dM @ Li.T
    lam = np.linalg.eigvalsh((S + S.T) / 2)[0]
    return np.inf if lam >= 0 else -1.0 / lam


def _max_step_lp(v: np.ndarray, dv: np.ndarray) -> float:
    neg = dv < 0
    if not neg.any():
        return np.inf
    return float(np.min(-v[neg] / dv[neg]))


def _solve_spd(M: np.ndarray, r: np.ndarray) -> np.ndarray:
    try:
        L = np.linalg.cholesky(M)
        return np.linalg.solve(L.T, np.linalg.solve(L, r))
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(M, r, rcond=None)[0]


def certified_bound(prob: SdpProblem, X: np.ndarray, x: np.ndarray) -> float:
    """Upper bound on ``max b.y`` valid for any ``X`` PSD-clipped and ``x`` clipped at 0."""
    if prob.y_lower is None or prob.y_upper is None:
        return np.inf
    w, V = np.linalg.eigh((X + X.T) / 2)
    Xc = (V * np.clip(w, 0, None)) @ V.T
    xc = np.clip(x, 0, None)
    r = prob.b - np.einsum("kab,ab->k", prob.A, Xc) - prob.G.T @ xc
    slack_term = np.maximum(r * prob.y_lower, r * prob.y_upper).sum()
    return float(np.sum(prob.C * Xc) + prob.c @ xc + slack_term)


def solve_sdp(
    prob: SdpProblem,
    y0: np.ndarray,
    tol: float = 1e-8,
    max_iter: int = 100,
    step: float = 0.95,
    stop_above: float | None = None,
) -> SdpResult:
    """Mehrotra-type predictor-corrector with the HKM direction from a feasible ``y0``.

    ``stop_above`` ends the run as soon as ``b.y`` exceeds it (used for phase one).
    """
    y = np.array(y0, dtype=float)
    Z, z = prob.slack(y)
    N, L, p = prob.C.shape[0], prob.c.shape[0], prob.p
    if np.linalg.eigvalsh(Z)[0] <= 0 or (L and z.min() <= 0):
        raise ValueError("starting point is not strictly feasible")
    nu = N + L
    scale = max(1.0, float(np.abs(prob.b).max(initial=0.0)))
    X = np.eye(N) * scale
    x = np.ones(L) * scale
    Aflat = prob.A.reshape(p, N * N)
    history = []
    status = "max-iterations"
    it = 0
    for it in range(1, max_iter + 1):
        Zinv = np.linalg.inv(Z)
        Zinv = (Zinv + Zinv.T) / 2
        rp = prob.b - Aflat @ X.ravel() - prob.G.T @ x
        mu = (np.sum(X * Z) + x @ z) / nu
        pobj = float(np.sum(prob.C * X) + prob.c @ x)
        dobj = float(prob.b @ y)
        history.append((pobj, dobj))
        feas = np.linalg.norm(rp) / (1 + np.linalg.norm(prob.b))
        gap = (pobj - dobj) / (1 + abs(dobj))
        if stop_above is not None and dobj > stop_above:
            status = "optimal"
            break
        if feas < tol and abs(gap) < tol and mu * nu / (1 + abs(dobj)) < tol:
            status = "optimal"
            break

        # Schur complement M_ij = <A_i, X A_j Zinv> + G_i . (x/z) G_j
        T = np.matmul(np.matmul(X, prob.A), Zinv)  # (p, N, N)
        M = Aflat @ T.transpose(0, 2, 1).reshape(p, N * N).T
        M = (M + M.T) / 2 + prob.G.T @ (prob.G * (x / z)[:, None])

        def direction(Rc: np.ndarray, rc: np.ndarray):
            rhs = prob.b - Aflat @ (Rc @ Zinv).ravel() - prob.G.T @ (rc / z)
            dy = _solve_spd(M, rhs)
            dZ = -np.tensordot(dy, prob.A, axes=1)
            dz = -prob.G @ dy
            dX = Rc @ Zinv - X - X @ dZ @ Zinv
            dX = (dX + dX.T) / 2
            dx = rc / z - x - x * dz / z
            return dy, dX, dx, dZ, dz

        I = np.eye(N)
        dy, dX, dx, dZ, dz = direction(np.zeros((N, N)), np.zeros(L))
        ap = min(1.0, _max_step(X, dX), _max_step_lp(x, dx))
        ad = min(1.0, _max_step(Z, dZ), _max_step_lp(z, dz))
        mu_aff = (np.sum((X + ap * dX) * (Z + ad * dZ)) + (x + ap * dx) @ (z + ad * dz)) / nu
        sigma = min(1.0, (max(mu_aff, 0.0) / mu) ** 3)
        Rc = sigma * mu * I - dX @ dZ
        rc = sigma * mu - dx * dz
        dy, dX, dx, dZ, dz = direction(Rc, rc)
        ap = min(1.0, step * _max_step(X, dX), step * _max_step_lp(x, dx))
        ad = min(1.0, step * _max_step(Z, dZ), step * _max_step_lp(z, dz))
        X = X + ap * dX
        X = (X + X.T) / 2
        x = x + ap * dx
        y_new = y + ad * dy
        Z_new, z_new = prob.slack(y_new)
        # recomputed slacks can lose positivity to rounding on tiny steps
        while ad > 1e-12 and (np.linalg.eigvalsh(Z_new)[0] <= 0 or (L and z_new.min() <= 0)):
            ad *= 0.5
            y_new = y + ad * dy
            Z_new, z_new = prob.slack(y_new)
        y, Z, z = y_new, Z_new, z_new
        if ap < 1e-12 and ad < 1e-12:
            log.debug("interior point stalled at iteration %d", it)
            break
    bound = certified_bound(prob, X, x)
    return SdpResult(status, float(prob.b @ y), bound, y, Z, it, history)


def find_interior(prob: SdpProblem, tol: float = 1e-8, max_iter: int = 100) -> np.ndarray | None:
    """Strictly feasible ``y`` via a margin-maximisation phase one, or ``None``."""
    p, N, L = prob.p, prob.C.shape[0], prob.c.shape[0]
    # variables (y, s): maximise s with Z(y) - s I PSD, z(y) - s >= 0, s <= 1
    A = np.concatenate([prob.A, np.eye(N)[None]], axis=0)
    G = np.block([[prob.G, np.ones((L, 1))], [np.zeros((1, p)), np.ones((1, 1))]])
    c = np.concatenate([prob.c, [1.0]])
    b = np.zeros(p + 1)
    b[-1] = 1.0
    phase = SdpProblem(b, prob.C, A, c, G)
    s0 = min(np.linalg.eigvalsh(prob.C)[0], prob.c.min(initial=np.inf), 1.0) - 1.0
    start = np.zeros(p + 1)
    start[-1] = s0
    res = solve_sdp(phase, start, tol=tol, max_iter=max_iter, stop_above=1e-6)
    if res.value <= 1e-9:
        return None
    return res.y[:-1]
