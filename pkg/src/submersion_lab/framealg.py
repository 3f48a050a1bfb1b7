"""Householder normal form for (kappa, sigma): kappa onto e_1, sigma to skew tridiagonal.

The reflector is always I - 2 u u^T with u parallel to x - |x| e_1, i.e. x is sent
to +|x| e_1 (no sign-flip variant).  The first component of x - |x| e_1 is
evaluated as -(x_2^2 + ... + x_m^2) / (x_1 + |x|) when x_1 > 0, which is the same
number without the cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import NotSkew

ALIGN_EPS = 1e-14
SKEW_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class OrthogonalReduction:
    K: np.ndarray
    kappa_out: np.ndarray
    sigma_out: np.ndarray
    steps: int
    stages: tuple = field(default=(), repr=False)

    @property
    def chain_length(self) -> int:
        """Reflectors in the chain, identity stages included."""
        return len(self.stages)

    def orthogonality_defect(self) -> float:
        n = self.K.shape[0]
        return float(np.max(np.abs(self.K @ self.K.T - np.eye(n))))

    def tridiagonality_defect(self) -> float:
        n = self.sigma_out.shape[0]
        far = np.abs(np.subtract.outer(np.arange(n), np.arange(n))) >= 2
        return float(np.max(np.abs(self.sigma_out[far]))) if far.any() else 0.0


def _reflector_vector(x: np.ndarray) -> np.ndarray | None:
    """Unit u with (I - 2uu^T) x = |x| e_1, or None when the identity does the job."""
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        return None
    v = np.array(x, dtype=float)
    if v[0] > 0.0:
        v[0] = -np.dot(v[1:], v[1:]) / (v[0] + norm)
    else:
        v[0] = v[0] - norm
    vnorm = float(np.linalg.norm(v))
    if vnorm <= ALIGN_EPS * norm:
        return None
    return v / vnorm


def householder_reflector(x) -> np.ndarray:
    """H = I - 2uu^T with H x = (|x|, 0, ..., 0); the identity if x is already there."""
    x = np.asarray(x, dtype=float)
    m = x.shape[0]
    u = _reflector_vector(x)
    if u is None:
        return np.eye(m)
    return np.eye(m) - 2.0 * np.outer(u, u)


def normalize_kappa(kappa) -> tuple[np.ndarray, np.ndarray]:
    kappa = np.asarray(kappa, dtype=float)
    K0 = householder_reflector(kappa)
    out = np.zeros_like(kappa)
    out[0] = np.linalg.norm(kappa)
    return K0, out


def _check_skew(sigma: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(sigma)))) if sigma.size else 1.0
    defect = float(np.max(np.abs(sigma + sigma.T))) if sigma.size else 0.0
    if defect > SKEW_EPS * scale:
        raise NotSkew(f"sigma is not skew-symmetric (defect {defect:.3g})")


def skew_tridiagonalize(sigma, K0) -> OrthogonalReduction:
    """Run the reflector chain on S = K0 sigma K0^T.

    For p = 0..n-3 the column slice S[p+1:, p] is reflected onto its first
    coordinate by Q = blockdiag(I_{p+1}, H).  Every Q fixes e_1, so a kappa
    already aligned by K0 stays aligned.  ``kappa_out`` is left as zeros for the
    caller to fill.
    """
    sigma = np.asarray(sigma, dtype=float)
    K = np.array(K0, dtype=float)
    n = sigma.shape[0]
    if sigma.shape != (n, n) or K.shape != (n, n):
        raise ValueError("sigma and K0 must be square and of equal size")
    _check_skew(sigma)
    S = K @ sigma @ K.T
    stages = [K.copy()]
    steps = 0 if np.array_equal(K, np.eye(n)) else 1
    for p in range(n - 2):
        u = _reflector_vector(S[p + 1 :, p])
        Q = np.eye(n)
        if u is not None:
            Q[p + 1 :, p + 1 :] -= 2.0 * np.outer(u, u)
            K = Q @ K
            S = Q @ S @ Q.T
            steps += 1
        stages.append(Q)
    S = 0.5 * (S - S.T)
    return OrthogonalReduction(K, np.zeros(n), S, steps, tuple(stages))


def adapt_frame_data(kappa, sigma) -> OrthogonalReduction:
    """Orthogonal K with K kappa = (|kappa|, 0, ..., 0) and K sigma K^T skew tridiagonal.

    Pointwise only: the induced change of f depends on derivatives of K and is
    not computed here.
    """
    K0, kout = normalize_kappa(kappa)
    red = skew_tridiagonalize(sigma, K0)
    return OrthogonalReduction(red.K, kout, red.sigma_out, red.steps, red.stages)
