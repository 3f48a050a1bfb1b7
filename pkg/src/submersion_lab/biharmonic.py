"""Tension and bitension of a Riemannian submersion from its integrability jet."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .connection import KAPPA_EPS, p_from_f, require_adapted
from .core import (
    BaseRicci,
    DegenerateKappa,
    DimensionMismatch,
    IntegrabilityData,
    IntegrabilityJet,
)


@dataclass(frozen=True, eq=False)
class BitensionResult:
    tension: np.ndarray
    residuals: np.ndarray
    tension_norm: float

    @property
    def harmonic(self) -> bool:
        return not np.any(self.tension)


def tension(data: IntegrabilityData) -> np.ndarray:
    """Coefficients of tau(phi) in the base frame: -kappa."""
    return -np.asarray(data.kappa, dtype=float)


def space_form_base_ricci(sigma: np.ndarray, c: float) -> BaseRicci:
    """Base Ricci forced by a total space of constant curvature c.

    From the horizontal sectional curvature relation K_N = c + 3|A|^2:
    Ricci^N_ij = (n - 1) c delta_ij + 3 sum_b sigma_ib sigma_jb.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0]
    return BaseRicci((n - 1) * c * np.eye(n) + 3.0 * sigma @ sigma.T)


def _bitension_parts(jet: IntegrabilityJet) -> tuple[np.ndarray, np.ndarray]:
    d = jet.base
    n = d.n
    P = p_from_f(d.f)
    dP = p_from_f(jet.d_f)  # dP[a, i, j, k] = e_a(P^k_ij)
    kap = d.kappa
    dk = jet.d_kappa[:n]  # dk[i, k] = e_i(kappa_k)

    laplace = (
        jet.dd_kappa_diag.sum(axis=0)
        - np.einsum("iij,jk->k", P, dk)
        - kap @ dk
    )
    bracket = (
        2.0 * np.einsum("ij,ijk->k", dk, P)
        + np.einsum("j,iijk->k", kap, dP[:n])
        + np.einsum("j,ijl,ilk->k", kap, P, P)
        - np.einsum("i,j,ijk->k", kap, kap, P)
        - np.einsum("j,iil,ljk->k", kap, P, P)
    )
    return laplace, bracket


def bitension_residual(jet: IntegrabilityJet, ricci: BaseRicci) -> BitensionResult:
    """Left-hand side of the biharmonic equation for each k = 1..n.

    mu = sum_i kappa_i e_i, so Ricci^N(dphi(mu), dphi(e_k)) = sum_i kappa_i Ricci_ik.
    """
    n = jet.n
    if ricci.n != n:
        raise DimensionMismatch(f"ricci is {ricci.n}x{ricci.n}, jet has n = {n}")
    laplace, bracket = _bitension_parts(jet)
    kap = jet.base.kappa
    res = laplace + bracket + kap @ ricci.values
    t = tension(jet.base)
    return BitensionResult(t, res, float(np.sqrt(np.sum(kap**2))))


def laplacian_kappa1(jet: IntegrabilityJet) -> float:
    """Delta kappa_1 in an adapted frame.

    The vertical second derivative e_{n+1}e_{n+1}(kappa_1) is included so that the
    value equals the k = 1 Laplacian part of the full equation for any jet; it
    vanishes on data that is constant along the fibres.
    """
    n = jet.n
    P = p_from_f(jet.base.f)
    dk = jet.d_kappa[:n, 0]
    k1 = jet.base.kappa[0]
    return float(
        jet.dd_kappa_diag[:, 0].sum() - np.einsum("iij,j->", P, dk) - k1 * jet.d_kappa[0, 0]
    )


def simplified_residuals(
    jet: IntegrabilityJet, c: float, *, offdiagonal_ricci: bool = True, tol: float = 1e-9
) -> tuple[float, np.ndarray]:
    """The adapted-frame biharmonic system: (k = 1 residual, residuals for k = 2..n).

    Uses Ricci^N(dphi(mu), dphi(e_1)) = 3 kappa_1 sigma_12^2 + (n - 1) kappa_1 c.
    For k != 1 the same space-form Ricci contributes 3 kappa_1 sum_b sigma_1b sigma_kb,
    which is 3 kappa_1 sigma_12 sigma_k2 for tridiagonal sigma and is nonzero at k = 3
    when sigma_12 sigma_23 != 0.  Pass ``offdiagonal_ricci=False`` to drop it.
    """
    d = jet.base
    require_adapted(d, tol)
    n = d.n
    P = p_from_f(d.f)
    dP = p_from_f(jet.d_f)
    s = d.sigma
    k1 = float(d.kappa[0])
    kap = d.kappa
    dk1 = jet.d_kappa[:n, 0]

    r1 = (
        laplacian_kappa1(jet)
        - k1 * np.sum(P[:, 0, :] ** 2)
        + 3.0 * k1 * s[0, 1] ** 2
        + (n - 1) * k1 * c
    )
    rk = (
        2.0 * dk1 @ P[:, 0, :]
        + k1 * np.einsum("iik->k", dP[:n, :, 0, :])
        + k1 * np.einsum("il,ilk->k", P[:, 0, :], P)
        - k1 * kap @ P[:, 0, :]
        - k1 * np.einsum("iil,lk->k", P, P[:, 0, :])
    )
    if offdiagonal_ricci:
        rk = rk + 3.0 * k1 * (s @ s[0])
    return float(r1), rk[1:]


def key_identity_residual(data: IntegrabilityData, c: float, tol: float = 1e-9) -> float:
    """kappa_1^2 + sigma_12^2 - 2 sum_{i,m} sigma_im^2 + (2n - 1) c, in an adapted frame."""
    require_adapted(data, tol)
    n = data.n
    s = data.sigma
    return float(data.kappa[0] ** 2 + s[0, 1] ** 2 - 2.0 * np.sum(s**2) + (2 * n - 1) * c)


def key_identity_banded(data: IntegrabilityData, c: float) -> float:
    """Same scalar written with the superdiagonal only: -4 sum_i sigma_{i,i+1}^2."""
    n = data.n
    s = data.sigma
    band = np.sum(np.diagonal(s, 1) ** 2)
    return float(data.kappa[0] ** 2 + s[0, 1] ** 2 - 4.0 * band + (2 * n - 1) * c)


def e1_identity_residual(data: IntegrabilityData, c: float, tol: float = 1e-9) -> float:
    require_adapted(data, tol)
    k1 = float(data.kappa[0])
    if abs(k1) < KAPPA_EPS:
        raise DegenerateKappa(f"|kappa_1| = {abs(k1):.3g} is below {KAPPA_EPS:g}")
    n = data.n
    s = data.sigma
    s12sq = s[0, 1] ** 2
    return float(4.0 * s12sq + s12sq / k1**2 * np.sum(s[1:, 1] ** 2) + (2 * n - 2) * c)


def eek_identity_residual(jet: IntegrabilityJet, c: float, a: int) -> float:
    """e_{n+1}e_{n+1}(kappa_a) + kappa_a (|kappa|^2 + (2n - 1) c), ``a`` 1-based."""
    n = jet.n
    if not 1 <= a <= n:
        raise IndexError(f"a must be in 1..{n}, got {a}")
    kap = jet.base.kappa
    ka = kap[a - 1]
    return float(jet.dd_kappa_diag[n, a - 1] + ka * (np.sum(kap**2) + (2 * n - 1) * c))


def fiber_constancy_report(grid_jets) -> tuple[float, float, float]:
    """Max |e_{n+1}(f)|, |e_{n+1}(kappa)|, |e_{n+1}(sigma)| over the given jets."""
    mf = mk = ms = 0.0
    for jet in grid_jets:
        N = jet.n
        mf = max(mf, float(np.max(np.abs(jet.d_f[N]))))
        mk = max(mk, float(np.max(np.abs(jet.d_kappa[N]))))
        ms = max(ms, float(np.max(np.abs(jet.d_sigma[N]))))
    return mf, mk, ms
