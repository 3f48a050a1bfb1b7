"""Levi-Civita connection of an adapted frame and the constant-curvature identities.

Curvature convention: R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z and
R_abcd = <R(e_a, e_b)e_c, e_d>.  On a space of constant curvature c this gives
R_abab = R_a(n+1)a(n+1) = -c, which is the sign the identities below are written in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ConnectionCoeffs,
    DegenerateKappa,
    IntegrabilityData,
    IntegrabilityJet,
    NotAdapted,
)

KAPPA_EPS = 1e-12


def p_from_f(f: np.ndarray) -> np.ndarray:
    """P^k_ij = (f^k_ij - f^j_ik - f^i_jk) / 2, vectorised over leading axes.

    The grouping ((f^k_ij - f^j_ik) - f^i_jk) makes P^k_ij = -P^j_ik hold bit-for-bit
    whenever f is exactly antisymmetric.
    """
    f = np.asarray(f, dtype=float)
    first = f - np.swapaxes(f, -1, -2)  # f[i,j,k] - f[i,k,j]
    # f^i_jk lives at f[j, k, i]
    third = np.moveaxis(f, -1, -3)  # third[..., i, j, k] = f[..., j, k, i]
    return 0.5 * (first - third)


def compute_P(data: IntegrabilityData) -> ConnectionCoeffs:
    return ConnectionCoeffs(p_from_f(data.f))


def nabla_coeffs(data: IntegrabilityData, P: ConnectionCoeffs | None = None) -> np.ndarray:
    """Table ``G[a, b, c]`` with nabla_{e_a} e_b = sum_c G[a, b, c] e_c over all n + 1 directions."""
    if P is None:
        P = compute_P(data)
    n = data.n
    N = n
    s, kap = data.sigma, data.kappa
    G = np.zeros((n + 1, n + 1, n + 1))
    G[:n, :n, :n] = P.P
    G[:n, :n, N] = -s
    G[N, N, :n] = kap
    G[:n, N, :n] = s
    G[N, :n, :n] = s
    G[N, :n, N] = -kap
    return G


def frame_derivative_P(jet: IntegrabilityJet) -> np.ndarray:
    """``dP[a, i, j, k]`` = e_a(P^k_ij), by linearity of P in f."""
    return p_from_f(jet.d_f)


@dataclass(frozen=True, eq=False)
class CurvatureResiduals:
    """Residuals of the four constant-curvature identities (0-based storage).

    r1[a, c, d]  <R(e_a, e_N)e_c, e_d>          target 0
    r2[a, b]     <R(e_a, e_b)e_a, e_b>, a != b  target -c
    r3[a]        <R(e_a, e_N)e_a, e_N>          target -c
    r4[a, c]     <R(e_a, e_N)e_c, e_N>, a != c  target 0
    Diagonals of r2 and r4 carry no identity and are stored as 0.
    """

    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray
    r4: np.ndarray
    c: float

    def families(self) -> dict[str, np.ndarray]:
        return {"first": self.r1, "second": self.r2, "third": self.r3, "fourth": self.r4}

    def max_abs(self) -> dict[str, float]:
        return {k: float(np.max(np.abs(v))) if v.size else 0.0 for k, v in self.families().items()}

    def worst(self) -> float:
        return max(self.max_abs().values())


def curvature_components(jet: IntegrabilityJet) -> CurvatureResiduals:
    """Left-hand sides of the four identities, i.e. the frame curvature components.

    Returned in a CurvatureResiduals with ``c = nan``; these are the values the
    metric-based oracle must reproduce.
    """
    d = jet.base
    n = d.n
    N = n
    P = p_from_f(d.f)
    dP = frame_derivative_P(jet)
    f, s, kap = d.f, d.sigma, d.kappa
    dk = jet.d_kappa
    ds = jet.d_sigma

    L1 = (
        ds[:n]
        + np.einsum("ald,cl->acd", P, s)
        - np.einsum("acl,ld->acd", P, s)
        - kap[None, :, None] * s[:, None, :]
        + kap[None, None, :] * s[:, :, None]
        - kap[:, None, None] * s[None, :, :]
        # vanishes for basic frames; kept so the component is exact in general
        - dP[N]
    )

    L2 = (
        np.einsum("abab->ab", dP[:n])
        + np.einsum("bal,alb->ab", P, P)
        + 3.0 * s**2
        - np.einsum("baab->ab", dP[:n])
        - np.einsum("aal,blb->ab", P, P)
        - np.einsum("abl,lab->ab", f, P)
    )
    np.fill_diagonal(L2, 0.0)

    L3 = -np.sum(s**2, axis=1) - np.diagonal(dk[:n]) + np.einsum("aal,l->a", P, kap) + kap**2

    L4 = (
        -s @ s.T
        - dk[:n]
        + np.einsum("acl,l->ac", P, kap)
        + np.outer(kap, kap)
        + ds[N]
    )
    np.fill_diagonal(L4, 0.0)

    return CurvatureResiduals(L1, L2, L3, L4, float("nan"))


def curvature_residuals(jet: IntegrabilityJet, c: float) -> CurvatureResiduals:
    comp = curvature_components(jet)
    off = ~np.eye(jet.n, dtype=bool)
    r2 = np.where(off, comp.r2 + c, 0.0)
    r3 = comp.r3 + c
    return CurvatureResiduals(comp.r1, r2, r3, comp.r4, float(c))


def adaptation_defect(kappa: np.ndarray, sigma: np.ndarray) -> tuple[float, float]:
    """(max |kappa_i|, i >= 2) and (max |sigma_ij|, |i - j| >= 2)."""
    kappa = np.asarray(kappa)
    sigma = np.asarray(sigma)
    n = len(kappa)
    kd = float(np.max(np.abs(kappa[1:]))) if n > 1 else 0.0
    far = np.abs(np.subtract.outer(np.arange(n), np.arange(n))) >= 2
    sd = float(np.max(np.abs(sigma[far]))) if far.any() else 0.0
    return kd, sd


def require_adapted(data: IntegrabilityData, tol: float) -> None:
    if data.n < 2:
        raise NotAdapted("adapted-frame relations need n >= 2")
    kd, sd = adaptation_defect(data.kappa, data.sigma)
    scale = max(1.0, float(np.max(np.abs(data.kappa))), float(np.max(np.abs(data.sigma))))
    if kd > tol * scale:
        raise NotAdapted(f"kappa_2..kappa_n not zero (max {kd:.3g})")
    if sd > tol * scale:
        raise NotAdapted(f"sigma not tridiagonal (max off-band {sd:.3g})")


def adapted_curvature_relations(
    jet: IntegrabilityJet, c: float, tol: float = 1e-9
) -> dict[str, np.ndarray]:
    """Residuals of the simplified curvature relations in an adapted frame.

    Requires kappa_2 = ... = kappa_n = 0 and tridiagonal sigma (NotAdapted
    otherwise) and kappa_1 != 0 (DegenerateKappa), since the fourth relation
    solves for P^1_im by dividing by kappa_1.  Index ranges of the returned
    arrays (1-based): ``ei_kappa1[i]``, ``ei_sigma12[i]``, ``e1_sigma2m[m]`` and
    ``e1_sigma_im[i, m]`` over 1..n; ``P1_im[i, m]`` over m = 2..n;
    ``P2_ij_sigma12[i, j]`` over j = 3..n; ``e1_sigma_im_tail[i, m]`` over i, m = 3..n.
    """
    d = jet.base
    require_adapted(d, tol)
    k1 = float(d.kappa[0])
    if abs(k1) < KAPPA_EPS:
        raise DegenerateKappa(f"|kappa_1| = {abs(k1):.3g} is below {KAPPA_EPS:g}")
    n = d.n
    P = p_from_f(d.f)
    s, kap = d.sigma, d.kappa
    dk, ds = jet.d_kappa, jet.d_sigma
    s12 = s[0, 1]
    delta = np.eye(n)

    ei_kappa1 = dk[:n, 0] - (-s12 * s[:, 1] + delta[0] * (k1**2 + c))
    e1_kappa1 = np.array(dk[0, 0] - (-(s12**2) + k1**2 + c))
    ei_sigma12 = ds[:n, 0, 1] - (
        P[:, 0, :] @ s[:, 1] + k1 * s[:, 1] + delta[0] * k1 * s12
    )
    P1 = P[:, :, 0]
    P1_im = (P1 - (s @ s.T - c * delta) / k1)[:, 1:]
    # sign of the P^l_i1 term follows from the first identity with (a, c, d) = (i, 1, j)
    P2_ij_sigma12 = (P[:, :, 1] * s12 - (-(P[:, 0, :] @ s) - k1 * s))[:, 2:]
    e1_sigma2m = ds[0, 1, :] - (
        P[0, 1, :] @ s - P[0, :, :] @ s[:, 1] - kap * s12 + k1 * s[1, :]
    )
    A = np.einsum("ml,li->im", P[0], s)  # sum_l P^l_1m sigma_li
    B = np.einsum("il,lm->im", P[0], s)  # sum_l P^l_1i sigma_lm
    e1_sigma_im = ds[0] - (
        -A + B - kap[None, :] * s[0][:, None] + k1 * s + kap[:, None] * s[0][None, :]
    )
    e1_sigma_im_tail = (ds[0] - (-A + B + k1 * s))[2:, 2:]

    return {
        "ei_kappa1": ei_kappa1,
        "e1_kappa1": e1_kappa1,
        "ei_sigma12": ei_sigma12,
        "P1_im": P1_im,
        "P2_ij_sigma12": P2_ij_sigma12,
        "e1_sigma2m": e1_sigma2m,
        "e1_sigma_im": e1_sigma_im,
        "e1_sigma_im_tail": e1_sigma_im_tail,
    }
