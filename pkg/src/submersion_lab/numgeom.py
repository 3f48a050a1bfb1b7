"""Finite-difference oracle: explicit chart submersions and everything extracted from them.

Nothing here uses the closed-form connection or curvature formulas.  Brackets
come from differencing the lifted frame, Christoffel symbols and curvature from
differencing the metric.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    BaseRicci,
    IntegrabilityData,
    IntegrabilityJet,
    SubmersionError,
)

log = logging.getLogger(__name__)

DEFAULT_H = 1e-3


class RankDeficient(SubmersionError, ValueError):
    pass


class OutOfDomain(SubmersionError, ValueError):
    pass


class SingularMetric(SubmersionError, ValueError):
    pass


class UnknownExample(SubmersionError, KeyError):
    pass


Array = np.ndarray


def _jacobian_fd(fun: Callable[[Array], Array], x: Array, step: float = 2e-3) -> Array:
    """Fourth-order central-difference Jacobian, columns indexed by x."""
    x = np.asarray(x, dtype=float)
    cols = []
    for a in range(x.size):
        e = np.zeros_like(x)
        e[a] = step
        d = (
            -fun(x + 2 * e) + 8 * fun(x + e) - 8 * fun(x - e) + fun(x - 2 * e)
        ) / (12 * step)
        cols.append(np.asarray(d, dtype=float))
    return np.stack(cols, axis=-1)


@dataclass(frozen=True)
class ChartSubmersion:
    """A Riemannian submersion written in one chart of the total space and one of the base.

    ``frame_base(y)`` returns an n x n matrix whose columns are the orthonormal
    base fields eps_1..eps_n in base coordinates.  ``curvature`` is the constant
    sectional curvature of the total space when there is one.
    """

    name: str
    dim_base: int
    metric_total: Callable[[Array], Array]
    metric_base: Callable[[Array], Array]
    projection: Callable[[Array], Array]
    frame_base: Callable[[Array], Array]
    domain_box: Array
    curvature: float | None = None
    base_ricci: Callable[[Array], Array] | None = None
    projection_jacobian: Callable[[Array], Array] | None = None
    description: str = ""
    params: dict = field(default_factory=dict)

    @property
    def dim_total(self) -> int:
        return self.dim_base + 1

    def center(self) -> Array:
        box = np.asarray(self.domain_box, dtype=float)
        return box.mean(axis=1)

    def contains(self, x: Array, margin: float = 0.1) -> bool:
        box = np.asarray(self.domain_box, dtype=float)
        pad = margin * (box[:, 1] - box[:, 0])
        return bool(np.all(x >= box[:, 0] - pad) and np.all(x <= box[:, 1] + pad))

    def sample_points(self, count: int, rng: np.random.Generator, shrink: float = 0.1) -> Array:
        box = np.asarray(self.domain_box, dtype=float)
        width = box[:, 1] - box[:, 0]
        lo = box[:, 0] + shrink * width
        hi = box[:, 1] - shrink * width
        return lo + (hi - lo) * rng.random((count, box.shape[0]))

    def jacobian(self, x: Array) -> Array:
        if self.projection_jacobian is not None:
            return np.asarray(self.projection_jacobian(x), dtype=float)
        return _jacobian_fd(self.projection, x)

    def ricci_base(self, y: Array, h: float = DEFAULT_H) -> BaseRicci:
        if self.base_ricci is not None:
            return BaseRicci(self.base_ricci(y))
        return BaseRicci(base_ricci_fd(self, y, h))


# --- frames and brackets -------------------------------------------------------


def horizontal_lift(cs: ChartSubmersion, x: Array, check_domain: bool = True) -> Array:
    """Columns e_1..e_n (horizontal lifts of the base frame) and e_{n+1} (unit vertical).

    The vertical field is the generalized cross product of the rows of dphi,
    normalized; it is smooth in x, which fixes its orientation consistently.
    """
    x = np.asarray(x, dtype=float)
    if check_domain and not cs.contains(x):
        raise OutOfDomain(f"{cs.name}: point {x} outside the domain box")
    n = cs.dim_base
    G = np.asarray(cs.metric_total(x), dtype=float)
    J = cs.jacobian(x)
    sv = np.linalg.svd(J, compute_uv=False)
    if sv[-1] <= 1e-12 * max(1.0, sv[0]):
        raise RankDeficient(f"{cs.name}: dphi has rank < {n} at {x}")
    Ginv_Jt = np.linalg.solve(G, J.T)
    eps = np.asarray(cs.frame_base(cs.projection(x)), dtype=float)
    lifts = Ginv_Jt @ np.linalg.solve(J @ Ginv_Jt, eps)
    v = np.array([(-1) ** a * np.linalg.det(np.delete(J, a, axis=1)) for a in range(n + 1)])
    v = v / np.sqrt(v @ G @ v)
    return np.column_stack([lifts, v])


def submersion_defect(cs: ChartSubmersion, x: Array) -> float:
    """Max deviation of the lifted frame from orthonormality, plus |dphi(e_a) - eps_a|."""
    E = horizontal_lift(cs, x)
    G = cs.metric_total(x)
    n = cs.dim_base
    ortho = np.max(np.abs(E.T @ G @ E - np.eye(n + 1)))
    J = cs.jacobian(x)
    eps = cs.frame_base(cs.projection(x))
    proj = np.max(np.abs(J @ E[:, :n] - eps))
    vert = np.max(np.abs(J @ E[:, n]))
    # base orthonormality of the documented frame
    H = cs.metric_base(cs.projection(x))
    base = np.max(np.abs(eps.T @ H @ eps - np.eye(n)))
    return float(max(ortho, proj, vert, base))


def lie_bracket_fd(V: Callable, W: Callable, x: Array, h: float = DEFAULT_H) -> Array:
    """[V, W](x) = V(W) - W(V) with centred differences along V(x) and W(x)."""
    x = np.asarray(x, dtype=float)
    v, w = np.asarray(V(x)), np.asarray(W(x))
    VW = (np.asarray(W(x + h * v)) - np.asarray(W(x - h * v))) / (2 * h)
    WV = (np.asarray(V(x + h * w)) - np.asarray(V(x - h * w))) / (2 * h)
    return VW - WV


def frame_derivatives(cs: ChartSubmersion, x: Array, h: float) -> tuple[Array, Array]:
    """Frame E(x) and ``D[a][:, b]`` = coordinate derivative of e_b along e_a."""
    E = horizontal_lift(cs, x)
    m = E.shape[0]
    D = np.empty((m, m, m))
    for a in range(m):
        Ep = horizontal_lift(cs, x + h * E[:, a])
        Em = horizontal_lift(cs, x - h * E[:, a])
        D[a] = (Ep - Em) / (2 * h)
    return E, D


def bracket_table(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> Array:
    """``C[a, b, c]`` = e_c component of [e_a, e_b] in the adapted frame."""
    E, D = frame_derivatives(cs, x, h)
    m = E.shape[0]
    C = np.empty((m, m, m))
    for a in range(m):
        for b in range(m):
            C[a, b] = np.linalg.solve(E, D[a][:, b] - D[b][:, a])
    return C


def data_from_brackets(C: Array) -> IntegrabilityData:
    n = C.shape[0] - 1
    f = C[:n, :n, :n]
    kappa = C[:n, n, n]
    sigma = -0.5 * C[:n, :n, n]
    asym = max(
        float(np.max(np.abs(f + f.transpose(1, 0, 2)))),
        float(np.max(np.abs(sigma + sigma.T))),
    )
    if asym:
        log.debug("antisymmetrizing extracted data (defect %.3g)", asym)
    f = 0.5 * (f - f.transpose(1, 0, 2))
    sigma = 0.5 * (sigma - sigma.T)
    return IntegrabilityData(n, f, kappa, sigma)


def extract_integrability_data(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> IntegrabilityData:
    return data_from_brackets(bracket_table(cs, x, h))


def verticality_defect(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> float:
    """Horizontal part of [e_i, e_{n+1}]; zero for lifts of base fields."""
    C = bracket_table(cs, x, h)
    n = cs.dim_base
    return float(np.max(np.abs(C[:n, n, :n])))


def _flow_rk4(cs: ChartSubmersion, x: Array, a: int, t: float) -> Array:
    def field_(p):
        return horizontal_lift(cs, p)[:, a]

    k1 = field_(x)
    k2 = field_(x + 0.5 * t * k1)
    k3 = field_(x + 0.5 * t * k2)
    k4 = field_(x + t * k3)
    return x + t / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def extract_jet(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> IntegrabilityJet:
    """Integrability data with first and diagonal second frame derivatives at x.

    First derivatives difference along straight lines x +- h e_a(x).  Second
    derivatives e_a e_a difference along the integral curve of e_a, located with
    one RK4 step of length h in each direction.
    """
    x = np.asarray(x, dtype=float)
    n = cs.dim_base
    m = n + 1
    E = horizontal_lift(cs, x)
    base = extract_integrability_data(cs, x, h)
    d_f = np.empty((m, n, n, n))
    d_kappa = np.empty((m, n))
    d_sigma = np.empty((m, n, n))
    dd = np.empty((m, n))
    for a in range(m):
        dp = extract_integrability_data(cs, x + h * E[:, a], h)
        dm = extract_integrability_data(cs, x - h * E[:, a], h)
        d_f[a] = (dp.f - dm.f) / (2 * h)
        d_kappa[a] = (dp.kappa - dm.kappa) / (2 * h)
        d_sigma[a] = (dp.sigma - dm.sigma) / (2 * h)
        kp = extract_integrability_data(cs, _flow_rk4(cs, x, a, h), h).kappa
        km = extract_integrability_data(cs, _flow_rk4(cs, x, a, -h), h).kappa
        dd[a] = (kp - 2 * base.kappa + km) / h**2
    return IntegrabilityJet(base, d_f, d_kappa, d_sigma, dd)


@dataclass(frozen=True, eq=False)
class GridJet:
    point: Array
    jet: IntegrabilityJet
    h: float


def grid_jets(cs: ChartSubmersion, points, h: float = DEFAULT_H) -> list[GridJet]:
    return [GridJet(np.asarray(p, dtype=float), extract_jet(cs, p, h), h) for p in points]


# --- metric oracle --------------------------------------------------------------


def christoffel_fd(metric: Callable[[Array], Array], x: Array, h: float = DEFAULT_H) -> Array:
    """``Gamma[c, a, b]`` = Gamma^c_ab from centred differences of the metric."""
    x = np.asarray(x, dtype=float)
    m = x.size
    g = np.asarray(metric(x), dtype=float)
    if abs(np.linalg.det(g)) < 1e-300 or np.linalg.cond(g) > 1e12:
        raise SingularMetric(f"metric is singular at {x}")
    dg = np.empty((m, m, m))  # dg[a, b, d] = d_a g_bd
    for a in range(m):
        e = np.zeros(m)
        e[a] = h
        dg[a] = (np.asarray(metric(x + e)) - np.asarray(metric(x - e))) / (2 * h)
    lowered = 0.5 * (
        dg.transpose(0, 1, 2)  # d_a g_bd -> [a, b, d]
        + dg.transpose(1, 0, 2)  # d_b g_ad -> [a, b, d]
        - dg.transpose(1, 2, 0)  # d_d g_ab -> [a, b, d]
    )
    ginv = np.linalg.inv(g)
    return np.einsum("cd,abd->cab", ginv, lowered)


@dataclass(frozen=True, eq=False)
class RiemannFD:
    up: Array  # up[d, a, b, c] = R^d_abc, R(d_a, d_b) d_c = R^d_abc d_d
    low: Array  # low[a, b, c, d] = <R(d_a, d_b) d_c, d_d>


def riemann_fd(metric: Callable[[Array], Array], x: Array, h: float = DEFAULT_H) -> RiemannFD:
    x = np.asarray(x, dtype=float)
    m = x.size
    Gam = christoffel_fd(metric, x, h)
    dGam = np.empty((m, m, m, m))  # dGam[e, c, a, b] = d_e Gamma^c_ab
    for e_ in range(m):
        e = np.zeros(m)
        e[e_] = h
        dGam[e_] = (christoffel_fd(metric, x + e, h) - christoffel_fd(metric, x - e, h)) / (2 * h)
    # R^d_abc = d_a Gamma^d_bc - d_b Gamma^d_ac + Gamma^e_bc Gamma^d_ae - Gamma^e_ac Gamma^d_be
    up = (
        np.einsum("adbc->dabc", dGam)
        - np.einsum("bdac->dabc", dGam)
        + np.einsum("ebc,dae->dabc", Gam, Gam)
        - np.einsum("eac,dbe->dabc", Gam, Gam)
    )
    g = np.asarray(metric(x), dtype=float)
    low = np.einsum("dabc,de->abce", up, g)
    return RiemannFD(up, low)


def frame_riemann(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> Array:
    """<R(e_a, e_b)e_c, e_d> in the adapted frame, from the metric alone."""
    R = riemann_fd(cs.metric_total, x, h).low
    E = horizontal_lift(cs, x)
    return np.einsum("ABCD,Aa,Bb,Cc,Dd->abcd", R, E, E, E, E)


def sectional_curvatures(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> Array:
    """K(e_a, e_b) for all frame pairs (diagonal is 0)."""
    Rf = frame_riemann(cs, x, h)
    K = np.einsum("abba->ab", Rf)
    np.fill_diagonal(K, 0.0)
    return K


def sectional_curvature_check(cs: ChartSubmersion, c: float, sample_points, h: float = DEFAULT_H) -> float:
    worst = 0.0
    m = cs.dim_total
    off = ~np.eye(m, dtype=bool)
    for p in sample_points:
        K = sectional_curvatures(cs, p, h)
        worst = max(worst, float(np.max(np.abs(K[off] - c))))
    return worst


def base_ricci_fd(cs: ChartSubmersion, y: Array, h: float = DEFAULT_H) -> Array:
    R = riemann_fd(cs.metric_base, y, h).low
    eps = np.asarray(cs.frame_base(y), dtype=float)
    Rf = np.einsum("ABCD,Aa,Bb,Cc,Dd->abcd", R, eps, eps, eps, eps)
    # Ric(X, Y) = sum_b <R(e_b, X)Y, e_b>
    ric = np.einsum("baib->ai", Rf)
    return 0.5 * (ric + ric.T)


def connection_fd(cs: ChartSubmersion, x: Array, h: float = DEFAULT_H) -> Array:
    """``G[a, b, c]`` = <nabla_{e_a} e_b, e_c> from Christoffel symbols of the metric."""
    E, D = frame_derivatives(cs, x, h)
    Gam = christoffel_fd(cs.metric_total, x, h)
    m = E.shape[0]
    out = np.empty((m, m, m))
    for a in range(m):
        for b in range(m):
            vec = D[a][:, b] + np.einsum("cij,i,j->c", Gam, E[:, a], E[:, b])
            out[a, b] = np.linalg.solve(E, vec)
    return out


def rotate_base_frame(cs: ChartSubmersion, rotation: Callable[[Array], Array] | Array, name: str | None = None) -> ChartSubmersion:
    """Same submersion with base frame eps'_i = sum_j R_ij eps_j (R orthogonal, possibly y-dependent)."""
    if callable(rotation):
        rot = rotation
    else:
        R = np.asarray(rotation, dtype=float)

        def rot(y):
            return R

    base_frame = cs.frame_base

    def frame(y):
        return np.asarray(base_frame(y)) @ np.asarray(rot(y)).T

    base_ricci = None
    if cs.base_ricci is not None:
        ric = cs.base_ricci

        def base_ricci(y):
            R_ = np.asarray(rot(y))
            return R_ @ np.asarray(ric(y)) @ R_.T

    return ChartSubmersion(
        name=name or f"{cs.name}-rotated",
        dim_base=cs.dim_base,
        metric_total=cs.metric_total,
        metric_base=cs.metric_base,
        projection=cs.projection,
        frame_base=frame,
        domain_box=cs.domain_box,
        curvature=cs.curvature,
        base_ricci=base_ricci,
        projection_jacobian=cs.projection_jacobian,
        description=cs.description,
        params=dict(cs.params),
    )


# --- catalog --------------------------------------------------------------------


def flat_projection(n: int = 2) -> ChartSubmersion:
    """R^{n+1} -> R^n forgetting the last coordinate; eps_i = d/dy_i."""
    m = n + 1
    box = np.array([[-1.0, 1.0]] * m)
    J = np.hstack([np.eye(n), np.zeros((n, 1))])
    return ChartSubmersion(
        name="flat",
        dim_base=n,
        metric_total=lambda x: np.eye(m),
        metric_base=lambda y: np.eye(n),
        projection=lambda x: np.asarray(x)[:n],
        frame_base=lambda y: np.eye(n),
        domain_box=box,
        curvature=0.0,
        base_ricci=lambda y: np.zeros((n, n)),
        projection_jacobian=lambda x: J,
        description="Euclidean R^{n+1} -> R^n, (x_1..x_n, z) -> (x_1..x_n)",
        params={"n": n},
    )


def hyperbolic_slice(n: int = 2, warp: float = 0.0) -> ChartSubmersion:
    """H^{n+1}(-1) -> H^n(-1) in half-space coordinates, dropping x_1.

    Total coordinates (x_1, ..., x_n, y), metric (|dx|^2 + dy^2) / y^2; base
    coordinates (x_2, ..., x_n, y).  Base frame eps_1 = y d/dy, eps_i = y d/dx_i
    (i >= 2).  With this frame kappa = (1, 0, ..., 0), sigma = 0 and
    f^i_1i = -f^i_i1 = 1 for i >= 2.

    In this chart every frame component is linear, so centred differences are
    exact.  ``warp`` = b != 0 describes the same submersion in the bent total
    chart (u, v_2, ..., v_n, w) with x_a = u_a + b sin(w) (a = 1..n) and
    y = w exp(b u): the data are unchanged but finite differences now carry
    their genuine O(h^2) truncation error.
    """
    m = n + 1
    beta = float(warp)

    def to_half_space(x):
        x = np.asarray(x, dtype=float)
        return np.concatenate([x[:n] + beta * np.sin(x[-1]), [x[-1] * np.exp(beta * x[0])]])

    def chart_jac(x):
        # d(x_1, ..., x_n, y) / d(chart coordinates)
        T = np.eye(m)
        e = np.exp(beta * x[0])
        T[:n, -1] = beta * np.cos(x[-1])
        T[-1, 0] = beta * x[-1] * e
        T[-1, -1] = e
        return T

    def metric_total(x):
        x = np.asarray(x, dtype=float)
        T = chart_jac(x)
        return T.T @ T / to_half_space(x)[-1] ** 2

    def projection(x):
        return to_half_space(x)[1:]

    def projection_jacobian(x):
        return chart_jac(np.asarray(x, dtype=float))[1:, :]

    def frame_base(y):
        y = np.asarray(y, dtype=float)
        F = np.zeros((n, n))
        F[n - 1, 0] = y[-1]
        for i in range(1, n):
            F[i - 1, i] = y[-1]
        return F

    warped = beta != 0.0
    box = np.array([[-1.0, 1.0]] * n + [[0.5, 1.5 if warped else 2.0]])
    return ChartSubmersion(
        name="hyperbolic-slice-warped" if warped else "hyperbolic-slice",
        dim_base=n,
        metric_total=metric_total,
        metric_base=lambda y: np.eye(n) / np.asarray(y)[-1] ** 2,
        projection=projection,
        frame_base=frame_base,
        domain_box=box,
        curvature=-1.0,
        base_ricci=lambda y: -(n - 1) * np.eye(n),
        projection_jacobian=projection_jacobian,
        description="H^{n+1}(-1) -> H^n(-1), half-space model, fibres along x_1",
        params={"n": n, "warp": beta},
    )


def _hopf_parts(x):
    x = np.asarray(x, dtype=float)
    r2 = x @ x
    q = 1.0 + r2
    X = np.concatenate([2.0 * x, [r2 - 1.0]]) / q
    dX = np.vstack([2.0 * np.eye(3) / q - 4.0 * np.outer(x, x) / q**2, 4.0 * x / q**2])
    X1, X2, X3, X4 = X
    u = np.array(
        [2 * (X1 * X3 + X2 * X4), 2 * (X2 * X3 - X1 * X4), X1**2 + X2**2 - X3**2 - X4**2]
    )
    du = np.array(
        [
            [2 * X3, 2 * X4, 2 * X1, 2 * X2],
            [-2 * X4, 2 * X3, 2 * X2, -2 * X1],
            [2 * X1, 2 * X2, -2 * X3, -2 * X4],
        ]
    )
    return u, du @ dX


def _hopf_angles(x):
    u, _ = _hopf_parts(x)
    return np.array([np.arctan2(np.hypot(u[0], u[1]), u[2]), np.arctan2(u[1], u[0])])


def _hopf_angles_jacobian(x):
    u, du = _hopf_parts(x)
    rho2 = u[0] ** 2 + u[1] ** 2
    rho = np.sqrt(rho2)
    drho = (u[0] * du[0] + u[1] * du[1]) / rho
    dtheta = (u[2] * drho - rho * du[2]) / (rho2 + u[2] ** 2)
    dphi = (u[0] * du[1] - u[1] * du[0]) / rho2
    return np.vstack([dtheta, dphi])


def hopf() -> ChartSubmersion:
    """Hopf fibration S^3(1) -> S^2(1/2) (curvature 4).

    Total chart: stereographic coordinates x in R^3 from (0, 0, 0, 1), metric
    4|dx|^2 / (1 + |x|^2)^2, so the fibres are circles, not coordinate lines.
    Base chart: polar angles (theta, phi) of the unit vector
    (2 Re z1 conj z2, 2 Im z1 conj z2, |z1|^2 - |z2|^2), metric
    (dtheta^2 + sin^2 theta dphi^2) / 4, frame eps_1 = 2 d/dtheta,
    eps_2 = (2 / sin theta) d/dphi.
    """

    def metric_total(x):
        x = np.asarray(x, dtype=float)
        return 4.0 * np.eye(3) / (1.0 + x @ x) ** 2

    def metric_base(y):
        return 0.25 * np.diag([1.0, np.sin(y[0]) ** 2])

    def frame_base(y):
        return np.diag([2.0, 2.0 / np.sin(y[0])])

    box = np.array([[0.15, 0.55], [-0.2, 0.2], [0.05, 0.45]])
    return ChartSubmersion(
        name="hopf",
        dim_base=2,
        metric_total=metric_total,
        metric_base=metric_base,
        projection=_hopf_angles,
        frame_base=frame_base,
        domain_box=box,
        curvature=1.0,
        base_ricci=lambda y: 4.0 * np.eye(2),
        projection_jacobian=_hopf_angles_jacobian,
        description="Hopf fibration S^3(1) -> S^2(1/2) in a stereographic chart",
    )


def nil3() -> ChartSubmersion:
    """Nil_3 -> R^2, metric dx^2 + dy^2 + (dz - x dy)^2, (x, y, z) -> (x, y).

    Lifts of d/dx, d/dy are d/dx and d/dy + x d/dz; not of constant curvature
    (sectional curvatures -3/4 and 1/4 in this frame).
    """

    def metric_total(p):
        x = float(p[0])
        return np.array([[1.0, 0.0, 0.0], [0.0, 1.0 + x * x, -x], [0.0, -x, 1.0]])

    J = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    return ChartSubmersion(
        name="nil3",
        dim_base=2,
        metric_total=metric_total,
        metric_base=lambda y: np.eye(2),
        projection=lambda p: np.asarray(p, dtype=float)[:2],
        frame_base=lambda y: np.eye(2),
        domain_box=np.array([[-1.0, 1.0]] * 3),
        curvature=None,
        base_ricci=lambda y: np.zeros((2, 2)),
        projection_jacobian=lambda p: J,
        description="Heisenberg group Nil_3 -> R^2",
    )


EXAMPLES = {
    "flat": flat_projection,
    "hyperbolic-slice": hyperbolic_slice,
    "hyperbolic-slice-warped": lambda n=2: hyperbolic_slice(n, warp=0.5),
    "hopf": hopf,
    "nil3": nil3,
}

# Error constants for the grid checks at the default domain boxes, measured
# over random points with n = 2..4 and h in {1e-3, 2e-3} and then rounded up:
# curvature identities hold within RESIDUAL_C * h (observed decay is O(h^2)),
# connection coefficients within CONNECTION_C * h^2.
RESIDUAL_C = {
    "flat": 0.0,
    "hyperbolic-slice": 1e-4,
    "hyperbolic-slice-warped": 1e-2,
    "hopf": 2e-2,
}
CONNECTION_C = 10.0

# examples whose base dimension can be chosen
SCALABLE = {"flat", "hyperbolic-slice", "hyperbolic-slice-warped"}


def get_example(name: str, n: int | None = None) -> ChartSubmersion:
    try:
        factory = EXAMPLES[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    if name in SCALABLE:
        return factory(2 if n is None else n)
    if n is not None and n != 2:
        raise ValueError(f"example {name!r} has fixed base dimension 2")
    return factory()


def example_catalog(n: int = 2) -> list[ChartSubmersion]:
    return [get_example(name, n if name in SCALABLE else None) for name in EXAMPLES]
