import numpy as np
import pytest

from gen import hyperbolic_constants
from submersion_lab import numgeom as ng
from submersion_lab.biharmonic import tension
from submersion_lab.connection import curvature_components, nabla_coeffs

H = 1e-3


def half_plane(p):
    return np.eye(2) / p[1] ** 2


def round_s2(p):
    return np.diag([1.0, np.sin(p[0]) ** 2])


def stereo_s3(p):
    return 4.0 * np.eye(3) / (1.0 + p @ p) ** 2


@pytest.fixture(scope="module")
def points():
    rng = np.random.default_rng(11)
    return {cs.name: cs.sample_points(6, rng) for cs in ng.example_catalog(3)}


# --- lifts ---------------------------------------------------------------------------


def test_flat_lift_is_identity():
    cs = ng.get_example("flat", 2)
    assert np.array_equal(ng.horizontal_lift(cs, np.zeros(3)), np.eye(3))


def test_hyperbolic_lift_at_unit_height():
    cs = ng.get_example("hyperbolic-slice", 2)
    E = ng.horizontal_lift(cs, np.array([0.0, 0.0, 1.0]))
    # coordinates (x1, x2, y): e1 = d/dy, e2 = d/dx2, e3 = d/dx1
    assert np.allclose(E, [[0, 0, 1], [0, 1, 0], [1, 0, 0]], atol=1e-15)


@pytest.mark.parametrize("name", sorted(ng.EXAMPLES))
def test_lift_is_orthonormal_and_projectable(name, points):
    cs = ng.get_example(name, 3 if name in ng.SCALABLE else None)
    for p in points.get(cs.name, [cs.center()]):
        assert ng.submersion_defect(cs, p) <= 1e-10


def test_out_of_domain():
    cs = ng.get_example("hyperbolic-slice", 2)
    with pytest.raises(ng.OutOfDomain):
        ng.horizontal_lift(cs, np.array([0.0, 0.0, 50.0]))


def test_rank_deficient():
    flat = ng.get_example("flat", 2)
    cs = ng.ChartSubmersion(
        "degenerate", 2, flat.metric_total, flat.metric_base,
        lambda x: np.array([x[0], x[0]]), flat.frame_base, flat.domain_box,
        projection_jacobian=lambda x: np.array([[1.0, 0, 0], [1.0, 0, 0]]),
    )
    with pytest.raises(ng.RankDeficient):
        ng.horizontal_lift(cs, np.zeros(3))


# --- brackets ------------------------------------------------------------------------


def test_bracket_of_constant_fields():
    V = lambda x: np.array([1.0, 2.0])
    W = lambda x: np.array([-1.0, 0.5])
    assert np.array_equal(ng.lie_bracket_fd(V, W, np.array([0.3, 0.1])), np.zeros(2))


def test_bracket_dx_xdy():
    V = lambda x: np.array([1.0, 0.0])
    W = lambda x: np.array([0.0, x[0]])
    assert np.allclose(ng.lie_bracket_fd(V, W, np.array([0.4, -1.0])), [0.0, 1.0], atol=1e-12)


def test_bracket_half_space():
    # e1 = y d/dy, e3 = y d/dx1 in (x1, x2, y): [e1, e3] = y d/dx1
    e1 = lambda p: np.array([0.0, 0.0, p[2]])
    e3 = lambda p: np.array([p[2], 0.0, 0.0])
    p = np.array([0.1, 0.2, 1.3])
    assert np.allclose(ng.lie_bracket_fd(e1, e3, p, H), [1.3, 0.0, 0.0], atol=1e-12)


def test_bracket_second_order():
    V = lambda x: np.array([np.sin(x[1]), 1.0])
    W = lambda x: np.array([np.exp(x[0]), x[0] * x[1]])
    p = np.array([0.2, 0.7])
    x, y = p
    # V(W) - W(V) with V = (sin y, 1), W = (e^x, xy)
    exact = np.array([np.sin(y) * np.exp(x) - x * y * np.cos(y), np.sin(y) * y + x])
    e1 = np.abs(ng.lie_bracket_fd(V, W, p, 1e-2) - exact).max()
    e2 = np.abs(ng.lie_bracket_fd(V, W, p, 5e-3) - exact).max()
    assert 3.5 < e1 / e2 < 4.5


# --- extraction ---------------------------------------------------------------------------


def test_flat_extraction_is_zero():
    d = ng.extract_integrability_data(ng.get_example("flat", 3), np.full(4, 0.2))
    assert not d.f.any() and not d.kappa.any() and not d.sigma.any()


@pytest.mark.parametrize("name", ["hyperbolic-slice", "hyperbolic-slice-warped"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_hyperbolic_extraction(name, n):
    cs = ng.get_example(name, n)
    exact = hyperbolic_constants(n)
    for p in cs.sample_points(3, np.random.default_rng(n)):
        d = ng.extract_integrability_data(cs, p, H)
        assert np.allclose(d.kappa, exact.kappa, atol=1e-5)
        assert np.allclose(d.f, exact.f, atol=1e-5)
        assert np.allclose(d.sigma, 0.0, atol=1e-5)
        assert np.linalg.norm(tension(d)) == pytest.approx(1.0, abs=1e-5)


def test_hopf_extraction(points):
    cs = ng.get_example("hopf")
    for p in points["hopf"]:
        d = ng.extract_integrability_data(cs, p, H)
        assert np.allclose(d.kappa, 0.0, atol=1e-5)
        assert d.sigma[0, 1] ** 2 == pytest.approx(1.0, abs=1e-5)


def test_nil3_extraction():
    d = ng.extract_integrability_data(ng.get_example("nil3"), np.array([0.3, -0.2, 0.5]))
    assert d.sigma[0, 1] == pytest.approx(-0.5, abs=1e-12)
    assert np.allclose(d.kappa, 0.0) and np.allclose(d.f, 0.0)


def test_verticality(points):
    cs = ng.get_example("hopf")
    assert ng.verticality_defect(cs, points["hopf"][0]) < 1e-5


def test_flat_jet_is_zero():
    jet = ng.extract_jet(ng.get_example("flat", 2), np.zeros(3))
    for a in (jet.d_f, jet.d_kappa, jet.d_sigma, jet.dd_kappa_diag):
        assert not a.any()


@pytest.mark.parametrize("name", ["hyperbolic-slice", "hyperbolic-slice-warped", "hopf"])
def test_jet_slots(name):
    cs = ng.get_example(name)
    jet = ng.extract_jet(cs, cs.center(), H)
    if name == "hopf":
        N = 2
        # only the vertical slots are expected to vanish
        for a in (jet.d_f[N], jet.d_kappa[N], jet.d_sigma[N]):
            assert np.abs(a).max() < 1e-5
    else:
        for a in (jet.d_f, jet.d_kappa, jet.d_sigma):
            assert np.abs(a).max() < 1e-5
        assert np.abs(jet.dd_kappa_diag).max() < 1e-3


def test_grid_jets():
    cs = ng.get_example("hyperbolic-slice", 2)
    g = ng.grid_jets(cs, [cs.center()], H)
    assert g[0].h == H and g[0].jet.n == 2


def test_dd_kappa_against_closed_form():
    # base frame rotated by theta(y) = y: kappa_1 = cos(y - y0) etc. vary along e_1
    cs = ng.get_example("hyperbolic-slice", 2)

    def rot(y):
        t = y[-1]
        return np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])

    rc = ng.rotate_base_frame(cs, rot)
    p = np.array([0.0, 0.1, 1.2])
    jet = ng.extract_jet(rc, p, H)
    d = jet.base
    # kappa' = R kappa with kappa = (1, 0): kappa'_1 = cos y, kappa'_2 = -sin y
    assert np.allclose(d.kappa, [np.cos(1.2), -np.sin(1.2)], atol=1e-5)
    # e'_1 = cos y * y d/dy + sin y * y d/dx2; along it only y moves, dy/dt = y cos y
    y = 1.2
    dk = -np.sin(y) * y * np.cos(y)
    assert jet.d_kappa[0, 0] == pytest.approx(dk, abs=1e-5)
    # second derivative along the flow: d/dt (-sin y * y cos y) = (...)' * y cos y
    g = lambda y: -np.sin(y) * y * np.cos(y)
    dg = (g(y + 1e-5) - g(y - 1e-5)) / 2e-5
    assert jet.dd_kappa_diag[0, 0] == pytest.approx(dg * y * np.cos(y), abs=1e-4)


# --- metric oracle ------------------------------------------------------------------------


def test_christoffel_euclidean():
    assert not ng.christoffel_fd(lambda p: np.eye(3), np.zeros(3)).any()


def test_christoffel_half_plane():
    G = ng.christoffel_fd(half_plane, np.array([0.0, 1.0]), H)
    # index 0 = x, 1 = y
    assert G[1, 0, 0] == pytest.approx(1.0, abs=1e-5)
    assert G[0, 0, 1] == pytest.approx(-1.0, abs=1e-5)
    assert G[0, 1, 0] == pytest.approx(-1.0, abs=1e-5)
    assert G[1, 1, 1] == pytest.approx(-1.0, abs=1e-5)
    assert G[0, 0, 0] == pytest.approx(0.0, abs=1e-8)


def test_christoffel_round_sphere():
    th = 0.8
    G = ng.christoffel_fd(round_s2, np.array([th, 0.3]), H)
    assert G[0, 1, 1] == pytest.approx(-np.sin(th) * np.cos(th), abs=1e-6)
    assert G[1, 0, 1] == pytest.approx(np.cos(th) / np.sin(th), abs=1e-6)


def test_singular_metric():
    with pytest.raises(ng.SingularMetric):
        ng.christoffel_fd(lambda p: np.diag([1.0, 0.0]), np.zeros(2))


def test_riemann_flat():
    R = ng.riemann_fd(lambda p: np.eye(3), np.zeros(3))
    assert not R.low.any()


@pytest.mark.parametrize(
    "metric, point, K",
    [
        (lambda p: np.eye(3) / p[2] ** 2, np.array([0.1, -0.2, 1.1]), -1.0),
        (lambda p: np.eye(4) / p[3] ** 2, np.array([0.1, -0.2, 0.3, 0.9]), -1.0),
        (stereo_s3, np.array([0.2, -0.1, 0.3]), 1.0),
    ],
)
def test_riemann_constant_curvature(metric, point, K):
    R = ng.riemann_fd(metric, point, H).low
    g = metric(point)
    m = len(point)
    for a in range(m):
        for b in range(a + 1, m):
            sec = R[a, b, b, a] / (g[a, a] * g[b, b] - g[a, b] ** 2)
            assert sec == pytest.approx(K, abs=1e-4)


def test_riemann_symmetries():
    p = np.array([0.2, -0.1, 0.3])
    R = ng.riemann_fd(stereo_s3, p, H).low
    tol = 1e-2 * H
    assert np.abs(R + R.transpose(1, 0, 2, 3)).max() <= tol
    assert np.abs(R + R.transpose(0, 1, 3, 2)).max() <= tol
    assert np.abs(R - R.transpose(2, 3, 0, 1)).max() <= tol
    bianchi = R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3)
    assert np.abs(bianchi).max() <= tol


@pytest.mark.parametrize("name", ["flat", "hyperbolic-slice", "hyperbolic-slice-warped", "hopf"])
def test_sectional_curvature_check(name, points):
    cs = ng.get_example(name, 3 if name in ng.SCALABLE else None)
    dev = ng.sectional_curvature_check(cs, cs.curvature, points[cs.name][:3], H)
    assert dev <= 0.1 * H


@pytest.mark.parametrize("c", [-1.0, -0.75, 0.0, 0.25, 1.0])
def test_nil3_is_not_constant_curvature(c):
    cs = ng.get_example("nil3")
    assert ng.sectional_curvature_check(cs, c, [cs.center()], H) >= 0.5 - 1e-6


def test_nil3_sectional_values():
    K = ng.sectional_curvatures(ng.get_example("nil3"), np.array([0.3, 0.1, -0.2]), H)
    assert K[0, 1] == pytest.approx(-0.75, abs=1e-6)
    assert K[0, 2] == pytest.approx(0.25, abs=1e-6)
    assert K[1, 2] == pytest.approx(0.25, abs=1e-6)


@pytest.mark.parametrize("name", sorted(ng.EXAMPLES))
def test_base_ricci_matches_catalog(name):
    cs = ng.get_example(name)
    y = cs.projection(cs.center())
    assert np.allclose(ng.base_ricci_fd(cs, y, H), cs.base_ricci(y), atol=1e-4)


# --- oracle equivalence ---------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(ng.EXAMPLES))
def test_connection_oracle(name):
    cs = ng.get_example(name)
    for p in cs.sample_points(50, np.random.default_rng(7)):
        d = ng.extract_integrability_data(cs, p, H)
        err = np.abs(nabla_coeffs(d) - ng.connection_fd(cs, p, H)).max()
        assert err <= ng.CONNECTION_C * H**2


@pytest.mark.parametrize("name", sorted(ng.EXAMPLES))
def test_curvature_oracle(name, points):
    cs = ng.get_example(name, 3 if name in ng.SCALABLE else None)
    n = cs.dim_base
    N = n
    idx = np.arange(n)
    for p in points[cs.name][:3]:
        comp = curvature_components(ng.extract_jet(cs, p, H))
        Rf = ng.frame_riemann(cs, p, H)
        off = ~np.eye(n, dtype=bool)
        assert np.abs(comp.r1 - Rf[:n, N, :n, :n]).max() <= 0.1 * H
        assert np.abs(comp.r2 - np.einsum("abab->ab", Rf[:n, :n, :n, :n]))[off].max() <= 0.1 * H
        assert np.abs(comp.r3 - Rf[idx, N, idx, N]).max() <= 0.1 * H
        assert np.abs(comp.r4 - Rf[:n, N, :n, N])[off].max() <= 0.1 * H


# --- catalog -------------------------------------------------------------------------------


def test_catalog_contents():
    names = [cs.name for cs in ng.example_catalog()]
    assert len(names) >= 4
    for required in ("flat", "hyperbolic-slice", "hopf", "nil3"):
        assert required in names


@pytest.mark.parametrize("name", sorted(ng.EXAMPLES))
def test_catalog_is_submersion(name):
    cs = ng.get_example(name)
    for p in cs.sample_points(100, np.random.default_rng(3)):
        g = cs.metric_total(p)
        assert np.allclose(g, g.T) and np.all(np.linalg.eigvalsh(g) > 0)
        assert ng.submersion_defect(cs, p) <= 1e-10


def test_unknown_example():
    with pytest.raises(ng.UnknownExample):
        ng.get_example("torus")
    with pytest.raises(ValueError):
        ng.get_example("hopf", 3)


def test_rotated_hopf_keeps_invariants():
    cs = ng.get_example("hopf")
    t = 0.4
    R = np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    rc = ng.rotate_base_frame(cs, R)
    p = cs.center()
    d0 = ng.extract_integrability_data(cs, p, H)
    d1 = ng.extract_integrability_data(rc, p, H)
    # sigma_12 is a pfaffian, invariant under rotations
    assert d1.sigma[0, 1] == pytest.approx(d0.sigma[0, 1], abs=1e-6)
    assert np.allclose(rc.base_ricci(cs.projection(p)), 4.0 * np.eye(2))
