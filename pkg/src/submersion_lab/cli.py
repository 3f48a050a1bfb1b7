"""submersion-lab: batch checks for Riemannian submersions.

Exit codes: 0 all gated checks pass, 1 some failed, 2 input error,
3 (oracle only) the example is not of constant curvature for any scanned c.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import biharmonic as bh
from . import connection as cn
from . import framealg as fa
from . import numgeom as ng
from .core import (
    BaseRicci,
    DegenerateKappa,
    IntegrabilityJet,
    NotAdapted,
    ResidualReport,
    SubmersionError,
    indexed,
)
from .specio import ParseError, ParsedSpec, dump_report, parse_spec

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NOT_CONSTANT = 3

SEED_ENV = "SUBMERSION_LAB_SEED"
C_SCAN = np.round(np.arange(-500, 501) * 0.01, 2)


@dataclass
class RunConfig:
    command: str
    spec_path: str | None = None
    example: str | None = None
    n: int | None = None
    c: float | None = None
    h: float = ng.DEFAULT_H
    tol_algebraic: float = 1e-9
    tol_grid: float | None = None
    output_path: str | None = None
    format: str = "text"
    points: int = 3

    def __post_init__(self):
        if self.command not in ("check", "adapt", "oracle", "identities"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.spec_path and self.example:
            raise ValueError("give either --spec or --example, not both")
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.tol_grid is None:
            # grid residuals are O(h) at worst (nested differences in the curvature oracle)
            self.tol_grid = 0.1 * self.h
        if not (self.tol_algebraic > 0 and self.tol_grid > 0):
            raise ValueError("tolerances must be positive")
        if self.n is not None and self.n < 2:
            raise ValueError("n must be at least 2")
        if self.points < 1:
            raise ValueError("points must be at least 1")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")

    @property
    def seed(self) -> int:
        raw = os.environ.get(SEED_ENV)
        if raw is None or raw == "":
            return 0
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


# --- shared pieces ---------------------------------------------------------------


def _example(config: RunConfig) -> ng.ChartSubmersion:
    return ng.get_example(config.example, config.n)


def _sample(cs: ng.ChartSubmersion, config: RunConfig) -> np.ndarray:
    pts = [cs.center()]
    if config.points > 1:
        pts.extend(cs.sample_points(config.points - 1, config.rng(), shrink=0.2))
    return np.array(pts)


def _prefixed(values: dict[str, float], prefix: str) -> dict[str, float]:
    return {f"{prefix}{k}": v for k, v in values.items()}


def _curvature_families(res: cn.CurvatureResiduals) -> dict[str, np.ndarray]:
    return {f"curvature_{k}": v for k, v in res.families().items()}


def _verdict(report: ResidualReport, kappa_max: float, bitension_max: float, tol: float) -> str:
    passed = report.passed
    if any(not ok for name, ok in passed.items() if name.startswith("curvature_")):
        return "inconsistent_inputs"
    if kappa_max <= tol:
        return "harmonic"
    if bitension_max <= tol:
        return "biharmonic_nontrivial_candidate"
    return "not_biharmonic"


def _load(config: RunConfig) -> ParsedSpec:
    if not config.spec_path:
        raise ValueError("--spec or --example is required")
    spec = parse_spec(config.spec_path)
    if config.n is not None and config.n != spec.data.n:
        raise ValueError(f"--n {config.n} disagrees with n = {spec.data.n} in the spec")
    return spec


def _spec_c(config: RunConfig, spec: ParsedSpec) -> float | None:
    return config.c if config.c is not None else spec.c


def _spec_ricci(spec: ParsedSpec, c: float | None) -> BaseRicci:
    if spec.ricci is not None:
        return spec.ricci
    if c is not None:
        return bh.space_form_base_ricci(spec.data.sigma, c)
    raise ParseError("ricci: missing (give ricci or c)", field="ricci")


# --- check -----------------------------------------------------------------------


def _check_one(report, jet, ricci, c, tol, prefix, acc):
    res = bh.bitension_residual(jet, ricci)
    acc["kappa"] = max(acc["kappa"], float(np.max(np.abs(jet.base.kappa))))
    acc["bitension"] = max(acc["bitension"], float(np.max(np.abs(res.residuals))))
    fam = report.residuals
    fam.setdefault("tension", {}).update(_prefixed(indexed(res.tension), prefix))
    fam.setdefault("bitension", {}).update(_prefixed(indexed(res.residuals), prefix))
    if c is not None:
        for name, arr in _curvature_families(cn.curvature_residuals(jet, c)).items():
            fam.setdefault(name, {}).update(_prefixed(indexed(arr), prefix))


def cmd_check(config: RunConfig) -> tuple[ResidualReport, int]:
    acc = {"kappa": 0.0, "bitension": 0.0}
    if config.example:
        cs = _example(config)
        c = config.c if config.c is not None else cs.curvature
        tol = config.tol_grid
        pts = _sample(cs, config)
        report = ResidualReport(
            "check",
            inputs={"example": cs.name, "n": cs.dim_base, "c": c, "h": config.h, "points": pts},
        )
        jets = []
        for p_i, p in enumerate(pts):
            jet = ng.extract_jet(cs, p, config.h)
            jets.append(jet)
            ricci = cs.ricci_base(cs.projection(p), config.h)
            _check_one(report, jet, ricci, c, tol, f"p{p_i + 1}:", acc)
        mf, mk, ms = bh.fiber_constancy_report(jets)
        report.add("fiber_constancy", {"f": mf, "kappa": mk, "sigma": ms}, tol)
        if c is None:
            report.notes.append("no constant curvature known; curvature identities skipped")
    else:
        spec = _load(config)
        c = _spec_c(config, spec)
        tol = config.tol_algebraic
        report = ResidualReport("check", inputs={"spec": str(config.spec_path), "n": spec.data.n, "c": c})
        _check_one(report, spec.jet_or_constant(), _spec_ricci(spec, c), c, tol, "", acc)
        if c is None:
            report.notes.append("c not given; curvature identities skipped")
    report.tolerances["bitension"] = tol
    for name in report.residuals:
        if name.startswith("curvature_"):
            report.tolerances[name] = tol
    report.verdict = _verdict(report, acc["kappa"], acc["bitension"], tol)
    return report, EXIT_PASS if report.all_passed else EXIT_FAIL


# --- identities --------------------------------------------------------------------


def _identities_one(report, jet, ricci, c, tol, prefix, acc):
    fam = report.residuals
    full = bh.bitension_residual(jet, ricci)
    acc["kappa"] = max(acc["kappa"], float(np.max(np.abs(jet.base.kappa))))
    acc["bitension"] = max(acc["bitension"], float(np.max(np.abs(full.residuals))))
    fam.setdefault("bitension", {}).update(_prefixed(indexed(full.residuals), prefix))
    for name, arr in _curvature_families(cn.curvature_residuals(jet, c)).items():
        fam.setdefault(name, {}).update(_prefixed(indexed(arr), prefix))
    try:
        r1, rk = bh.simplified_residuals(jet, c, tol=tol)
    except NotAdapted as exc:
        report.notes.append(f"{prefix}adapted-frame relations skipped: {exc}")
        return
    simplified = np.concatenate([[r1], rk])
    fam.setdefault("simplified_vs_full", {}).update(
        _prefixed(indexed(simplified - full.residuals), prefix)
    )
    fam.setdefault("key_identity", {})[prefix + "value"] = bh.key_identity_residual(jet.base, c, tol)
    try:
        rel = cn.adapted_curvature_relations(jet, c, tol)
    except DegenerateKappa as exc:
        report.notes.append(f"{prefix}adapted curvature relations skipped: {exc}")
        return
    for name, arr in rel.items():
        fam.setdefault(f"adapted_{name}", {}).update(_prefixed(indexed(arr), prefix))
    fam.setdefault("e1_identity", {})[prefix + "value"] = bh.e1_identity_residual(jet.base, c, tol)


def cmd_identities(config: RunConfig) -> tuple[ResidualReport, int]:
    """Curvature identities plus the adapted-frame relations and scalar identities.

    Curvature identities and the adapted relations (both consequences of constant
    curvature) are gated; the key and e_1 identities are consequences of
    biharmonicity and are reported for information only.
    """
    acc = {"kappa": 0.0, "bitension": 0.0}
    if config.example:
        cs = _example(config)
        c = config.c if config.c is not None else cs.curvature
        if c is None:
            raise ValueError(f"example {cs.name!r} has no constant curvature; pass --c")
        tol = config.tol_grid
        pts = _sample(cs, config)
        report = ResidualReport(
            "identities",
            inputs={"example": cs.name, "n": cs.dim_base, "c": c, "h": config.h, "points": pts},
        )
        for p_i, p in enumerate(pts):
            jet = ng.extract_jet(cs, p, config.h)
            ricci = cs.ricci_base(cs.projection(p), config.h)
            _identities_one(report, jet, ricci, c, tol, f"p{p_i + 1}:", acc)
    else:
        spec = _load(config)
        c = _spec_c(config, spec)
        if c is None:
            raise ParseError("c: missing (give c in the spec or --c)", field="c")
        tol = config.tol_algebraic
        report = ResidualReport("identities", inputs={"spec": str(config.spec_path), "n": spec.data.n, "c": c})
        _identities_one(report, spec.jet_or_constant(), _spec_ricci(spec, c), c, tol, "", acc)
    for name in report.residuals:
        if name.startswith(("curvature_", "adapted_")) or name == "simplified_vs_full":
            report.tolerances[name] = tol
    report.verdict = _verdict(report, acc["kappa"], acc["bitension"], tol)
    return report, EXIT_PASS if report.all_passed else EXIT_FAIL


# --- adapt ---------------------------------------------------------------------------


def random_kappa_sigma(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    kappa = rng.standard_normal(n)
    a = rng.standard_normal((n, n))
    return kappa, a - a.T


def cmd_adapt(config: RunConfig) -> tuple[ResidualReport, int]:
    if config.example:
        raise ValueError("adapt takes --spec (or nothing, for a seeded random input)")
    if config.spec_path:
        spec = _load(config)
        kappa, sigma = spec.data.kappa, spec.data.sigma
        inputs = {"spec": str(config.spec_path)}
    else:
        n = config.n if config.n is not None else 3
        kappa, sigma = random_kappa_sigma(n, config.rng())
        inputs = {"random": True, "seed": config.seed}
    n = len(kappa)
    inputs.update({"n": n, "kappa": kappa, "sigma": sigma})
    red = fa.adapt_frame_data(kappa, sigma)
    tol = config.tol_algebraic
    knorm = float(np.linalg.norm(kappa))
    snorm = float(np.linalg.norm(sigma))
    report = ResidualReport("adapt", inputs=inputs)
    report.add("orthogonality", {"value": red.orthogonality_defect()}, tol * n)
    report.add("kappa_alignment", {"value": float(np.max(np.abs(red.K @ kappa - red.kappa_out)))}, tol * max(1.0, knorm))
    report.add("tridiagonality", {"value": red.tridiagonality_defect()}, tol * max(1.0, snorm))
    report.add(
        "frobenius_norm",
        {"value": float(np.linalg.norm(red.sigma_out)) - snorm},
        tol * max(1.0, snorm),
    )
    ev_in = np.sort(np.abs(np.linalg.eigvals(sigma).imag))
    ev_out = np.sort(np.abs(np.linalg.eigvals(red.sigma_out).imag))
    report.add("spectrum", indexed(ev_out - ev_in), tol * max(1.0, snorm))
    report.outputs = {
        "K": red.K,
        "kappa_out": red.kappa_out,
        "sigma_out": red.sigma_out,
        "reflections": red.steps,
        "chain_length": red.chain_length,
    }
    report.notes.append("pointwise transform only; f in the new frame also needs derivatives of K")
    return report, EXIT_PASS if report.all_passed else EXIT_FAIL


# --- oracle --------------------------------------------------------------------------


def _curvature_mismatch(jet: IntegrabilityJet, Rf: np.ndarray) -> float:
    n = jet.n
    N = n
    comp = cn.curvature_components(jet)
    off = ~np.eye(n, dtype=bool)
    d1 = np.abs(comp.r1 - Rf[:n, N, :n, :n])
    d2 = np.abs(comp.r2 - np.einsum("abab->ab", Rf[:n, :n, :n, :n]))[off]
    idx = np.arange(n)
    d3 = np.abs(comp.r3 - Rf[idx, N, idx, N])
    d4 = np.abs(comp.r4 - Rf[:n, N, :n, N])[off]
    return float(max(d1.max(), d2.max() if d2.size else 0.0, d3.max(), d4.max() if d4.size else 0.0))


def scan_constant_curvature(jets, c_grid=C_SCAN, families=("second", "third")) -> tuple[float, float]:
    """(best c, residual) minimising the max curvature residual over ``families`` and jets."""
    best_c, best = float("nan"), float("inf")
    comps = [cn.curvature_components(j) for j in jets]
    for c in c_grid:
        worst = 0.0
        for comp, jet in zip(comps, jets):
            off = ~np.eye(jet.n, dtype=bool)
            vals = {
                "first": np.abs(comp.r1),
                "second": np.abs(comp.r2 + c)[off],
                "third": np.abs(comp.r3 + c),
                "fourth": np.abs(comp.r4),
            }
            worst = max(worst, *(float(vals[f].max()) if vals[f].size else 0.0 for f in families))
        if worst < best:
            best_c, best = float(c), worst
    return best_c, best


def convergence_ratio(cs: ng.ChartSubmersion, x, h: float) -> tuple[float, float]:
    """Self-convergence of extraction: (|d(h) - d(h/2)| / |d(h/2) - d(h/4)|, |d(h) - d(h/2)|)."""
    ds = [ng.extract_integrability_data(cs, x, h / 2**q) for q in range(3)]

    def gap(a, b):
        return max(
            float(np.max(np.abs(a.kappa - b.kappa))),
            float(np.max(np.abs(a.sigma - b.sigma))),
            float(np.max(np.abs(a.f - b.f))),
        )

    g1, g2 = gap(ds[0], ds[1]), gap(ds[1], ds[2])
    return (g1 / g2 if g2 > 0 else float("inf")), g1


ROUNDOFF_FLOOR = 1e-10


def cmd_oracle(config: RunConfig) -> tuple[ResidualReport, int]:
    if not config.example:
        raise ValueError("oracle needs --example")
    cs = _example(config)
    c = config.c if config.c is not None else cs.curvature
    tol = config.tol_grid
    h = config.h
    pts = _sample(cs, config)
    report = ResidualReport("oracle", inputs={"example": cs.name, "n": cs.dim_base, "c": c, "h": h, "points": pts})
    conn, curv, sub, sect = {}, {}, {}, {}
    jets = []
    for p_i, p in enumerate(pts):
        label = f"p{p_i + 1}"
        data = ng.extract_integrability_data(cs, p, h)
        conn[label] = float(np.max(np.abs(cn.nabla_coeffs(data) - ng.connection_fd(cs, p, h))))
        jet = ng.extract_jet(cs, p, h)
        jets.append(jet)
        Rf = ng.frame_riemann(cs, p, h)
        curv[label] = _curvature_mismatch(jet, Rf)
        sub[label] = ng.submersion_defect(cs, p)
        if c is not None:
            K = np.einsum("abba->ab", Rf)
            off = ~np.eye(cs.dim_total, dtype=bool)
            sect[label] = float(np.max(np.abs(K[off] - c)))
    report.add("submersion", sub, 1e-10)
    report.add("connection_vs_christoffel", conn, tol)
    report.add("curvature_vs_metric", curv, tol)

    ratio, gap = convergence_ratio(cs, pts[0], 4 * h)
    if gap > ROUNDOFF_FLOOR:
        report.add("convergence_order", {"ratio_minus_4": ratio - 4.0}, 0.5)
    else:
        report.notes.append(f"extraction exact to roundoff in this chart (gap {gap:.2e}); no order to measure")
    report.outputs["convergence_ratio"] = ratio

    code = EXIT_PASS
    if c is not None:
        report.add("sectional_curvature", sect, tol)
        worst = {}
        for p_i, jet in enumerate(jets):
            for name, arr in _curvature_families(cn.curvature_residuals(jet, c)).items():
                worst.setdefault(name, {})[f"p{p_i + 1}"] = float(np.max(np.abs(arr))) if arr.size else 0.0
        for name, vals in worst.items():
            report.add(name, vals, tol)
    else:
        best_c, best = scan_constant_curvature(jets, families=("first", "second", "third", "fourth"))
        report.outputs["best_constant_c"] = best_c
        report.outputs["best_constant_residual"] = best
        if best > 10 * tol:
            report.notes.append(
                f"not constant curvature: best c = {best_c:g} in [-5, 5] leaves residual {best:.3g}"
            )
            code = EXIT_NOT_CONSTANT
    if not report.all_passed:
        code = EXIT_FAIL
    return report, code


# --- output and entry point ------------------------------------------------------------


def render_text(report: ResidualReport) -> str:
    lines = [f"submersion-lab {report.command}"]
    for k, v in report.inputs.items():
        if k == "points":
            continue
        if isinstance(v, np.ndarray) or isinstance(v, list):
            v = np.array2string(np.asarray(v), precision=6, separator=", ").replace("\n", "")
        lines.append(f"  {k}: {v}")
    passed = report.passed
    width = max((len(k) for k in report.residuals), default=0)
    for name, mx in report.maxima.items():
        if name in passed:
            tag = "PASS" if passed[name] else "FAIL"
            lines.append(f"  {name:<{width}}  max {mx:.3e}  tol {report.tolerances[name]:.1e}  {tag}")
        else:
            lines.append(f"  {name:<{width}}  max {mx:.3e}  (info)")
    for k, v in report.outputs.items():
        if isinstance(v, np.ndarray):
            v = np.array2string(v, precision=6, suppress_small=True)
            v = "\n    " + v.replace("\n", "\n    ")
        lines.append(f"  {k}: {v}")
    if report.verdict:
        lines.append(f"verdict: {report.verdict}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "check": cmd_check,
    "adapt": cmd_adapt,
    "oracle": cmd_oracle,
    "identities": cmd_identities,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="submersion-lab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    src = p.add_mutually_exclusive_group()
    src.add_argument("--example", help=f"catalog example: {', '.join(ng.EXAMPLES)}")
    src.add_argument("--spec", help="JSON spec file")
    p.add_argument("--n", type=int, help="base dimension")
    p.add_argument("--c", type=float, help="constant curvature of the total space")
    p.add_argument("--h", type=float, default=ng.DEFAULT_H, help="finite-difference step")
    p.add_argument("--tol", type=float, help="tolerance (default 1e-9 for specs, 0.1*h for examples)")
    p.add_argument("--points", type=int, default=3, help="sample points per example")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kw = {}
    if args.tol is not None:
        kw["tol_algebraic"] = args.tol
        kw["tol_grid"] = args.tol
    return RunConfig(
        command=args.command,
        spec_path=args.spec,
        example=args.example,
        n=args.n,
        c=args.c,
        h=args.h,
        output_path=args.out,
        format=args.format,
        points=args.points,
        **kw,
    )


def run(config: RunConfig) -> tuple[ResidualReport, int]:
    return COMMANDS[config.command](config)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        report, code = run(config)
    except (SubmersionError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"submersion-lab: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    text = dump_report(report) if config.format == "json" else render_text(report)
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
