"""Domain types shared across the package.

Arrays are stored 0-based.  Everything user-facing (error messages, reports,
spec files) uses 1-based indices, with ``n + 1`` naming the vertical direction.

Storage layout, with ``N = n`` the 0-based vertical index:

* ``f[i, j, k]``            = f^k_ij, the e_k component of [e_i, e_j]
* ``kappa[i]``              = kappa_i, from [e_i, e_N] = kappa_i e_N
* ``sigma[i, j]``           = sigma_ij, from [e_i, e_j] = ... - 2 sigma_ij e_N
* ``d_f[a, i, j, k]``       = e_a(f^k_ij), ``a`` ranges over all n + 1 frame directions
* ``d_kappa[a, i]``         = e_a(kappa_i)
* ``d_sigma[a, i, j]``      = e_a(sigma_ij)
* ``dd_kappa_diag[a, i]``   = e_a e_a(kappa_i)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


class SubmersionError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SubmersionError, ValueError):
    pass


class AntisymmetryViolation(SubmersionError, ValueError):
    def __init__(self, message: str, location: str = "", magnitude: float = 0.0):
        super().__init__(message)
        self.location = location
        self.magnitude = magnitude


class NotAdapted(SubmersionError, ValueError):
    pass


class DegenerateKappa(NotAdapted):
    pass


class NotSkew(SubmersionError, ValueError):
    pass


def _frozen(a, shape: tuple[int, ...], name: str) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.shape != shape:
        raise DimensionMismatch(f"{name}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: contains non-finite entries")
    arr.setflags(write=False)
    return arr


def _label(name: str, idx) -> str:
    return name + "".join(f"[{i + 1}]" for i in idx)


def _check_antisymmetric(arr: np.ndarray, axes: tuple[int, int], name: str) -> None:
    # exact test: swapped entry must be the bitwise negation
    swapped = np.swapaxes(arr, *axes)
    bad = arr + swapped
    if not np.any(bad != 0.0):
        return
    # report the worst entry, preferring the one with the larger first swapped index
    i, j = axes
    mag = np.abs(bad)
    idx_grid = np.indices(arr.shape)
    lower = idx_grid[i] >= idx_grid[j]
    masked = np.where(lower, mag, -1.0)
    worst = np.unravel_index(int(np.argmax(masked)), arr.shape)
    partner = list(worst)
    partner[i], partner[j] = partner[j], partner[i]
    loc = _label(name, worst)
    raise AntisymmetryViolation(
        f"{loc} = {arr[worst]!r} is not the negative of {_label(name, partner)} = "
        f"{arr[tuple(partner)]!r} (violation {mag[worst]:.3g})",
        location=loc,
        magnitude=float(mag[worst]),
    )


def antisymmetry_defect(f, sigma) -> float:
    """Max of |f^k_ij + f^k_ji| and |sigma_ij + sigma_ji| over raw arrays."""
    f = np.asarray(f, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    worst = 0.0
    if f.size:
        worst = max(worst, float(np.max(np.abs(f + np.swapaxes(f, 0, 1)))))
    if sigma.size:
        worst = max(worst, float(np.max(np.abs(sigma + sigma.T))))
    return worst


@dataclass(frozen=True, eq=False)
class IntegrabilityData:
    """The triple {f^k_ij, kappa_i, sigma_ij} of an adapted frame at one point."""

    n: int
    f: np.ndarray
    kappa: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DimensionMismatch(f"n must be a positive integer, got {self.n!r}")
        n = int(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "f", _frozen(self.f, (n, n, n), "f"))
        object.__setattr__(self, "kappa", _frozen(self.kappa, (n,), "kappa"))
        object.__setattr__(self, "sigma", _frozen(self.sigma, (n, n), "sigma"))
        _check_antisymmetric(self.f, (0, 1), "f")
        _check_antisymmetric(self.sigma, (0, 1), "sigma")

    @classmethod
    def zeros(cls, n: int) -> "IntegrabilityData":
        return cls(n, np.zeros((n, n, n)), np.zeros(n), np.zeros((n, n)))

    def __eq__(self, other):
        if not isinstance(other, IntegrabilityData):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.f, other.f)
            and np.array_equal(self.kappa, other.kappa)
            and np.array_equal(self.sigma, other.sigma)
        )

    __hash__ = None

    def to_dict(self) -> dict[str, Any]:
        n = self.n
        entries = [
            [i + 1, j + 1, k + 1, float(self.f[i, j, k])]
            for i in range(n)
            for j in range(n)
            for k in range(n)
            if self.f[i, j, k] != 0.0
        ]
        return {
            "n": n,
            "kappa": self.kappa.tolist(),
            "sigma": self.sigma.tolist(),
            "f": entries,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "IntegrabilityData":
        n = int(d["n"])
        return cls(n, f_from_entries(n, d.get("f", [])), d["kappa"], d["sigma"])


def f_from_entries(n: int, entries, name: str = "f") -> np.ndarray:
    """Dense f^k_ij array from 1-based ``[i, j, k, value]`` entries."""
    f = np.zeros((n, n, n))
    for pos, entry in enumerate(entries):
        if len(entry) != 4:
            raise DimensionMismatch(f"{name} entry #{pos + 1}: expected [i, j, k, value]")
        i, j, k = (int(v) - 1 for v in entry[:3])
        if not all(0 <= v < n for v in (i, j, k)):
            raise DimensionMismatch(f"{name} entry #{pos + 1}: index out of range 1..{n}")
        f[i, j, k] = float(entry[3])
    return f


def new_integrability_data(n: int, f, kappa, sigma) -> IntegrabilityData:
    """Validated constructor; raises DimensionMismatch or AntisymmetryViolation."""
    return IntegrabilityData(n, f, kappa, sigma)


def symmetrize_check(data) -> float:
    """Largest antisymmetry violation in ``data`` (anything with ``f`` and ``sigma``)."""
    return antisymmetry_defect(data.f, data.sigma)


@dataclass(frozen=True, eq=False)
class IntegrabilityJet:
    """Integrability data plus first frame derivatives and diagonal second derivatives."""

    base: IntegrabilityData
    d_f: np.ndarray = None
    d_kappa: np.ndarray = None
    d_sigma: np.ndarray = None
    dd_kappa_diag: np.ndarray = None

    def __post_init__(self):
        n = self.base.n
        m = n + 1
        defaults = {
            "d_f": (m, n, n, n),
            "d_kappa": (m, n),
            "d_sigma": (m, n, n),
            "dd_kappa_diag": (m, n),
        }
        for name, shape in defaults.items():
            value = getattr(self, name)
            if value is None:
                value = np.zeros(shape)
            object.__setattr__(self, name, _frozen(value, shape, name))
        _check_antisymmetric(self.d_f, (1, 2), "d_f")
        _check_antisymmetric(self.d_sigma, (1, 2), "d_sigma")

    @property
    def n(self) -> int:
        return self.base.n

    @classmethod
    def constant(cls, data: IntegrabilityData) -> "IntegrabilityJet":
        """Jet of frame-constant data (all derivative slots zero)."""
        return cls(data)

    def scaled_derivatives(self, factor: float) -> "IntegrabilityJet":
        return IntegrabilityJet(
            self.base,
            self.d_f * factor,
            self.d_kappa * factor,
            self.d_sigma * factor,
            self.dd_kappa_diag * factor,
        )

    def to_dict(self) -> dict[str, Any]:
        d = self.base.to_dict()
        m, n = self.n + 1, self.n
        d["d_f"] = [
            [a + 1, i + 1, j + 1, k + 1, float(self.d_f[a, i, j, k])]
            for a in range(m)
            for i in range(n)
            for j in range(n)
            for k in range(n)
            if self.d_f[a, i, j, k] != 0.0
        ]
        d["d_kappa"] = self.d_kappa.tolist()
        d["d_sigma"] = self.d_sigma.tolist()
        d["dd_kappa_diag"] = self.dd_kappa_diag.tolist()
        return d


def d_f_from_entries(n: int, entries) -> np.ndarray:
    d_f = np.zeros((n + 1, n, n, n))
    for pos, entry in enumerate(entries):
        if len(entry) != 5:
            raise DimensionMismatch(f"d_f entry #{pos + 1}: expected [a, i, j, k, value]")
        a, i, j, k = (int(v) - 1 for v in entry[:4])
        if not (0 <= a <= n and all(0 <= v < n for v in (i, j, k))):
            raise DimensionMismatch(f"d_f entry #{pos + 1}: index out of range")
        d_f[a, i, j, k] = float(entry[4])
    return d_f


@dataclass(frozen=True, eq=False)
class ConnectionCoeffs:
    """Horizontal connection coefficients, ``P[i, j, k]`` = P^k_ij = <nabla_{e_i} e_j, e_k>."""

    P: np.ndarray

    def __post_init__(self):
        P = np.array(self.P, dtype=float)
        if P.ndim != 3 or len(set(P.shape)) != 1:
            raise DimensionMismatch(f"P must be n x n x n, got {P.shape}")
        # metric compatibility: P^k_ij = -P^j_ik, exactly
        _check_antisymmetric(P, (1, 2), "P")
        P.setflags(write=False)
        object.__setattr__(self, "P", P)

    @property
    def n(self) -> int:
        return self.P.shape[0]

    def coefficient(self, k: int, i: int, j: int) -> float:
        """P^k_ij with 1-based indices, matching the written formulas."""
        return float(self.P[i - 1, j - 1, k - 1])


@dataclass(frozen=True, eq=False)
class BaseRicci:
    """Ricci tensor of the base, Ricci^N(eps_i, eps_j), in the base frame."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch(f"ricci must be square, got {v.shape}")
        if not np.allclose(v, v.T, rtol=0.0, atol=1e-12 * max(1.0, np.max(np.abs(v)))):
            raise ValueError("ricci must be symmetric")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @classmethod
    def einstein(cls, n: int, scalar: float) -> "BaseRicci":
        return cls(scalar * np.eye(n))


@dataclass
class ResidualReport:
    """Named residual families with tolerances; pass flags are derived, never stored.

    ``residuals`` maps an identity name to ``{index label: value}``.  Families
    listed in ``tolerances`` are gated; the rest are informational.
    """

    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, dict[str, float]] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    verdict: str | None = None
    notes: list[str] = field(default_factory=list)
    outputs: dict[str, Any] = field(default_factory=dict)
    schema_version: int = 1

    def add(self, name: str, values: dict[str, float], tol: float | None = None) -> None:
        self.residuals[name] = {k: float(v) for k, v in values.items()}
        if tol is not None:
            self.tolerances[name] = float(tol)

    @property
    def maxima(self) -> dict[str, float]:
        return {
            name: max((abs(v) for v in vals.values()), default=0.0)
            for name, vals in self.residuals.items()
        }

    @property
    def passed(self) -> dict[str, bool]:
        mx = self.maxima
        return {name: bool(mx[name] <= tol) for name, tol in self.tolerances.items()}

    @property
    def all_passed(self) -> bool:
        return all(self.passed.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "residuals": self.residuals,
            "maxima": self.maxima,
            "tolerances": self.tolerances,
            "passed": self.passed,
            "verdict": self.verdict,
            "notes": list(self.notes),
            "outputs": self.outputs,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ResidualReport":
        return cls(
            command=d["command"],
            inputs=d.get("inputs", {}),
            residuals={k: dict(v) for k, v in d.get("residuals", {}).items()},
            tolerances=dict(d.get("tolerances", {})),
            verdict=d.get("verdict"),
            notes=list(d.get("notes", [])),
            outputs=dict(d.get("outputs", {})),
            schema_version=int(d.get("schema_version", 1)),
        )


def indexed(values, prefix: str = "") -> dict[str, float]:
    """Flatten an array into ``{"1,2": v, ...}`` labels (1-based)."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        return {prefix or "value": float(arr)}
    out = {}
    for idx in np.ndindex(arr.shape):
        out[prefix + ",".join(str(i + 1) for i in idx)] = float(arr[idx])
    return out
