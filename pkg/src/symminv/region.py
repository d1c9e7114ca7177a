"""Membership, residuals, and boundary slices for the achievable invariant region.

The region of reachable (C, tau, kappa) triples is carved out by three
inequalities.  The first two express |cos phi| <= 1 in the canonical
parameterization, the third expresses y <= 1.  The tau^2 coefficient of
the first two is mode-switchable: AS_PRINTED uses coefficient 1, FROM_EQ26
uses the coefficient 3 implied by the inversion numerator.  The verify
pipeline selects FROM_EQ26 (the printed variant rejects reachable triples,
the balanced-cube corner among them); both are kept for comparison.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySlice
from .states import InvariantTriple

__all__ = [
    "TauCoeffMode",
    "RegionStatus",
    "RegionVerdict",
    "BoundarySlice",
    "constraint_residuals",
    "residuals_batch",
    "membership",
    "boundary_slice",
    "DEFAULT_MODE",
    "DEFAULT_TOL",
    "BOUNDARY_IDS",
    "COORDINATES",
]

DEFAULT_TOL = 1e-9

# serialization ids of the three boundary surfaces, in residual order
BOUNDARY_IDS = (28, 29, 30)

COORDINATES = ("C", "tau", "kappa")

_COORD_MAX = {"C": 2.0 / 3.0, "tau": 1.0, "kappa": 1.0}


class TauCoeffMode(enum.Enum):
    AS_PRINTED = 1.0
    FROM_EQ26 = 3.0


DEFAULT_MODE = TauCoeffMode.FROM_EQ26


class RegionStatus(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class RegionVerdict:
    status: RegionStatus
    residuals: tuple[float, float, float]
    active_boundaries: tuple[int, ...]  # subset of {1, 2, 3}


def residuals_batch(
    C: np.ndarray, tau: np.ndarray, kappa: np.ndarray, mode: TauCoeffMode = DEFAULT_MODE
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized constraint residuals (g1 >= 0, g2 <= 0, g3 <= 0 inside)."""
    q = mode.value
    C, tau, kappa = (np.asarray(x, dtype=float) for x in (C, tau, kappa))
    base = 4.0 - q * tau**2 - 9.0 * C**2 - 4.0 * kappa
    g1 = base + 3.0 * C**3
    g2 = base - 3.0 * C**3
    g3 = 4.0 - 6.0 * tau**2 - 9.0 * C**2 - 4.0 * kappa + 3.0 * (tau**2 + C**2) ** 1.5
    return g1, g2, g3


def constraint_residuals(
    v: InvariantTriple, mode: TauCoeffMode = DEFAULT_MODE
) -> tuple[float, float, float]:
    """Residuals of the three region constraints at a triple."""
    g1, g2, g3 = residuals_batch(
        np.array([v.C]), np.array([v.tau]), np.array([v.kappa]), mode
    )
    return float(g1[0]), float(g2[0]), float(g3[0])


def membership(
    v: InvariantTriple, tol: float = DEFAULT_TOL, mode: TauCoeffMode = DEFAULT_MODE
) -> RegionVerdict:
    """Classify a triple as Interior, Boundary, or Exterior at residual tolerance tol."""
    g1, g2, g3 = constraint_residuals(v, mode)
    violated = (g1 < -tol) or (g2 > tol) or (g3 > tol)
    active = tuple(
        i + 1 for i, g in enumerate((g1, g2, g3)) if abs(g) <= tol
    )
    if violated:
        status = RegionStatus.EXTERIOR
    elif active:
        status = RegionStatus.BOUNDARY
    else:
        status = RegionStatus.INTERIOR
    return RegionVerdict(status=status, residuals=(g1, g2, g3), active_boundaries=active)


@dataclass(frozen=True)
class BoundarySlice:
    """Boundary contours in the plane of the two free coordinates.

    ``polylines`` maps a boundary id (28, 29, 30) to grid-ordered (x, y)
    points on that surface; x and y are the remaining coordinates in
    (C, tau, kappa) order.
    """

    fixed_coordinate: str
    fixed_value: float
    x_name: str
    y_name: str
    polylines: dict[int, tuple[tuple[float, float], ...]]


def _residual_at(coords: dict[str, float], index: int, mode: TauCoeffMode) -> float:
    g = residuals_batch(
        np.array([coords["C"]]), np.array([coords["tau"]]), np.array([coords["kappa"]]), mode
    )
    return float(g[index][0])


def _others_satisfied(coords: dict[str, float], index: int, mode: TauCoeffMode, tol: float) -> bool:
    g1, g2, g3 = (
        float(x[0])
        for x in residuals_batch(
            np.array([coords["C"]]), np.array([coords["tau"]]), np.array([coords["kappa"]]), mode
        )
    )
    checks = (g1 >= -tol, g2 <= tol, g3 <= tol)
    return all(c for i, c in enumerate(checks) if i != index)


def _solve_kappa(coords: dict[str, float], index: int, mode: TauCoeffMode) -> float:
    # each constraint is linear in kappa
    C, tau = coords["C"], coords["tau"]
    q = mode.value
    if index == 0:
        return (4.0 - q * tau**2 - 9.0 * C**2 + 3.0 * C**3) / 4.0
    if index == 1:
        return (4.0 - q * tau**2 - 9.0 * C**2 - 3.0 * C**3) / 4.0
    return (4.0 - 6.0 * tau**2 - 9.0 * C**2 + 3.0 * (tau**2 + C**2) ** 1.5) / 4.0


def _bisect_roots(
    f, lo: float, hi: float, scan_n: int, width: float = 1e-14
) -> list[float]:
    """All sign-change roots of f on [lo, hi], scanned then bisected."""
    xs = np.linspace(lo, hi, scan_n)
    vals = [f(x) for x in xs]
    roots = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb >= 0.0:
            continue
        while b - a > width:
            m = 0.5 * (a + b)
            fm = f(m)
            if fm == 0.0:
                a = b = m
                break
            if fa * fm < 0.0:
                b = m
            else:
                a, fa = m, fm
        roots.append(0.5 * (a + b))
    if vals and vals[-1] == 0.0:
        roots.append(float(xs[-1]))
    return roots


def boundary_slice(
    fixed: str,
    value: float,
    grid_n: int,
    mode: TauCoeffMode = DEFAULT_MODE,
    tol: float = DEFAULT_TOL,
) -> BoundarySlice:
    """Contours of the three boundary surfaces at a fixed coordinate value.

    For each surface, its equality is solved for the second free coordinate
    over a grid of the first (exactly when that coordinate is kappa, by
    bisection otherwise), keeping only points that satisfy the other two
    constraints within tol.  Raises EmptySlice when nothing survives.
    """
    if fixed not in COORDINATES:
        raise ValueError(f"fixed coordinate must be one of {COORDINATES}")
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    x_name, y_name = [c for c in COORDINATES if c != fixed]
    xs = np.linspace(0.0, _COORD_MAX[x_name], grid_n)
    polylines: dict[int, list[tuple[float, float]]] = {bid: [] for bid in BOUNDARY_IDS}
    for index, bid in enumerate(BOUNDARY_IDS):
        for x in xs:
            coords = {fixed: value, x_name: float(x)}
            if y_name == "kappa":
                coords["kappa"] = 0.0
                candidates = [_solve_kappa(coords, index, mode)]
            else:
                def residual(yv: float) -> float:
                    coords[y_name] = yv
                    return _residual_at(coords, index, mode)

                candidates = _bisect_roots(
                    residual, 0.0, 1.25 * _COORD_MAX[y_name], scan_n=max(64, 2 * grid_n)
                )
            for y in candidates:
                if not (0.0 <= y):
                    continue
                coords[y_name] = float(y)
                if abs(_residual_at(coords, index, mode)) > tol:
                    continue
                if _others_satisfied(coords, index, mode, tol):
                    polylines[bid].append((float(x), float(y)))
    if not any(polylines.values()):
        raise EmptySlice(f"no region points at {fixed} = {value}")
    return BoundarySlice(
        fixed_coordinate=fixed,
        fixed_value=value,
        x_name=x_name,
        y_name=y_name,
        polylines={bid: tuple(pts) for bid, pts in polylines.items()},
    )
