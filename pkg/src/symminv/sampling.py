"""Seeded, reproducible sampling of symmetric states plus derivative-free extremization.

Every record gets its own counter-based Philox stream keyed on (seed,
record index), so datasets are a pure function of (n, seed) regardless of
execution order or batching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import closedform, majorana, oracles, region
from .states import (
    CanonicalParams,
    DegenerateParams,
    InvariantTriple,
    SymmetricState,
    degenerate_to_full,
    dicke_to_full,
)

__all__ = [
    "SampleRecord",
    "DEFAULT_SEED",
    "record_stream",
    "canonical_parameter_draws",
    "canonical_states_batch",
    "sample_canonical",
    "sample_dicke",
    "degenerate_grid",
    "extremize",
]

DEFAULT_SEED = 0xD1CE

SOURCE_CANONICAL = "CanonicalUniform"
SOURCE_DICKE = "DickeGaussian"
SOURCE_DEGENERATE = "DegenerateGrid"


@dataclass(frozen=True)
class SampleRecord:
    """One sampled state: generating parameters, both invariant triples, verdict.

    Parameters that the originating branch does not define are NaN (phi and
    y for double-root states, theta and phi for products).
    """

    source: str
    y: float
    theta: float
    phi: float
    oracle: InvariantTriple
    closed: InvariantTriple
    verdict: region.RegionVerdict


def record_stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for record ``index``: Philox with the index in the counter."""
    counter = np.zeros(4, dtype=np.uint64)
    counter[1] = np.uint64(index)
    return np.random.Generator(np.random.Philox(key=np.uint64(seed), counter=counter))


def canonical_parameter_draws(n: int, seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-record uniform draws of (y, theta, phi)."""
    ys = np.empty(n)
    ths = np.empty(n)
    phs = np.empty(n)
    for i in range(n):
        g = record_stream(seed, i)
        ys[i] = g.uniform(0.0, 1.0)
        ths[i] = g.uniform(0.0, math.pi)
        phs[i] = g.uniform(0.0, 2.0 * math.pi)
    return ys, ths, phs


def canonical_states_batch(ys, ths, phs) -> np.ndarray:
    """Normalized amplitude tensors (n, 2, 2, 2) for canonical parameter arrays."""
    ys = np.asarray(ys, dtype=float)
    t = np.stack([np.cos(np.asarray(ths) / 2.0), np.sin(np.asarray(ths) / 2.0)], axis=1)
    cubes = np.einsum("ni,nj,nk->nijk", t, t, t).astype(complex)
    cs = (ys * np.exp(1j * np.asarray(phs)))[:, None, None, None] * cubes
    cs[:, 0, 0, 0] += 1.0
    norms = np.sqrt(np.sum(np.abs(cs) ** 2, axis=(1, 2, 3)))
    return cs / norms[:, None, None, None]


def _records_from_arrays(source, ys, ths, phs, cs, closed_triples, tol) -> list[SampleRecord]:
    Co, tauo, kao = oracles.oracle_triples_batch(cs, tangle_convention=closedform.TAU_CONVENTION)
    out = []
    for i in range(len(ys)):
        closed = closed_triples[i]
        out.append(
            SampleRecord(
                source=source,
                y=float(ys[i]),
                theta=float(ths[i]),
                phi=float(phs[i]),
                oracle=InvariantTriple(C=float(Co[i]), tau=float(tauo[i]), kappa=float(kao[i])),
                closed=closed,
                verdict=region.membership(closed, tol=tol),
            )
        )
    return out


def sample_canonical(n: int, seed: int = DEFAULT_SEED, tol: float = region.DEFAULT_TOL) -> list[SampleRecord]:
    """Uniform parameter-space samples with closed-form and oracle invariants."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ys, ths, phs = canonical_parameter_draws(n, seed)
    cs = canonical_states_batch(ys, ths, phs)
    Cc, tc, kc = closedform.closed_triples_batch(ys, ths, phs)
    closed = [
        InvariantTriple(C=float(Cc[i]), tau=float(tc[i]), kappa=float(kc[i])) for i in range(n)
    ]
    return _records_from_arrays(SOURCE_CANONICAL, ys, ths, phs, cs, closed, tol)


def sample_dicke(n: int, seed: int = DEFAULT_SEED, tol: float = region.DEFAULT_TOL) -> list[SampleRecord]:
    """Gaussian Dicke-amplitude samples routed through the canonical reduction."""
    if n < 1:
        raise ValueError("n must be >= 1")
    states = []
    for i in range(n):
        g = record_stream(seed, i)
        amps = g.standard_normal(4) + 1j * g.standard_normal(4)
        states.append(SymmetricState(amps))
    ys = np.empty(n)
    ths = np.empty(n)
    phs = np.empty(n)
    closed = []
    for i, s in enumerate(states):
        reduced = majorana.canonical_reduce(s)
        if isinstance(reduced, CanonicalParams):
            ys[i], ths[i], phs[i] = reduced.y, reduced.theta, reduced.phi
            closed.append(closedform.invariants_closed(reduced))
        elif isinstance(reduced, DegenerateParams):
            ys[i], ths[i], phs[i] = math.nan, reduced.theta, math.nan
            closed.append(closedform.invariants_degenerate(reduced))
        else:
            ys[i], ths[i], phs[i] = 0.0, math.nan, math.nan
            closed.append(InvariantTriple(C=0.0, tau=0.0, kappa=1.0))
    cs = np.stack([dicke_to_full(s).c for s in states])
    return _records_from_arrays(SOURCE_DICKE, ys, ths, phs, cs, closed, tol)


def degenerate_grid(n: int, tol: float = region.DEFAULT_TOL) -> list[SampleRecord]:
    """Uniform theta grid over (0, pi] of the double-root family."""
    if n < 1:
        raise ValueError("n must be >= 1")
    thetas = np.linspace(math.pi / n, math.pi, n)
    cs = np.stack([degenerate_to_full(DegenerateParams(th)).c for th in thetas])
    ys = np.full(n, math.nan)
    phs = np.full(n, math.nan)
    closed = [closedform.invariants_degenerate(DegenerateParams(th)) for th in thetas]
    return _records_from_arrays(SOURCE_DEGENERATE, ys, thetas, phs, cs, closed, tol)


def _stable_invariants(v: np.ndarray) -> tuple[float, float, float]:
    """Cancellation-safe (C, tau, kappa) used as extremizer objectives.

    kappa is evaluated through the inversion identity
    kappa = (4 - 3 tau^2 - 9 C^2 - 3 C^3 cos phi)/4, which is exact on the
    canonical family and free of the bracket's catastrophic cancellation
    near the corner where the concurrence supremum lives.
    """
    y, th, ph = v
    u = math.cos(th / 2.0)
    N = (
        (1.0 - y) ** 2
        + 4.0 * y * math.sin(th / 4.0) ** 2 * (1.0 + u + u * u)
        + 4.0 * y * u**3 * math.cos(ph / 2.0) ** 2
    )
    tau = 2.0 * y * math.sin(th / 2.0) ** 3 / N
    C = y * math.sin(th / 2.0) * math.sin(th) / N
    kappa = (4.0 - 3.0 * tau**2 - 9.0 * C**2 - 3.0 * C**3 * math.cos(ph)) / 4.0
    return C, tau, kappa


_TARGETS = {"C": 0, "tau": 1, "kappa": 2}

_BOUNDS = [(0.0, 1.0 - 1e-12), (0.0, math.pi), (0.0, 2.0 * math.pi)]


def extremize(
    target: str,
    direction: str = "max",
    restarts: int = 100,
    seed: int = DEFAULT_SEED,
) -> tuple[float, CanonicalParams]:
    """Multi-start Nelder-Mead extremization of one invariant over (y, theta, phi)."""
    if target not in _TARGETS:
        raise ValueError(f"target must be one of {tuple(_TARGETS)}")
    if direction not in ("max", "min"):
        raise ValueError("direction must be 'max' or 'min'")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    idx = _TARGETS[target]
    sign = -1.0 if direction == "max" else 1.0

    def objective(v):
        return sign * _stable_invariants(v)[idx]

    rng = np.random.default_rng(seed)
    best_val = math.inf
    best_x = None
    for _ in range(restarts):
        x0 = np.array(
            [rng.uniform(0.0, 1.0), rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi)]
        )
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            bounds=_BOUNDS,
            options=dict(xatol=1e-13, fatol=1e-15, maxiter=2000, maxfev=4000),
        )
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = res.x
    params = CanonicalParams(
        y=float(best_x[0]),
        theta=float(best_x[1]),
        phi=float(math.fmod(best_x[2], 2.0 * math.pi)),
    )
    return sign * best_val, params
