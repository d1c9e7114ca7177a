"""State representations for pure symmetric 3-qubit states and conversions between them.

The primary representation is the 4-vector of Dicke amplitudes (a0..a3,
indexed by Hamming weight).  The full 8-amplitude tensor, the two-parameter
canonical family A(|000> + y e^{i phi} |theta>^x3), and the one-parameter
double-root family Sym(|0>|0>|theta>) are generated from it on demand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotSymmetric

__all__ = [
    "SymmetricState",
    "FullState3",
    "CanonicalParams",
    "DegenerateParams",
    "InvariantTriple",
    "dicke_to_full",
    "full_to_dicke",
    "canonical_to_full",
    "degenerate_to_full",
    "symmetrized_product",
    "equal_up_to_global_phase",
    "NORM_TOL",
    "SYMMETRY_TOL",
    "Y_BOUNDARY",
    "BINOM3",
]

NORM_TOL = 1e-12
SYMMETRY_TOL = 1e-9

# substitute for the excluded y = 1 endpoint when a reduction or inversion
# lands exactly on the boundary
Y_BOUNDARY = 1.0 - 1e-12

# binomial coefficients C(3, w) for w = 0..3
BINOM3 = np.array([1.0, 3.0, 3.0, 1.0])


def _as_normalized(values: np.ndarray, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex).copy()
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError(f"{what} amplitudes must be finite")
    norm = float(np.linalg.norm(arr.ravel()))
    if norm == 0.0:
        raise ValueError(f"{what} amplitudes are all zero")
    if abs(norm - 1.0) > NORM_TOL:
        arr /= norm
    arr.flags.writeable = False
    return arr


class SymmetricState:
    """Four Dicke amplitudes of a normalized symmetric 3-qubit state.

    Construction renormalizes inputs whose norm is off by more than 1e-12;
    the pre-normalization norm is kept in ``input_norm`` for reporting.
    Instances are immutable.
    """

    __slots__ = ("a", "input_norm")

    def __init__(self, amplitudes) -> None:
        arr = np.asarray(amplitudes, dtype=complex)
        if arr.shape != (4,):
            raise ValueError("expected 4 Dicke amplitudes")
        self.input_norm = float(np.linalg.norm(arr))
        self.a = _as_normalized(arr, "Dicke")

    def fix_gauge(self) -> "SymmetricState":
        """Return a copy whose first nonzero amplitude is real and nonnegative."""
        for x in self.a:
            if abs(x) > 0.0:
                return SymmetricState(self.a * np.conj(x) / abs(x))
        return self

    def __repr__(self) -> str:
        return f"SymmetricState({list(self.a)!r})"


class FullState3:
    """Normalized 3-qubit amplitude tensor c[i, j, k], i,j,k in {0,1}."""

    __slots__ = ("c", "input_norm")

    def __init__(self, amplitudes) -> None:
        arr = np.asarray(amplitudes, dtype=complex)
        if arr.size != 8:
            raise ValueError("expected 8 amplitudes")
        arr = arr.reshape(2, 2, 2)
        self.input_norm = float(np.linalg.norm(arr.ravel()))
        self.c = _as_normalized(arr, "state")

    def __repr__(self) -> str:
        return f"FullState3({self.c.ravel().tolist()!r})"


@dataclass(frozen=True)
class CanonicalParams:
    """Parameters (y, theta, phi) of the canonical symmetric form.

    The represented state is A(|000> + y e^{i phi} |theta>^x3) with
    |theta> = cos(theta/2)|0> + sin(theta/2)|1>.  ``boundary`` marks
    parameters produced from a reduction that hit the y -> 1 limit.
    """

    y: float
    theta: float
    phi: float
    boundary: bool = False

    def __post_init__(self) -> None:
        if not (0.0 <= self.y < 1.0):
            raise ValueError(f"y={self.y} outside [0, 1)")
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi={self.phi} outside [0, 2 pi)")

    @property
    def norm_squared(self) -> float:
        """Squared norm N of |000> + y e^{i phi}|theta>^x3 before normalization.

        Evaluated as a sum of nonnegative terms; the textbook grouping
        1 + y^2 + 2 y cos^3(theta/2) cos(phi) cancels catastrophically
        near (y, theta, phi) -> (1, 0, pi).
        """
        u = math.cos(self.theta / 2.0)
        return (
            (1.0 - self.y) ** 2
            + 4.0 * self.y * math.sin(self.theta / 4.0) ** 2 * (1.0 + u + u * u)
            + 4.0 * self.y * u**3 * math.cos(self.phi / 2.0) ** 2
        )

    @property
    def amplitude_scale(self) -> float:
        """Normalization constant A = N^(-1/2)."""
        return 1.0 / math.sqrt(self.norm_squared)


@dataclass(frozen=True)
class DegenerateParams:
    """Angle theta in (0, pi] of the double-root family Sym(|0>|0>|theta>)."""

    theta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.theta <= math.pi):
            raise ValueError(f"theta={self.theta} outside (0, pi]")


@dataclass(frozen=True)
class InvariantTriple:
    """The three real invariants: pairwise concurrence C, 3-tangle tau, Kempe kappa.

    Bounds (C <= 2/3, tau and kappa in [0, 1]) hold for triples computed
    from states; they are not enforced here so that arbitrary query points
    can be represented for region membership checks.
    """

    C: float
    tau: float
    kappa: float

    def __post_init__(self) -> None:
        for name in ("C", "tau", "kappa"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.C, self.tau, self.kappa)


def dicke_to_full(s: SymmetricState) -> FullState3:
    """Expand Dicke amplitudes into the full tensor, c_ijk = a_w / sqrt(C(3,w))."""
    c = np.empty((2, 2, 2), dtype=complex)
    for i, j, k in itertools.product((0, 1), repeat=3):
        w = i + j + k
        c[i, j, k] = s.a[w] / math.sqrt(BINOM3[w])
    return FullState3(c)


def full_to_dicke(f: FullState3) -> SymmetricState:
    """Collapse a permutation-symmetric tensor back to Dicke amplitudes.

    Raises NotSymmetric if two amplitudes of equal Hamming weight differ
    by more than 1e-9.
    """
    groups: list[list[complex]] = [[], [], [], []]
    for i, j, k in itertools.product((0, 1), repeat=3):
        groups[i + j + k].append(f.c[i, j, k])
    a = np.empty(4, dtype=complex)
    for w, vals in enumerate(groups):
        for v in vals[1:]:
            if abs(v - vals[0]) > SYMMETRY_TOL:
                raise NotSymmetric(
                    f"weight-{w} amplitudes differ by {abs(v - vals[0]):.3e}"
                )
        a[w] = math.sqrt(BINOM3[w]) * (sum(vals) / len(vals))
    return SymmetricState(a)


def canonical_to_full(p: CanonicalParams) -> FullState3:
    """Realize canonical parameters as a full amplitude tensor.

    Built through the Dicke amplitudes (one value per Hamming weight), so
    the output is permutation-symmetric to the last bit.
    """
    u = math.cos(p.theta / 2.0)
    s = math.sin(p.theta / 2.0)
    w = p.y * np.exp(1j * p.phi)
    a = np.array(
        [
            1.0 + w * u**3,
            math.sqrt(3.0) * w * u**2 * s,
            math.sqrt(3.0) * w * u * s**2,
            w * s**3,
        ],
        dtype=complex,
    )
    return dicke_to_full(SymmetricState(a))


def symmetrized_product(spinors) -> FullState3:
    """Normalized symmetrization of a product of three single-qubit spinors."""
    c = np.zeros((2, 2, 2), dtype=complex)
    for perm in itertools.permutations(spinors):
        c += np.einsum("i,j,k->ijk", *(np.asarray(v, dtype=complex) for v in perm))
    return FullState3(c)


def degenerate_to_full(d: DegenerateParams) -> FullState3:
    """Realize a double-root family member by explicit symmetrization."""
    spin = np.array([math.cos(d.theta / 2.0), math.sin(d.theta / 2.0)], dtype=complex)
    zero = np.array([1.0, 0.0], dtype=complex)
    return symmetrized_product([zero, zero, spin])


def equal_up_to_global_phase(f1: FullState3, f2: FullState3, tol: float = 1e-9) -> bool:
    """True iff |<f1|f2>| >= 1 - tol."""
    return abs(np.vdot(f1.c, f2.c)) >= 1.0 - tol
