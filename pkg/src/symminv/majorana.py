"""Majorana polynomial, root classification, two-cube decomposition, canonical reduction.

A symmetric 3-qubit state projects onto spin-coherent states as a cubic
polynomial whose roots (counting roots at infinity when the degree drops)
determine the state up to scale.  States without a multiplicity-2 root
split into a sum of two spinor cubes; the two cube directions are the
linear factors of the Hessian covariant of the homogenized cubic, which
exists exactly when the discriminant is nonzero.  Rotating the first cube
direction onto |0> and absorbing the residual phase into a diagonal
unitary yields the canonical parameters (y, theta, phi).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRoot, ProductState, ZeroPolynomial
from .states import (
    BINOM3,
    Y_BOUNDARY,
    CanonicalParams,
    DegenerateParams,
    FullState3,
    SymmetricState,
    full_to_dicke,
    symmetrized_product,
)

__all__ = [
    "RootClass",
    "MajoranaPolynomial",
    "MajoranaRoots",
    "TwoCubeDecomposition",
    "ProductReport",
    "majorana_polynomial",
    "majorana_roots",
    "two_cube_decomposition",
    "canonical_reduce",
    "rebuild_from_roots",
    "to_acin_form",
    "DEFAULT_CLUSTER_TOL",
]

DEFAULT_CLUSTER_TOL = 1e-8

# relative threshold below which a leading coefficient counts as a degree drop
_DEGREE_TOL = 1e-12


class RootClass(enum.Enum):
    GENERIC = "generic"
    DOUBLE_ROOT = "double_root"
    TRIPLE_ROOT = "triple_root"


@dataclass(frozen=True)
class MajoranaPolynomial:
    """Coefficients (p0, p1, p2, p3) of p0 + p1 a + p2 a^2 + p3 a^3."""

    coeffs: tuple[complex, complex, complex, complex]

    def __call__(self, alpha: complex) -> complex:
        p0, p1, p2, p3 = self.coeffs
        return p0 + alpha * (p1 + alpha * (p2 + alpha * p3))


@dataclass(frozen=True)
class MajoranaRoots:
    """Finite roots plus the multiplicity at infinity and the cluster class."""

    finite_roots: tuple[complex, ...]
    roots_at_infinity: int
    classification: RootClass
    clusters: tuple[tuple[complex, int], ...]  # (representative, multiplicity)


def majorana_polynomial(s: SymmetricState) -> MajoranaPolynomial:
    """Projection polynomial coefficients, p_w = a_w sqrt(C(3, w))."""
    p = s.a * np.sqrt(BINOM3)
    return MajoranaPolynomial(tuple(complex(x) for x in p))


def _polish(p: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """A few Newton steps against the original coefficients."""
    dp = np.arange(1, p.size) * p[1:]
    for _ in range(3):
        val = np.polyval(p[::-1], roots)
        der = np.polyval(dp[::-1], roots)
        safe = np.abs(der) > 1e-30
        roots = np.where(safe, roots - np.where(safe, val / np.where(safe, der, 1.0), 0.0), roots)
    return roots


def majorana_roots(
    p: MajoranaPolynomial, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> MajoranaRoots:
    """Roots of the (possibly degree-deficient) cubic with multiplicity clustering.

    Roots closer than ``cluster_tol`` in relative distance merge into one
    cluster; the degree deficit contributes a cluster at infinity.  Raises
    ZeroPolynomial when every coefficient is below 1e-14.
    """
    arr = np.asarray(p.coeffs, dtype=complex)
    scale = float(np.max(np.abs(arr)))
    if scale < 1e-14:
        raise ZeroPolynomial("all Majorana coefficients vanish")
    degree = 3
    while degree > 0 and abs(arr[degree]) <= _DEGREE_TOL * scale:
        degree -= 1
    inf_mult = 3 - degree
    if degree == 0:
        finite: tuple[complex, ...] = ()
    else:
        raw = np.roots(arr[: degree + 1][::-1])
        finite = tuple(complex(z) for z in _polish(arr[: degree + 1], raw))
    clusters: list[list[complex]] = []
    for z in sorted(finite, key=lambda w: (w.real, w.imag)):
        for grp in clusters:
            if abs(z - grp[0]) <= cluster_tol * max(1.0, abs(z), abs(grp[0])):
                grp.append(z)
                break
        else:
            clusters.append([z])
    reps = [(complex(np.mean(grp)), len(grp)) for grp in clusters]
    if inf_mult:
        reps.append((complex("inf"), inf_mult))
    top = max(m for _, m in reps)
    if top == 3:
        cls = RootClass.TRIPLE_ROOT
    elif top == 2:
        cls = RootClass.DOUBLE_ROOT
    else:
        cls = RootClass.GENERIC
    return MajoranaRoots(
        finite_roots=finite,
        roots_at_infinity=inf_mult,
        classification=cls,
        clusters=tuple(reps),
    )


def _spinor_from_root(alpha: complex) -> np.ndarray:
    """Spinor whose cube has ``alpha`` as its (triple) projection root."""
    if alpha == complex("inf") or not cmath.isfinite(alpha):
        return np.array([1.0, 0.0], dtype=complex)
    v = np.array([-alpha, 1.0], dtype=complex)
    return _gauge(v / np.linalg.norm(v))


def _gauge(v: np.ndarray) -> np.ndarray:
    """Rotate a unit spinor so its first nonzero component is real positive."""
    pivot = v[0] if abs(v[0]) > 1e-15 else v[1]
    return v * (np.conj(pivot) / abs(pivot))


def _cube_coeffs(v: np.ndarray) -> np.ndarray:
    """Projection-polynomial coefficients of v^x3: binomial expansion of (v0 + a v1)^3."""
    v0, v1 = v
    return np.array([v0**3, 3 * v0**2 * v1, 3 * v0 * v1**2, v1**3], dtype=complex)


@dataclass(frozen=True)
class TwoCubeDecomposition:
    """Weights and spinors with state = c0 spinor0^x3 + c1 spinor1^x3."""

    c0: complex
    c1: complex
    spinor0: np.ndarray
    spinor1: np.ndarray

    @property
    def beta0(self) -> complex:
        return _ratio(self.spinor0)

    @property
    def beta1(self) -> complex:
        return _ratio(self.spinor1)

    @property
    def c_prime(self) -> complex:
        """(c1/c0) cos(theta_1)/cos(theta_0); non-finite when spinor0 has no |0> part."""
        try:
            return self.c1 / self.c0 * (self.spinor1[0].real / self.spinor0[0].real)
        except ZeroDivisionError:
            return complex("inf")

    def to_state(self) -> SymmetricState:
        """Rebuild the normalized Dicke amplitudes from the decomposition."""
        p = self.c0 * _cube_coeffs(self.spinor0) + self.c1 * _cube_coeffs(self.spinor1)
        return SymmetricState(p / np.sqrt(BINOM3))


def _ratio(v: np.ndarray) -> complex:
    if abs(v[0]) < 1e-300:
        return complex("inf")
    return complex(v[1] / v[0])


@dataclass(frozen=True)
class ProductReport:
    """Reduction outcome for a single-cube state (locally equivalent to |000>)."""

    spinor: np.ndarray


def two_cube_decomposition(
    s: SymmetricState, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> TwoCubeDecomposition:
    """Split a symmetric state into a sum of two spinor cubes.

    The two cube directions are the linear factors of the Hessian of the
    homogenized projection cubic; the weights follow from a linear solve
    against the polynomial coefficients.  Raises DegenerateRoot for
    multiplicity-2 root structure (no such decomposition exists) and
    ProductState for a triple root.
    """
    poly = majorana_polynomial(s)
    cls = majorana_roots(poly, cluster_tol).classification
    if cls is RootClass.DOUBLE_ROOT:
        raise DegenerateRoot("multiplicity-2 Majorana root")
    if cls is RootClass.TRIPLE_ROOT:
        raise ProductState("state is a single spinor cube")
    p = np.asarray(poly.coeffs, dtype=complex)
    # Hessian quadratic of a x^3 + 3b x^2 z + 3c x z^2 + d z^3, up to scale
    a, b, c, d = p[3], p[2] / 3.0, p[1] / 3.0, p[0]
    qa = a * c - b * b
    qb = a * d - b * c
    qc = b * d - c * c
    scale = max(abs(qa), abs(qb), abs(qc))
    if scale == 0.0:  # unreachable after classification; defensive
        raise ProductState("Hessian vanishes identically")
    if abs(qa) > 1e-13 * scale:
        disc = np.sqrt(qb * qb - 4.0 * qa * qc)
        q = -(qb + disc) / 2.0 if abs(qb + disc) >= abs(qb - disc) else -(qb - disc) / 2.0
        t1 = q / qa
        t2 = qc / q if abs(q) > 0.0 else 0.0 + 0.0j
        spinors = [_spinor_from_root(t1), _spinor_from_root(t2)]
    else:
        # one factor is the line at infinity: cube direction |0>
        spinors = [
            np.array([1.0, 0.0], dtype=complex),
            _gauge(np.array([qc, qb], dtype=complex) / np.hypot(abs(qc), abs(qb))),
        ]
    basis = np.stack([_cube_coeffs(spinors[0]), _cube_coeffs(spinors[1])], axis=1)
    weights, *_ = np.linalg.lstsq(basis, p, rcond=None)
    return TwoCubeDecomposition(
        c0=complex(weights[0]), c1=complex(weights[1]),
        spinor0=spinors[0], spinor1=spinors[1],
    )


def _su2_sending_to_zero(v: np.ndarray) -> np.ndarray:
    """Single-qubit unitary mapping the unit spinor v exactly onto |0>."""
    return np.array([[np.conj(v[0]), np.conj(v[1])], [-v[1], v[0]]], dtype=complex)


def _polar_angle(w: np.ndarray) -> float:
    return 2.0 * math.atan2(abs(w[1]), abs(w[0]))


def canonical_reduce(
    s: SymmetricState, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> CanonicalParams | DegenerateParams | ProductReport:
    """Reduce a symmetric state to its local-unitary normal form.

    Generic root structure yields CanonicalParams (cubes ordered so that
    y < 1; an exactly balanced pair is reported at the y boundary with the
    ``boundary`` flag).  A multiplicity-2 root yields DegenerateParams, a
    triple root yields ProductReport.
    """
    roots = majorana_roots(majorana_polynomial(s), cluster_tol)
    if roots.classification is RootClass.TRIPLE_ROOT:
        rep = roots.clusters[0][0]
        return ProductReport(spinor=_spinor_from_root(rep))
    if roots.classification is RootClass.DOUBLE_ROOT:
        double_rep = next(r for r, m in roots.clusters if m == 2)
        single_rep = next(r for r, m in roots.clusters if m == 1)
        d = _spinor_from_root(double_rep)
        w = _su2_sending_to_zero(d) @ _spinor_from_root(single_rep)
        return DegenerateParams(theta=_polar_angle(w))
    dec = two_cube_decomposition(s, cluster_tol)
    c0, v0, c1, v1 = dec.c0, dec.spinor0, dec.c1, dec.spinor1
    if abs(c1) > abs(c0):
        c0, v0, c1, v1 = c1, v1, c0, v0
    w = _su2_sending_to_zero(v0) @ v1
    theta = _polar_angle(w)
    gamma = cmath.phase(w[0]) if abs(w[0]) > 1e-300 else 0.0
    ratio = c1 / c0
    y = abs(ratio)
    boundary = False
    if y > 1.0 - 1e-12:
        y = Y_BOUNDARY
        boundary = True
    phi = math.fmod(cmath.phase(ratio) + 3.0 * gamma, 2.0 * math.pi)
    if phi < 0.0:
        phi += 2.0 * math.pi
    return CanonicalParams(y=y, theta=theta, phi=phi, boundary=boundary)


def rebuild_from_roots(
    s: SymmetricState, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> SymmetricState:
    """Reconstruct a state from its root multiset (spinor per root, symmetrized).

    Measures root-finding fidelity: the overlap with the source is 1 up to
    solver error for any classification.
    """
    roots = majorana_roots(majorana_polynomial(s), cluster_tol)
    spinors = []
    for rep, mult in roots.clusters:
        spinors.extend([_spinor_from_root(rep)] * mult)
    return full_to_dicke(symmetrized_product(spinors))


def to_acin_form(p: CanonicalParams) -> FullState3:
    """Literal non-symmetric five-term form of the canonical parameters.

    Experimental: the printed expression carries an e^{-i theta} phase and
    no phi dependence; its invariants do not match the symmetric canonical
    form (compare with ``invariants_closed`` to quantify).  Implemented
    as printed, renormalized.
    """
    y, th = p.y, p.theta
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 0] = math.sin(th)
    c[1, 0, 0] = math.cos(th) * (cmath.exp(-1j * th) + y * math.cos(th))
    c[1, 0, 1] = y * math.cos(th) * math.sin(th)
    c[1, 1, 0] = y * math.cos(th) * math.sin(th)
    c[1, 1, 1] = y * math.sin(th) ** 2
    return FullState3(c)
