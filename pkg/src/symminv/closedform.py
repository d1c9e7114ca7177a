"""Closed-form invariants on the canonical and double-root families, and the inversion.

The canonical-family formulas are evaluated in 80-bit arithmetic with an
arbitrary-precision fallback where the normalization N becomes tiny (the
bracket of the kappa formula cancels to O(N^3) there, which float64 cannot
survive).  ``*_hp`` variants evaluate the same expressions with mpmath at a
requested precision; the verification pipeline uses them to check the
inversion identities beyond what double-rounded triples can support.

Convention bridge: the literal quartic-contraction 3-tangle equals the
square of the tau appearing in the closed forms and region constraints.
``canonical_tangle_from_oracle`` maps oracle values onto that convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import OutOfRegion
from .states import Y_BOUNDARY, CanonicalParams, DegenerateParams, InvariantTriple

__all__ = [
    "TAU_CONVENTION",
    "KAPPA_EXPONENT",
    "canonical_tangle_from_oracle",
    "invariants_closed",
    "closed_triples_batch",
    "invariants_closed_hp",
    "invariants_degenerate",
    "InversionIntermediate",
    "inversion_intermediate",
    "invert_invariants",
    "invert_invariants_hp",
    "Y_BOUNDARY",
    "C_ZERO_BRANCH",
]

# resolved empirically by the verify pipeline; see its "resolutions" report
TAU_CONVENTION = "sqrt"
KAPPA_EXPONENT = 3

# below this N the longdouble bracket evaluation no longer returns
# correctly-rounded doubles (its error grows as eps/N^3); ~0.7% of uniform
# samples take the arbitrary-precision path
_MPMATH_N_FLOOR = 0.2

# C below which the inversion takes the phi-independent branches
C_ZERO_BRANCH = 1e-10

_CLAMP = 1e-6


def canonical_tangle_from_oracle(raw_tangle: float) -> float:
    """Map the quartic-contraction tangle onto the closed-form convention."""
    return math.sqrt(max(raw_tangle, 0.0))


def _stable_norm_squared(y, theta, u, phi, xp):
    """N as a sum of nonnegative terms; u = cos(theta/2).

    Groups 1 - u as 2 sin^2(theta/4) (exact for small theta), avoiding the
    cancellation of 1 + y^2 + 2 y u^3 cos(phi) near (y, theta, phi) ->
    (1, 0, pi).
    """
    return (
        (1.0 - y) ** 2
        + 4.0 * y * xp.sin(theta / 4.0) ** 2 * (1.0 + u + u * u)
        + 4.0 * y * u**3 * xp.cos(phi / 2.0) ** 2
    )


def _closed_longdouble(ys, ths, phs):
    """Vectorized canonical-family invariants in extended precision."""
    y = np.asarray(ys, dtype=np.longdouble)
    th = np.asarray(ths, dtype=np.longdouble)
    ph = np.asarray(phs, dtype=np.longdouble)
    u = np.cos(th / 2.0)
    s = np.sin(th / 2.0)
    N = _stable_norm_squared(y, th, u, ph, np)
    tau = 2.0 * y * s**3 / N
    C = y * s * np.sin(th) / N
    bracket = (
        (1.0 + y**2)
        * (8.0 + 19.0 * y**2 + 8.0 * y**4 + 9.0 * y**2 * (4.0 * np.cos(th) + np.cos(2.0 * th)))
        + 24.0 * y * u**3 * (2.0 + 3.0 * y**2 + 2.0 * y**4 + 3.0 * y**2 * np.cos(th)) * np.cos(ph)
        + 48.0 * y**2 * (1.0 + y**2) * u**6 * np.cos(2.0 * ph)
        + 16.0 * y**3 * u**9 * np.cos(3.0 * ph)
    )
    kappa = bracket / (8.0 * N**KAPPA_EXPONENT)
    return (
        np.asarray(C, dtype=np.float64),
        np.asarray(tau, dtype=np.float64),
        np.asarray(kappa, dtype=np.float64),
        np.asarray(N, dtype=np.float64),
    )


def invariants_closed_hp(y, theta, phi, dps: int = 50):
    """Canonical-family invariants as mpmath values at ``dps`` digits."""
    with mpmath.workdps(dps):
        y = mpmath.mpf(y)
        th = mpmath.mpf(theta)
        ph = mpmath.mpf(phi)
        u = mpmath.cos(th / 2)
        s = mpmath.sin(th / 2)
        N = (
            (1 - y) ** 2
            + 4 * y * mpmath.sin(th / 4) ** 2 * (1 + u + u * u)
            + 4 * y * u**3 * mpmath.cos(ph / 2) ** 2
        )
        tau = 2 * y * s**3 / N
        C = y * s * mpmath.sin(th) / N
        bracket = (
            (1 + y**2)
            * (8 + 19 * y**2 + 8 * y**4 + 9 * y**2 * (4 * mpmath.cos(th) + mpmath.cos(2 * th)))
            + 24 * y * u**3 * (2 + 3 * y**2 + 2 * y**4 + 3 * y**2 * mpmath.cos(th)) * mpmath.cos(ph)
            + 48 * y**2 * (1 + y**2) * u**6 * mpmath.cos(2 * ph)
            + 16 * y**3 * u**9 * mpmath.cos(3 * ph)
        )
        kappa = bracket / (8 * N**KAPPA_EXPONENT)
        return C, tau, kappa


def _corner_dps(n_value: float) -> int:
    """Digits needed so the bracket's cancellation to O(N^3) stays below 1e-12."""
    return max(40, 20 + 3 * int(math.ceil(-math.log10(max(n_value, 1e-300)))))


def closed_triples_batch(ys, ths, phs) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(C, tau, kappa) arrays for arrays of canonical parameters."""
    C, tau, kappa, N = _closed_longdouble(ys, ths, phs)
    C, tau, kappa = map(np.atleast_1d, (C, tau, kappa))
    for idx in np.nonzero(np.atleast_1d(N) < _MPMATH_N_FLOOR)[0]:
        ch, th_, kh = invariants_closed_hp(
            np.asarray(ys).ravel()[idx],
            np.asarray(ths).ravel()[idx],
            np.asarray(phs).ravel()[idx],
            dps=_corner_dps(float(np.atleast_1d(N)[idx])),
        )
        C[idx], tau[idx], kappa[idx] = float(ch), float(th_), float(kh)
    return C, tau, kappa


def invariants_closed(p: CanonicalParams) -> InvariantTriple:
    """Invariant triple of canonical parameters by the closed-form expressions."""
    C, tau, kappa = closed_triples_batch([p.y], [p.theta], [p.phi])
    return InvariantTriple(C=float(C[0]), tau=float(tau[0]), kappa=float(kappa[0]))


def invariants_degenerate(d: DegenerateParams) -> InvariantTriple:
    """Invariant triple of a double-root family member; tau is identically 0."""
    u2 = math.cos(d.theta / 2.0) ** 2
    kappa = (2.0 + 48.0 * u2 + 141.0 * u2**2 + 52.0 * u2**3) / (9.0 * (1.0 + 2.0 * u2) ** 3)
    C = (2.0 - 2.0 * u2) / (3.0 + 6.0 * u2)
    return InvariantTriple(C=C, tau=0.0, kappa=kappa)


@dataclass(frozen=True)
class InversionIntermediate:
    """Named subexpressions of the inversion: t, cos(theta/2), cos(phi)."""

    t: float
    cos_half_theta: float
    cos_phi: float


def inversion_intermediate(v: InvariantTriple) -> InversionIntermediate:
    """Raw (unclamped) inversion quantities for an invariant triple."""
    C, tau, kappa = v.C, v.tau, v.kappa
    s = math.hypot(C, tau)
    if s == 0.0:
        raise OutOfRegion("C = tau = 0 has no inversion intermediates")
    cos_half = C / s
    cos_phi = (4.0 - 3.0 * tau**2 - 9.0 * C**2 - 4.0 * kappa) / (3.0 * C**3) if C > 0 else math.nan
    t = (6.0 * tau**2 + 9.0 * C**2 + 4.0 * kappa - 4.0) / (3.0 * s**3)
    return InversionIntermediate(t=t, cos_half_theta=cos_half, cos_phi=cos_phi)


def _recover_y(t: float) -> tuple[float, bool]:
    if t < 1.0 - _CLAMP:
        raise OutOfRegion(f"t = {t} < 1")
    t = max(t, 1.0)
    y = 1.0 / (t + math.sqrt(t * t - 1.0))
    if y >= 1.0 - 1e-12:
        return Y_BOUNDARY, True
    return y, False


def invert_invariants(v: InvariantTriple) -> CanonicalParams:
    """Recover canonical parameters from an achievable invariant triple.

    phi is reported in [0, pi] (principal arccos branch; the invariants
    cannot distinguish phi from 2 pi - phi).  Special branches: C = tau = 0
    is the product point (requires kappa = 1); C = 0 with tau > 0 forces
    theta = pi, where phi drops out of all three invariants and is set to 0.
    Exact-boundary triples with tau = 0 and C > 0 invert to limit
    coordinates that no in-range parameter realizes.
    """
    C, tau, kappa = v.C, v.tau, v.kappa
    if C < -1e-12 or tau < -1e-12:
        raise OutOfRegion(f"negative invariant in {v}")
    C, tau = max(C, 0.0), max(tau, 0.0)
    if C < C_ZERO_BRANCH and tau < C_ZERO_BRANCH:
        if abs(kappa - 1.0) > _CLAMP:
            raise OutOfRegion(f"C = tau = 0 requires kappa = 1, got {kappa}")
        return CanonicalParams(y=0.0, theta=0.0, phi=0.0)
    if C < C_ZERO_BRANCH:
        t = (6.0 * tau**2 + 4.0 * kappa - 4.0) / (3.0 * tau**3)
        y, boundary = _recover_y(t)
        return CanonicalParams(y=y, theta=math.pi, phi=0.0, boundary=boundary)
    s = math.hypot(C, tau)
    cos_half = min(C / s, 1.0)
    cos_phi = (4.0 - 3.0 * tau**2 - 9.0 * C**2 - 4.0 * kappa) / (3.0 * C**3)
    if abs(cos_phi) > 1.0 + _CLAMP:
        raise OutOfRegion(f"|cos phi| = {abs(cos_phi)} > 1")
    cos_phi = min(max(cos_phi, -1.0), 1.0)
    t = (6.0 * tau**2 + 9.0 * C**2 + 4.0 * kappa - 4.0) / (3.0 * s**3)
    y, boundary = _recover_y(t)
    return CanonicalParams(
        y=y, theta=2.0 * math.acos(cos_half), phi=math.acos(cos_phi), boundary=boundary
    )


def invert_invariants_hp(C, tau, kappa, dps: int = 50):
    """Inversion evaluated with mpmath; returns (y, theta, cos_phi) as mpf.

    No special-branch thresholds: intended for generic triples produced by
    ``invariants_closed_hp`` at matching precision.
    """
    with mpmath.workdps(dps):
        C, tau, kappa = mpmath.mpf(C), mpmath.mpf(tau), mpmath.mpf(kappa)
        s = mpmath.sqrt(C * C + tau * tau)
        cos_half = C / s
        cos_half = min(max(cos_half, mpmath.mpf(-1)), mpmath.mpf(1))
        theta = 2 * mpmath.acos(cos_half)
        cos_phi = (4 - 3 * tau**2 - 9 * C**2 - 4 * kappa) / (3 * C**3)
        cos_phi = min(max(cos_phi, mpmath.mpf(-1)), mpmath.mpf(1))
        t = (6 * tau**2 + 9 * C**2 + 4 * kappa - 4) / (3 * s**3)
        t = max(t, mpmath.mpf(1))
        y = 1 / (t + mpmath.sqrt(t * t - 1))
        return y, theta, cos_phi
