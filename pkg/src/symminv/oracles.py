"""Ground-truth invariant oracles by literal index summation and small dense algebra.

The 3-tangle and Kempe contractions are written as plain loops over every
index assignment (4096 and 512 terms); no algebraic simplification is
applied.  The loops are JIT-compiled with numba when available, with the
identical pure-Python functions kept as a fallback (and as a cross-check
target in the tests).  The raw 3-tangle value here is the quartic
contraction; see ``closedform.canonical_tangle_from_oracle`` for the
convention bridge to the canonical-family closed forms.
"""

from __future__ import annotations

import numpy as np

from .errors import AsymmetricState, EigenFailure, NonRealResult
from .states import FullState3, InvariantTriple

__all__ = [
    "EPSILON",
    "SIGMA_Y",
    "PAIR_CHOICES",
    "reduced_density_pair",
    "concurrence_oracle",
    "concurrence_batch",
    "three_tangle_oracle",
    "three_tangle_batch",
    "kempe_oracle",
    "kempe_batch",
    "invariants_oracle",
    "oracle_triples_batch",
]

# antisymmetric symbol and sigma_y, fixed tables
EPSILON = np.array([[0.0, 1.0], [-1.0, 0.0]])
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])

PAIR_CHOICES = ((1, 2), (2, 3), (3, 1))

# axis order putting the kept parties first, in the order named by the pair
_PAIR_AXES = {(1, 2): (0, 1, 2), (2, 3): (1, 2, 0), (3, 1): (2, 0, 1)}

_SYY = np.kron(SIGMA_Y, SIGMA_Y)

# spurious eigenvalue pair of M: rho of a pure 3-qubit state has rank <= 2,
# so two eigenvalues are identically zero and carry only roundoff
_IMAG_RESIDUE_LIMIT = 1e-8


def _tangle_kernel(cs):
    """Quartic epsilon contraction per state, all 2^12 assignments."""
    n = cs.shape[0]
    eps = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.empty(n)
    for m in range(n):
        c = cs[m]
        total = 0.0 + 0.0j
        for i1 in range(2):
            for i2 in range(2):
                for i3 in range(2):
                    for i4 in range(2):
                        for j1 in range(2):
                            for j2 in range(2):
                                for j3 in range(2):
                                    for j4 in range(2):
                                        for k1 in range(2):
                                            for k2 in range(2):
                                                for k3 in range(2):
                                                    for k4 in range(2):
                                                        e = (
                                                            eps[i1, i2]
                                                            * eps[i3, i4]
                                                            * eps[j1, j2]
                                                            * eps[j3, j4]
                                                            * eps[k1, k3]
                                                            * eps[k2, k4]
                                                        )
                                                        total += (
                                                            e
                                                            * c[i1, j1, k1]
                                                            * c[i2, j2, k2]
                                                            * c[i3, j3, k3]
                                                            * c[i4, j4, k4]
                                                        )
        out[m] = 2.0 * abs(total)
    return out


def _kempe_kernel(cs):
    """Cyclic degree-6 contraction per state, all 2^9 assignments.

    Returns the complex totals; realness is asserted by the caller.
    """
    n = cs.shape[0]
    out = np.empty(n, dtype=np.complex128)
    for m in range(n):
        c = cs[m]
        cc = np.conj(c)
        total = 0.0 + 0.0j
        for i1 in range(2):
            for i2 in range(2):
                for i3 in range(2):
                    for j1 in range(2):
                        for j2 in range(2):
                            for j3 in range(2):
                                for k1 in range(2):
                                    for k2 in range(2):
                                        for k3 in range(2):
                                            total += (
                                                c[i1, j1, k1]
                                                * c[i2, j2, k2]
                                                * c[i3, j3, k3]
                                                * cc[i1, j2, k3]
                                                * cc[i2, j3, k1]
                                                * cc[i3, j1, k2]
                                            )
        out[m] = total
    return out


_tangle_kernel_py = _tangle_kernel
_kempe_kernel_py = _kempe_kernel

try:  # pragma: no cover - exercised implicitly everywhere
    from numba import njit

    # fastmath stays off: bit-identical IEEE summation order is part of the
    # determinism contract
    _tangle_kernel = njit(cache=True)(_tangle_kernel)
    _kempe_kernel = njit(cache=True)(_kempe_kernel)
except ImportError:  # pragma: no cover
    pass


def reduced_density_pair(f: FullState3, keep: tuple[int, int] = (1, 2)) -> np.ndarray:
    """Two-party reduced density matrix, tracing out the remaining party.

    ``keep`` is one of (1,2), (2,3), (3,1); the 4x4 result is indexed by
    the kept parties in that order.
    """
    if keep not in _PAIR_AXES:
        raise ValueError(f"keep must be one of {PAIR_CHOICES}, got {keep}")
    m = np.transpose(f.c, _PAIR_AXES[keep]).reshape(4, 2)
    return m @ m.conj().T


def _spin_flip_eigvals(rhos: np.ndarray) -> np.ndarray:
    """Descending real eigenvalues of rho (syy) rho* (syy) for a batch of rhos."""
    M = rhos @ _SYY @ rhos.conj() @ _SYY
    try:
        ev = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - pathological
        raise EigenFailure(str(exc)) from exc
    if np.max(np.abs(ev.imag)) > _IMAG_RESIDUE_LIMIT:
        raise EigenFailure(
            f"eigenvalue imaginary residue {np.max(np.abs(ev.imag)):.3e}"
        )
    real = np.sort(ev.real, axis=-1)[..., ::-1]
    return np.clip(real, 0.0, None)


def concurrence_batch(cs: np.ndarray, keep: tuple[int, int] = (1, 2)) -> np.ndarray:
    """Pairwise concurrence for a batch of amplitude tensors (n, 2, 2, 2)."""
    axes = _PAIR_AXES[keep]
    m = np.transpose(cs, (0, axes[0] + 1, axes[1] + 1, axes[2] + 1)).reshape(-1, 4, 2)
    rhos = m @ np.conj(np.transpose(m, (0, 2, 1)))
    mu = _spin_flip_eigvals(rhos)
    mu[:, 2:] = 0.0  # exact: rank(rho) <= 2 for pure tripartite states
    lam = np.sqrt(mu)
    return np.maximum(0.0, lam[:, 0] - lam[:, 1] - lam[:, 2] - lam[:, 3])


def concurrence_oracle(f: FullState3, keep: tuple[int, int] = (1, 2)) -> float:
    """Concurrence max{0, l1-l2-l3-l4} from the spin-flipped reduced density matrix."""
    if keep not in _PAIR_AXES:
        raise ValueError(f"keep must be one of {PAIR_CHOICES}, got {keep}")
    return float(concurrence_batch(f.c[None, :, :, :], keep)[0])


def three_tangle_batch(cs: np.ndarray) -> np.ndarray:
    return _tangle_kernel(np.ascontiguousarray(cs, dtype=np.complex128))


def three_tangle_oracle(f: FullState3) -> float:
    """3-tangle as twice the absolute quartic epsilon contraction."""
    return float(three_tangle_batch(f.c[None, :, :, :])[0])


def kempe_batch(cs: np.ndarray) -> np.ndarray:
    totals = _kempe_kernel(np.ascontiguousarray(cs, dtype=np.complex128))
    worst = float(np.max(np.abs(totals.imag)))
    if worst > 1e-9:
        raise NonRealResult(f"Kempe contraction imaginary residue {worst:.3e}")
    return totals.real


def kempe_oracle(f: FullState3) -> float:
    """Kempe invariant by the cyclic contraction of three copies against three conjugates."""
    return float(kempe_batch(f.c[None, :, :, :])[0])


def invariants_oracle(
    f: FullState3, tangle_convention: str = "sqrt"
) -> InvariantTriple:
    """Bundle the three oracles for a symmetric state.

    The three pairwise concurrences are required to agree within 1e-8.
    ``tangle_convention`` maps the raw quartic contraction onto the tau
    used by the closed forms and the region machinery: "sqrt" (the
    empirically resolved convention) or "identity" (the raw value).
    """
    concs = [concurrence_oracle(f, keep) for keep in PAIR_CHOICES]
    spread = max(concs) - min(concs)
    if spread > 1e-8:
        raise AsymmetricState(f"pairwise concurrences spread {spread:.3e}")
    raw_tangle = three_tangle_oracle(f)
    if tangle_convention == "sqrt":
        tau = float(np.sqrt(raw_tangle))
    elif tangle_convention == "identity":
        tau = raw_tangle
    else:
        raise ValueError(f"unknown tangle convention {tangle_convention!r}")
    return InvariantTriple(C=concs[0], tau=tau, kappa=kempe_oracle(f))


def oracle_triples_batch(
    cs: np.ndarray, tangle_convention: str = "sqrt", check_symmetry: bool = True
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(C, tau, kappa) arrays for a batch of symmetric states.

    Mirrors ``invariants_oracle`` semantics, vectorized over states.
    """
    concs = np.stack([concurrence_batch(cs, keep) for keep in PAIR_CHOICES])
    if check_symmetry:
        spread = float(np.max(concs.max(axis=0) - concs.min(axis=0))) if cs.shape[0] else 0.0
        if spread > 1e-8:
            raise AsymmetricState(f"pairwise concurrences spread {spread:.3e}")
    tau = three_tangle_batch(cs)
    if tangle_convention == "sqrt":
        tau = np.sqrt(tau)
    elif tangle_convention != "identity":
        raise ValueError(f"unknown tangle convention {tangle_convention!r}")
    return concs[0], tau, kempe_batch(cs)
