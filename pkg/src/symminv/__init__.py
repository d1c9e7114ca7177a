"""Entanglement invariants of pure symmetric 3-qubit states.

Library layout:

- ``states``     state representations and conversions
- ``oracles``    literal-contraction ground truths for the three invariants
- ``majorana``   projection-polynomial roots, two-cube split, canonical reduction
- ``closedform`` canonical/double-root family formulas and the inversion
- ``region``     achievable-region membership and boundary slices
- ``sampling``   seeded samplers and derivative-free extremization
- ``verify``     the ambiguity-resolution and residual pipeline
- ``cli``        the ``symminv`` command
"""

from .closedform import (
    canonical_tangle_from_oracle,
    invariants_closed,
    invariants_degenerate,
    invert_invariants,
)
from .majorana import (
    canonical_reduce,
    majorana_polynomial,
    majorana_roots,
    to_acin_form,
    two_cube_decomposition,
)
from .oracles import (
    concurrence_oracle,
    invariants_oracle,
    kempe_oracle,
    reduced_density_pair,
    three_tangle_oracle,
)
from .region import boundary_slice, constraint_residuals, membership
from .sampling import extremize, sample_canonical, sample_dicke
from .states import (
    CanonicalParams,
    DegenerateParams,
    FullState3,
    InvariantTriple,
    SymmetricState,
    canonical_to_full,
    degenerate_to_full,
    dicke_to_full,
    equal_up_to_global_phase,
    full_to_dicke,
)

__version__ = "0.1.0"

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
    "equal_up_to_global_phase",
    "reduced_density_pair",
    "concurrence_oracle",
    "three_tangle_oracle",
    "kempe_oracle",
    "invariants_oracle",
    "majorana_polynomial",
    "majorana_roots",
    "two_cube_decomposition",
    "canonical_reduce",
    "to_acin_form",
    "invariants_closed",
    "invariants_degenerate",
    "invert_invariants",
    "canonical_tangle_from_oracle",
    "constraint_residuals",
    "membership",
    "boundary_slice",
    "sample_canonical",
    "sample_dicke",
    "extremize",
    "__version__",
]
