import math

import numpy as np
import pytest

from symminv.closedform import closed_triples_batch, invariants_degenerate, invert_invariants
from symminv.errors import EmptySlice
from symminv.oracles import invariants_oracle
from symminv.region import (
    BOUNDARY_IDS,
    RegionStatus,
    TauCoeffMode,
    boundary_slice,
    constraint_residuals,
    membership,
    residuals_batch,
)
from symminv.sampling import canonical_parameter_draws
from symminv.states import CanonicalParams, DegenerateParams, InvariantTriple, canonical_to_full

W_TRIPLE = InvariantTriple(2.0 / 3.0, 0.0, 2.0 / 9.0)
GHZ_TRIPLE = InvariantTriple(0.0, 1.0, 0.25)
PRODUCT_TRIPLE = InvariantTriple(0.0, 0.0, 1.0)


def test_w_point_residuals():
    g1, g2, g3 = constraint_residuals(W_TRIPLE)
    # tau = 0 makes g3 coincide with g1; the whole double-root family sits
    # on both surfaces exactly
    assert abs(g3) < 1e-14
    assert abs(g1) < 1e-14
    assert g2 == pytest.approx(-16.0 / 9.0, abs=1e-14)


def test_ghz_discriminates_the_modes():
    g1, g2, g3 = constraint_residuals(GHZ_TRIPLE, TauCoeffMode.FROM_EQ26)
    assert (g1, g2, g3) == pytest.approx((0.0, 0.0, 0.0), abs=1e-14)
    g1p, g2p, g3p = constraint_residuals(GHZ_TRIPLE, TauCoeffMode.AS_PRINTED)
    assert g2p == pytest.approx(2.0, abs=1e-14)  # printed variant rejects GHZ


def test_product_corner():
    g1, g2, g3 = constraint_residuals(PRODUCT_TRIPLE)
    assert (g1, g2, g3) == pytest.approx((0.0, 0.0, 0.0), abs=1e-14)


def test_membership_statuses():
    v = membership(W_TRIPLE)
    assert v.status is RegionStatus.BOUNDARY
    assert 3 in v.active_boundaries
    assert membership(InvariantTriple(0.66, 0.9, 0.9)).status is RegionStatus.EXTERIOR
    # at (C, tau) = (0.3, 0.4) the admissible kappa interval is
    # (0.65725, 0.69775); 0.68 sits strictly inside
    assert membership(InvariantTriple(0.3, 0.4, 0.68)).status is RegionStatus.INTERIOR


def test_membership_tolerance_semantics():
    v = membership(InvariantTriple(0.3, 0.4, 0.68), tol=10.0)
    assert v.status is RegionStatus.BOUNDARY  # everything within a huge tol
    assert v.active_boundaries == (1, 2, 3)


def test_containment_of_sampled_triples():
    ys, ths, phs = canonical_parameter_draws(20000, seed=77)
    C, tau, kappa = closed_triples_batch(ys, ths, phs)
    g1, g2, g3 = residuals_batch(C, tau, kappa)
    tol = 1e-9
    assert not np.any((g1 < -tol) | (g2 > tol) | (g3 > tol))


def test_degenerate_family_on_boundary():
    for theta in np.linspace(0.01, math.pi, 300):
        t = invariants_degenerate(DegenerateParams(theta))
        v = membership(t)
        assert v.status is RegionStatus.BOUNDARY
        assert {1, 3} <= set(v.active_boundaries)


def _kappa_interval(C: float, tau: float) -> tuple[float, float]:
    """Admissible kappa band at fixed (C, tau); the region is a thin shell."""
    s3 = (C * C + tau * tau) ** 1.5
    upper = (4.0 - 3.0 * tau**2 - 9.0 * C**2 + 3.0 * C**3) / 4.0
    lower = max(
        (4.0 - 3.0 * tau**2 - 9.0 * C**2 - 3.0 * C**3) / 4.0,
        (4.0 - 6.0 * tau**2 - 9.0 * C**2 + 3.0 * s3) / 4.0,
    )
    return lower, upper


def test_achievability_inside_grid():
    # triples strictly inside invert to parameters whose state reproduces them
    count = 0
    for C in np.linspace(0.05, 0.6, 8):
        for tau in np.linspace(0.05, 0.9, 8):
            lo, hi = _kappa_interval(float(C), float(tau))
            if hi - lo < 1e-6:
                continue
            for frac in (0.25, 0.5, 0.75):
                kappa = lo + frac * (hi - lo)
                trip = InvariantTriple(float(C), float(tau), float(kappa))
                v = membership(trip, tol=1e-9)
                if v.status is not RegionStatus.INTERIOR:
                    continue
                count += 1
                p = invert_invariants(trip)
                back = invariants_oracle(canonical_to_full(p))
                assert abs(back.C - C) < 1e-8
                assert abs(back.tau - tau) < 1e-8
                assert abs(back.kappa - kappa) < 1e-8
    assert count > 100


def test_slice_kappa_quarter():
    sl = boundary_slice("kappa", 0.25, 80)
    assert sl.x_name == "C" and sl.y_name == "tau"
    assert set(sl.polylines) == set(BOUNDARY_IDS)
    total = sum(len(pts) for pts in sl.polylines.values())
    assert total > 50
    # every emitted point satisfies its equality within 1e-9
    for bid, pts in sl.polylines.items():
        index = BOUNDARY_IDS.index(bid)
        for x, y in pts:
            triple = InvariantTriple(C=x, tau=y, kappa=0.25)
            assert abs(constraint_residuals(triple)[index]) <= 1e-9


def test_slice_contains_w_point():
    sl = boundary_slice("kappa", 2.0 / 9.0, 61)
    pts = np.array(sl.polylines[30])
    d = np.min(np.hypot(pts[:, 0] - 2.0 / 3.0, pts[:, 1])) if pts.size else np.inf
    assert d < 1e-9


def test_slice_fixed_c_zero_corners():
    sl = boundary_slice("C", 0.0, 101)
    assert (sl.x_name, sl.y_name) == ("tau", "kappa")
    pts = np.concatenate([np.array(p).reshape(-1, 2) for p in sl.polylines.values() if p])
    assert np.min(np.hypot(pts[:, 0] - 1.0, pts[:, 1] - 0.25)) < 1e-9
    assert np.min(np.hypot(pts[:, 0], pts[:, 1] - 1.0)) < 1e-9


def test_slice_minimal_grid():
    sl = boundary_slice("kappa", 0.5, 2)
    for bid, pts in sl.polylines.items():
        index = BOUNDARY_IDS.index(bid)
        for x, y in pts:
            triple = InvariantTriple(C=x, tau=y, kappa=0.5)
            assert abs(constraint_residuals(triple)[index]) <= 1e-9


def test_empty_slice_raises():
    with pytest.raises(EmptySlice):
        boundary_slice("kappa", 0.05, 30)


def test_slice_rejects_bad_args():
    with pytest.raises(ValueError):
        boundary_slice("x", 0.5, 10)
    with pytest.raises(ValueError):
        boundary_slice("kappa", 0.5, 1)
