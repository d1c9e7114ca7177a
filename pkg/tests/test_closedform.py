import math

import mpmath
import numpy as np
import pytest

from conftest import random_symmetric
from symminv.closedform import (
    canonical_tangle_from_oracle,
    closed_triples_batch,
    invariants_closed,
    invariants_closed_hp,
    invariants_degenerate,
    inversion_intermediate,
    invert_invariants,
    invert_invariants_hp,
)
from symminv.errors import OutOfRegion
from symminv.majorana import canonical_reduce
from symminv.oracles import invariants_oracle, oracle_triples_batch, three_tangle_oracle
from symminv.sampling import canonical_parameter_draws, canonical_states_batch
from symminv.states import (
    CanonicalParams,
    DegenerateParams,
    InvariantTriple,
    SymmetricState,
    canonical_to_full,
    degenerate_to_full,
    dicke_to_full,
)


def test_product_point():
    t = invariants_closed(CanonicalParams(y=0.0, theta=1.1, phi=0.4))
    assert (t.C, t.tau, t.kappa) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)


def test_ghz_limit():
    t = invariants_closed(CanonicalParams(y=1.0 - 1e-9, theta=math.pi, phi=0.0))
    assert t.C == pytest.approx(0.0, abs=1e-12)
    assert t.tau == pytest.approx(1.0, abs=1e-12)
    assert t.kappa == pytest.approx(0.25, abs=1e-9)


def test_closed_matches_oracle_spec_point():
    p = CanonicalParams(y=0.5, theta=math.pi / 2.0, phi=1.0)
    got = invariants_closed(p)
    ref = invariants_oracle(canonical_to_full(p))
    assert got.C == pytest.approx(ref.C, abs=1e-9)
    assert got.tau == pytest.approx(ref.tau, abs=1e-9)
    assert got.kappa == pytest.approx(ref.kappa, abs=1e-9)


def test_tau_convention_is_square_root():
    rng = np.random.default_rng(2)
    worst_sqrt = worst_id = 0.0
    for _ in range(50):
        p = CanonicalParams(
            y=rng.uniform(0, 1), theta=rng.uniform(0, math.pi), phi=rng.uniform(0, 2 * math.pi)
        )
        raw = three_tangle_oracle(canonical_to_full(p))
        tau = invariants_closed(p).tau
        worst_sqrt = max(worst_sqrt, abs(tau - canonical_tangle_from_oracle(raw)))
        worst_id = max(worst_id, abs(tau - raw))
    assert worst_sqrt < 1e-9
    assert worst_id > 1e-2  # the identity hypothesis is grossly wrong


def test_degenerate_family_values():
    w = invariants_degenerate(DegenerateParams(theta=math.pi))
    assert (w.C, w.tau, w.kappa) == pytest.approx((2.0 / 3.0, 0.0, 2.0 / 9.0), abs=1e-15)
    near_product = invariants_degenerate(DegenerateParams(theta=1e-8))
    assert near_product.C == pytest.approx(0.0, abs=1e-8)
    assert near_product.kappa == pytest.approx(1.0, abs=1e-8)
    # (2 + 48 + 141 + 52)/(9*27) = 1 exactly at u = 1
    half = invariants_degenerate(DegenerateParams(theta=math.pi / 2.0))
    assert half.C == pytest.approx(1.0 / 6.0, abs=1e-15)
    assert half.kappa == pytest.approx(271.0 / 288.0, abs=1e-15)


def test_degenerate_family_matches_oracle_grid():
    thetas = np.linspace(math.pi / 200, math.pi, 200)
    cs = np.stack([degenerate_to_full(DegenerateParams(t)).c for t in thetas])
    Co, tauo, kao = oracle_triples_batch(cs)
    for i, t in enumerate(thetas):
        ref = invariants_degenerate(DegenerateParams(t))
        assert abs(Co[i] - ref.C) < 1e-9
        assert abs(kao[i] - ref.kappa) < 1e-9
        assert tauo[i] < 1e-9


def test_eq25_exactness():
    # C / sqrt(C^2 + tau^2) equals cos(theta/2) identically on the family
    for y in np.linspace(0.05, 0.95, 7):
        for theta in np.linspace(0.05, math.pi - 0.05, 9):
            for phi in np.linspace(0.0, 2 * math.pi, 5, endpoint=False):
                t = invariants_closed(CanonicalParams(y=float(y), theta=float(theta), phi=float(phi)))
                got = t.C / math.hypot(t.C, t.tau)
                assert abs(got - math.cos(theta / 2.0)) < 1e-12


def test_inversion_spec_examples():
    ghz = invert_invariants(InvariantTriple(0.0, 1.0, 0.25))
    assert ghz.boundary
    assert ghz.theta == pytest.approx(math.pi)
    assert ghz.phi == 0.0
    product = invert_invariants(InvariantTriple(0.0, 0.0, 1.0))
    assert (product.y, product.theta, product.phi) == (0.0, 0.0, 0.0)
    p = invert_invariants(invariants_closed(CanonicalParams(y=0.4, theta=2.0, phi=0.7)))
    assert p.y == pytest.approx(0.4, abs=1e-8)
    assert p.theta == pytest.approx(2.0, abs=1e-8)
    assert math.cos(p.phi) == pytest.approx(math.cos(0.7), abs=1e-8)


def test_inversion_out_of_region():
    with pytest.raises(OutOfRegion):
        invert_invariants(InvariantTriple(0.0, 0.0, 0.5))
    with pytest.raises(OutOfRegion):
        invert_invariants(InvariantTriple(0.5, 0.2, 0.9))  # |cos phi| >> 1


def test_inversion_intermediate_w_point():
    inter = inversion_intermediate(InvariantTriple(2.0 / 3.0, 0.0, 2.0 / 9.0))
    assert inter.cos_half_theta == pytest.approx(1.0)
    assert inter.cos_phi == pytest.approx(-1.0, abs=1e-12)
    assert inter.t == pytest.approx(1.0, abs=1e-12)


def _inversion_condition_ok(t, y) -> bool:
    """Predicted float64 recovery error below 1e-9 for every output.

    One ulp of the triple moves the inversion numerators by ~5e-16; the
    outputs amplify that by 4/(3 C^3) for cos phi, and through t by
    4/(3 s^3) * 2 y^2/(1 - y^2) for y.
    """
    noise = 5e-16
    s = math.hypot(t.C, t.tau)
    if t.C < 1e-4 or s < 1e-4:
        return False
    err_cosphi = noise * 4.0 / (3.0 * t.C**3)
    err_y = noise * 4.0 / (3.0 * s**3) * 2.0 * y * y / max(1.0 - y * y, 1e-12)
    err_theta = 2e-16 / s
    return max(err_cosphi, err_y, err_theta) <= 1e-9


def test_roundtrip_well_conditioned_float64():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(2000):
        y = rng.uniform(0.02, 0.98)
        theta = rng.uniform(0.0, math.pi)
        phi = rng.uniform(0.0, 2 * math.pi)
        t = invariants_closed(CanonicalParams(y=y, theta=theta, phi=phi))
        if not _inversion_condition_ok(t, y):
            continue
        checked += 1
        p = invert_invariants(t)
        assert abs(p.y - y) < 1e-8
        assert abs(p.theta - theta) < 1e-8
        assert abs(math.cos(p.phi) - math.cos(phi)) < 1e-8
    assert checked > 1000


def test_roundtrip_high_precision_unfiltered():
    rng = np.random.default_rng(6)
    for _ in range(300):
        y = rng.uniform(0.0, 1.0)
        theta = rng.uniform(0.0, math.pi)
        phi = rng.uniform(0.0, 2 * math.pi)
        C, tau, kappa = invariants_closed_hp(y, theta, phi, dps=50)
        if C == 0 or tau == 0:
            continue
        yr, thr, cphr = invert_invariants_hp(C, tau, kappa, dps=50)
        assert abs(float(yr) - y) < 1e-8
        assert abs(float(thr) - theta) < 1e-8
        assert abs(float(cphr - mpmath.cos(phi))) < 1e-8


def test_hp_agrees_with_float64_path():
    rng = np.random.default_rng(7)
    for _ in range(30):
        y, th, ph = rng.uniform(0.05, 0.95), rng.uniform(0.2, 3.0), rng.uniform(0, 6.2)
        t = invariants_closed(CanonicalParams(y=y, theta=th, phi=ph))
        C, tau, kappa = invariants_closed_hp(y, th, ph)
        assert abs(t.C - float(C)) < 1e-13
        assert abs(t.tau - float(tau)) < 1e-13
        assert abs(t.kappa - float(kappa)) < 1e-13


def test_corner_samples_stay_finite_and_bounded():
    # deep corner: literal evaluation in float64 produces garbage; the
    # tiered evaluation must stay on [0, 1]-scale values
    for y, th, ph in [
        (0.999, 0.01, math.pi - 0.001),
        (0.9999, 0.004, math.pi),
        (1 - 1e-9, 1e-4, math.pi),
        (1 - 1e-12, 1e-7, math.pi),
    ]:
        t = invariants_closed(CanonicalParams(y=y, theta=th, phi=ph))
        assert 0.0 <= t.C <= 2.0 / 3.0 + 1e-9
        assert 0.0 <= t.tau <= 1.0 + 1e-9
        assert 0.0 <= t.kappa <= 1.0 + 1e-9
        ref = invariants_closed_hp(y, th, ph, dps=90)
        assert abs(t.C - float(ref[0])) < 1e-10
        assert abs(t.kappa - float(ref[2])) < 1e-10


def test_roundtrip_b_reduction_consistency():
    # closed forms on the reduced parameters reproduce the oracle triple
    rng = np.random.default_rng(8)
    states = [random_symmetric(rng) for _ in range(400)]
    cs = np.stack([dicke_to_full(s).c for s in states])
    Co, tauo, kao = oracle_triples_batch(cs)
    for i, s in enumerate(states):
        r = canonical_reduce(s)
        assert isinstance(r, CanonicalParams)
        t = invariants_closed(r)
        assert abs(t.C - Co[i]) < 1e-8
        assert abs(t.tau - tauo[i]) < 1e-8
        assert abs(t.kappa - kao[i]) < 1e-8


def test_batch_matches_scalar():
    ys, ths, phs = canonical_parameter_draws(64, seed=123)
    Cb, tb, kb = closed_triples_batch(ys, ths, phs)
    for i in range(64):
        t = invariants_closed(CanonicalParams(y=ys[i], theta=ths[i], phi=phs[i]))
        assert t.C == Cb[i] and t.tau == tb[i] and t.kappa == kb[i]


def test_invariant_bounds_on_samples():
    ys, ths, phs = canonical_parameter_draws(2000, seed=9)
    C, tau, kappa = closed_triples_batch(ys, ths, phs)
    assert np.all(C >= 0.0) and np.all(C <= 2.0 / 3.0 + 1e-9)
    assert np.all(tau >= 0.0) and np.all(tau <= 1.0 + 1e-9)
    assert np.all(kappa >= 0.0) and np.all(kappa <= 1.0 + 1e-9)
