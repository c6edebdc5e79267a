import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from odrcount.countformulas import FormalType, OdRConfig, count_general, genericity_check
from odrcount.exactpoly import interpolate
from odrcount.fforacle import (CapacityError, ResidueHistogram, all_matrices, adjoint_act, coadjoint_act, config_orders,
                               convolve, det_mod, encode, enumerate_orbit, find_generic_tuple,
                               formal_type_array, group_inverse, iter_generic_tuples, odr_count, oracle_for_config, pair,
                               predicted_orbit_size, residue_histogram)

# brute-force oracle outputs, frozen
FROZEN_COUNTS = {
    OdRConfig(2, (), (1, 1)): {3: 15, 5: 35, 7: 63, 11: 143},
    OdRConfig(2, (), (2,)): {3: 1, 5: 1, 7: 1, 11: 1},
    OdRConfig(2, (), (3,)): {3: 12, 5: 30, 7: 56},
    OdRConfig(2, ((1, 1), (1, 1)), (1,)): {5: 40, 7: 70, 11: 154},
}


def _keys(elements, p):
    flat = elements.reshape(elements.shape[0], -1)
    return {tuple(row) for row in flat.tolist()}


def _full_group(n, m, p):
    units = [g for g in all_matrices(n, p) if det_mod(g, p)]
    tails = list(itertools.product(all_matrices(n, p), repeat=m - 1))
    for g0 in units:
        for rest in tails:
            yield np.stack([g0, *rest])


def test_identity_acts_trivially():
    rng = np.random.default_rng(0)
    Y = rng.integers(0, 5, (2, 2, 2))
    g = np.stack([np.eye(2, dtype=np.int64), np.zeros((2, 2), dtype=np.int64)])
    assert np.array_equal(coadjoint_act(g, Y, 5), Y)


def test_m1_is_conjugation():
    g = np.array([[[1, 1], [0, 1]]])
    Y = np.array([[[1, 2], [0, 2]]])
    ginv = np.array([[1, 4], [0, 1]])
    assert np.array_equal(coadjoint_act(g, Y, 5)[0], (g[0] @ Y[0] @ ginv) % 5)


@given(st.integers(0, 10 ** 6))
def test_pairing_invariance(seed):
    rng = np.random.default_rng(seed)
    p, m = 5, 2
    while True:
        g = rng.integers(0, p, (m, 2, 2))
        if det_mod(g[0], p):
            break
    Y, X = rng.integers(0, p, (m, 2, 2)), rng.integers(0, p, (m, 2, 2))
    assert pair(coadjoint_act(g, Y, p), X, p) == pair(Y, adjoint_act(group_inverse(g, p), X, p), p)


def test_orbit_n2_m2_p3_against_full_group():
    C = FormalType(((1, 2), (0, 1)), 3)
    orbit = enumerate_orbit(C)
    assert orbit.size == 108 == predicted_orbit_size(C)
    Y = formal_type_array(C)
    brute = {tuple(coadjoint_act(g, Y, 3).reshape(-1).tolist()) for g in _full_group(2, 2, 3)}
    assert _keys(orbit.elements(), 3) == brute


def test_rank_one_orbit_is_a_point():
    for m in (1, 2, 3):
        C = FormalType(tuple((j,) for j in range(1, m + 1)), 5)
        assert enumerate_orbit(C).size == 1


def test_tame_orbit_by_filtering():
    C = FormalType(((1, 2),), 5)
    orbit = enumerate_orbit(C)
    mats = all_matrices(2, 5)
    tr = (mats[:, 0, 0] + mats[:, 1, 1]) % 5
    det = (mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]) % 5
    direct = mats[(tr == 3) & (det == 2)]
    assert orbit.size == 30 == len(direct)
    assert _keys(orbit.elements()[:, 0], 5) == _keys(direct, 5)


@pytest.mark.parametrize("rows,p", [(((1, 2), (0, 0)), 3), (((0, 1, 2), (1, 1, 0)), 3), (((1, 1), (2, 2)), 5),
                                    (((1, 2), (0, 1), (2, 2)), 3), (((1, 1, 2),), 3)])
def test_orbit_stabilizer(rows, p):
    C = FormalType(rows, p)
    orbit = enumerate_orbit(C)
    assert orbit.size == predicted_orbit_size(C)
    assert residue_histogram(orbit).mass == orbit.size


def test_capacity_error_for_large_rank():
    with pytest.raises(CapacityError):
        enumerate_orbit(FormalType(((0, 1, 2, 3),), 5))


def test_histogram_is_class_function():
    C = FormalType(((1, 2), (0, 1)), 5)
    h = residue_histogram(enumerate_orbit(C))
    g = np.array([[1, 2], [3, 4]])
    assert h.conjugated(g) == h


def test_point_mass_convolution():
    A, B = np.array([[1, 0], [2, 1]]), np.array([[0, 1], [1, 1]])
    h = convolve(ResidueHistogram.point_mass(A, 3), ResidueHistogram.point_mass(B, 3))
    assert h == ResidueHistogram.point_mass((A + B) % 3, 3)


@given(st.integers(0, 10 ** 6))
def test_convolution_algebra(seed):
    rng = np.random.default_rng(seed)
    hs = [ResidueHistogram(2, 3, rng.integers(0, 3, 81) * (rng.random(81) < 0.1)) for _ in range(3)]
    a, b, c = hs
    assert convolve(a, b) == convolve(b, a)
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
    assert convolve(a, b).mass == a.mass * b.mass


def test_odr_count_rank_one():
    assert odr_count([FormalType(((0,),), 3)], 3).count == 1


def test_odr_count_examples():
    types = find_generic_tuple(2, [2, 2], 3)
    assert odr_count(types, 3).count == 15
    assert oracle_for_config(OdRConfig(2, ((1, 1), (1, 1)), (1,)), 5).count == 40


def test_generic_search_rejects_bad_residues():
    types = [FormalType(((1, 2), (1, 0)), 3), FormalType(((0, 1), (2, 0)), 3)]
    ok, witness = genericity_check(types)
    assert not ok and witness[0] == 1
    found = find_generic_tuple(2, [2, 2], 5)
    assert genericity_check(found)[0]


@pytest.mark.parametrize("cfg", list(FROZEN_COUNTS), ids=lambda c: c.label())
def test_frozen_counts(cfg):
    formula = count_general(cfg)
    for p, want in FROZEN_COUNTS[cfg].items():
        if p > 7 and cfg.r_total > 2:
            continue
        assert oracle_for_config(cfg, p).count == want
        assert formula.evaluate((p,)) == want


@pytest.mark.parametrize("cfg", list(FROZEN_COUNTS), ids=lambda c: c.label())
def test_interpolation_from_frozen_counts(cfg):
    formula = count_general(cfg)
    pts = sorted(FROZEN_COUNTS[cfg].items())
    deg = formula.degree()
    if len(pts) >= deg + 2:
        assert interpolate(pts[: deg + 2], deg) == formula
    else:
        assert interpolate(pts, deg) == formula


@pytest.mark.parametrize("cfg,p", [(OdRConfig(2, (), (1, 1)), 5), (OdRConfig(2, ((1, 1),), (2,)), 5),
                                   (OdRConfig(3, (), (1, 1)), 3)], ids=str)
def test_witness_independence(cfg, p):
    orders, blocks = config_orders(cfg)
    counts = []
    for types in itertools.islice(iter_generic_tuples(cfg.n, orders, p, blocks), 3):
        counts.append(odr_count(types, p).count)
    assert len(counts) >= 2 and len(set(counts)) == 1
    assert counts[0] == count_general(cfg).evaluate((p,))


def test_encoding_is_injective():
    mats = all_matrices(2, 3)
    assert len(set(encode(mats, 3).tolist())) == 81
