import itertools
from collections import Counter
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from odrcount import partitions as P
from odrcount.exactpoly import ExactPolynomial
from odrcount.fforacle import all_matrices, det_mod

q = ExactPolynomial.var()


def _brute_partitions(n):
    """Sorted multisets of positive parts with sum n, from all compositions."""
    out = set()
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def _perm_cycle_type(perm):
    return P.cycle_type({i + 1: perm[i] + 1 for i in range(len(perm))})


def test_enumerate_small():
    assert P.enumerate_partitions(1) == ((1,),)
    assert set(P.enumerate_partitions(3)) == {(3,), (2, 1), (1, 1, 1)}


@pytest.mark.parametrize("n", range(1, 9))
def test_enumerate_against_compositions(n):
    parts = P.enumerate_partitions(n)
    assert len(parts) == len(set(parts))
    assert set(parts) == _brute_partitions(n)


def test_partition_count_six():
    assert len(P.enumerate_partitions(6)) == 11


def test_stats_examples():
    assert tuple(P.stats((2, 1))) == (2, 5, 1, 2, 3)
    assert P.u((1, 1)) == 2
    assert P.multinomial((5,)) == 1


def test_phi_examples():
    assert P.phi((2,)) == (1 - q) * (1 - q * q)
    assert P.phi((1, 1)) == (1 - q) ** 2
    assert P.phi((1,)) == 1 - q


def test_levi_orders():
    assert P.group_order_L((1, 1)) == (q - 1) ** 2
    assert P.group_order_L((2,)) == (q * q - 1) * (q * q - q)


def test_gl2_f3_by_enumeration():
    mats = all_matrices(2, 3)
    invertible = sum(1 for a in mats if det_mod(a, 3))
    assert invertible == P.group_order_L((2,)).evaluate((3,)) == 48


@pytest.mark.parametrize("n", range(1, 6))
def test_z_lambda_is_centralizer_order(n):
    counts = Counter(_perm_cycle_type(p) for p in itertools.permutations(range(n)))
    for lam in P.enumerate_partitions(n):
        assert counts[lam] * P.z_lambda(lam) == factorial(n)


def test_set_partition_examples():
    assert len(P.enumerate_set_partitions((2, 1))) == 3
    assert len(P.enumerate_set_partitions((4,))) == 1
    assert len(P.enumerate_set_partitions((1, 1, 1))) == 6


@pytest.mark.parametrize("n", range(1, 6))
def test_set_partition_counts(n):
    for lam in P.enumerate_partitions(n):
        assert len(P.enumerate_set_partitions(lam)) == P.multinomial(lam)


def test_refinement_examples():
    I = (frozenset({1, 3}), frozenset({2}))
    assert P.refinement((2, 1), I) == (1, 1, 1)
    for I in P.enumerate_set_partitions((2, 1, 1)):
        assert P.refinement((4,), I) == (2, 1, 1)
        assert P.refinement((1, 1, 1, 1), I) == (1, 1, 1, 1)


def test_invariant_set_partition_examples():
    assert P.count_invariant_set_partitions((1, 1), (2,)) == 0
    assert P.count_invariant_set_partitions((2,), (2,)) == 1
    assert P.count_invariant_set_partitions((2, 1), (1, 1, 1)) == 3


@pytest.mark.parametrize("n", range(1, 7))
def test_invariant_set_partitions_by_enumeration(n):
    for lam in P.enumerate_partitions(n):
        sps = P.enumerate_set_partitions(lam)
        for nu in P.enumerate_partitions(n):
            w = P.permutation_with_cycle_type(nu)
            direct = sum(1 for I in sps if all({w[x] for x in block} == set(block) for block in I))
            assert P.count_invariant_set_partitions(lam, nu) == direct


def test_census_examples():
    assert dict(P.cycle_type_census((2,))) == {(1, 1): 1, (2,): 1}
    assert dict(P.cycle_type_census((1, 1))) == {(1, 1): 1}
    assert dict(P.cycle_type_census((3,))) == {(1, 1, 1): 1, (2, 1): 3, (3,): 2}


@pytest.mark.parametrize("n", range(1, 7))
def test_census_totals(n):
    for mu in P.enumerate_partitions(n):
        assert sum(c for _, c in P.cycle_type_census(mu)) == P.lam_factorial(mu)


@pytest.mark.parametrize("n", range(1, 13))
def test_N_parity(n):
    assert all(P.N(lam) % 2 == n % 2 for lam in P.enumerate_partitions(n))


@pytest.mark.parametrize("n", range(1, 7))
def test_refinement_inequality(n):
    for lam in P.enumerate_partitions(n):
        for mu in P.enumerate_partitions(n):
            gap = P.refinement_gap(lam, mu)
            assert gap >= 0
            assert (gap == 0) == (lam == (n,) or mu == (n,))


@given(st.lists(st.integers(1, 6), min_size=1, max_size=6))
def test_conjugate_is_involution(parts):
    lam = P.make_partition(parts)
    assert P.conjugate(P.conjugate(lam)) == lam
    assert sum(P.conjugate(lam)) == sum(lam)
    assert P.parse_partition(P.format_partition(lam)) == lam
