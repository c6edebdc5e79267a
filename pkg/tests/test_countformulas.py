import itertools
from fractions import Fraction

import pytest

from odrcount import partitions as P
from odrcount.countformulas import (FormalType, NegativeDimension, OdRConfig, _delta_by_census,
                                    _delta_by_refinement, count_general, count_irregular, count_n2_reference,
                                    count_n3_reference, delta, dimension, genericity_check, green_value)
from odrcount.exactpoly import ExactPolynomial, ExactRationalFunction

q = ExactPolynomial.var()


def _deg(f: ExactRationalFunction) -> int:
    return f.num.degree() - f.den.degree()


def _configs(max_n=3, max_d=4, max_r=5):
    for n in range(1, max_n + 1):
        parts = [lam for lam in P.enumerate_partitions(n)]
        for s in range(1, max_d + 1):
            for r in range(s, max_r + 1):
                for rs in (lam for lam in P.enumerate_partitions(r) if len(lam) == s):
                    for k in range(max_d - s + 1):
                        for mus in itertools.combinations_with_replacement(parts, k):
                            cfg = OdRConfig(n, mus, rs)
                            if dimension(cfg) >= 0:
                                yield cfg


GRID = list(_configs())


def test_dimension_examples():
    assert dimension(OdRConfig(2, (), (1, 1))) == 2
    assert dimension(OdRConfig(1, ((1,),), (4, 2))) == 0
    assert dimension(OdRConfig(3, ((1, 1, 1),), (1,))) == 2


def test_genericity_examples():
    assert genericity_check([FormalType(((0,),))]) == (True, None)
    ok, witness = genericity_check([FormalType(((1, -2),)), FormalType(((-1, 2),))])
    assert not ok and witness[0] == 1
    assert not genericity_check([FormalType(((1, -3),)), FormalType(((-1, 3),))])[0]
    assert genericity_check([FormalType(((1, -5),)), FormalType(((-2, 6),))]) == (True, None)
    assert genericity_check([FormalType(((1, 1),)), FormalType(((1, 1),))])[1][0] == "trace"


def test_green_values():
    assert green_value((1, 1), (1, 1)) == 1
    assert green_value((2,), (2,)) == ExactRationalFunction(1 - q)
    assert green_value((2,), (1, 1)) == ExactRationalFunction(q + 1)


def test_delta_examples():
    assert delta((2,), (1, 1)) == ExactRationalFunction(q + 1)
    for n in range(1, 5):
        for lam in P.enumerate_partitions(n):
            assert delta(lam, (n,)) == 1
    assert _delta_by_census((1, 1), (1, 1)) == _delta_by_refinement((1, 1), (1, 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_delta_two_routes(n):
    for lam in P.enumerate_partitions(n):
        for mu in P.enumerate_partitions(n):
            assert _delta_by_census(lam, mu) == _delta_by_refinement(lam, mu)


@pytest.mark.parametrize("n", range(1, 6))
def test_delta_degree_bound(n):
    for mu in P.enumerate_partitions(n):
        top = _deg(delta((n,), mu))
        for lam in P.enumerate_partitions(n):
            d = _deg(delta(lam, mu))
            assert top >= d
            assert (top == d) == (lam == (n,) or mu == (n,))


def test_count_irregular_examples():
    assert count_irregular(2, (1, 1)) == q * q + 2 * q
    assert count_irregular(2, (3,)) == q * q + q
    assert count_irregular(1, (1,)) == 1


def test_count_general_examples():
    assert count_general(OdRConfig(2, ((1, 1), (1, 1)), (1,))) == q * q + 3 * q
    assert count_general(OdRConfig(3, ((1, 1, 1),), (1,))) == q * q + 4 * q
    assert count_general(OdRConfig(3, (), (2,))) == q * q + 2 * q


def test_reference_examples():
    assert count_n2_reference(3, 1) == q * q + 3 * q
    assert count_n2_reference(2, 2) == q * (q + 2)
    assert count_n3_reference(1, 0, 1, 1) == q * (q + 4)


def test_negative_dimension_rejected():
    with pytest.raises(NegativeDimension):
        count_general(OdRConfig(2, (), (1,)))


@pytest.mark.parametrize("cfg", [c for c in GRID if c.k == 0], ids=lambda c: c.label())
def test_general_reduces_to_irregular(cfg):
    assert count_general(cfg) == count_irregular(cfg.n, cfg.r)


def _has_reference(cfg):
    if cfg.n == 2:
        return all(m == (1, 1) for m in cfg.mu)
    return cfg.n == 3 and all(m != (3,) for m in cfg.mu)


@pytest.mark.parametrize("cfg", [c for c in GRID if _has_reference(c)], ids=lambda c: c.label())
def test_matches_reference_forms(cfg):
    if cfg.n == 2:
        ref = count_n2_reference(cfg.d, cfg.r_total)
    else:
        k1 = sum(1 for m in cfg.mu if m == (1, 1, 1))
        ref = count_n3_reference(k1, cfg.k - k1, cfg.s, cfg.r_total)
    assert count_general(cfg) == ref


@pytest.mark.parametrize("cfg", GRID, ids=lambda c: c.label())
def test_monic_nonnegative_integral(cfg):
    poly = count_general(cfg)
    assert poly.is_monic() and poly.degree() == dimension(cfg)
    assert all(c >= 0 and Fraction(c).denominator == 1 for c in poly.coeff_list())


def test_point_like_tame_pole_is_inert():
    base = OdRConfig(2, ((1, 1),), (2,))
    assert count_general(OdRConfig(2, ((1, 1), (2,)), (2,))) == count_general(base)
