import itertools
import json
import os
from fractions import Fraction
from math import factorial

import pytest

from odrcount import partitions as P
from odrcount import symfunc as S
from odrcount.countformulas import OdRConfig, count_general, dimension
from odrcount.exactpoly import ExactPolynomial, ExactRationalFunction
from odrcount.quiver import dynkin_examples
from odrcount.symfunc import (MacdonaldTable, SymBasisElement, SymSeries, basis_convert, cauchy_kernel, character,
                              conjectural_mhp, e_from_pure_part, e_polynomial_late_specialization,
                              e_polynomial_via_symfunc, hook_kernel, hook_kernel_z0, macdonald_table, mobius,
                              pair_elements, pleth_exp, pleth_log, pure_part, to_power_sum)

Z = ExactPolynomial.var(0, 2)
W = ExactPolynomial.var(1, 2)
q = ExactPolynomial.var()


def _el(basis, lam):
    return SymBasisElement.make(basis, lam)


def _hook_count(lam):
    # standard Young tableaux by the hook length formula
    n = sum(lam)
    prod = 1
    for a, l in S.arm_leg(lam):
        prod *= a + l + 1
    return factorial(n) // prod


def _syt_count(lam):
    # by removing corners recursively
    lam = tuple(x for x in lam if x)
    if sum(lam) <= 1:
        return 1
    total = 0
    for i in range(len(lam)):
        if i + 1 == len(lam) or lam[i] > lam[i + 1]:
            total += _syt_count(lam[:i] + (lam[i] - 1,) + lam[i + 1:])
    return total


def _fresh_tables(monkeypatch):
    monkeypatch.setattr(S, "_TABLES", {})


def test_basis_element_text():
    assert str(_el("s", (2, 1))) == "s(2,1)"


def test_basis_convert_examples():
    assert basis_convert(_el("p", (2,)), "s") == {(2,): 1, (1, 1): -1}
    assert basis_convert(_el("e", (2,)), "s") == {(1, 1): 1}
    assert basis_convert(_el("h", (1, 1)), "s") == {(2,): 1, (1, 1): 1}
    assert basis_convert(_el("s", (1, 1)), "p") == {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip_through_every_basis(n):
    for lam in P.enumerate_partitions(n):
        for src, dst in itertools.permutations(S.BASES, 2):
            vec = basis_convert(_el(src, lam), dst)
            back = {}
            for mu, c in vec.items():
                for nu, d in basis_convert(_el(dst, mu), src).items():
                    back[nu] = back.get(nu, 0) + c * d
            assert {k: v for k, v in back.items() if v} == {lam: 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_character_dimension_is_hook_count(n):
    for lam in P.enumerate_partitions(n):
        assert character(lam, (1,) * n) == _hook_count(lam) == _syt_count(lam)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_character_column_orthogonality(n):
    parts = P.enumerate_partitions(n)
    for rho, sigma in itertools.product(parts, repeat=2):
        total = sum(character(lam, rho) * character(lam, sigma) for lam in parts)
        assert total == (P.z_lambda(rho) if rho == sigma else 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hall_gram_identities(n):
    parts = P.enumerate_partitions(n)
    for lam, mu in itertools.product(parts, repeat=2):
        delta = int(lam == mu)
        assert pair_elements(_el("s", lam), _el("s", mu)) == delta
        assert pair_elements(_el("h", lam), _el("m", mu)) == delta
        assert pair_elements(_el("p", lam), _el("p", mu)) == (P.z_lambda(lam) if delta else 0)


def test_hall_pairing_spot_values():
    assert pair_elements(_el("p", (2,)), _el("p", (2,))) == 2
    assert pair_elements(_el("h", (1, 1)), _el("m", (1, 1))) == 1
    assert pair_elements(_el("h", (1, 1)), _el("h", (1, 1))) == 2


def test_macdonald_small_degrees():
    tab = MacdonaldTable.build(3)
    one = ExactPolynomial.one(2)
    assert tab.ktable[(1,)] == {(1,): one}
    assert tab.ktable[(2,)] == {(2,): one, (1, 1): Z}
    assert tab.ktable[(1, 1)] == {(2,): one, (1, 1): W}
    assert tab.ktable[(3,)] == {(3,): one, (2, 1): Z + Z * Z, (1, 1, 1): Z ** 3}
    assert tab.ktable[(2, 1)] == {(3,): one, (2, 1): Z + W, (1, 1, 1): Z * W}


def test_macdonald_invariants_up_to_four():
    assert macdonald_table(4).check_invariants() == []


def test_macdonald_p_is_orthogonal():
    Pd = S.macdonald_P(3)
    lams = list(Pd)
    for a, b in itertools.combinations(lams, 2):
        assert S._qt_inner(Pd[a], Pd[b]) == 0


def test_macdonald_json_round_trip():
    tab = MacdonaldTable.build(3)
    back = MacdonaldTable.from_json_obj(json.loads(json.dumps(tab.to_json_obj())))
    assert back == tab


def test_macdonald_cache_written_and_reused(tmp_path, monkeypatch):
    _fresh_tables(monkeypatch)
    tab = macdonald_table(3, cache_dir=tmp_path)
    path = tmp_path / "macdonald_n3.json"
    assert path.exists()
    assert oct(path.stat().st_mode & 0o777) == oct(0o644)
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]
    _fresh_tables(monkeypatch)
    assert macdonald_table(3, cache_dir=tmp_path) == tab


def test_macdonald_corrupt_cache_is_rebuilt(tmp_path, monkeypatch):
    _fresh_tables(monkeypatch)
    path = tmp_path / "macdonald_n2.json"
    path.write_text("{not json")
    tab = macdonald_table(2, cache_dir=tmp_path)
    assert tab.check_invariants() == []
    assert json.loads(path.read_text())["n"] == 2


def test_macdonald_wrong_cache_content_is_rebuilt(tmp_path, monkeypatch):
    _fresh_tables(monkeypatch)
    good = MacdonaldTable.build(2).to_json_obj()
    good["ktable"]["(2)"]["(1,1)"] = "W"
    (tmp_path / "macdonald_n2.json").write_text(json.dumps(good))
    tab = macdonald_table(2, cache_dir=tmp_path)
    assert tab.ktable[(2,)][(1, 1)] == Z


def test_macdonald_without_cache_writes_nothing(tmp_path, monkeypatch):
    _fresh_tables(monkeypatch)
    macdonald_table(2, cache_dir=tmp_path, use_cache=False)
    assert list(tmp_path.iterdir()) == []


def test_hook_kernel_single_box():
    assert hook_kernel((1,)) == ExactRationalFunction(ExactPolynomial.one(2), (Z - 1) * (1 - W))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hook_kernel_transpose_symmetry(n):
    for lam in P.enumerate_partitions(n):
        assert hook_kernel(P.conjugate(lam)) == hook_kernel(lam).swap_variables()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hook_kernel_z0_is_specialization(n):
    for lam in P.enumerate_partitions(n):
        assert hook_kernel(lam).specialize(0, 0).drop_variable(0) == hook_kernel_z0(lam)


def test_mobius_values():
    assert [mobius(k) for k in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_cauchy_low_degrees():
    G = cauchy_kernel(1, 1)
    assert G.constant_term() == 1
    assert G.component(1) == {((1,),): hook_kernel((1,))}


def test_cauchy_is_symmetric_in_z_and_w():
    G = cauchy_kernel(2, 3)
    for comp in G.comps:
        for c in comp.values():
            assert c == c.swap_variables()


def test_series_rejects_off_diagonal_keys():
    with pytest.raises(ValueError):
        SymSeries(1, 2, 2, [{}, {((2,),): 1}, {}])


def test_log_linear_term():
    G = cauchy_kernel(2, 3)
    assert pleth_log(G).component(1) == G.component(1)


@pytest.mark.parametrize("K,n", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
def test_exp_inverts_log(K, n):
    G = cauchy_kernel(K, n)
    assert pleth_exp(pleth_log(G)).equals(G)


def test_log_turns_products_into_sums():
    A = cauchy_kernel(1, 3)
    B = A.adams(2)
    assert pleth_log(A * B).equals(pleth_log(A) + pleth_log(B))


def test_pleth_exp_of_p1_is_complete_homogeneous():
    # Exp(p_1) = Σ h_d
    F = SymSeries(1, 3, 2)
    F.comps[1][((1,),)] = ExactRationalFunction.constant(1, 2)
    E = pleth_exp(F)
    for d in range(4):
        want = {(lam,): c for lam, c in to_power_sum(_el("h", (d,)) if d else _el("p", ())).items()}
        assert E.component(d) == want


def test_rank_one_is_a_point():
    cfg = OdRConfig(1, (), (1,))
    assert e_polynomial_via_symfunc(cfg) == ExactPolynomial.one() == count_general(cfg)


@pytest.mark.parametrize("cfg,want", [
    (OdRConfig(2, (), (1, 1)), q * q + 2 * q),
    (OdRConfig(2, ((1, 1), (1, 1)), (1,)), q * q + 3 * q),
    (OdRConfig(2, (), (3,)), q * q + q),
    (OdRConfig(2, (), (2,)), ExactPolynomial.one()),
])
def test_e_polynomial_examples(cfg, want):
    assert e_polynomial_via_symfunc(cfg) == want == count_general(cfg)


@pytest.mark.parametrize("cfg", [OdRConfig(2, (), (1, 1)), OdRConfig(2, ((1, 1),), (2,)),
                                 OdRConfig(3, (), (2,)), OdRConfig(3, ((2, 1),), (1,))])
def test_late_specialization_agrees(cfg):
    assert e_polynomial_late_specialization(cfg) == e_polynomial_via_symfunc(cfg)


def test_e_polynomial_rejects_bad_inputs():
    with pytest.raises(ValueError):
        e_polynomial_via_symfunc(OdRConfig(2, ((1, 1),) * 4, ()))
    with pytest.raises(ValueError):
        e_polynomial_via_symfunc(OdRConfig(2, (), (1,)))


def test_tame_relabeling_symmetry():
    a = OdRConfig(3, ((2, 1), (1, 1, 1)), (1,))
    b = OdRConfig(3, ((1, 1, 1), (2, 1)), (1,))
    assert e_polynomial_via_symfunc(a) == e_polynomial_via_symfunc(b) == count_general(a)


@pytest.mark.parametrize("ex", [e for e in dynkin_examples() if e.config.n <= 3], ids=lambda e: e.label)
def test_mixed_hodge_pure_part_and_purity(ex):
    full = conjectural_mhp(ex.config)
    assert full.is_polynomial()
    pure = pure_part(full)
    assert pure == ex.wh
    assert e_from_pure_part(pure, dimension(ex.config)) == ex.count


def test_pure_part_filters_terms():
    qq = ExactPolynomial.var(0, 2)
    t = ExactPolynomial.var(1, 2)
    assert pure_part(1 + qq * t * t + qq * t + qq * qq * t ** 4) == 1 + qq * t * t + qq * qq * t ** 4
