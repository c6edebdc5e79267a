"""The eight acceptance criteria as callable checks with wall-clock budgets."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import partitions as P
from .charsum import (ClassFunction, check_convolution, check_ffft, check_finalc, check_inversion, check_orth,
                      check_tame_and_steinberg, tame_orbit_indicator)
from .countformulas import (FormalType, NegativeDimension, OdRConfig, _delta_by_census, _delta_by_refinement,
                            count_general, count_n2_reference, count_n3_reference, dimension)
from .exactpoly import interpolate
from .fforacle import (CapacityError, SearchExhausted, config_orders, enumerate_orbit, find_generic_tuple,
                       oracle_for_config, residue_histogram)
from .quiver import dynkin_example, dynkin_examples, quiver_fiber_count, star_from_formal_types
from .symfunc import (SymSeries, cauchy_kernel, conjectural_mhp, e_polynomial_via_symfunc, macdonald_table, pleth_exp,
                      pleth_log, pure_part)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        extra = f" [{'; '.join(self.failures[:3])}]" if self.failures else ""
        timing = f"{self.seconds:.1f}s / {self.limit:.0f}s"
        if not self.within_budget:
            timing += " over budget"
        note = f" ({'; '.join(self.notes)})" if self.notes else ""
        return f"criterion {self.number} {verdict}: {self.title}, {timing}{extra}{note}"

    def to_json_obj(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.ok,
                "failures": self.failures, "notes": self.notes}


def _run(number: int, title: str, limit: float, body: Callable[[list[str], list[str]], None]) -> CriterionResult:
    failures: list[str] = []
    notes: list[str] = []
    start = time.perf_counter()
    body(failures, notes)
    return CriterionResult(number, title, not failures, time.perf_counter() - start, limit, failures, notes)


def dynkin_table() -> CriterionResult:
    def body(fail, notes):
        for ex in dynkin_examples():
            got = count_general(ex.config)
            if got != ex.count:
                fail.append(f"{ex.label}: {got} != {ex.count}")
    return _run(1, "Dynkin-example counting polynomials", 1.0, body)


def _splits(r: int, s: int) -> list[P.Partition]:
    return [lam for lam in P.enumerate_partitions(r) if len(lam) == s]


def rank2_rank3_closed_forms(max_d: int = 4, max_r: int = 5) -> CriterionResult:
    def compare(cfg, ref_args, ref, fail):
        try:
            want = ref(*ref_args)
        except NegativeDimension:
            want = None
        try:
            got = count_general(cfg)
        except NegativeDimension:
            got = None
        if got != want:
            fail.append(f"{cfg.label()}: {got} != {want}")

    def body(fail, notes):
        checked = 0
        for s in range(1, max_d + 1):
            for r in range(s, max_r + 1):
                for rs, k in itertools.product(_splits(r, s), range(max_d - s + 1)):
                    compare(OdRConfig(2, ((1, 1),) * k, rs), (k + s, r), count_n2_reference, fail)
                    checked += 1
                    for k1 in range(k + 1):
                        cfg = OdRConfig(3, ((1, 1, 1),) * k1 + ((2, 1),) * (k - k1), rs)
                        compare(cfg, (k1, k - k1, s, r), count_n3_reference, fail)
                        checked += 1
        notes.append(f"{checked} configurations")
    return _run(2, "closed forms for ranks 2 and 3", 10.0, body)


ORACLE_CONFIGS = (OdRConfig(2, (), (1, 1)), OdRConfig(2, (), (2,)), OdRConfig(2, (), (3,)),
                  OdRConfig(2, ((1, 1), (1, 1)), (1,)))


def oracle_agreement(primes=(3, 5, 7), spare_primes=(11, 13)) -> CriterionResult:
    per_run_limit = 60.0

    def body(fail, notes):
        for cfg in ORACLE_CONFIGS:
            formula = count_general(cfg)
            points = []
            for p in list(primes) + list(spare_primes):
                if p not in primes and len(points) >= 3:
                    break
                start = time.perf_counter()
                try:
                    res = oracle_for_config(cfg, p)
                except (SearchExhausted, CapacityError):
                    notes.append(f"{cfg.label()} skipped at p={p}")
                    continue
                took = time.perf_counter() - start
                if took > per_run_limit:
                    fail.append(f"{cfg.label()} p={p} took {took:.0f}s")
                if res.count != formula.evaluate(p):
                    fail.append(f"{cfg.label()} p={p}: oracle {res.count} != formula {formula.evaluate(p)}")
                points.append((p, res.count))
            rebuilt = interpolate(points[:3], len(points[:3]) - 1)
            if rebuilt != formula:
                fail.append(f"{cfg.label()}: interpolation gives {rebuilt}")
    return _run(3, "brute-force counts over F_p", 4 * 3 * per_run_limit, body)


def symfunc_grid() -> list[OdRConfig]:
    """n ≤ 3, k+s ≤ 3, s ≥ 1, total Poincaré rank ≤ 3, non-negative dimension."""
    out = []
    for n in (1, 2, 3):
        parts = P.enumerate_partitions(n)
        for k in range(3):
            for s in range(1, 4 - k):
                for mus in itertools.combinations_with_replacement(parts, k):
                    for rs in itertools.product(range(1, 4), repeat=s):
                        if sum(rs) > 3 or list(rs) != sorted(rs, reverse=True):
                            continue
                        cfg = OdRConfig(n, mus, rs)
                        if dimension(cfg) >= 0:
                            out.append(cfg)
    return out


def symfunc_route(cache_dir=None) -> CriterionResult:
    def body(fail, notes):
        macdonald_table(4, cache_dir=cache_dir)
        grid = symfunc_grid() + [dynkin_example("F4_1").config]
        for cfg in grid:
            got, want = e_polynomial_via_symfunc(cfg), count_general(cfg)
            if got != want:
                fail.append(f"{cfg.label()}: {got} != {want}")
        notes.append(f"{len(grid)} configurations")
    return _run(4, "symmetric-function route equals the closed formula", 300.0, body)


def mixed_hodge_table() -> CriterionResult:
    def body(fail, notes):
        extra = set()
        for ex in dynkin_examples():
            full = conjectural_mhp(ex.config)
            if not full.is_polynomial():
                fail.append(f"{ex.label}: not a polynomial")
                continue
            pure = pure_part(full)
            if pure != ex.wh:
                fail.append(f"{ex.label}: pure part {pure.to_text(('q', 't'))} != {ex.wh.to_text(('q', 't'))}")
            rest = full.as_polynomial() - pure
            if not rest.is_zero():
                extra.add(rest.to_text(("q", "t")))
        if extra:
            notes.append("published values compared with the pure part; the full expression adds "
                         + ", ".join(sorted(extra)))
    return _run(5, "mixed Hodge polynomials of the Dynkin rows", 120.0, body)


def _regular_type(p: int, n: int, m: int, rng: random.Random) -> FormalType:
    rows = ((tuple(rng.sample(range(p), n)),) + tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(m - 2))
            + (tuple(rng.randrange(p) for _ in range(n)),))
    return FormalType(rows, p)


def character_sums() -> CriterionResult:
    def body(fail, notes):
        results = []
        for p in (3, 5):
            results += [check_orth(p, (0, 0)), check_orth(p, (1, 2), 1), check_orth(p, (0, 1, 0), 2)]
            results += check_tame_and_steinberg(p)
            rng = random.Random(p)
            for m in (2, 3):
                results.append(check_ffft(_regular_type(p, 2, m, rng)))
            f = ClassFunction.from_integer_values(2, p, tame_orbit_indicator([0, 1], p))
            results.append(check_inversion(f))
            h1 = residue_histogram(enumerate_orbit(_regular_type(p, 2, 2, rng)))
            h2 = residue_histogram(enumerate_orbit(FormalType(((1, p - 1),), p)))
            results.append(check_convolution(h1, h2))
        results += [check_finalc((1, 1, 3), 5), check_finalc((1, 2), 3), check_finalc((1, 1, 1, 4), 7)]
        for r in results:
            if not r.passed:
                fail.append(f"{r.name}: {r.counterexample}")
        notes.append(f"{len(results)} checks")
    return _run(6, "character-sum identities", 120.0, body)


def quiver_counts() -> CriterionResult:
    def body(fail, notes):
        for label in ("C2_1", "A5_2"):
            ex = dynkin_example(label)
            orders, blocks = config_orders(ex.config)
            for p in (3, 5):
                try:
                    types = find_generic_tuple(ex.config.n, orders, p, blocks)
                except SearchExhausted:
                    notes.append(f"{label} skipped at p={p}")
                    continue
                Q, gamma = star_from_formal_types(types)
                qc = quiver_fiber_count(Q, gamma, p)
                oracle = oracle_for_config(ex.config, p).count
                formula = ex.count.evaluate(p)
                if not qc.count == oracle == formula:
                    fail.append(f"{label} p={p}: quiver {qc.count}, oracle {oracle}, formula {formula}")
    return _run(7, "quiver point counts", 120.0, body)


def structural_properties(cache_dir=None) -> CriterionResult:
    def body(fail, notes):
        for cfg in symfunc_grid():
            poly = count_general(cfg)
            d = dimension(cfg)
            if poly.degree() != d or not poly.is_monic():
                fail.append(f"{cfg.label()}: degree {poly.degree()} or not monic")
            if any(c < 0 for c in poly.coeff_list()):
                fail.append(f"{cfg.label()}: negative coefficient")
        for n in range(1, 6):
            for lam in P.enumerate_partitions(n):
                for mu in P.enumerate_partitions(n):
                    if _delta_by_census(lam, mu) != _delta_by_refinement(lam, mu):
                        fail.append(f"Δ{lam},{mu} disagree")
        bad = macdonald_table(4, cache_dir=cache_dir).check_invariants()
        fail.extend(bad)
        for n in range(1, 7):
            for lam in P.enumerate_partitions(n):
                for mu in P.enumerate_partitions(n):
                    gap = P.refinement_gap(lam, mu)
                    if gap < 0 or (gap == 0) != (lam == (n,) or mu == (n,)):
                        fail.append(f"refinement inequality at {lam},{mu}")
        G = _sample_series()
        if not pleth_exp(pleth_log(G)).equals(G):
            fail.append("Exp(Log G) != G")
    return _run(8, "structural properties", 120.0, body)


def _sample_series() -> SymSeries:
    return cauchy_kernel(2, 3)


CRITERIA = (dynkin_table, rank2_rank3_closed_forms, oracle_agreement, symfunc_route, mixed_hodge_table,
            character_sums, quiver_counts, structural_properties)


def run_all(cache_dir=None) -> list[CriterionResult]:
    out = []
    for crit in CRITERIA:
        if crit in (symfunc_route, structural_properties):
            out.append(crit(cache_dir=cache_dir))
        else:
            out.append(crit())
    return out
