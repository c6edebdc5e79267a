"""Closed counting formulas: dimension, genericity, Green values, Δ(λ,μ) and the counting polynomials."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from . import partitions as P
from .exactpoly import ExactPolynomial, ExactRationalFunction, NonExactDivision
from .partitions import Partition

Q = ExactPolynomial.var()
ONE = ExactRationalFunction.constant(1)


class NegativeDimension(ValueError):
    """The configuration has d_{μ,r} < 0, so the space is empty."""


class FormulaMismatch(AssertionError):
    """Two independent formulas for the same quantity disagree."""


@dataclass(frozen=True)
class OdRConfig:
    """Rank n, tame pole types μ^1..μ^k and Poincaré ranks r_1..r_s."""

    n: int
    mu: tuple[Partition, ...] = ()
    r: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(P.make_partition(m) for m in self.mu))
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if self.n < 1:
            raise ValueError("rank must be positive")
        for m in self.mu:
            if sum(m) != self.n:
                raise ValueError(f"tame type {m} does not partition {self.n}")
        if any(x < 1 for x in self.r):
            raise ValueError("Poincaré ranks must be at least 1")

    @property
    def k(self) -> int:
        return len(self.mu)

    @property
    def s(self) -> int:
        return len(self.r)

    @property
    def d(self) -> int:
        return self.k + self.s

    @property
    def r_total(self) -> int:
        return sum(self.r)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.r)

    def label(self) -> str:
        mu = ";".join(P.format_partition(m) for m in self.mu)
        return f"n={self.n} mu=[{mu}] r=({','.join(map(str, self.r))})"


@dataclass(frozen=True)
class FormalType:
    """Diagonal polar part C_m/z^m + ... + C_1/z, rows stored as (C_m, ..., C_1).

    ``p`` is the field characteristic, or None for rational entries.
    """

    rows: tuple[tuple, ...]
    p: int | None = None
    blocks: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(self._norm(x) for x in row) for row in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("formal type needs rows of a common positive length")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "blocks", self._compute_blocks())

    def _norm(self, x):
        return int(x) % self.p if self.p else Fraction(x)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def residue(self) -> tuple:
        return self.rows[-1]

    @property
    def leading(self) -> tuple:
        return self.rows[0]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def _compute_blocks(self) -> tuple[tuple[int, ...], ...]:
        # indices grouped by equal leading entry, in order of first appearance
        groups: dict = {}
        for j, c in enumerate(self.leading):
            groups.setdefault(c, []).append(j)
        for idx in groups.values():
            cols = {self.column(j) for j in idx}
            if len(cols) != 1:
                raise ValueError("entries with equal leading coefficient must agree in every row")
        return tuple(tuple(v) for v in groups.values())

    @property
    def block_type(self) -> Partition:
        return P.make_partition(len(b) for b in self.blocks)

    def is_regular(self) -> bool:
        return len(set(self.leading)) == self.n

    def block_values(self) -> list[tuple]:
        """Column (c_m, ..., c_1) of each block, in block order."""
        return [self.column(b[0]) for b in self.blocks]


def dimension(cfg: OdRConfig) -> int:
    n, d, s, r = cfg.n, cfg.d, cfg.s, cfg.r_total
    return d * n * n - s * n + r * (n * n - n) - sum(P.N(m) for m in cfg.mu) - 2 * (n * n - 1)


def genericity_check(types: Sequence[FormalType]) -> tuple[bool, tuple | None]:
    """Test total residue trace zero and no vanishing equal-size subset sums.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is
    ``("trace", total)`` or ``(n', I_1, ..., I_d)`` with 0-based index sets.
    """
    if not types:
        raise ValueError("need at least one formal type")
    n = types[0].n
    if any(t.n != n for t in types):
        raise ValueError("formal types must share the rank")
    p = types[0].p
    zero = (lambda x: x % p == 0) if p else (lambda x: x == 0)
    total = sum(sum(t.residue) for t in types)
    if not zero(total):
        return False, ("trace", total)
    for nprime in range(1, n):
        subsets = list(itertools.combinations(range(n), nprime))
        # subset sums per type, then scan the product with early exit
        sums = [{I: sum(t.residue[j] for j in I) for I in subsets} for t in types]
        for choice in itertools.product(subsets, repeat=len(types)):
            if zero(sum(sums[i][I] for i, I in enumerate(choice))):
                return False, (nprime,) + choice
    return True, None


def green_value(lam: Partition, nu: Partition) -> ExactRationalFunction:
    """Q_{T_w}^{L_λ}(1) for w of cycle type ν."""
    n = sum(lam)
    if sum(nu) != n:
        raise ValueError("λ and ν must have the same size")
    excess = P.N(lam) - n
    torus = ExactPolynomial.one()
    for c in nu:
        torus = torus * (Q ** c - 1)
    sign = (-1) ** (n - len(nu))
    return ExactRationalFunction(P.group_order_L(lam).scale(sign), torus.shift((excess // 2,)))


@lru_cache(maxsize=None)
def _delta_by_census(lam: Partition, mu: Partition) -> ExactRationalFunction:
    total = ExactRationalFunction.constant(0)
    for nu, count in P.cycle_type_census(mu):
        inv = P.count_invariant_set_partitions(lam, nu)
        if inv:
            total = total + green_value(lam, nu) * (count * inv)
    return total * Fraction(1, P.lam_factorial(mu))


@lru_cache(maxsize=None)
def _delta_by_refinement(lam: Partition, mu: Partition) -> ExactRationalFunction:
    n = sum(lam)
    acc: dict[Partition, int] = {}
    for I in P.enumerate_set_partitions(lam):
        ref = P.refinement(mu, I)
        acc[ref] = acc.get(ref, 0) + 1
    total = ExactRationalFunction.constant(0)
    for ref, count in acc.items():
        total = total + ExactRationalFunction(ExactPolynomial.constant(count * P.lam_factorial(ref)), P.phi(ref))
    excess = (P.N(lam) - n) // 2
    pref = ExactRationalFunction(P.group_order_L(lam).scale(Fraction((-1) ** n, P.lam_factorial(mu))),
                                 ExactPolynomial.monomial((excess,)))
    return pref * total


def delta(lam: Partition, mu: Partition) -> ExactRationalFunction:
    """Δ(λ,μ), computed by the Green-value sum and by the refinement sum; both must agree."""
    lam, mu = P.make_partition(lam), P.make_partition(mu)
    a = _delta_by_census(lam, mu)
    b = _delta_by_refinement(lam, mu)
    if a != b:
        raise FormulaMismatch(f"Δ({lam},{mu}): {a} != {b}")
    return a


def _finish(total: ExactRationalFunction, dim: int, denom_power: int) -> ExactPolynomial:
    if dim % 2:
        raise AssertionError(f"odd dimension {dim}")
    scaled = total * ExactRationalFunction(ExactPolynomial.monomial((dim // 2,)))
    num = scaled.num.exact_divide(scaled.den) if scaled.den.is_constant() else None
    if num is None:
        raise NonExactDivision(f"partition sum has a non-polynomial part: {scaled}")
    return num.exact_divide((Q - 1) ** denom_power)


def count_irregular(n: int, r_list: Sequence[int]) -> ExactPolynomial:
    """Counting polynomial when every pole is irregular with regular leading term."""
    r_list = tuple(r_list)
    d, r = len(r_list), sum(r_list)
    if d < 1:
        raise ValueError("need at least one irregular pole")
    dim = (n * n - n) * (r + d) - 2 * (n * n - 1)
    if dim < 0:
        raise NegativeDimension(f"dimension {dim} < 0")
    total = ExactPolynomial.zero()
    for lam in P.enumerate_partitions(n):
        l = len(lam)
        coeff = Fraction((-1) ** (n * (d - 1) + l - 1) * factorial(l - 1) * P.multinomial(lam) ** d, P.u(lam))
        term = P.phi(lam) ** (d - 1)
        total = total + term.shift(((r - 1) * (P.N(lam) - n) // 2,)).scale(coeff)
    return _finish(ExactRationalFunction(total), dim, n * d - 1)


def count_general(cfg: OdRConfig) -> ExactPolynomial:
    """Counting polynomial for k tame poles of types μ^i and s ≥ 1 irregular poles."""
    n, s, r = cfg.n, cfg.s, cfg.r_total
    if s < 1:
        raise ValueError("need at least one irregular pole (s >= 1)")
    dim = dimension(cfg)
    if dim < 0:
        raise NegativeDimension(f"dimension {dim} < 0 for {cfg.label()}")
    total = ExactRationalFunction.constant(0)
    for lam in P.enumerate_partitions(n):
        l = len(lam)
        coeff = Fraction((-1) ** (n * (s - 1) + l - 1) * factorial(l - 1) * P.multinomial(lam) ** s, P.u(lam))
        term = ExactRationalFunction((P.phi(lam) ** (s - 1)).shift(((r - 1) * (P.N(lam) - n) // 2,)).scale(coeff))
        for mu in cfg.mu:
            term = term * delta(lam, mu)
        total = total + term
    return _finish(total, dim, n * s - 1)


def count_n2_reference(d: int, r: int) -> ExactPolynomial:
    """Rank-2 closed form; tame poles have type (1,1)."""
    if r + d - 3 < 0:
        raise NegativeDimension("r + d < 3")
    inner = Q ** (r - 1) * (Q + 1) ** (d - 1) - 2 ** (d - 1)
    return inner.exact_divide(Q - 1).shift((r + d - 3,))


def count_n3_reference(k1: int, k2: int, s: int, r: int) -> ExactPolynomial:
    """Rank-3 closed form; k1 tame poles of type (1,1,1), k2 of type (2,1)."""
    d = k1 + k2 + s
    e = 3 * r + 3 * d - k2 - 8
    if e < 0:
        raise NegativeDimension("negative dimension")
    inner = (Q ** (3 * r - 3) * (Q * Q + Q + 1) ** (d - 1) * (Q + 1) ** (s + k1 - 1)
             - (Q ** (r - 1) * (Q + 1) ** (s + k1 - 1) * (Q + 2) ** k2).scale(3 ** (s + k1))
             + 3 ** (d - 1) * 2 ** (s + k1))
    return inner.exact_divide((Q - 1) ** 2).shift((e,))
