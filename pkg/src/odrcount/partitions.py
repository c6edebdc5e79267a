"""Partitions, ordered set partitions and cycle-type censuses."""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, NamedTuple, Sequence

from .exactpoly import ExactPolynomial

Partition = tuple[int, ...]
SetPartition = tuple[frozenset[int], ...]
CycleType = Partition


def make_partition(parts: Sequence[int]) -> Partition:
    """Sort into a weakly decreasing tuple of positive integers."""
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def is_partition(parts: Sequence[int]) -> bool:
    return all(x >= 1 for x in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def parse_partition(text: str) -> Partition:
    """Parse ``"(2,1)"``, ``"2,1"`` or ``"1^3"``-free plain lists."""
    body = text.strip().strip("()[] ")
    if not body:
        return ()
    return make_partition(int(x) for x in body.split(","))


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


@lru_cache(maxsize=None)
def enumerate_partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order, starting with ``(n)``."""
    if n == 0:
        return ((),)
    if max_part is None:
        max_part = n
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in enumerate_partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def length(lam: Partition) -> int:
    return len(lam)


def N(lam: Partition) -> int:
    return sum(x * x for x in lam)


def multiplicities(lam: Partition) -> Counter:
    return Counter(lam)


def u(lam: Partition) -> int:
    return prod(factorial(c) for c in Counter(lam).values())


def lam_factorial(lam: Partition) -> int:
    return prod(factorial(x) for x in lam)


def multinomial(lam: Partition) -> int:
    return factorial(sum(lam)) // lam_factorial(lam)


def n_of(lam: Partition) -> int:
    """n(λ) = Σ (i-1) λ_i, the sum of leg lengths."""
    return sum(i * x for i, x in enumerate(lam))


def z_lambda(lam: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type λ."""
    return prod(k ** c * factorial(c) for k, c in Counter(lam).items())


class PartitionStats(NamedTuple):
    length: int
    N: int
    u: int
    factorial: int
    binom: int


def stats(lam: Partition) -> PartitionStats:
    return PartitionStats(len(lam), N(lam), u(lam), lam_factorial(lam), multinomial(lam))


def phi(lam: Partition) -> ExactPolynomial:
    """Π_i (1-q)(1-q^2)...(1-q^{λ_i})."""
    q = ExactPolynomial.var()
    out = ExactPolynomial.one()
    for part in lam:
        for j in range(1, part + 1):
            out = out * (1 - q ** j)
    return out


def group_order_L(lam: Partition) -> ExactPolynomial:
    """|Π GL_{λ_i}(F_q)| = (-1)^n q^{(N(λ)-n)/2} φ_λ(q)."""
    n = sum(lam)
    excess = N(lam) - n
    assert excess % 2 == 0
    return ExactPolynomial.monomial((excess // 2,), (-1) ** n) * phi(lam)


def gl_order(n: int) -> ExactPolynomial:
    return group_order_L((n,))


def enumerate_set_partitions(lam: Partition) -> list[SetPartition]:
    """Ordered set partitions of {1..n} whose i-th block has size λ_i."""
    n = sum(lam)

    def rec(remaining: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[tuple[frozenset[int], ...]]:
        if not sizes:
            yield ()
            return
        for block in itertools.combinations(remaining, sizes[0]):
            rest = tuple(x for x in remaining if x not in block)
            for tail in rec(rest, sizes[1:]):
                yield (frozenset(block),) + tail

    return list(rec(tuple(range(1, n + 1)), tuple(lam)))


def consecutive_blocks(mu: Partition) -> list[range]:
    blocks, start = [], 1
    for part in mu:
        blocks.append(range(start, start + part))
        start += part
    return blocks


def refinement(mu: Partition, I: SetPartition) -> Partition:
    """Parts |M_i ∩ I_k| over the consecutive blocks M_i of μ, zeros dropped."""
    parts = []
    for M in consecutive_blocks(mu):
        Ms = set(M)
        for block in I:
            k = len(Ms & set(block))
            if k:
                parts.append(k)
    return make_partition(parts)


def count_invariant_set_partitions(lam: Partition, nu: CycleType) -> int:
    """Number of ordered set partitions of type λ that are unions of the cycles of w, μ(w) = ν."""
    if sum(lam) != sum(nu):
        raise ValueError("λ and ν must have the same size")

    # assign each (labelled) cycle to a block; count assignments filling every block exactly
    @lru_cache(maxsize=None)
    def rec(i: int, room: tuple[int, ...]) -> int:
        if i == len(nu):
            return 1 if not any(room) else 0
        total = 0
        for b, r in enumerate(room):
            if r >= nu[i]:
                total += rec(i + 1, room[:b] + (r - nu[i],) + room[b + 1:])
        return total

    return rec(0, tuple(lam))


def permutation_with_cycle_type(nu: CycleType) -> dict[int, int]:
    """A permutation of {1..n} with cycle type ν, built from consecutive cycles."""
    perm, start = {}, 1
    for c in nu:
        for j in range(c):
            perm[start + j] = start + (j + 1) % c
        start += c
    return perm


def cycle_type(perm: dict[int, int]) -> CycleType:
    seen, cycles = set(), []
    for x in perm:
        if x in seen:
            continue
        c, y = 0, x
        while y not in seen:
            seen.add(y)
            y = perm[y]
            c += 1
        cycles.append(c)
    return make_partition(cycles)


@lru_cache(maxsize=None)
def _sym_census(a: int) -> tuple[tuple[CycleType, int], ...]:
    f = factorial(a)
    return tuple((nu, f // (z_lambda(nu))) for nu in enumerate_partitions(a))


def cycle_type_census(mu: Partition) -> list[tuple[CycleType, int]]:
    """Cycle types of S_μ = Π S_{μ_i} with the number of elements of each type."""
    census: Counter = Counter({(): 1})
    for part in mu:
        nxt: Counter = Counter()
        for nu, c in census.items():
            for nu2, c2 in _sym_census(part):
                nxt[make_partition(nu + nu2)] += c * c2
        census = nxt
    return sorted(census.items(), key=lambda t: (len(t[0]), t[0]))


def min_refined_N(lam: Partition, mu: Partition) -> int:
    """min over set partitions I of type λ of N(μ^I)."""
    return min(N(refinement(mu, I)) for I in enumerate_set_partitions(lam))


def refinement_gap(lam: Partition, mu: Partition) -> int:
    """n² + min_I N(μ^I) - N(λ) - N(μ); non-negative, zero iff λ or μ is (n)."""
    n = sum(lam)
    return n * n + min_refined_N(lam, mu) - N(lam) - N(mu)
