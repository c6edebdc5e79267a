"""Exact additive character sums in Z[ζ_p] and pointwise checks of Fourier identities on gl_n(F_p)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from . import partitions as P
from .countformulas import FormalType, green_value
from .fforacle import (
    ResidueHistogram,
    all_matrices,
    check_prime,
    decode,
    encode,
    enumerate_orbit,
    levi_order,
    residue_histogram,
)


class Cyclotomic:
    """Element of Z[ζ_p] in the power basis 1, ζ, ..., ζ^{p-2}."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) == p:
            top = coeffs[-1]
            coeffs = [c - top for c in coeffs[:-1]]
        elif len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} or {p} coefficients")
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Sequence[int]) -> "Cyclotomic":
        """Σ_a counts[a] ζ^a for a = 0..p-1."""
        return cls(p, counts)

    @classmethod
    def integer(cls, p: int, c: int) -> "Cyclotomic":
        return cls(p, [c] + [0] * (p - 2))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Cyclotomic.integer(self.p, other)
        return isinstance(other, Cyclotomic) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = Cyclotomic.integer(self.p, other)
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.p, [a * other for a in self.coeffs])
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return Cyclotomic(p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Cyclotomic.integer(self.p, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic(p={self.p}: {' + '.join(terms) or '0'})"


def psi(x: int, p: int) -> Cyclotomic:
    """Ψ(x) = ζ_p^x."""
    v = [0] * p
    v[int(x) % p] = 1
    return Cyclotomic(p, v)


@dataclass
class ClassFunction:
    """Function on gl_n(F_p) with values in Z[ζ_p], stored as length-p exponent-count vectors per point."""

    n: int
    p: int
    table: np.ndarray  # shape (p^{n^2}, p), object or int64

    @classmethod
    def from_integer_values(cls, n: int, p: int, values: np.ndarray) -> "ClassFunction":
        table = np.zeros((p ** (n * n), p), dtype=object)
        table[:, 0] = [int(v) for v in values]
        return cls(n, p, table)

    @classmethod
    def from_histogram(cls, h: ResidueHistogram) -> "ClassFunction":
        return cls.from_integer_values(h.n, h.p, h.counts)

    def __call__(self, X) -> Cyclotomic:
        key = X if isinstance(X, (int, np.integer)) else int(encode(np.asarray(X)[None] % self.p, self.p)[0])
        return Cyclotomic(self.p, self.table[key])

    def values(self) -> list[Cyclotomic]:
        return [Cyclotomic(self.p, row) for row in self.table]

    def __eq__(self, other) -> bool:
        return self.values() == other.values()

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        out = np.zeros_like(self.table)
        p = self.p
        for a in range(p):
            for b in range(p):
                out[:, (a + b) % p] += self.table[:, a] * other.table[:, b]
        return ClassFunction(self.n, p, out)

    def scale(self, c: int) -> "ClassFunction":
        return ClassFunction(self.n, self.p, self.table * c)


def fourier(f: ClassFunction, points: Iterable[int] | None = None) -> ClassFunction:
    """F(f)(X) = Σ_Y f(Y) Ψ(tr(YX)); computed on ``points`` (keys) or everywhere."""
    n, p = f.n, f.p
    size = p ** (n * n)
    keys = np.arange(size) if points is None else np.asarray(list(points), dtype=np.int64)
    mats = all_matrices(n, p)
    Xs = decode(keys, n, p)
    pair = np.einsum("yab,xba->yx", mats, Xs) % p
    support = [y for y in range(size) if any(f.table[y])]
    out = np.zeros((size, p), dtype=object)
    for y in support:
        row = f.table[y]
        shifts = pair[y]
        for a in range(p):
            if row[a]:
                np.add.at(out, (keys, (shifts + a) % p), row[a])
    return ClassFunction(n, p, out)


def fourier_histogram_at(h: ResidueHistogram, X: np.ndarray) -> Cyclotomic:
    """F(h)(X) for an integer-valued histogram, directly from its support."""
    p = h.p
    sup = h.support()
    Ys = decode(sup, h.n, p)
    t = np.einsum("yab,ba->y", Ys, X) % p
    counts = [0] * p
    for a, c in zip(t, h.counts[sup]):
        counts[int(a)] += int(c)
    return Cyclotomic(p, counts)


def negate_points(f: ClassFunction) -> ClassFunction:
    keys = np.arange(f.table.shape[0])
    neg = encode((-decode(keys, f.n, f.p)) % f.p, f.p)
    return ClassFunction(f.n, f.p, f.table[neg])


# identity checks


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"check": self.name, "passed": self.passed, "checked": self.checked,
                "counterexample": self.counterexample, **self.details}


def check_orth(p: int, linear: Sequence[int], const: int = 0) -> CheckResult:
    """Σ_{v ∈ F_p^k} Ψ(a·v + b) = p^k Ψ(b) when a = 0, else 0."""
    check_prime(p)
    k = len(linear)
    counts = [0] * p
    for v in itertools.product(range(p), repeat=k):
        counts[(sum(a * x for a, x in zip(linear, v)) + const) % p] += 1
    lhs = Cyclotomic(p, counts)
    rhs = psi(const, p) * p ** k if not any(a % p for a in linear) else Cyclotomic.integer(p, 0)
    ok = lhs == rhs
    return CheckResult("orth", ok, 1, None if ok else {"lhs": repr(lhs), "rhs": repr(rhs)})


def check_finalc(beta: Sequence[int], p: int) -> CheckResult:
    """Σ over tuples of distinct α ∈ F_p^e of Ψ(Σ α_j β_j) = (-1)^{e-1}(e-1)! p."""
    check_prime(p)
    e = len(beta)
    if sum(beta) % p:
        raise ValueError("β must sum to zero")
    for size in range(1, e):
        for sub in itertools.combinations(beta, size):
            if sum(sub) % p == 0:
                raise ValueError(f"proper subset {sub} of β sums to zero")
    counts = [0] * p
    for alpha in itertools.permutations(range(p), e):
        counts[sum(a * b for a, b in zip(alpha, beta)) % p] += 1
    lhs = Cyclotomic(p, counts)
    expected = (-1) ** (e - 1) * factorial(e - 1) * p
    ok = lhs == expected
    return CheckResult("finalc", ok, 1, None if ok else {"lhs": repr(lhs), "expected": expected},
                       {"value": expected})


def split_semisimple_type(X: np.ndarray, p: int) -> tuple[P.Partition, list[int]] | None:
    """(λ, eigenvalues with multiplicity) if X is diagonalizable over F_p, else None."""
    n = X.shape[0]
    eig = []
    for c in range(p):
        M = (X - c * np.eye(n, dtype=np.int64)) % p
        k = n - _rank(M, p)
        eig.extend([c] * k)
    if len(eig) != n:
        return None
    lam = P.make_partition(eig.count(c) for c in set(eig))
    return lam, eig


def _rank(M: np.ndarray, p: int) -> int:
    from .fforacle import rref_mod
    return rref_mod(M, p).shape[0]


def _torus_orbit_points(eig: Sequence[int]) -> set[tuple[int, ...]]:
    return set(itertools.permutations(eig))


def ffft_rhs(C: FormalType, X: np.ndarray) -> Cyclotomic:
    """Closed form for F(#_C)(X); zero off the split semisimple locus."""
    p, n, m = C.p, C.n, C.m
    info = split_semisimple_type(X, p)
    if info is None:
        return Cyclotomic.integer(p, 0)
    lam, eig = info
    twice = 2 * n + m * (n * n - 2 * n) + (m - 2) * P.N(lam)
    assert twice % 2 == 0
    num = p ** (twice // 2) * levi_order(lam, p)
    assert num % (p - 1) ** n == 0
    pref = num // (p - 1) ** n
    counts = [0] * p
    for t in _torus_orbit_points(eig):
        counts[sum(c * x for c, x in zip(C.residue, t)) % p] += 1
    return Cyclotomic(p, counts) * pref


def check_ffft(C: FormalType, points: Iterable[np.ndarray] | None = None) -> CheckResult:
    """F(#_C)(X) by direct summation over the orbit against the closed form."""
    p, n = C.p, C.n
    h = residue_histogram(enumerate_orbit(C))
    pts = list(points) if points is not None else list(all_matrices(n, p))
    for X in pts:
        lhs = fourier_histogram_at(h, X)
        rhs = ffft_rhs(C, X)
        if lhs != rhs:
            return CheckResult("ffft", False, len(pts), {"X": X.tolist(), "lhs": repr(lhs), "rhs": repr(rhs)})
    return CheckResult("ffft", True, len(pts))


def nilpotent_indicator(n: int, p: int) -> np.ndarray:
    mats = all_matrices(n, p)
    power = mats.copy()
    for _ in range(n - 1):
        power = np.einsum("bij,bjk->bik", power, mats) % p
    return (~power.reshape(len(mats), -1).any(axis=1)).astype(np.int64)


def tame_orbit_indicator(diag: Sequence[int], p: int) -> np.ndarray:
    """Indicator of the GL_n(F_p)-conjugacy class of diag(...)."""
    C = FormalType((tuple(diag),), p)
    h = residue_histogram(enumerate_orbit(C))
    return (np.asarray(h.counts, dtype=np.int64) > 0).astype(np.int64)


def steinberg_value(lam: P.Partition, p: int) -> int:
    n = sum(lam)
    return p ** ((n * n - 2 * n + P.N(lam)) // 2)


def fttame_rhs(diag: Sequence[int], mu: P.Partition, X: np.ndarray, p: int) -> Cyclotomic:
    """Closed form for F(1_C)(X), C = diag(...) with consecutive eigenvalue blocks of sizes μ."""
    n = len(diag)
    info = split_semisimple_type(X, p)
    if info is None:
        raise ValueError("X must be split semisimple")
    lam, eig = info
    blocks = P.consecutive_blocks(mu)
    total = [Fraction(0)] * p
    block_perms = [list(itertools.permutations(list(b))) for b in blocks]
    points = _torus_orbit_points(eig)
    for choice in itertools.product(*block_perms):
        w = {}
        for b, img in zip(blocks, choice):
            w.update(dict(zip(b, img)))
        counts = [0] * p
        for t in points:
            # t fixed by w: t_{w(i)} = t_i
            if all(t[w[i] - 1] == t[i - 1] for i in w):
                counts[sum(c * x for c, x in zip(diag, t)) % p] += 1
        if not any(counts):
            continue
        g = green_value(lam, P.cycle_type(w)).evaluate(p)
        total = [a + g * c for a, c in zip(total, counts)]
    scale = Fraction(p ** ((n * n - P.N(mu)) // 2), P.lam_factorial(mu))
    coeffs = [a * scale for a in total]
    coeffs = [a - coeffs[-1] for a in coeffs]
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError("tame transform is not integral")
    return Cyclotomic(p, [int(c) for c in coeffs])


def check_tame_and_steinberg(p: int, n: int = 2, m: int = 2, seed: int = 0) -> list[CheckResult]:
    """Steinberg values of F(1_N), the tame closed form, and F(#_C) = F(1_{C_1}) F(1_N)^{m-1}."""
    import random

    check_prime(p)
    rng = random.Random(seed)
    results = []
    size = p ** (n * n)
    mats = all_matrices(n, p)
    split = [(k, split_semisimple_type(mats[k], p)) for k in range(size)]
    split = [(k, info) for k, info in split if info is not None]

    nil = ClassFunction.from_integer_values(n, p, nilpotent_indicator(n, p))
    fnil = fourier(nil)
    bad = next(({"X": mats[k].tolist(), "value": repr(fnil(k))} for k, (lam, _) in split
                if fnil(k) != steinberg_value(lam, p)), None)
    results.append(CheckResult("steinberg", bad is None, len(split), bad))

    bad = None
    checked = 0
    for mu in P.enumerate_partitions(n):
        vals = rng.sample(range(p), len(mu)) if len(mu) <= p else None
        if vals is None:
            continue
        diag = [v for v, k in zip(vals, mu) for _ in range(k)]
        ind = ClassFunction.from_integer_values(n, p, tame_orbit_indicator(diag, p))
        ft = fourier(ind, [k for k, _ in split])
        for k, _ in split:
            checked += 1
            rhs = fttame_rhs(diag, mu, mats[k], p)
            if ft(k) != rhs:
                bad = {"mu": list(mu), "diag": diag, "X": mats[k].tolist(), "lhs": repr(ft(k)), "rhs": repr(rhs)}
                break
        if bad:
            break
    results.append(CheckResult("tame", bad is None, checked, bad))

    lead = rng.sample(range(p), n)
    res = rng.sample(range(p), n)
    rows = (tuple(lead),) + tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(m - 2)) + (tuple(res),)
    C = FormalType(rows, p)
    fc = fourier(ClassFunction.from_histogram(residue_histogram(enumerate_orbit(C))))
    f1 = fourier(ClassFunction.from_integer_values(n, p, tame_orbit_indicator(res, p)))
    rhs = f1
    for _ in range(m - 1):
        rhs = rhs * fnil
    bad = next(({"X": mats[k].tolist(), "lhs": repr(fc(k)), "rhs": repr(rhs(k))}
                for k in range(size) if fc(k) != rhs(k)), None)
    results.append(CheckResult("product", bad is None, size, bad, {"formal_type": [list(r) for r in rows]}))
    return results


def check_inversion(f: ClassFunction) -> CheckResult:
    """F(F(f)) = p^{n²} f(-X)."""
    lhs = fourier(fourier(f))
    rhs = negate_points(f).scale(f.p ** (f.n * f.n))
    ok = lhs == rhs
    return CheckResult("inversion", ok, f.table.shape[0])


def check_convolution(h1: ResidueHistogram, h2: ResidueHistogram) -> CheckResult:
    """F(h1 * h2) = F(h1) F(h2)."""
    from .fforacle import convolve

    lhs = fourier(ClassFunction.from_histogram(convolve(h1, h2)))
    rhs = fourier(ClassFunction.from_histogram(h1)) * fourier(ClassFunction.from_histogram(h2))
    return CheckResult("convolution", lhs == rhs, h1.counts.shape[0])


def fiber_count_via_fourier(types: Sequence[FormalType]) -> int:
    """p^{-n²} Σ_X Π_i F(#_{C^i})(X), which must be a rational integer."""
    p, n = types[0].p, types[0].n
    fs = [fourier(ClassFunction.from_histogram(residue_histogram(enumerate_orbit(t)))) for t in types]
    acc = fs[0]
    for f in fs[1:]:
        acc = acc * f
    total = Cyclotomic.integer(p, 0)
    for v in acc.values():
        total = total + v
    value = total.to_int()
    if value % p ** (n * n):
        raise AssertionError("Fourier-side fiber count is not divisible by p^{n²}")
    return value // p ** (n * n)
