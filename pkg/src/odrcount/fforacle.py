"""Brute-force point counts over F_p.

Dual elements Y = Y_m/z^m + ... + Y_1/z are numpy arrays of shape (m, n, n)
indexed so that ``Y[j - 1] = Y_j``.  Group elements g = g_0 + g_1 z + ... are
arrays of shape (m, n, n) with ``g[i] = g_i``.  Batched versions carry a
leading axis.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterator, Sequence

import numpy as np

from . import partitions as P
from .countformulas import FormalType, genericity_check

STRATEGY_B_LIMIT = 10 ** 8
ELEMENT_LIMIT = 2 * 10 ** 7


class CapacityError(RuntimeError):
    """The requested enumeration exceeds the configured capacity."""


class SearchExhausted(RuntimeError):
    """No generic tuple was found; p is too small for this configuration."""


class NonGenericTuple(ValueError):
    pass


# linear algebra mod p


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def check_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")


def mat_inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p; raises ValueError when singular."""
    n = a.shape[0]
    aug = np.concatenate([np.asarray(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r, col] % p), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


def det_mod(a: np.ndarray, p: int) -> int:
    n = a.shape[0]
    m = np.asarray(a, dtype=np.int64) % p
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r, col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
            det = -det
        det = det * int(m[col, col]) % p
        inv = pow(int(m[col, col]), -1, p)
        for r in range(col + 1, n):
            if m[r, col]:
                m[r] = (m[r] - m[r, col] * inv * m[col]) % p
    return det % p


def rref_mod(a: np.ndarray, p: int) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    return m[:r]


def gl_order(n: int, p: int) -> int:
    return prod(p ** n - p ** i for i in range(n))


def levi_order(lam: Sequence[int], p: int) -> int:
    return prod(gl_order(x, p) for x in lam)


def group_order(n: int, m: int, p: int) -> int:
    """|GL_n(F_p[z]/z^m)|."""
    return gl_order(n, p) * p ** ((m - 1) * n * n)


def predicted_orbit_size(C: FormalType) -> int:
    lam = C.block_type
    return group_order(C.n, C.m, C.p) // (levi_order(lam, C.p) * C.p ** ((C.m - 1) * P.N(lam)))


# truncated Laurent arithmetic


def group_inverse(g: np.ndarray, p: int) -> np.ndarray:
    """Inverse in GL_n(R_m) of g = g_0 + g_1 z + ..."""
    m = g.shape[0]
    h = np.zeros_like(g, dtype=np.int64)
    h[0] = mat_inv_mod(g[0], p)
    for k in range(1, m):
        acc = np.zeros_like(h[0])
        for i in range(1, k + 1):
            acc = acc + g[i] @ h[k - i]
        h[k] = (-h[0] @ acc) % p
    return h


def _left(g: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    # (g Y)_j = Σ_i g_i Y_{j+i}, negative powers only; Y batched (B, m, n, n)
    m = Y.shape[1]
    out = np.zeros_like(Y)
    for j in range(m):
        for i in range(m - j):
            out[:, j] += np.einsum("ab,Bbc->Bac", g[i], Y[:, j + i])
    return out % p


def _right(Y: np.ndarray, h: np.ndarray, p: int) -> np.ndarray:
    m = Y.shape[1]
    out = np.zeros_like(Y)
    for j in range(m):
        for i in range(m - j):
            out[:, j] += np.einsum("Bab,bc->Bac", Y[:, j + i], h[i])
    return out % p


def coadjoint_act(g: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """g Y g^{-1} with non-negative powers of z discarded."""
    g = np.asarray(g, dtype=np.int64) % p
    Y = np.asarray(Y, dtype=np.int64) % p
    if det_mod(g[0], p) == 0:
        raise ValueError("g is not invertible")
    single = Y.ndim == 3
    Yb = Y[None] if single else Y
    m = Yb.shape[1]
    g = _pad(g, m)
    out = _right(_left(g, Yb, p), group_inverse(g, p), p)
    return out[0] if single else out


def adjoint_act(g: np.ndarray, X: np.ndarray, p: int) -> np.ndarray:
    """g X g^{-1} in gl_n(R_m), X = X_0 + X_1 z + ..."""
    g = np.asarray(g, dtype=np.int64) % p
    h = group_inverse(g, p)
    m = X.shape[0]
    gx = np.zeros_like(X)
    for k in range(m):
        for i in range(k + 1):
            gx[k] += g[i] @ X[k - i]
    out = np.zeros_like(X)
    for k in range(m):
        for i in range(k + 1):
            out[k] += gx[i] @ h[k - i]
    return out % p


def pair(Y: np.ndarray, X: np.ndarray, p: int) -> int:
    """Residue of tr(Y X): Σ_i tr(Y_i X_{i-1})."""
    return int(sum(np.trace(Y[i] @ X[i]) for i in range(Y.shape[0])) % p)


def _pad(g: np.ndarray, m: int) -> np.ndarray:
    if g.shape[0] >= m:
        return g[:m]
    pad = np.zeros((m - g.shape[0],) + g.shape[1:], dtype=np.int64)
    return np.concatenate([g, pad])


def formal_type_array(C: FormalType) -> np.ndarray:
    """The diagonal dual element of C in the (m, n, n) layout."""
    arr = np.zeros((C.m, C.n, C.n), dtype=np.int64)
    for j in range(1, C.m + 1):
        arr[j - 1] = np.diag(C.rows[C.m - j])
    return arr


# encodings


def all_matrices(n: int, p: int) -> np.ndarray:
    """Every n×n matrix over F_p, ordered by their base-p key."""
    if p ** (n * n) > ELEMENT_LIMIT:
        raise CapacityError(f"{p}^{n * n} matrices exceed the element limit {ELEMENT_LIMIT}")
    digits = np.indices((p,) * (n * n)).reshape(n * n, -1).T
    return digits.reshape(-1, n, n).astype(np.int64)


def encode(mats: np.ndarray, p: int) -> np.ndarray:
    """Base-p integer of each flattened matrix (first entry most significant)."""
    flat = mats.reshape(mats.shape[0], -1)
    k = flat.shape[1]
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def decode(keys: np.ndarray, n: int, p: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty((keys.shape[0], n * n), dtype=np.int64)
    rest = keys.copy()
    for i in range(n * n - 1, -1, -1):
        out[:, i] = rest % p
        rest //= p
    return out.reshape(-1, n, n)


# orbits


@dataclass
class Orbit:
    """A coadjoint orbit, stored as translates Ad_g(O_1) of a unipotent orbit O_1."""

    C: FormalType
    strategy: str
    base: np.ndarray  # (B, m, n, n) elements of O_1(C), or of the whole orbit when reps is None
    reps: np.ndarray | None  # coset representatives of GL_n(F_p)/L_λ, shape (R, n, n)

    @property
    def size(self) -> int:
        return self.base.shape[0] * (1 if self.reps is None else self.reps.shape[0])

    def elements(self, limit: int = ELEMENT_LIMIT) -> np.ndarray:
        if self.size > limit:
            raise CapacityError(f"orbit of size {self.size} exceeds element limit {limit}")
        if self.reps is None:
            return self.base
        p = self.C.p
        chunks = []
        for g in self.reps:
            chunks.append(coadjoint_act(g[None], self.base, p))
        return np.concatenate(chunks)


def _charpoly_ok(A0: np.ndarray, C: FormalType) -> np.ndarray:
    """Batch test that each eigenvalue c_i of A0 has an eigenspace of dimension λ_i."""
    p = C.p
    n = C.n
    ok = np.ones(A0.shape[0], dtype=bool)
    # A0 already satisfies the squarefree minimal polynomial, so this pins the characteristic polynomial
    for block, vals in zip(C.blocks, C.block_values()):
        c = vals[0]
        M = (A0 - c * np.eye(n, dtype=np.int64)) % p
        ok &= _batch_rank(M, p) == n - len(block)
    return ok


def _batch_rank(M: np.ndarray, p: int) -> np.ndarray:
    M = M.copy() % p
    B, rows, cols = M.shape
    rank = np.zeros(B, dtype=np.int64)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    for c in range(cols):
        r = rank
        # pivot search per batch element
        sub = M[:, :, c]
        idx = np.arange(rows)[None, :]
        cand = (sub != 0) & (idx >= r[:, None])
        has = cand.any(axis=1)
        piv = np.where(has, cand.argmax(axis=1), 0)
        bi = np.nonzero(has)[0]
        if bi.size == 0:
            continue
        rr = r[bi]
        pv = piv[bi]
        row_p = M[bi, pv].copy()
        row_r = M[bi, rr].copy()
        M[bi, rr] = row_p
        M[bi, pv] = row_r
        scale = inv[M[bi, rr, c]]
        M[bi, rr] = M[bi, rr] * scale[:, None] % p
        for i in range(rows):
            mask = i != rr
            sel = bi[mask]
            if sel.size == 0:
                continue
            f = M[sel, i, c]
            M[sel, i] = (M[sel, i] - f[:, None] * M[sel, rr[mask]]) % p
        rank[bi] += 1
    return rank


def _minpoly_coeff(A: np.ndarray, C: FormalType, k: int) -> np.ndarray:
    """Coefficient of z^k in Π_blocks (A(z) - c^i(z) I), A batched (B, k+1, n, n) with A[:, t] = Y_{m-t}."""
    p, n = C.p, C.n
    B = A.shape[0]
    eye = np.eye(n, dtype=np.int64)
    prod_ = None
    for vals in C.block_values():
        # c^i(z) = c_m + c_{m-1} z + ...; vals = (c_m, ..., c_1)
        fac = A.copy()
        for t in range(k + 1):
            fac[:, t] = (fac[:, t] - vals[t] * eye) % p
        if prod_ is None:
            prod_ = fac
        else:
            nxt = np.zeros_like(prod_)
            for a in range(k + 1):
                for b in range(k + 1 - a):
                    nxt[:, a + b] += np.einsum("Bij,Bjk->Bik", prod_[:, a], fac[:, b])
            prod_ = nxt % p
    return prod_[:, k] if prod_ is not None else np.zeros((B, n, n), dtype=np.int64)


def _strategy_b(C: FormalType, chunk: int = 1 << 18) -> np.ndarray:
    """Solve the defining equations degree by degree in z, filtering all candidates for each new coefficient."""
    p, n, m = C.p, C.n, C.m
    cands = all_matrices(n, p)
    partial = np.zeros((1, 0, n, n), dtype=np.int64)
    for k in range(m):
        found = []
        step = max(1, chunk // cands.shape[0])
        for s in range(0, partial.shape[0], step):
            base = partial[s: s + step]
            B = base.shape[0] * cands.shape[0]
            A = np.empty((B, k + 1, n, n), dtype=np.int64)
            A[:, :k] = np.repeat(base, cands.shape[0], axis=0)
            A[:, k] = np.tile(cands, (base.shape[0], 1, 1))
            ok = ~_minpoly_coeff(A, C, k).reshape(B, -1).any(axis=1)
            if k == 0:
                ok &= _charpoly_ok(A[:, 0], C)
            found.append(A[ok])
        partial = np.concatenate(found)
    # A[:, t] = Y_{m-t}; store as Y[j-1] = Y_j
    return partial[:, ::-1].copy()


def _unipotent_generators(n: int, m: int) -> list[np.ndarray]:
    gens = []
    for j in range(1, m):
        for a in range(n):
            for b in range(n):
                g = np.zeros((m, n, n), dtype=np.int64)
                g[0] = np.eye(n, dtype=np.int64)
                g[j, a, b] = 1
                gens.append(g)
    return gens


def _dual_keys(Y: np.ndarray, p: int) -> np.ndarray:
    flat = Y.reshape(Y.shape[0], -1)
    k = flat.shape[1]
    if p ** k >= 2 ** 62:
        raise CapacityError("dual element encoding exceeds 62 bits")
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def _bfs(start: np.ndarray, gens: list[np.ndarray], p: int, limit: int) -> np.ndarray:
    seen = np.unique(_dual_keys(start, p))
    frontier = start
    found = [start]
    gen_pairs = [(g, group_inverse(g, p)) for g in gens]
    while frontier.shape[0]:
        new = []
        for g, h in gen_pairs:
            new.append(_right(_left(g, frontier, p), h, p))
        new = np.concatenate(new)
        keys = _dual_keys(new, p)
        keys, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = new[idx[fresh]]
        if frontier.shape[0]:
            seen = np.union1d(seen, keys[fresh])
            found.append(frontier)
        if seen.shape[0] > limit:
            raise CapacityError(f"orbit BFS exceeded {limit} elements")
    return np.concatenate(found)


def levi_coset_reps(n: int, p: int, blocks: Sequence[Sequence[int]]) -> np.ndarray:
    """One g per coset g·L, L the block-diagonal Levi for the given index blocks."""
    mats = all_matrices(n, p)
    reps, seen = [], set()
    for g in mats:
        if det_mod(g, p) == 0:
            continue
        key = tuple(rref_mod(g[:, list(b)].T, p).tobytes() for b in blocks)
        if key in seen:
            continue
        seen.add(key)
        reps.append(g)
    return np.array(reps, dtype=np.int64)


def _strategy_a(C: FormalType, limit: int) -> Orbit:
    p, n, m = C.p, C.n, C.m
    start = formal_type_array(C)[None]
    base = _bfs(start, _unipotent_generators(n, m), p, limit) if m > 1 else start
    reps = levi_coset_reps(n, p, C.blocks)
    return Orbit(C, "A", base, reps)


def enumerate_orbit(C: FormalType, strategy: str | None = None, limit: int = ELEMENT_LIMIT) -> Orbit:
    """The G_m-orbit of the formal type C over F_p, with its size checked against orbit–stabilizer."""
    if C.p is None:
        raise ValueError("formal type must live over F_p")
    check_prime(C.p)
    n, m, p = C.n, C.m, C.p
    if strategy is None:
        strategy = "B" if p ** (m * n * n) <= STRATEGY_B_LIMIT else "A"
    if strategy == "B":
        if p ** (m * n * n) > STRATEGY_B_LIMIT:
            raise CapacityError(f"strategy B needs p^(mn^2) <= {STRATEGY_B_LIMIT}")
        orbit = Orbit(C, "B", _strategy_b(C), None)
    elif strategy == "A":
        orbit = _strategy_a(C, limit)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    expected = predicted_orbit_size(C)
    if orbit.size != expected:
        raise AssertionError(f"orbit size {orbit.size} != predicted {expected}")
    return orbit


# histograms


class ResidueHistogram:
    """Counts on gl_n(F_p), stored densely by base-p key."""

    def __init__(self, n: int, p: int, counts: np.ndarray | None = None):
        self.n, self.p = n, p
        size = p ** (n * n)
        if size > ELEMENT_LIMIT:
            raise CapacityError(f"histogram with {size} cells is too large")
        self.counts = np.zeros(size, dtype=object) if counts is None else counts

    @classmethod
    def point_mass(cls, X: np.ndarray, p: int, weight: int = 1) -> "ResidueHistogram":
        n = X.shape[0]
        h = cls(n, p, np.zeros(p ** (n * n), dtype=np.int64))
        h.counts[int(encode(X[None] % p, p)[0])] = weight
        return h

    @property
    def mass(self) -> int:
        return int(sum(int(x) for x in self.counts[self.counts != 0]))

    def __getitem__(self, X) -> int:
        key = X if isinstance(X, (int, np.integer)) else int(encode(np.asarray(X)[None] % self.p, self.p)[0])
        return int(self.counts[key])

    def support(self) -> np.ndarray:
        return np.nonzero(self.counts)[0]

    def __eq__(self, other) -> bool:
        return (self.n, self.p) == (other.n, other.p) and all(
            int(a) == int(b) for a, b in zip(self.counts, other.counts))

    def negated(self) -> "ResidueHistogram":
        keys = np.arange(self.counts.shape[0])
        neg = encode((-decode(keys, self.n, self.p)) % self.p, self.p)
        out = np.zeros_like(self.counts)
        out[neg] = self.counts
        return ResidueHistogram(self.n, self.p, out)

    def conjugated(self, g: np.ndarray) -> "ResidueHistogram":
        sup = self.support()
        X = decode(sup, self.n, self.p)
        h = mat_inv_mod(g, self.p)
        Y = np.einsum("ab,Bbc,cd->Bad", g, X, h) % self.p
        out = np.zeros_like(self.counts)
        out[encode(Y, self.p)] = self.counts[sup]
        return ResidueHistogram(self.n, self.p, out)


def residue_histogram(orbit: Orbit) -> ResidueHistogram:
    """Histogram of Y_1 over the orbit."""
    C = orbit.C
    n, p = C.n, C.p
    res = orbit.base[:, 0]
    keys = encode(res, p)
    base = np.bincount(keys, minlength=p ** (n * n)).astype(np.int64)
    if orbit.reps is None:
        return ResidueHistogram(n, p, base)
    sup = np.nonzero(base)[0]
    X = decode(sup, n, p)
    total = np.zeros_like(base)
    for g in orbit.reps:
        h = mat_inv_mod(g, p)
        Y = np.einsum("ab,Bbc,cd->Bad", g, X, h) % p
        np.add.at(total, encode(Y, p), base[sup])
    return ResidueHistogram(n, p, total)


def _safe_dtype(a: np.ndarray, b: np.ndarray) -> type:
    bound = int(sum(int(x) for x in a)) * int(sum(int(x) for x in b))
    return np.int64 if bound < 2 ** 62 else object


def convolve(h1: ResidueHistogram, h2: ResidueHistogram) -> ResidueHistogram:
    """(h1 * h2)(X) = Σ_Y h1(Y) h2(X - Y), iterating over the smaller support."""
    if (h1.n, h1.p) != (h2.n, h2.p):
        raise ValueError("histograms over different spaces")
    n, p = h1.n, h1.p
    if len(h1.support()) > len(h2.support()):
        h1, h2 = h2, h1
    dtype = _safe_dtype(h1.counts, h2.counts)
    shape = (p,) * (n * n)
    dense = h2.counts.astype(dtype).reshape(shape)
    out = np.zeros(shape, dtype=dtype)
    for key in h1.support():
        shift = tuple(int(x) for x in decode(np.array([key]), n, p)[0].ravel())
        out += int(h1.counts[key]) * np.roll(dense, shift, axis=tuple(range(n * n)))
    return ResidueHistogram(n, p, out.ravel())


def fiber_count(hists: Sequence[ResidueHistogram]) -> int:
    """Number of tuples (Y^1, ..., Y^d) with Σ residues = 0."""
    acc = hists[0]
    for h in hists[1:-1]:
        acc = convolve(acc, h)
    if len(hists) == 1:
        return acc[0]
    last = hists[-1].negated()
    return int(sum(int(a) * int(b) for a, b in zip(acc.counts, last.counts) if a and b))


@dataclass
class OracleResult:
    count: int
    fiber: int
    orbit_sizes: list[int]
    strategies: list[str]
    types: list[FormalType]


def odr_count(types: Sequence[FormalType], p: int, strategy: str | None = None) -> OracleResult:
    """|μ^{-1}(0)| (p-1) / |GL_n(F_p)| for a generic tuple of formal types over F_p."""
    check_prime(p)
    if any(t.p != p for t in types):
        raise ValueError("formal types must live over F_p")
    ok, witness = genericity_check(types)
    if not ok:
        raise NonGenericTuple(f"tuple is not generic: {witness}")
    n = types[0].n
    orbits = [enumerate_orbit(t, strategy) for t in types]
    hists = [residue_histogram(o) for o in orbits]
    fiber = fiber_count(hists)
    num = (p - 1) * fiber
    den = gl_order(n, p)
    if num % den:
        raise AssertionError(f"non-integral count {Fraction(num, den)}")
    return OracleResult(num // den, fiber, [o.size for o in orbits], [o.strategy for o in orbits], list(types))


# generic tuples


def _residue_options(n: int, lam: Sequence[int] | None, p: int) -> list[tuple[int, ...]]:
    if lam is None:
        return list(itertools.product(range(p), repeat=n))
    out = []
    for vals in itertools.permutations(range(p), len(lam)):
        out.append(tuple(v for v, k in zip(vals, lam) for _ in range(k)))
    return sorted(set(out))


def _build_types(n: int, orders: Sequence[int], block_types: Sequence, residues, p: int, rng: random.Random):
    types = []
    for m, lam, res in zip(orders, block_types, residues):
        if m == 1:
            types.append(FormalType((res,), p))
            continue
        lead = rng.sample(range(p), n)
        rows = [tuple(lead)] + [tuple(rng.randrange(p) for _ in range(n)) for _ in range(m - 2)] + [res]
        types.append(FormalType(tuple(rows), p))
    return types


def iter_generic_tuples(
    n: int,
    orders: Sequence[int],
    p: int,
    block_types: Sequence | None = None,
    seed: int = 0,
    tries: int = 4000,
    exhaustive_limit: int = 10 ** 6,
) -> Iterator[list[FormalType]]:
    """Yield distinct generic tuples: order-m poles with regular leading term, order-1 poles of the given block type."""
    check_prime(p)
    orders = list(orders)
    if block_types is None:
        block_types = [None] * len(orders)
    block_types = [None if m > 1 else tuple(lam or (1,) * n) for m, lam in zip(orders, block_types)]
    if any(m > 1 for m in orders) and p < n:
        raise SearchExhausted(f"p={p} too small for a regular leading term of rank {n}")
    opts = []
    for m, lam in zip(orders, block_types):
        o = _residue_options(n, lam, p)
        if not o:
            raise SearchExhausted(f"p={p} too small for block type {lam}")
        opts.append(o)
    rng = random.Random(seed)
    seen = set()

    def check(res):
        if res in seen:
            return None
        seen.add(res)
        if sum(sum(r) for r in res) % p:
            return None
        types = _build_types(n, orders, block_types, res, p, rng)
        return types if genericity_check(types)[0] else None

    for _ in range(tries):
        res = tuple(rng.choice(o) for o in opts)
        got = check(res)
        if got:
            yield got
    space = prod(len(o) for o in opts)
    if space > exhaustive_limit:
        return
    for res in itertools.product(*opts):
        got = check(res)
        if got:
            yield got


def find_generic_tuple(n: int, orders: Sequence[int], p: int, block_types: Sequence | None = None,
                       seed: int = 0) -> list[FormalType]:
    """First generic tuple found, or SearchExhausted ("p too small")."""
    for types in iter_generic_tuples(n, orders, p, block_types, seed):
        return types
    raise SearchExhausted(f"no generic tuple for n={n}, orders={list(orders)} over F_{p}: p too small")


def config_orders(cfg) -> tuple[list[int], list]:
    """Pole orders and block types for an OdRConfig: tame poles first."""
    orders = [1] * cfg.k + [x + 1 for x in cfg.r]
    blocks = list(cfg.mu) + [None] * cfg.s
    return orders, blocks


def oracle_for_config(cfg, p: int, witness: int = 0, seed: int = 0, strategy: str | None = None) -> OracleResult:
    """odr_count on the ``witness``-th generic tuple found for the configuration."""
    orders, blocks = config_orders(cfg)
    for i, types in enumerate(iter_generic_tuples(cfg.n, orders, p, blocks, seed)):
        if i == witness:
            return odr_count(types, p, strategy)
    raise SearchExhausted(f"fewer than {witness + 1} generic tuples for {cfg.label()} over F_{p}")
