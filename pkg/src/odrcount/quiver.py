"""Star-shaped quivers with multiplicities: construction from formal types, Cartan data, moment map and point counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import NamedTuple, Sequence

import numpy as np

from .countformulas import FormalType, OdRConfig, dimension
from .exactpoly import ExactPolynomial
from .fforacle import (
    CapacityError,
    ResidueHistogram,
    check_prime,
    convolve,
    encode,
    gl_order,
    group_inverse,
)

LEG_STATE_LIMIT = 10 ** 8
CHUNK = 1 << 18

CENTER = "0"


def node(i: int, j: int) -> str:
    return f"[{i},{j}]"


@dataclass
class WeightedQuiver:
    """Quiver with multiplicity vector ``m`` and dimension vector ``n``; arrows are (tail, head)."""

    vertices: list[str]
    arrows: list[tuple[str, str]]
    m: dict[str, int]
    n: dict[str, int]
    legs: list[list[str]] = field(default_factory=list)

    def __post_init__(self):
        for v in self.vertices:
            if self.m[v] < 1 or self.n[v] < 1:
                raise ValueError(f"vertex {v} needs positive multiplicity and dimension")
        for t, h in self.arrows:
            if t not in self.m or h not in self.m:
                raise ValueError(f"arrow {t}->{h} leaves the vertex set")

    @classmethod
    def star(cls, n0: int, legs: Sequence[tuple[int, Sequence[int]]]) -> "WeightedQuiver":
        """Center of dimension ``n0`` and multiplicity 1; leg i has constant multiplicity and the given dims."""
        vertices, arrows, m, n, names = [CENTER], [], {CENTER: 1}, {CENTER: n0}, []
        for i, (mult, dims) in enumerate(legs, start=1):
            prev, prev_dim, leg = CENTER, n0, []
            for j, dim in enumerate(dims, start=1):
                if not 0 < dim < prev_dim:
                    raise ValueError("dimensions must strictly decrease along each leg")
                v = node(i, j)
                vertices.append(v)
                arrows.append((prev, v))
                m[v], n[v] = mult, dim
                leg.append(v)
                prev, prev_dim = v, dim
            names.append(leg)
        return cls(vertices, arrows, m, n, names)

    def leg_data(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(self.m[leg[0]] if leg else 1, tuple(self.n[v] for v in leg)) for leg in self.legs]

    @property
    def center_dim(self) -> int:
        return self.n[CENTER]

    def to_json_obj(self) -> dict:
        return {"vertices": self.vertices, "arrows": [list(a) for a in self.arrows],
                "m": [self.m[v] for v in self.vertices], "n": [self.n[v] for v in self.vertices]}


@dataclass
class GammaVector:
    """Scalar moment-map level: a residue at the center and z^{-m}R_m elements (rows c_m..c_1) on leg vertices."""

    center: object
    legs: list[list[tuple]]
    p: int | None = None

    def satisfies_block_condition(self) -> bool:
        """z^m(γ^{[i,j]} + ... + γ^{[i,k]}) is a unit for every 1 ≤ j ≤ k on every leg."""
        for leg in self.legs:
            for j in range(len(leg)):
                lead = 0
                for k in range(j, len(leg)):
                    lead += leg[k][0]
                    if (lead % self.p if self.p else lead) == 0:
                        return False
        return True


def _block_data(C: FormalType) -> tuple[list[int], list[tuple]]:
    sizes = [len(b) for b in C.blocks]
    return sizes, C.block_values()


def star_from_formal_types(types: Sequence[FormalType]) -> tuple[WeightedQuiver, GammaVector]:
    """Leg i has one vertex per block of C^i after the first; γ is built from successive block differences."""
    if not types:
        raise ValueError("need at least one formal type")
    n = types[0].n
    p = types[0].p
    legs, gammas, center = [], [], 0
    for C in types:
        if C.n != n:
            raise ValueError("formal types must share the rank")
        sizes, values = _block_data(C)
        dims, d = [], n
        for size in sizes[:-1]:
            d -= size
            dims.append(d)
        legs.append((C.m, dims))
        diffs = [tuple(a - b for a, b in zip(values[j], values[j - 1])) for j in range(1, len(values))]
        if p:
            diffs = [tuple(x % p for x in g) for g in diffs]
        gammas.append(diffs)
        center += values[0][-1]
    if p:
        center %= p
    gamma = GammaVector(center, gammas, p)
    if not gamma.satisfies_block_condition():
        raise ValueError("partial sums of γ along a leg must be units")
    return WeightedQuiver.star(n, legs), gamma


def star_from_config(cfg: OdRConfig) -> WeightedQuiver:
    """Star quiver of a configuration: tame legs from μ^i, irregular legs with one vertex per eigenvalue."""
    legs = []
    for mu in cfg.mu:
        dims = list(itertools.accumulate(mu[:-1], lambda acc, x: acc - x, initial=cfg.n))[1:]
        legs.append((1, dims))
    for r in cfg.r:
        legs.append((r + 1, list(range(cfg.n - 1, 0, -1))))
    return WeightedQuiver.star(cfg.n, legs)


def dim_Q(Q: WeightedQuiver) -> int:
    n0 = Q.center_dim
    total = 0
    for mult, dims in Q.leg_data():
        chain = (n0,) + dims
        total += mult * sum(chain[k] * (chain[k - 1] - chain[k]) for k in range(1, len(chain)))
    return 2 * (total - n0 * n0 + 1)


def cartan_matrix(Q: WeightedQuiver) -> np.ndarray:
    """c_ii = 2 and c_ij = -(m_j / gcd(m_i, m_j)) a_ij, with a_ij the number of arrows joining i and j."""
    idx = {v: k for k, v in enumerate(Q.vertices)}
    size = len(Q.vertices)
    a = np.zeros((size, size), dtype=np.int64)
    for t, h in Q.arrows:
        a[idx[t], idx[h]] += 1
        a[idx[h], idx[t]] += 1
    c = 2 * np.eye(size, dtype=np.int64)
    for i, vi in enumerate(Q.vertices):
        for j, vj in enumerate(Q.vertices):
            if i != j and a[i, j]:
                mi, mj = Q.m[vi], Q.m[vj]
                c[i, j] = -(mj // gcd(mi, mj)) * a[i, j]
    return c


# standard affine Cartan matrices, rows and columns in chain order
AFFINE_CARTAN: dict[str, list[list[int]]] = {
    "A5_2": [[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -2], [0, 0, -1, 2]],
    "C2_1": [[2, -1, 0], [-2, 2, -2], [0, -1, 2]],
    "D4_3": [[2, -1, 0], [-1, 2, -3], [0, -1, 2]],
    "A2_2": [[2, -4], [-1, 2]],
    "G2_1": [[2, -1, 0], [-1, 2, -1], [0, -3, 2]],
    "F4_1": [[2, -1, 0, 0, 0], [-1, 2, -1, 0, 0], [0, -1, 2, -1, 0], [0, 0, -2, 2, -1], [0, 0, 0, -1, 2]],
    "E6_2": [[2, -1, 0, 0, 0], [-1, 2, -1, 0, 0], [0, -2, 2, -1, 0], [0, 0, -1, 2, -1], [0, 0, 0, -1, 2]],
}

DISPLAY = {"A5_2": "A_5^(2)", "C2_1": "C_2^(1)", "D4_3": "D_4^(3)", "A2_2": "A_2^(2)",
           "G2_1": "G_2^(1)", "F4_1": "F_4^(1)", "E6_2": "E_6^(2)"}


def same_up_to_permutation(a: np.ndarray, b: np.ndarray) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    if sorted(map(tuple, np.sort(a, axis=1))) != sorted(map(tuple, np.sort(b, axis=1))):
        return False
    size = a.shape[0]
    return any(np.array_equal(a[np.ix_(perm, perm)], b) for perm in itertools.permutations(range(size)))


def dynkin_classify(Q: WeightedQuiver) -> str:
    """Affine label of the Cartan matrix, or "other"."""
    c = cartan_matrix(Q)
    for label, ref in AFFINE_CARTAN.items():
        if same_up_to_permutation(c, np.array(ref)):
            return label
    return "other"


# representations and the moment map


def _trunc_mul(A: np.ndarray, B: np.ndarray, M: int, p: int) -> np.ndarray:
    """Product of batched R_M matrices (..., M, a, b) @ (..., M, b, c), truncated at z^M."""
    out = np.zeros(A.shape[:-3] + (M, A.shape[-2], B.shape[-1]), dtype=np.int64)
    for i in range(M):
        for j in range(M - i):
            out[..., i + j, :, :] += A[..., i, :, :] @ B[..., j, :, :]
    return out % p


def _to_dual(prod_coeffs: np.ndarray, mv: int) -> np.ndarray:
    """z^{-M} times an R_M matrix, keeping z^{-1}..z^{-mv}; layout Y[j-1] = coefficient of z^{-j}."""
    M = prod_coeffs.shape[-3]
    return np.stack([prod_coeffs[..., M - j, :, :] for j in range(1, mv + 1)], axis=-3)


def _arrow_ring(Q: WeightedQuiver, t: str, h: str) -> int:
    a, b = Q.m[t], Q.m[h]
    if a != b and min(a, b) != 1:
        raise NotImplementedError("arrows need equal multiplicities or an endpoint of multiplicity 1")
    return max(a, b)


@dataclass
class QuiverRep:
    """Per-arrow (p, q): p of shape (M, n_h, n_t) and q of shape (M, n_t, n_h) over F_p, M the larger multiplicity."""

    Q: WeightedQuiver
    p: int
    maps: list[tuple[np.ndarray, np.ndarray]]

    @classmethod
    def zero(cls, Q: WeightedQuiver, p: int) -> "QuiverRep":
        maps = []
        for t, h in Q.arrows:
            M = _arrow_ring(Q, t, h)
            maps.append((np.zeros((M, Q.n[h], Q.n[t]), dtype=np.int64),
                         np.zeros((M, Q.n[t], Q.n[h]), dtype=np.int64)))
        return cls(Q, p, maps)

    @classmethod
    def random(cls, Q: WeightedQuiver, p: int, rng: np.random.Generator) -> "QuiverRep":
        rep = cls.zero(Q, p)
        rep.maps = [(rng.integers(0, p, a.shape), rng.integers(0, p, b.shape)) for a, b in rep.maps]
        return rep


def moment_map(rep: QuiverRep) -> dict[str, np.ndarray]:
    """Σ_{head} p q - Σ_{tail} q p at each vertex, as (m_v, n_v, n_v) dual coefficient arrays."""
    Q, p = rep.Q, rep.p
    out = {v: np.zeros((Q.m[v], Q.n[v], Q.n[v]), dtype=np.int64) for v in Q.vertices}
    for (t, h), (pa, qa) in zip(Q.arrows, rep.maps):
        M = pa.shape[0]
        out[h] += _to_dual(_trunc_mul(pa, qa, M, p), Q.m[h])
        out[t] -= _to_dual(_trunc_mul(qa, pa, M, p), Q.m[t])
    return {v: x % p for v, x in out.items()}


def act(g: dict[str, np.ndarray], rep: QuiverRep) -> QuiverRep:
    """(g_h p g_t^{-1}, g_t q g_h^{-1}) on every arrow; g_v has shape (m_v, n_v, n_v)."""
    Q, p = rep.Q, rep.p
    maps = []
    for (t, h), (pa, qa) in zip(Q.arrows, rep.maps):
        M = pa.shape[0]
        gt, gh = _pad(g[t], M), _pad(g[h], M)
        gti, ghi = group_inverse(gt, p), group_inverse(gh, p)
        maps.append((_trunc_mul(_trunc_mul(gh, pa, M, p), gti, M, p),
                     _trunc_mul(_trunc_mul(gt, qa, M, p), ghi, M, p)))
    return QuiverRep(Q, p, maps)


def _pad(g: np.ndarray, M: int) -> np.ndarray:
    if g.shape[0] >= M:
        return g[:M]
    return np.concatenate([g, np.zeros((M - g.shape[0],) + g.shape[1:], dtype=np.int64)])


# point counts


def group_order_mn(Q: WeightedQuiver, p: int) -> int:
    return prod(gl_order(Q.n[v], p) * p ** ((Q.m[v] - 1) * Q.n[v] ** 2) for v in Q.vertices)


def _scalar_dual(gamma: tuple, size: int, p: int) -> np.ndarray:
    """γ I as an (m, size, size) dual array; γ given as (c_m, ..., c_1)."""
    m = len(gamma)
    out = np.zeros((m, size, size), dtype=np.int64)
    for j in range(1, m + 1):
        out[j - 1] = (gamma[m - j] % p) * np.eye(size, dtype=np.int64)
    return out


def _accumulate(keys: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    uniq, inv = np.unique(keys, return_inverse=True)
    acc = np.zeros(uniq.shape[0], dtype=np.int64)
    np.add.at(acc, inv, weights)
    return uniq, acc


def _merge(parts: list[tuple[np.ndarray, np.ndarray]]) -> tuple[np.ndarray, np.ndarray]:
    if not parts:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return _accumulate(np.concatenate([k for k, _ in parts]), np.concatenate([w for _, w in parts]))


def leg_histogram(n0: int, mult: int, dims: Sequence[int], gammas: Sequence[tuple], p: int,
                  limit: int = LEG_STATE_LIMIT) -> ResidueHistogram:
    """Histogram of -res(q_1 p_1) over solutions of the leg-vertex equations p_j q_j - q_{j+1} p_{j+1} = γ_j I.

    Processed from the tip inward; each step keeps counts keyed by the dual value q_j p_j at the inner vertex.
    """
    chain = (n0,) + tuple(dims)
    M = mult
    keys, weights = np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64)  # tip: no outer arrow
    for j in range(len(dims), 0, -1):
        a, b = chain[j], chain[j - 1]
        k = M * a * b
        space = p ** (2 * k)
        if space > limit:
            raise CapacityError(f"leg arrow with {space} states exceeds {limit}")
        target = _scalar_dual(gammas[j - 1], a, p)
        inner_mult = M if j > 1 else 1
        parts = []
        for start in range(0, space, CHUNK):
            idx = np.arange(start, min(space, start + CHUNK), dtype=np.int64)
            digits = np.empty((idx.shape[0], 2 * k), dtype=np.int64)
            rest = idx.copy()
            for d in range(2 * k - 1, -1, -1):
                digits[:, d] = rest % p
                rest //= p
            pa = digits[:, :k].reshape(-1, M, a, b)
            qa = digits[:, k:].reshape(-1, M, b, a)
            W = (_to_dual(_trunc_mul(pa, qa, M, p), M) - target) % p
            wkeys = encode(W, p)
            pos = np.searchsorted(keys, wkeys)
            pos = np.minimum(pos, keys.shape[0] - 1)
            hit = keys[pos] == wkeys
            if not hit.any():
                continue
            inner = _to_dual(_trunc_mul(qa[hit], pa[hit], M, p), inner_mult)
            if j == 1:
                inner = (-inner) % p
            parts.append(_accumulate(encode(inner, p), weights[pos[hit]]))
        keys, weights = _merge(parts)
    counts = np.zeros(p ** (n0 * n0), dtype=np.int64)
    counts[keys] = weights
    return ResidueHistogram(n0, p, counts)


class QuiverCount(NamedTuple):
    count: int
    fiber: int
    group_order: int


def quiver_fiber_count(Q: WeightedQuiver, gamma: GammaVector, p: int,
                       limit: int = LEG_STATE_LIMIT) -> QuiverCount:
    """(p-1) |μ^{-1}(γ)(F_p)| / |G_{m,n}(F_p)|, convolving per-leg residue histograms at the center."""
    check_prime(p)
    n0 = Q.center_dim
    hists = []
    for (mult, dims), gam in zip(Q.leg_data(), gamma.legs):
        if dims:
            hists.append(leg_histogram(n0, mult, dims, gam, p, limit))
    level = (int(gamma.center) % p) * np.eye(n0, dtype=np.int64)
    if not hists:
        fiber = int(not level.any())
    else:
        acc = hists[0]
        for h in hists[1:]:
            acc = convolve(acc, h)
        fiber = acc[level]
    order = group_order_mn(Q, p)
    num = (p - 1) * fiber
    if num % order:
        raise AssertionError(f"non-integral quiver count {Fraction(num, order)}")
    return QuiverCount(num // order, fiber, order)


# the seven affine examples

_q = ExactPolynomial.var(0, 2)
_t = ExactPolynomial.var(1, 2)


class DynkinExample(NamedTuple):
    label: str
    legs: tuple[tuple[int, tuple[int, ...]], ...]
    n0: int
    config: OdRConfig
    count: ExactPolynomial
    wh: ExactPolynomial

    @property
    def quiver(self) -> WeightedQuiver:
        return WeightedQuiver.star(self.n0, self.legs)

    @property
    def display(self) -> str:
        return DISPLAY[self.label]


def _row(label, n0, legs, mu, r, b) -> DynkinExample:
    q = ExactPolynomial.var()
    cfg = OdRConfig(n0, tuple(mu), tuple(r))
    return DynkinExample(label, tuple((m, tuple(d)) for m, d in legs), n0, cfg,
                         q * q + b * q, 1 + b * _q * _t * _t)


def dynkin_examples() -> list[DynkinExample]:
    return [
        _row("A5_2", 2, [(1, [1]), (1, [1]), (2, [1])], [(1, 1), (1, 1)], [1], 3),
        _row("C2_1", 2, [(2, [1]), (2, [1])], [], [1, 1], 2),
        _row("D4_3", 2, [(1, [1]), (3, [1])], [(1, 1)], [2], 2),
        _row("A2_2", 2, [(4, [1])], [], [3], 1),
        _row("G2_1", 3, [(3, [2, 1])], [], [2], 2),
        _row("F4_1", 4, [(1, [2]), (2, [3, 2, 1])], [(2, 2)], [1], 4),
        _row("E6_2", 3, [(1, [2, 1]), (2, [2, 1])], [(1, 1, 1)], [1], 4),
    ]


def dynkin_example(label: str) -> DynkinExample:
    for row in dynkin_examples():
        if row.label == label:
            return row
    raise KeyError(f"unknown example {label!r}; known: {', '.join(DISPLAY)}")


def check_dimension_agreement(cfg: OdRConfig) -> bool:
    return dim_Q(star_from_config(cfg)) == dimension(cfg)
