"""Symmetric functions over Q(Z, W): bases, the Hall pairing, modified Macdonald polynomials,
the Cauchy kernel, plethystic Log/Exp and the generating function ℍ with its specializations.

Z and W stand for the squares of the two kernel variables.  Arms of a Young diagram go
with Z and legs with W.  Every symmetric function is stored in the power-sum basis.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import flint

from . import partitions as P
from .countformulas import OdRConfig, dimension
from .exactpoly import ExactPolynomial, ExactRationalFunction, NonExactDivision, laurent_substitute
from .partitions import Partition

BASES = ("m", "p", "s", "h", "e")
ZW = ("Z", "W")
QT = ("q", "t")

class SymBasisElement(NamedTuple):
    basis: str
    index: Partition

    @classmethod
    def make(cls, basis: str, index: Sequence[int]) -> "SymBasisElement":
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
        return cls(basis, P.make_partition(index))

    def __str__(self) -> str:
        return f"{self.basis}{P.format_partition(self.index)}"


# characters and transition data


@lru_cache(maxsize=None)
def character(lam: Partition, rho: Partition) -> int:
    """χ^λ(ρ) by Murnaghan–Nakayama on beta-sets."""
    if sum(lam) != sum(rho):
        raise ValueError("λ and ρ must have the same size")
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    l = len(lam)
    beta = [lam[i] + (l - 1 - i) for i in range(l)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in beta_set:
            continue
        sign = (-1) ** sum(1 for x in beta if nb < x < b)
        new = sorted((x if x != b else nb for x in beta), reverse=True)
        mu = P.make_partition(x - (l - 1 - i) for i, x in enumerate(new) if x - (l - 1 - i) > 0)
        total += sign * character(mu, rest)
    return total


def _pmul(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


@lru_cache(maxsize=None)
def _h_single(k: int) -> dict[Partition, Fraction]:
    return {rho: Fraction(1, P.z_lambda(rho)) for rho in P.enumerate_partitions(k)}


@lru_cache(maxsize=None)
def _e_single(k: int) -> dict[Partition, Fraction]:
    return {rho: Fraction((-1) ** (k - len(rho)), P.z_lambda(rho)) for rho in P.enumerate_partitions(k)}


def _product(vecs: Iterable[Mapping[Partition, Fraction]]) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {(): Fraction(1)}
    for v in vecs:
        nxt: dict[Partition, Fraction] = {}
        for a, ca in out.items():
            for b, cb in v.items():
                key = _pmul(a, b)
                nxt[key] = nxt.get(key, 0) + ca * cb
        out = {k: c for k, c in nxt.items() if c}
    return out


@lru_cache(maxsize=None)
def _matrix(basis: str, d: int) -> tuple[tuple[Partition, ...], flint.fmpq_mat]:
    """Rows: the basis elements of degree d in the power-sum basis."""
    parts = P.enumerate_partitions(d)
    rows = [to_power_sum(SymBasisElement(basis, lam)) for lam in parts]
    return parts, flint.fmpq_mat([[_fq(rows[i].get(rho, 0)) for rho in parts] for i in range(len(parts))])


def _fq(c) -> flint.fmpq:
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


@lru_cache(maxsize=None)
def _inverse(basis: str, d: int) -> flint.fmpq_mat:
    return _matrix(basis, d)[1].inv()


@lru_cache(maxsize=None)
def _to_p_cached(basis: str, lam: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    d = sum(lam)
    if basis == "p":
        out = {lam: Fraction(1)}
    elif basis == "s":
        out = {rho: Fraction(character(lam, rho), P.z_lambda(rho)) for rho in P.enumerate_partitions(d)}
    elif basis == "h":
        out = _product(_h_single(k) for k in lam)
    elif basis == "e":
        out = _product(_e_single(k) for k in lam)
    elif basis == "m":
        # dual to h under the Hall pairing: <h_μ, m_λ> = δ
        parts, H = _matrix("h", d)
        Zd = flint.fmpq_mat(len(parts), len(parts))
        for i, rho in enumerate(parts):
            Zd[i, i] = P.z_lambda(rho)
        M = (H * Zd).inv().transpose()
        i = parts.index(lam)
        out = {rho: Fraction(int(M[i, j].p), int(M[i, j].q)) for j, rho in enumerate(parts)}
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return tuple((k, c) for k, c in out.items() if c)


def to_power_sum(elem: SymBasisElement) -> dict[Partition, Fraction]:
    return dict(_to_p_cached(elem.basis, elem.index))


def from_power_sum(vec: Mapping[Partition, object], basis: str) -> dict[Partition, object]:
    """Expand a homogeneous power-sum vector in ``basis``; coefficients may be rational functions."""
    if not vec:
        return {}
    d = sum(next(iter(vec)))
    parts, _ = _matrix(basis, d)
    inv = _inverse(basis, d)
    out = {}
    for j, lam in enumerate(parts):
        acc = 0
        for i, rho in enumerate(parts):
            c = inv[i, j]
            if c != 0 and rho in vec:
                acc = acc + vec[rho] * Fraction(int(c.p), int(c.q))
        if acc != 0:
            out[lam] = acc
    return out


def basis_convert(elem: SymBasisElement, target: str) -> dict[Partition, Fraction]:
    return from_power_sum(to_power_sum(elem), target)


def _pairing_vector(elem: SymBasisElement) -> dict[Partition, Fraction]:
    """ρ ↦ <p_ρ, elem>."""
    return {rho: c * P.z_lambda(rho) for rho, c in to_power_sum(elem).items()}


def pair_elements(a: SymBasisElement, b: SymBasisElement) -> Fraction:
    va, vb = to_power_sum(a), to_power_sum(b)
    return sum((c * vb.get(rho, 0) * P.z_lambda(rho) for rho, c in va.items()), Fraction(0))


def hall_pairing(component: Mapping[tuple[Partition, ...], object], elems: Sequence[SymBasisElement]):
    """<F, b_1 ⊗ ... ⊗ b_K> for a homogeneous tensor F given in the power-sum basis."""
    if not component:
        return Fraction(0)
    key0 = next(iter(component))
    if len(key0) != len(elems):
        raise ValueError(f"{len(key0)} variable sets but {len(elems)} pairing factors")
    if any(sum(k) != sum(e.index) for k, e in zip(key0, elems)):
        raise ValueError("degree mismatch in the Hall pairing")
    vecs = [_pairing_vector(e) for e in elems]
    terms = []
    for key, coeff in component.items():
        w = Fraction(1)
        for rho, v in zip(key, vecs):
            w *= v.get(rho, 0)
            if not w:
                break
        if w:
            terms.append(coeff * w)
    return sum_exact(terms)


def sum_exact(terms: Sequence):
    """Sum of rational functions, grouping equal denominators before reducing."""
    terms = [t for t in terms if t != 0]
    if not terms:
        return Fraction(0)
    rfs = [t for t in terms if isinstance(t, ExactRationalFunction)]
    if not rfs:
        return reduce(lambda a, b: a + b, terms)
    nv = rfs[0].nvars
    groups: dict[ExactPolynomial, ExactPolynomial] = {}
    for t in terms:
        if not isinstance(t, ExactRationalFunction):
            t = ExactRationalFunction(t if isinstance(t, ExactPolynomial) else ExactPolynomial.constant(t, nv))
        groups[t.den] = groups.get(t.den, ExactPolynomial.zero(nv)) + t.num
    return reduce(lambda a, b: a + b, (ExactRationalFunction(num, den) for den, num in groups.items()))


# Macdonald polynomials


def _zw():
    return ExactPolynomial.var(0, 2), ExactPolynomial.var(1, 2)


def _qt_weight(rho: Partition) -> ExactRationalFunction:
    Z, W = _zw()
    num, den = ExactPolynomial.constant(P.z_lambda(rho), 2), ExactPolynomial.one(2)
    for part in rho:
        num = num * (1 - Z ** part)
        den = den * (1 - W ** part)
    return ExactRationalFunction(num, den)


def _qt_inner(a: Mapping[Partition, object], b: Mapping[Partition, object]):
    return sum_exact([a[rho] * b[rho] * _qt_weight(rho) for rho in a if rho in b])


def arm_leg(lam: Partition) -> list[tuple[int, int]]:
    conj = P.conjugate(lam)
    return [(lam[i] - j - 1, conj[j] - i - 1) for i in range(len(lam)) for j in range(lam[i])]


def macdonald_P(d: int) -> dict[Partition, dict[Partition, ExactRationalFunction]]:
    """Macdonald P_λ(Z, W) in the power-sum basis, by Gram–Schmidt on monomials in a dominance-compatible order."""
    order = list(reversed(P.enumerate_partitions(d)))
    out: dict[Partition, dict[Partition, ExactRationalFunction]] = {}
    norms: dict[Partition, ExactRationalFunction] = {}
    for lam in order:
        m = {rho: ExactRationalFunction.constant(c, 2) for rho, c in to_power_sum(SymBasisElement("m", lam)).items()}
        vec = dict(m)
        for mu in out:
            coeff = _qt_inner(m, out[mu]) / norms[mu]
            if coeff != 0:
                for rho, c in out[mu].items():
                    vec[rho] = vec.get(rho, ExactRationalFunction.constant(0, 2)) - coeff * c
        vec = {rho: c for rho, c in vec.items() if c != 0}
        out[lam] = vec
        norms[lam] = _qt_inner(vec, vec)
    return out


def _flip_w(poly: ExactPolynomial, top: int) -> ExactPolynomial:
    """W^top · f(Z, 1/W)."""
    coeffs = {}
    for (a, b), c in poly.coeffs.items():
        if b > top:
            raise NonExactDivision("W-degree exceeds n(λ)")
        coeffs[(a, top - b)] = c
    return ExactPolynomial(coeffs, 2)


def modified_macdonald_degree(d: int) -> dict[Partition, dict[Partition, ExactPolynomial]]:
    """λ ↦ {μ: K̃_{μλ}(Z, W)}: Schur coefficients of H̃_λ for |λ| = d."""
    Z, W = _zw()
    table = {}
    for lam, vec in macdonald_P(d).items():
        c = ExactPolynomial.one(2)
        for a, l in arm_leg(lam):
            c = c * (1 - Z ** a * W ** (l + 1))
        # J_λ[X/(1-t)]: p_ρ ↦ p_ρ / Π(1 - W^{ρ_i})
        hvec = {}
        for rho, coeff in vec.items():
            den = ExactPolynomial.one(2)
            for part in rho:
                den = den * (1 - W ** part)
            hvec[rho] = coeff * ExactRationalFunction(c, den)
        row = {}
        for mu in P.enumerate_partitions(d):
            k = sum_exact([hvec[rho] * character(mu, rho) for rho in hvec])
            if k == 0:
                continue
            k = k if isinstance(k, ExactRationalFunction) else ExactRationalFunction.constant(k, 2)
            if not k.is_polynomial():
                raise NonExactDivision(f"K_{mu},{lam} is not a polynomial: {k}")
            row[mu] = _flip_w(k.as_polynomial(), P.n_of(lam))
        table[lam] = row
    return table


@dataclass
class MacdonaldTable:
    """ktable[λ][μ] = K̃_{μλ}(Z, W), the coefficient of s_μ in H̃_λ, for all 1 ≤ |λ| ≤ n."""

    n: int
    ktable: dict[Partition, dict[Partition, ExactPolynomial]]

    @classmethod
    def build(cls, n: int) -> "MacdonaldTable":
        table = {}
        for d in range(1, n + 1):
            table.update(modified_macdonald_degree(d))
        return cls(n, table)

    def power_sum(self, lam: Partition, z0: bool = False) -> dict[Partition, object]:
        """H̃_λ in the power-sum basis, optionally at Z = 0 (coefficients then in W alone)."""
        out: dict[Partition, object] = {}
        for mu, k in self.ktable[lam].items():
            if z0:
                k = k.specialize(0, 0).drop_variable(0)
                if k.is_zero():
                    continue
            for rho, c in to_power_sum(SymBasisElement("s", mu)).items():
                out[rho] = out.get(rho, 0) + k * c
        return {rho: c for rho, c in out.items() if c != 0}

    def check_invariants(self) -> list[str]:
        """Names of violated invariants; empty when the table is sound."""
        bad = []
        Z, W = _zw()
        for lam, row in self.ktable.items():
            d = sum(lam)
            if row.get((d,)) != ExactPolynomial.one(2):
                bad.append(f"coefficient of s_({d}) in H̃_{lam} is not 1")
            conj_row = self.ktable.get(P.conjugate(lam), {})
            for mu in P.enumerate_partitions(d):
                a = row.get(mu, ExactPolynomial.zero(2))
                b = conj_row.get(mu, ExactPolynomial.zero(2)).swap_variables()
                if a != b:
                    bad.append(f"transpose symmetry fails at λ={lam}, μ={mu}")
                if a.evaluate((1, 1)) != character(mu, (1,) * d):
                    bad.append(f"Z=W=1 specialization fails at λ={lam}, μ={mu}")
            corner = ExactPolynomial.monomial((P.n_of(P.conjugate(lam)), P.n_of(lam)))
            if row.get((1,) * d) != corner:
                bad.append(f"coefficient of s_(1^{d}) in H̃_{lam} is not Z^n(λ')W^n(λ)")
        return bad

    def to_json_obj(self) -> dict:
        return {"n": self.n, "ktable": {
            P.format_partition(lam): {P.format_partition(mu): k.to_text(ZW) for mu, k in row.items()}
            for lam, row in sorted(self.ktable.items(), key=lambda t: (sum(t[0]), t[0]))}}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "MacdonaldTable":
        table = {P.parse_partition(lam): {P.parse_partition(mu): ExactPolynomial.from_text(v, ZW)
                                          for mu, v in row.items()}
                 for lam, row in obj["ktable"].items()}
        return cls(int(obj["n"]), table)


def default_cache_dir() -> Path:
    return Path(os.environ.get("ODRCOUNT_CACHE", ".cache"))


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_TABLES: dict[int, MacdonaldTable] = {}


def macdonald_table(n: int, cache_dir: Path | str | None = None, use_cache: bool = True) -> MacdonaldTable:
    """Table for all |λ| ≤ n, read from (and written to) a JSON cache validated on load."""
    if n < 1:
        raise ValueError("n must be positive")
    for m, tab in _TABLES.items():
        if m >= n:
            return MacdonaldTable(n, {k: v for k, v in tab.ktable.items() if sum(k) <= n})
    path = Path(cache_dir or default_cache_dir()) / f"macdonald_n{n}.json"
    table = None
    if use_cache and path.exists():
        try:
            table = MacdonaldTable.from_json_obj(json.loads(path.read_text()))
            if table.n != n or table.check_invariants():
                table = None
        except (ValueError, KeyError, json.JSONDecodeError):
            table = None
    if table is None:
        table = MacdonaldTable.build(n)
        bad = table.check_invariants()
        if bad:
            raise AssertionError("Macdonald table invariants failed: " + "; ".join(bad))
        if use_cache:
            _atomic_write(path, json.dumps(table.to_json_obj(), indent=1, sort_keys=True))
    _TABLES[n] = table
    return table


# kernels


def hook_kernel(lam: Partition) -> ExactRationalFunction:
    """Π over boxes of 1/((Z^{a+1} - W^l)(Z^a - W^{l+1}))."""
    Z, W = _zw()
    den = ExactPolynomial.one(2)
    for a, l in arm_leg(lam):
        den = den * (Z ** (a + 1) - W ** l) * (Z ** a - W ** (l + 1))
    return ExactRationalFunction(ExactPolynomial.one(2), den)


def hook_kernel_z0(lam: Partition) -> ExactRationalFunction:
    """The hook kernel at Z = 0, as a rational function of W."""
    W = ExactPolynomial.var(0, 1)
    den = ExactPolynomial.one(1)
    for a, l in arm_leg(lam):
        den = den * (W ** (2 * l + 1) if a else -(W ** l) * (1 - W ** (l + 1)))
    return ExactRationalFunction(ExactPolynomial.one(1), den)


Key = tuple[Partition, ...]


@dataclass
class SymSeries:
    """Truncated series in Λ(x_1) ⊗ ... ⊗ Λ(x_K), stored by diagonal degree in the power-sum basis."""

    K: int
    n: int
    nvars: int
    comps: list[dict[Key, object]] = field(default_factory=list)

    def __post_init__(self):
        if not self.comps:
            self.comps = [dict() for _ in range(self.n + 1)]
        for d, comp in enumerate(self.comps):
            for key in comp:
                if len(key) != self.K or any(sum(k) != d for k in key):
                    raise ValueError(f"non-diagonal key {key} in degree {d}")

    def _zero(self) -> ExactRationalFunction:
        return ExactRationalFunction.constant(0, self.nvars)

    @classmethod
    def one(cls, K: int, n: int, nvars: int) -> "SymSeries":
        s = cls(K, n, nvars)
        s.comps[0][((),) * K] = ExactRationalFunction.constant(1, nvars)
        return s

    def constant_term(self):
        return self.comps[0].get(((),) * self.K, 0)

    def component(self, d: int) -> dict[Key, object]:
        return self.comps[d]

    def _combine(self, other: "SymSeries", sign: int) -> "SymSeries":
        out = SymSeries(self.K, self.n, self.nvars)
        for d in range(self.n + 1):
            acc = dict(self.comps[d])
            for k, c in other.comps[d].items():
                acc[k] = acc[k] + sign * c if k in acc else sign * c
            out.comps[d] = {k: c for k, c in acc.items() if c != 0}
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "SymSeries":
        out = SymSeries(self.K, self.n, self.nvars)
        out.comps = [{k: v * c for k, v in comp.items()} for comp in self.comps]
        return out

    def __mul__(self, other: "SymSeries") -> "SymSeries":
        out = SymSeries(self.K, self.n, self.nvars)
        for d in range(self.n + 1):
            terms: dict[Key, list] = {}
            for d1 in range(d + 1):
                A, B = self.comps[d1], other.comps[d - d1]
                for ka, ca in A.items():
                    for kb, cb in B.items():
                        key = tuple(_pmul(a, b) for a, b in zip(ka, kb))
                        terms.setdefault(key, []).append(ca * cb)
            out.comps[d] = {k: v for k, v in ((k, sum_exact(t)) for k, t in terms.items()) if v != 0}
        return out

    def adams(self, k: int) -> "SymSeries":
        """ψ_k: p_j(x_i) ↦ p_{jk}(x_i) and (Z, W) ↦ (Z^k, W^k)."""
        out = SymSeries(self.K, self.n, self.nvars)
        for d in range(self.n // k + 1):
            for key, c in self.comps[d].items():
                nk = tuple(tuple(k * x for x in part) for part in key)
                out.comps[d * k][nk] = c.adams(k) if isinstance(c, ExactRationalFunction) else c
        return out

    def equals(self, other: "SymSeries") -> bool:
        return all(self.comps[d] == other.comps[d] for d in range(self.n + 1))


def _series_log(G: SymSeries) -> SymSeries:
    if G.constant_term() != 1:
        raise ValueError("log needs constant term 1")
    X = G - SymSeries.one(G.K, G.n, G.nvars)
    out = SymSeries(G.K, G.n, G.nvars)
    power = SymSeries.one(G.K, G.n, G.nvars)
    for j in range(1, G.n + 1):
        power = power * X
        out = out + power.scale(Fraction((-1) ** (j + 1), j))
    return out


def _series_exp(F: SymSeries) -> SymSeries:
    if F.constant_term() != 0:
        raise ValueError("exp needs zero constant term")
    out = SymSeries.one(F.K, F.n, F.nvars)
    power = SymSeries.one(F.K, F.n, F.nvars)
    for j in range(1, F.n + 1):
        power = power * F
        out = out + power.scale(Fraction(1, factorial(j)))
    return out


def mobius(k: int) -> int:
    result, m, f = 1, k, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            result = -result
        f += 1
    return -result if m > 1 else result


def pleth_log(G: SymSeries) -> SymSeries:
    """Log G = Σ_k μ(k)/k ψ_k(log G)."""
    L = _series_log(G)
    out = SymSeries(G.K, G.n, G.nvars)
    for k in range(1, G.n + 1):
        mu = mobius(k)
        if mu:
            out = out + L.adams(k).scale(Fraction(mu, k))
    return out


def pleth_exp(F: SymSeries) -> SymSeries:
    """Exp F = exp(Σ_k ψ_k(F)/k)."""
    acc = SymSeries(F.K, F.n, F.nvars)
    for k in range(1, F.n + 1):
        acc = acc + F.adams(k).scale(Fraction(1, k))
    return _series_exp(acc)


def cauchy_kernel(K: int, n: int, z0: bool = False, table: MacdonaldTable | None = None) -> SymSeries:
    """Ω_K = Σ_λ H_λ Π_i H̃_λ(x_i), truncated at degree n; at Z = 0 when ``z0``."""
    nvars = 1 if z0 else 2
    table = table or macdonald_table(n)
    out = SymSeries.one(K, n, nvars)
    for d in range(1, n + 1):
        terms: dict[Key, list] = {}
        for lam in P.enumerate_partitions(d):
            scalar = hook_kernel_z0(lam) if z0 else hook_kernel(lam)
            vec = list(table.power_sum(lam, z0).items())
            for combo in itertools.product(vec, repeat=K):
                key = tuple(rho for rho, _ in combo)
                c = reduce(lambda a, b: a * b, (c for _, c in combo))
                terms.setdefault(key, []).append(scalar * c)
        out.comps[d] = {k: v for k, v in ((k, sum_exact(t)) for k, t in terms.items()) if v != 0}
    return out


# ℍ and its specializations


def pairing_elements(cfg: OdRConfig) -> list[SymBasisElement]:
    """h_{μ^i} for tame poles, h_{(1^n)} per irregular pole, s_{(1^n)} per unit of Poincaré rank."""
    n = cfg.n
    ones = (1,) * n
    return ([SymBasisElement("h", mu) for mu in cfg.mu] + [SymBasisElement("h", ones)] * cfg.s
            + [SymBasisElement("s", ones)] * cfg.r_total)


def hlv_H(cfg: OdRConfig, z0: bool = False, table: MacdonaldTable | None = None) -> ExactRationalFunction:
    """(Z-1)(1-W) · <Log Ω_{k+s+r}, pairing_elements(cfg)>; a function of W alone when ``z0``."""
    elems = pairing_elements(cfg)
    omega = cauchy_kernel(len(elems), cfg.n, z0, table)
    value = hall_pairing(pleth_log(omega).component(cfg.n), elems)
    if z0:
        W = ExactPolynomial.var(0, 1)
        pref = ExactRationalFunction(-(1 - W))
    else:
        Z, W = _zw()
        pref = ExactRationalFunction((Z - 1) * (1 - W))
    return pref * value


def e_polynomial_via_symfunc(cfg: OdRConfig, table: MacdonaldTable | None = None) -> ExactPolynomial:
    """q^{d/2} ℍ(Z=0, W=q), with Z specialized before the Log."""
    if cfg.s < 1:
        raise ValueError("need at least one irregular pole (s >= 1)")
    dim = dimension(cfg)
    if dim < 0 or dim % 2:
        raise ValueError(f"dimension {dim} must be even and non-negative")
    H = hlv_H(cfg, z0=True, table=table)
    value = H * ExactRationalFunction(ExactPolynomial.monomial((dim // 2,)))
    if not value.is_polynomial():
        raise NonExactDivision(f"E-polynomial is not a polynomial: {value}")
    return value.as_polynomial()


def e_polynomial_late_specialization(cfg: OdRConfig, table: MacdonaldTable | None = None) -> ExactPolynomial:
    """The same value with Z = 0 substituted only after the bivariate pairing."""
    dim = dimension(cfg)
    H = hlv_H(cfg, z0=False, table=table).specialize(0, 0).drop_variable(0)
    value = H * ExactRationalFunction(ExactPolynomial.monomial((dim // 2,)))
    return value.as_polynomial()


def conjectural_mhp(cfg: OdRConfig, table: MacdonaldTable | None = None) -> ExactRationalFunction:
    """(q t^2)^{d/2} ℍ(Z=q, W=q^{-1} t^{-2}) as a rational function of (q, t)."""
    dim = dimension(cfg)
    H = hlv_H(cfg, z0=False, table=table)
    sub = laurent_substitute(H, [(1, 0), (-1, -2)])
    return sub * ExactRationalFunction(ExactPolynomial.monomial((dim // 2, dim)))


def pure_part(wh: ExactRationalFunction | ExactPolynomial) -> ExactPolynomial:
    """Terms q^i t^{2i} of a polynomial in (q, t)."""
    poly = wh.as_polynomial() if isinstance(wh, ExactRationalFunction) else wh
    return ExactPolynomial({e: c for e, c in poly.coeffs.items() if e[1] == 2 * e[0]}, 2)


def e_from_pure_part(pure: ExactPolynomial, dim: int) -> ExactPolynomial:
    """q^dim · PH(1/q, -1): the weight polynomial a pure space with Poincaré data ``pure`` would have."""
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for (a, b), c in pure.coeffs.items():
        coeffs[(dim - a,)] = coeffs.get((dim - a,), 0) + c * (-1) ** b
    return ExactPolynomial(coeffs, 1)
