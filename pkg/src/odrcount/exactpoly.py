"""Exact polynomials and rational functions over Q in one variable (q) or two (Z, W).

Coefficients are ``fractions.Fraction``.  Polynomials are sparse maps from
exponent tuples to nonzero coefficients.  Rational functions are kept reduced,
with the denominator monic under graded-lex order (Z > W), so structural
equality is mathematical equality.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

Rational = Fraction

DEFAULT_NAMES = {1: ("q",), 2: ("Z", "W")}


class NonExactDivision(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class PoleError(ZeroDivisionError):
    """Raised when evaluating a rational function at a zero of its denominator."""


class InconsistentPoints(ValueError):
    """Raised when interpolation data does not fit a polynomial of the stated degree."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    return Fraction(c)


def _order_key(exp: tuple[int, ...]) -> tuple:
    # graded-lex, first variable largest; for one variable this is the degree
    return (sum(exp), exp)


_CTX_CACHE: dict[int, object] = {}


def _ctx(nvars: int):
    ctx = _CTX_CACHE.get(nvars)
    if ctx is None:
        names = DEFAULT_NAMES.get(nvars) or tuple(f"x{i}" for i in range(nvars))
        ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
        _CTX_CACHE[nvars] = ctx
    return ctx


class ExactPolynomial:
    """Sparse polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "coeffs", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, ...], object] | None = None, nvars: int = 1):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (coeffs or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not match arity {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = _as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self.coeffs = clean
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, c, nvars: int = 1) -> "ExactPolynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars: int = 1) -> "ExactPolynomial":
        return cls({}, nvars)

    @classmethod
    def one(cls, nvars: int = 1) -> "ExactPolynomial":
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, i: int = 0, nvars: int = 1) -> "ExactPolynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls({tuple(exp): 1}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "ExactPolynomial":
        return cls({tuple(exp): c}, len(exp))

    @classmethod
    def from_coeff_list(cls, coeffs: Sequence) -> "ExactPolynomial":
        """Univariate polynomial from ascending coefficients."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, 1)

    # basic protocol

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactRationalFunction):
            return other == self
        if not isinstance(other, ExactPolynomial):
            try:
                other = ExactPolynomial.constant(other, self.nvars)
            except (TypeError, ValueError):
                return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"ExactPolynomial({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def _coerce(self, other) -> "ExactPolynomial":
        if isinstance(other, ExactPolynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        return ExactPolynomial.constant(other, self.nvars)

    def __add__(self, other):
        if isinstance(other, ExactRationalFunction):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return _raw({e: -c for e, c in self.coeffs.items()}, self.nvars)

    def __sub__(self, other):
        if isinstance(other, ExactRationalFunction):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, ExactRationalFunction):
            return NotImplemented
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return ExactPolynomial.zero(self.nvars)
        if len(other.coeffs) == 1:
            (e2, c2), = other.coeffs.items()
            return _raw({tuple(a + b for a, b in zip(e, e2)): c * c2 for e, c in self.coeffs.items()}, self.nvars)
        if len(self.coeffs) * len(other.coeffs) > 64:
            return ExactPolynomial.from_flint(self.to_flint() * other.to_flint(), self.nvars)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExactPolynomial({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExactPolynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial; use ExactRationalFunction")
        result = ExactPolynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return ExactRationalFunction(self) / other

    # structure

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.coeffs), default=-1)

    def min_degree_in(self, i: int) -> int:
        return min((e[i] for e in self.coeffs), default=0)

    def leading_exponent(self) -> tuple[int, ...]:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        return max(self.coeffs, key=_order_key)

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[self.leading_exponent()]

    def coefficient(self, exp) -> Fraction:
        if isinstance(exp, int):
            exp = (exp,)
        return self.coeffs.get(tuple(exp), Fraction(0))

    def coeff_list(self) -> list[Fraction]:
        """Ascending coefficient list of a univariate polynomial."""
        if self.nvars != 1:
            raise ValueError("coeff_list needs a univariate polynomial")
        d = self.degree()
        return [self.coeffs.get((i,), Fraction(0)) for i in range(d + 1)]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading_coefficient() == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.coeffs)

    def scale(self, c) -> "ExactPolynomial":
        c = _as_fraction(c)
        if not c:
            return ExactPolynomial.zero(self.nvars)
        return _raw({e: v * c for e, v in self.coeffs.items()}, self.nvars)

    def shift(self, exp: Sequence[int]) -> "ExactPolynomial":
        """Multiply by the monomial with exponent ``exp``."""
        return _raw({tuple(a + b for a, b in zip(e, exp)): c for e, c in self.coeffs.items()}, self.nvars)

    # evaluation and substitution

    def evaluate(self, point) -> Fraction:
        if not isinstance(point, (tuple, list)):
            point = (point,)
        if len(point) != self.nvars:
            raise ValueError("evaluation point has the wrong arity")
        pt = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def adams(self, k: int) -> "ExactPolynomial":
        if k < 1:
            raise ValueError("Adams index must be positive")
        if k == 1:
            return self
        return _raw({tuple(k * a for a in e): c for e, c in self.coeffs.items()}, self.nvars)

    def specialize(self, i: int, value) -> "ExactPolynomial":
        """Set variable ``i`` to ``value``, keeping the arity."""
        value = _as_fraction(value)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.coeffs.items():
            k = e[i]
            if k and not value:
                continue
            ne = e[:i] + (0,) + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * value ** k
        return ExactPolynomial(out, self.nvars)

    def drop_variable(self, i: int) -> "ExactPolynomial":
        """Remove variable ``i``, which must not occur."""
        if any(e[i] for e in self.coeffs):
            raise ValueError("variable still occurs")
        return _raw({e[:i] + e[i + 1:]: c for e, c in self.coeffs.items()}, self.nvars - 1)

    def swap_variables(self) -> "ExactPolynomial":
        if self.nvars != 2:
            raise ValueError("swap needs two variables")
        return _raw({(b, a): c for (a, b), c in self.coeffs.items()}, 2)

    def compose(self, images: Sequence["ExactPolynomial"]) -> "ExactPolynomial":
        """Substitute polynomial ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        nv = images[0].nvars
        total = ExactPolynomial.zero(nv)
        powers: list[dict[int, ExactPolynomial]] = [{} for _ in images]
        for e, c in self.coeffs.items():
            term = ExactPolynomial.constant(c, nv)
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = images[i] ** k
                    term = term * powers[i][k]
            total = total + term
        return total

    # division

    def divmod_univariate(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        if self.nvars != 1 or other.nvars != 1:
            raise ValueError("univariate division only")
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self.coeff_list()
        den = other.coeff_list()
        db = len(den) - 1
        lead = den[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - db] = c
                for j in range(db + 1):
                    rem[i - db + j] -= c * den[j]
        return ExactPolynomial.from_coeff_list(quot), ExactPolynomial.from_coeff_list(rem)

    def exact_divide(self, other: "ExactPolynomial") -> "ExactPolynomial":
        """Quotient ``self / other``; raises NonExactDivision on a nonzero remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.nvars == 1:
            q, r = self.divmod_univariate(other)
            if not r.is_zero():
                raise NonExactDivision(f"({self}) / ({other}) leaves remainder {r}")
            return q
        lt_e = other.leading_exponent()
        lt_c = other.coeffs[lt_e]
        rem = self
        quot: dict[tuple[int, ...], Fraction] = {}
        while not rem.is_zero():
            e = rem.leading_exponent()
            diff = tuple(a - b for a, b in zip(e, lt_e))
            if any(x < 0 for x in diff):
                raise NonExactDivision(f"({self}) / ({other}) is not exact")
            c = rem.coeffs[e] / lt_c
            quot[diff] = c
            rem = rem - other.shift(diff).scale(c)
        return ExactPolynomial(quot, self.nvars)

    def gcd(self, other: "ExactPolynomial") -> "ExactPolynomial":
        """Monic gcd (zero if both are zero)."""
        other = self._coerce(other)
        if self.is_zero():
            return other.monic() if other else other
        if other.is_zero():
            return self.monic()
        if self.is_constant() or other.is_constant():
            return ExactPolynomial.one(self.nvars)
        g = ExactPolynomial.from_flint(self.to_flint().gcd(other.to_flint()), self.nvars)
        return g.monic()

    def monic(self) -> "ExactPolynomial":
        return self.scale(1 / self.leading_coefficient())

    # flint bridge

    def to_flint(self):
        return _ctx(self.nvars).from_dict({e: flint.fmpq(c.numerator, c.denominator) for e, c in self.coeffs.items()})

    @classmethod
    def from_flint(cls, f, nvars: int) -> "ExactPolynomial":
        return _raw({tuple(int(x) for x in e): _as_fraction(c) for e, c in f.to_dict().items()}, nvars)

    # rendering

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.coeffs.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = names or DEFAULT_NAMES.get(self.nvars)
        if not self.coeffs:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append(("-" + body if c < 0 else body) if i == 0 else f" {sign} {body}")
        return "".join(out)

    def to_latex(self, names: Sequence[str] | None = None) -> str:
        names = names or DEFAULT_NAMES.get(self.nvars)
        if not self.coeffs:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = " ".join(n if k == 1 else f"{n}^{{{k}}}" for n, k in zip(names, e) if k)
            mag = abs(c)
            if mag.denominator == 1:
                cs = str(mag.numerator)
            else:
                cs = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            if not mono:
                body = cs
            elif mag == 1:
                body = mono
            else:
                body = cs + mono
            sign = "-" if c < 0 else "+"
            out.append(("-" + body if c < 0 else body) if i == 0 else f" {sign} {body}")
        return "".join(out)

    def to_json_obj(self) -> dict:
        keys = (lambda e: str(e[0])) if self.nvars == 1 else (lambda e: ",".join(map(str, e)))
        obj = {"coeffs": {keys(e): str(c) for e, c in self.sorted_terms()}}
        if self.nvars != 1:
            obj["vars"] = list(DEFAULT_NAMES.get(self.nvars, ()))
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "ExactPolynomial":
        nvars = len(obj.get("vars", ["q"]))
        coeffs = {tuple(int(x) for x in k.split(",")): Fraction(v) for k, v in obj["coeffs"].items()}
        return cls(coeffs, nvars)

    @classmethod
    def from_text(cls, text: str, names: Sequence[str] | None = None) -> "ExactPolynomial":
        """Parse the output of ``to_text``, e.g. ``"Z^2*W - 3/2*Z + 1"``."""
        nvars = len(names) if names else 1
        names = list(names or DEFAULT_NAMES[1])
        body = text.replace(" ", "")
        if not body:
            raise ValueError("empty polynomial text")
        if body[0] not in "+-":
            body = "+" + body
        coeffs: dict[tuple[int, ...], Fraction] = {}
        for sign, term in re.findall(r"([+-])([^+-]+)", body):
            c, exp = Fraction(1), [0] * nvars
            for factor in term.split("*"):
                base, _, power = factor.partition("^")
                if base in names:
                    exp[names.index(base)] += int(power or 1)
                else:
                    c *= Fraction(factor)
            e = tuple(exp)
            coeffs[e] = coeffs.get(e, 0) + (c if sign == "+" else -c)
        return cls(coeffs, nvars)


def _raw(coeffs: dict, nvars: int) -> ExactPolynomial:
    # trusted constructor: coefficients already Fractions, no zeros
    p = ExactPolynomial.__new__(ExactPolynomial)
    p.nvars = nvars
    p.coeffs = coeffs
    p._hash = None
    return p


class ExactRationalFunction:
    """Reduced fraction of ExactPolynomials with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        if not isinstance(num, ExactPolynomial):
            nv = den.nvars if isinstance(den, ExactPolynomial) else 1
            num = ExactPolynomial.constant(num, nv)
        if den is None:
            den = ExactPolynomial.one(num.nvars)
        elif not isinstance(den, ExactPolynomial):
            den = ExactPolynomial.constant(den, num.nvars)
        if den.nvars != num.nvars:
            raise ValueError(f"arity mismatch: {num.nvars} vs {den.nvars}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def constant(cls, c, nvars: int = 1) -> "ExactRationalFunction":
        return cls(ExactPolynomial.constant(c, nvars), ExactPolynomial.one(nvars), _reduced=True)

    @classmethod
    def var(cls, i: int = 0, nvars: int = 1) -> "ExactRationalFunction":
        return cls(ExactPolynomial.var(i, nvars), ExactPolynomial.one(nvars), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> ExactPolynomial:
        if not self.is_polynomial():
            raise NonExactDivision(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.leading_coefficient())

    def _coerce(self, other) -> "ExactRationalFunction":
        if isinstance(other, ExactRationalFunction):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, ExactPolynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return ExactRationalFunction(other, ExactPolynomial.one(self.nvars), _reduced=True)
        return ExactRationalFunction.constant(other, self.nvars)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"ExactRationalFunction({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def __add__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return ExactRationalFunction(self.num + other.num, self.den)
        if self.den.is_constant() and other.den.is_constant():
            return ExactRationalFunction(self.num + other.num, self.den, _reduced=True)
        return ExactRationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ExactRationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return ExactRationalFunction.constant(0, self.nvars)
        if other.den.is_constant() and other.num.is_constant():
            c = other.num.leading_coefficient()
            return ExactRationalFunction(self.num.scale(c), self.den, _reduced=True)
        if self.den.is_constant() and self.num.is_constant():
            c = self.num.leading_coefficient()
            return ExactRationalFunction(other.num.scale(c), other.den, _reduced=True)
        return ExactRationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "ExactRationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExactRationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ExactRationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise PoleError(f"pole of {self} at {point}")
        return self.num.evaluate(point) / d

    def adams(self, k: int) -> "ExactRationalFunction":
        # x -> x^k keeps univariate fractions coprime (substitute into a Bezout identity)
        return ExactRationalFunction(self.num.adams(k), self.den.adams(k), _reduced=self.nvars == 1)

    def specialize(self, i: int, value) -> "ExactRationalFunction":
        d = self.den.specialize(i, value)
        if d.is_zero():
            raise PoleError(f"denominator of {self} vanishes when variable {i} = {value}")
        return ExactRationalFunction(self.num.specialize(i, value), d)

    def drop_variable(self, i: int) -> "ExactRationalFunction":
        return ExactRationalFunction(self.num.drop_variable(i), self.den.drop_variable(i))

    def swap_variables(self) -> "ExactRationalFunction":
        return ExactRationalFunction(self.num.swap_variables(), self.den.swap_variables())

    def to_text(self, names=None) -> str:
        if self.den == ExactPolynomial.one(self.nvars):
            return self.num.to_text(names)
        return f"({self.num.to_text(names)})/({self.den.to_text(names)})"

    def to_latex(self, names=None) -> str:
        if self.den == ExactPolynomial.one(self.nvars):
            return self.num.to_latex(names)
        return f"\\frac{{{self.num.to_latex(names)}}}{{{self.den.to_latex(names)}}}"

    def to_json_obj(self) -> dict:
        return {"num": self.num.to_json_obj(), "den": self.den.to_json_obj()}


def _reduce(num: ExactPolynomial, den: ExactPolynomial) -> tuple[ExactPolynomial, ExactPolynomial]:
    if num.is_zero():
        return num, ExactPolynomial.one(num.nvars)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num.exact_divide(g)
            den = den.exact_divide(g)
    lc = den.leading_coefficient()
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return num, den


def adams_substitute(p, k: int):
    """Z -> Z^k, W -> W^k (or q -> q^k)."""
    return p.adams(k)


def exact_divide(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    return a.exact_divide(b)


def evaluate(p, point) -> Fraction:
    return p.evaluate(point)


def q_poly(coeffs: Mapping[int, object]) -> ExactPolynomial:
    """Univariate polynomial from a ``{degree: coefficient}`` map."""
    return ExactPolynomial({(k,): v for k, v in coeffs.items()}, 1)


def laurent_substitute(
    f: ExactRationalFunction | ExactPolynomial,
    images: Sequence[Sequence[int]],
    coefficients: Sequence | None = None,
    nvars_out: int = 2,
) -> ExactRationalFunction:
    """Substitute a Laurent monomial ``c_i * x^images[i]`` for each variable.

    Exponents in ``images`` may be negative; they are cleared by multiplying
    numerator and denominator by a common monomial.
    """
    if isinstance(f, ExactPolynomial):
        f = ExactRationalFunction(f)
    coefficients = coefficients or [1] * len(images)

    def subst(p: ExactPolynomial) -> dict[tuple[int, ...], Fraction]:
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in p.coeffs.items():
            ne = [0] * nvars_out
            cc = c
            for k, img, ci in zip(e, images, coefficients):
                for j in range(nvars_out):
                    ne[j] += k * img[j]
                cc *= _as_fraction(ci) ** k
            t = tuple(ne)
            out[t] = out.get(t, 0) + cc
        return {e: c for e, c in out.items() if c}

    n, d = subst(f.num), subst(f.den)
    shift = [min(e[j] for e in list(n) + list(d)) for j in range(nvars_out)] if n else [
        min(e[j] for e in d) for j in range(nvars_out)]
    fix = lambda m: ExactPolynomial({tuple(a - s for a, s in zip(e, shift)): c for e, c in m.items()}, nvars_out)
    return ExactRationalFunction(fix(n), fix(d))


def interpolate(
    points: Iterable[tuple[int, object]],
    degree_bound: int,
    held_out: Iterable[tuple[int, object]] = (),
) -> ExactPolynomial:
    """Lagrange interpolation through the first ``degree_bound + 1`` points.

    Every further point, and every ``held_out`` point, must lie on the result.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    extra = [(Fraction(x), Fraction(y)) for x, y in held_out]
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} points for degree {degree_bound}")
    use, check = pts[: degree_bound + 1], pts[degree_bound + 1:] + extra
    if len({x for x, _ in use}) != len(use):
        raise ValueError("interpolation nodes must be distinct")
    result = ExactPolynomial.zero(1)
    q = ExactPolynomial.var()
    for i, (xi, yi) in enumerate(use):
        basis = ExactPolynomial.one()
        denom = Fraction(1)
        for j, (xj, _) in enumerate(use):
            if j != i:
                basis = basis * (q - xj)
                denom *= xi - xj
        result = result + basis.scale(yi / denom)
    for x, y in check:
        if result.evaluate(x) != y:
            raise InconsistentPoints(f"point ({x}, {y}) does not lie on {result}")
    return result
