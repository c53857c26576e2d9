"""Bernoulli-like polynomials of types B and C and their homogenizations.

For a family F in {B, C} and (r, s) with r >= 1, s >= 0, the polynomial
``B^F_{r,s}(x)`` is the unique solution of ``F(x+1) - F(x) = g(x)``,
``F(0) = 0`` where

* type B: ``g = ((x+1)^r - (-x)^r) / (2x+1) * (x+1)^s (-x)^s``
* type C: ``g = ((x+1)^(r-1) + (-x)^(r-1)) * (x+1)^s (-x)^s``

The homogenization ``z^(r+2s) B(x/z)`` is emitted directly into the
``l+1``-variable ring used by the derivation builder.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple

from .poly import Poly
from .render import unipoly_to_latex, unipoly_to_text


class Family(str, enum.Enum):
    B = "B"
    C = "C"

    def __str__(self) -> str:
        return self.value


FamilyTag = Family


def as_family(value) -> Family:
    try:
        return Family(str(value).upper())
    except ValueError:
        raise ValueError(f"unknown family {value!r}; expected B or C") from None


@dataclass(frozen=True)
class BernoulliKey:
    family: Family
    r: int
    s: int

    def __post_init__(self):
        object.__setattr__(self, "family", as_family(self.family))
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r!r}")
        if not isinstance(self.s, int) or self.s < 0:
            raise ValueError(f"s must be a nonnegative integer, got {self.s!r}")

    @property
    def weight(self) -> int:
        """Degree of the homogenization, ``r + 2s``."""
        return self.r + 2 * self.s


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial over Q, lowest degree first."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        other = _uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        return self + (-_uni(other))

    def __rsub__(self, other) -> "UniPoly":
        return _uni(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = _uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        out = UniPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, value):
        acc = Fraction(0) if not isinstance(value, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose_linear(self, a, b) -> "UniPoly":
        """``p(a*x + b)``."""
        return self(UniPoly((b, a)))

    def divmod(self, d: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = len(d.coeffs) - 1
        lead = d.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for i, c in enumerate(d.coeffs):
                    rem[k + i] -= q * c
        return UniPoly(tuple(quot)), UniPoly(tuple(rem))

    def __str__(self) -> str:
        return unipoly_to_text(self.coeffs)

    def to_latex(self, var: str = "x") -> str:
        return unipoly_to_latex(self.coeffs, var)

    def to_json(self) -> dict:
        from .poly import format_rational

        return {"var": "x", "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "UniPoly":
        return cls(tuple(Fraction(c) for c in obj["coeffs"]))


def _uni(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly.const(value)


_X = UniPoly.x()


def rhs(key: BernoulliKey) -> UniPoly:
    """Right-hand side of the defining difference equation."""
    r, s = key.r, key.s
    tail = ((_X + 1) * (-_X)) ** s
    if key.family is Family.B:
        top = (_X + 1) ** r - (-_X) ** r
        quot, rem = top.divmod(UniPoly((1, 2)))
        if rem:
            raise AssertionError(f"(x+1)^{r} - (-x)^{r} not divisible by 2x+1")
        return quot * tail
    return ((_X + 1) ** (r - 1) + (-_X) ** (r - 1)) * tail


def _binomial_poly(m: int) -> UniPoly:
    """``C(x, m) = x(x-1)...(x-m+1)/m!`` in the monomial basis."""
    out = UniPoly.const(1)
    for i in range(m):
        out = out * UniPoly((-i, 1))
    fact = 1
    for i in range(2, m + 1):
        fact *= i
    return out * Fraction(1, fact)


def solve_difference(g: UniPoly) -> UniPoly:
    """The unique ``F`` with ``F(x+1) - F(x) = g(x)`` and ``F(0) = 0``.

    ``g`` is expanded in the binomial basis ``C(x, k)`` through its forward
    differences at 0; since ``C(x+1, k+1) - C(x, k+1) = C(x, k)`` the answer
    is the same coefficient vector shifted by one, which also vanishes at 0.
    """
    if not g:
        return UniPoly()
    d = g.degree
    diffs = [g(k) for k in range(d + 1)]
    newton = []
    for _ in range(d + 1):
        newton.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    out = UniPoly()
    for k, gk in enumerate(newton):
        if gk:
            out = out + _binomial_poly(k + 1) * gk
    return out


@lru_cache(maxsize=None)
def _bernoulli(family: Family, r: int, s: int) -> UniPoly:
    return solve_difference(rhs(BernoulliKey(family, r, s)))


def bernoulli(key: BernoulliKey) -> UniPoly:
    """``B^F_{r,s}(x)``."""
    return _bernoulli(key.family, key.r, key.s)


def expected_degree(key: BernoulliKey) -> int:
    return key.r + 2 * key.s if key.r % 2 else key.r + 2 * key.s - 1


@lru_cache(maxsize=None)
def _homogenize(family: Family, r: int, s: int, nvars: int, slot: int) -> Poly:
    w = r + 2 * s
    zslot = nvars - 1
    if slot == zslot:
        raise ValueError("the x-slot must differ from the z-slot")
    terms = {}
    for k, c in enumerate(_bernoulli(family, r, s).coeffs):
        if c:
            exps = [0] * nvars
            exps[slot] = k
            exps[zslot] = w - k
            terms[tuple(exps)] = c
    return Poly(nvars, terms)


def homogenize(key: BernoulliKey, nvars: int = 2, slot: int = 0) -> Poly:
    """``z^(r+2s) B(x/z)`` with x at index ``slot`` of an ``nvars``-variable ring."""
    if not 0 <= slot < nvars:
        raise ValueError(f"slot {slot} outside a ring of {nvars} variables")
    return _homogenize(key.family, key.r, key.s, nvars, slot)


def restrict_z0(key: BernoulliKey) -> UniPoly:
    """Closed form of the homogenization at ``z = 0``.

    Type B gives ``(-1)^s x^(r+2s) / (r+2s)`` for odd r and 0 for even r;
    type C is twice the type-B value.
    """
    if key.r % 2 == 0:
        return UniPoly()
    w = key.weight
    c = Fraction((-1) ** key.s, w)
    if key.family is Family.C:
        c *= 2
    return UniPoly((0,) * w + (c,))


def embed(u: UniPoly, nvars: int = 2, slot: int = 0) -> Poly:
    """Place a univariate polynomial on variable ``slot`` of a larger ring."""
    terms = {}
    for k, c in enumerate(u.coeffs):
        if c:
            exps = [0] * nvars
            exps[slot] = k
            terms[tuple(exps)] = c
    return Poly(nvars, terms)


def keys(r_max: int, s_max: int, families: Iterable[Family] = (Family.B, Family.C)) -> list[BernoulliKey]:
    return [BernoulliKey(f, r, s) for f in families for r in range(1, r_max + 1) for s in range(s_max + 1)]


def clear_caches() -> None:
    _bernoulli.cache_clear()
    _homogenize.cache_clear()
