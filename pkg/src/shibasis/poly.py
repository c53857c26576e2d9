"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` lives in a fixed ring ``Q[x1, ..., xl, z]`` with ``nvars``
variables; the last variable is ``z`` by convention.  Coefficients are exact
(:class:`fractions.Fraction` at the public surface).

Internally a polynomial is an integer-numerator dict over one positive common
denominator, and every monomial is packed into a single Python int::

    key = deg << (B * n) | e_1 << (B * (n - 1)) | ... | e_n

with ``B = FIELD_BITS``.  Two consequences carry the whole module:

* monomial multiplication is integer addition of keys, and
* integer comparison of keys is the degree-then-lexicographic term order
  (``x1 > x2 > ... > z``), so the leading term is ``max(keys)``.

The representation is canonical: no stored numerator is zero, the
denominator is positive and coprime to the content of the numerators.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

FIELD_BITS = 16
_FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_DEGREE = _FIELD_MASK


class PolyError(ValueError):
    """Base class for polynomial errors."""


class VariableMismatch(PolyError):
    pass


class DivisionByZeroPoly(ZeroDivisionError):
    pass


class NotDivisible(PolyError):
    """Raised by :func:`exact_divide`; ``remainder`` is the nonzero witness."""

    def __init__(self, remainder: "Poly", quotient: "Poly"):
        super().__init__(f"not divisible; remainder {remainder}")
        self.remainder = remainder
        self.quotient = quotient


def default_names(nvars: int) -> list[str]:
    """``['x1', ..., 'x{n-1}', 'z']``."""
    return [f"x{i}" for i in range(1, nvars)] + ["z"]


def _pack(exps: Sequence[int]) -> int:
    key = 0
    deg = 0
    for e in exps:
        if e < 0 or e > _FIELD_MASK:
            raise PolyError(f"exponent {e} out of range")
        key = (key << FIELD_BITS) | e
        deg += e
    if deg > MAX_DEGREE:
        raise OverflowError("total degree exceeds packing limit")
    return (deg << (FIELD_BITS * len(exps))) | key


def _unpack(key: int, nvars: int) -> Monomial:
    out = [0] * nvars
    for k in range(nvars - 1, -1, -1):
        out[k] = key & _FIELD_MASK
        key >>= FIELD_BITS
    return tuple(out)


def _key_degree(key: int, nvars: int) -> int:
    return key >> (FIELD_BITS * nvars)


def _var_shift(nvars: int, var: int) -> int:
    return FIELD_BITS * (nvars - 1 - var)


def _normalize(num: Dict[int, int], den: int) -> Tuple[Dict[int, int], int]:
    num = {k: c for k, c in num.items() if c}
    if not num:
        return {}, 1
    if den < 0:
        num = {k: -c for k, c in num.items()}
        den = -den
    g = gcd(den, *num.values())
    if g != 1:
        num = {k: c // g for k, c in num.items()}
        den //= g
    return num, den


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_num", "_den", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] | None = None):
        if nvars < 1:
            raise PolyError("a ring needs at least one variable")
        self.nvars = nvars
        self._hash = None
        if not terms:
            self._num, self._den = {}, 1
            return
        fracs = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise VariableMismatch(f"monomial {exps} has wrong length for nvars={nvars}")
            k = _pack(exps)
            fracs[k] = fracs.get(k, Fraction(0)) + Fraction(c)
        den = 1
        for c in fracs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = {k: c.numerator * (den // c.denominator) for k, c in fracs.items()}
        self._num, self._den = _normalize(num, den)

    @classmethod
    def _raw(cls, nvars: int, num: Dict[int, int], den: int = 1, *, normalized: bool = False) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._hash = None
        if normalized:
            p._num, p._den = num, den
        else:
            p._num, p._den = _normalize(num, den)
        return p

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {}, 1, normalized=True)

    @classmethod
    def const(cls, nvars: int, value: Scalar) -> "Poly":
        value = Fraction(value)
        if not value:
            return cls.zero(nvars)
        return cls._raw(nvars, {0: value.numerator}, value.denominator, normalized=True)

    @classmethod
    def var(cls, nvars: int, index: int) -> "Poly":
        """The variable at position ``index`` (0-based; ``nvars - 1`` is z)."""
        if not 0 <= index < nvars:
            raise PolyError(f"unknown variable index {index} for nvars={nvars}")
        key = (1 << (FIELD_BITS * nvars)) | (1 << _var_shift(nvars, index))
        return cls._raw(nvars, {key: 1}, 1, normalized=True)

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: Scalar = 1) -> "Poly":
        return cls(nvars, {tuple(exps): coeff})

    # views -------------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        """Canonical term map, leading term first."""
        n, d = self.nvars, self._den
        return {_unpack(k, n): Fraction(self._num[k], d) for k in sorted(self._num, reverse=True)}

    def items(self) -> Iterable[Tuple[Monomial, Fraction]]:
        return self.terms.items()

    def __len__(self) -> int:
        return len(self._num)

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return not self._num or (len(self._num) == 1 and 0 in self._num)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return Fraction(self._num.get(0, 0), self._den)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._num:
            raise PolyError("zero polynomial has no leading term")
        k = max(self._num)
        return _unpack(k, self.nvars), Fraction(self._num[k], self._den)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return Fraction(self._num.get(_pack(exps), 0), self._den)

    def total_degree(self) -> int | None:
        if not self._num:
            return None
        return _key_degree(max(self._num), self.nvars)

    def degrees(self) -> set[int]:
        n = self.nvars
        return {_key_degree(k, n) for k in self._num}

    def is_homogeneous(self, d: int) -> bool:
        return all(deg == d for deg in self.degrees())

    def variables(self) -> set[int]:
        """Indices of variables that occur."""
        used = set()
        for k in self._num:
            for i, e in enumerate(_unpack(k, self.nvars)):
                if e:
                    used.add(i)
        return used

    # arithmetic --------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatch(f"nvars {self.nvars} != {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if not self._num:
            return other
        da, db = self._den, other._den
        if da == db:
            out = dict(self._num)
            for k, c in other._num.items():
                out[k] = out.get(k, 0) + c
            return Poly._raw(self.nvars, out, da)
        g = gcd(da, db)
        ma, mb = db // g, da // g
        out = {k: c * ma for k, c in self._num.items()}
        for k, c in other._num.items():
            out[k] = out.get(k, 0) + c * mb
        return Poly._raw(self.nvars, out, da * ma)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {k: -c for k, c in self._num.items()}, self._den, normalized=True)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._num or not other._num:
            return Poly.zero(self.nvars)
        if self.total_degree() + other.total_degree() > MAX_DEGREE:
            raise OverflowError("product degree exceeds packing limit")
        a, b = self._num, other._num
        if len(a) > len(b):
            a, b = b, a
        out: Dict[int, int] = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return Poly._raw(self.nvars, out, self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c or not self._num:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {k: v * c.numerator for k, v in self._num.items()}, self._den * c.denominator)

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise PolyError("exponent must be a nonnegative int")
        result = Poly.const(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self._den, frozenset(self._num.items())))
        return self._hash

    # calculus and evaluation --------------------------------------------

    def diff(self, var: int) -> "Poly":
        """Partial derivative with respect to variable ``var``."""
        n = self.nvars
        if not 0 <= var < n:
            raise PolyError(f"unknown variable index {var}")
        shift = _var_shift(n, var)
        step = (1 << shift) + (1 << (FIELD_BITS * n))
        out = {}
        for k, c in self._num.items():
            e = (k >> shift) & _FIELD_MASK
            if e:
                out[k - step] = c * e
        return Poly._raw(n, out, self._den)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Value at a point of Q^nvars."""
        n = self.nvars
        if len(point) != n:
            raise VariableMismatch("point has wrong dimension")
        powers: list[dict[int, Scalar]] = [{0: 1} for _ in range(n)]
        total = 0
        for k, c in self._num.items():
            term = c
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    cache = powers[i]
                    v = cache.get(e)
                    if v is None:
                        v = cache[e] = point[i] ** e
                    term *= v
            total += term
        return Fraction(total, self._den) if isinstance(total, int) else total / self._den

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self})"

    def __str__(self) -> str:
        from .render import poly_to_text

        return poly_to_text(self)

    # serialization ------------------------------------------------------

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        names = list(names) if names is not None else default_names(self.nvars)
        return {
            "nvars": self.nvars,
            "vars": names,
            "terms": [
                {"coeff": format_rational(c), "exps": list(e)} for e, c in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Poly":
        n = int(obj["nvars"])
        terms: Dict[Monomial, Fraction] = {}
        for t in obj["terms"]:
            terms[tuple(int(e) for e in t["exps"])] = Fraction(t["coeff"])
        return cls(n, terms)


def format_rational(c: Fraction) -> str:
    """``'p/q'`` in lowest terms with the sign on the numerator."""
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


# module-level operations ---------------------------------------------------


def add(p: Poly, q: Poly) -> Poly:
    p._check(q)
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    p._check(q)
    return p * q


def total_degree(p: Poly) -> int | None:
    return p.total_degree()


def is_homogeneous(p: Poly, d: int) -> bool:
    return p.is_homogeneous(d)


def divmod_poly(p: Poly, d: Poly) -> Tuple[Poly, Poly]:
    """Division by a single divisor in the degree-lex order.

    Returns ``(q, r)`` with ``p = q*d + r`` and no term of ``r`` divisible by
    the leading monomial of ``d``.  For one divisor this is the normal form, so
    ``r == 0`` iff ``d`` divides ``p``.
    """
    p._check(d)
    if not d._num:
        raise DivisionByZeroPoly("division by the zero polynomial")
    n = p.nvars
    lead = max(d._num)
    lead_exps = _unpack(lead, n)
    lead_c = Fraction(d._num[lead], d._den)
    dterms = [(k, Fraction(c, d._den)) for k, c in d._num.items() if k != lead]

    rest: Dict[int, Fraction] = {k: Fraction(c, p._den) for k, c in p._num.items()}
    heap = [-k for k in rest]
    heapq.heapify(heap)
    quot: Dict[int, Fraction] = {}
    rem: Dict[int, Fraction] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rest.pop(k, None)
        if not c:
            continue
        exps = _unpack(k, n)
        if all(a >= b for a, b in zip(exps, lead_exps)):
            qk = k - lead
            qc = c / lead_c
            quot[qk] = qc
            for dk, dc in dterms:
                nk = qk + dk
                old = rest.get(nk)
                if old is None:
                    rest[nk] = -qc * dc
                    heapq.heappush(heap, -nk)
                else:
                    rest[nk] = old - qc * dc
        else:
            rem[k] = c
    return _from_fracs(n, quot), _from_fracs(n, rem)


def _from_fracs(nvars: int, fracs: Mapping[int, Fraction]) -> Poly:
    den = 1
    for c in fracs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return Poly._raw(nvars, {k: c.numerator * (den // c.denominator) for k, c in fracs.items()}, den)


def exact_divide(p: Poly, d: Poly) -> Poly:
    """The unique ``q`` with ``q*d == p``; raises :class:`NotDivisible` otherwise."""
    q, r = divmod_poly(p, d)
    if r:
        raise NotDivisible(r, q)
    return q


def substitute(p: Poly, assignments: Mapping[int, Poly]) -> Poly:
    """Simultaneous substitution ``var -> poly`` for the given variable indices."""
    n = p.nvars
    for v, repl in assignments.items():
        if not 0 <= v < n:
            raise PolyError(f"unknown variable index {v}")
        if repl.nvars != n:
            raise VariableMismatch("substituted polynomial lives in another ring")
    if not assignments or not p._num:
        return p
    subs = sorted(assignments)
    keep_mask = 0
    for v in range(n):
        if v not in assignments:
            keep_mask |= _FIELD_MASK << _var_shift(n, v)

    # group terms by the exponent pattern of the substituted variables
    groups: Dict[Tuple[int, ...], Dict[int, int]] = {}
    for k, c in p._num.items():
        exps = _unpack(k, n)
        pattern = tuple(exps[v] for v in subs)
        kept = k & keep_mask
        kept_deg = sum(exps) - sum(pattern)
        kept |= kept_deg << (FIELD_BITS * n)
        grp = groups.setdefault(pattern, {})
        grp[kept] = grp.get(kept, 0) + c

    powers: Dict[Tuple[int, int], Poly] = {}

    def power(v: int, e: int) -> Poly:
        got = powers.get((v, e))
        if got is None:
            got = Poly.const(n, 1) if e == 0 else power(v, e - 1) * assignments[v]
            powers[(v, e)] = got
        return got

    result = Poly.zero(n)
    for pattern, kept in groups.items():
        factor = Poly._raw(n, kept, p._den)
        for v, e in zip(subs, pattern):
            if e:
                factor = factor * power(v, e)
        result = result + factor
    return result


def elementary_symmetric(k: int, args: Sequence[Poly], nvars: int | None = None) -> Poly:
    """``sigma_k(args)``; ``sigma_0 = 1`` and ``sigma_k = 0`` for ``k > len(args)``."""
    if k < 0:
        raise PolyError("k must be nonnegative")
    if nvars is None:
        if not args:
            raise PolyError("nvars is required when args is empty")
        nvars = args[0].nvars
    if k > len(args):
        return Poly.zero(nvars)
    e = [Poly.const(nvars, 1)] + [Poly.zero(nvars)] * k
    for y in args:
        for m in range(k, 0, -1):
            e[m] = e[m] + y * e[m - 1]
    return e[k]


# determinants --------------------------------------------------------------

Matrix = Sequence[Sequence[Poly]]


def _check_square(m: Matrix) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise PolyError("determinant of a non-square matrix")
    return n


def det_cofactor(m: Matrix) -> Poly:
    """Laplace expansion along successive rows, sharing minors by column set."""
    n = _check_square(m)
    if n == 0:
        raise PolyError("empty matrix has no ring to live in")
    nvars = m[0][0].nvars
    memo: Dict[Tuple[int, ...], Poly] = {}

    def minor(cols: Tuple[int, ...]) -> Poly:
        row = n - len(cols)
        if not cols:
            return Poly.const(nvars, 1)
        got = memo.get(cols)
        if got is not None:
            return got
        acc = Poly.zero(nvars)
        for pos, c in enumerate(cols):
            entry = m[row][c]
            if entry:
                sub = minor(cols[:pos] + cols[pos + 1:])
                if sub:
                    term = entry * sub
                    acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def det_bareiss(m: Matrix) -> Poly:
    """Fraction-free Bareiss elimination; interior divisions are exact."""
    n = _check_square(m)
    if n == 0:
        raise PolyError("empty matrix has no ring to live in")
    a = [list(row) for row in m]
    nvars = a[0][0].nvars
    sign = 1
    prev = Poly.const(nvars, 1)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(nvars)
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(piv * a[i][j] - a[i][k] * a[k][j], prev)
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det(m: Matrix) -> Poly:
    """Exact determinant of a square matrix of polynomials.

    Rows or columns with at most one nonzero entry are expanded first; what
    remains goes to shared-minor cofactor expansion when at most 4x4 and to
    Bareiss elimination otherwise.
    """
    n = _check_square(m)
    if n == 0:
        raise PolyError("empty matrix has no ring to live in")
    nvars = m[0][0].nvars
    for row in m:
        for e in row:
            if e.nvars != nvars:
                raise VariableMismatch("matrix entries live in different rings")
    if n == 1:
        return m[0][0]

    for i, row in enumerate(m):
        nz = [j for j, e in enumerate(row) if e]
        if not nz:
            return Poly.zero(nvars)
        if len(nz) == 1:
            return _expand(m, i, nz[0])
    for j in range(n):
        nz = [i for i in range(n) if m[i][j]]
        if not nz:
            return Poly.zero(nvars)
        if len(nz) == 1:
            return _expand(m, nz[0], j)
    if n <= 4:
        return det_cofactor(m)
    return det_bareiss(m)


def _expand(m: Matrix, i: int, j: int) -> Poly:
    sub = [[e for c, e in enumerate(row) if c != j] for r, row in enumerate(m) if r != i]
    val = m[i][j] * det(sub)
    return -val if (i + j) % 2 else val
