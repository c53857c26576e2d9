"""Positive roots of B_l / C_l and the cone over their Shi arrangement."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Tuple

from .bernoulli import Family, as_family
from .poly import Poly, format_rational


@dataclass(frozen=True)
class LinearForm:
    """``c_1 x_1 + ... + c_l x_l + c_z z`` with the z coefficient last."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not any(cs):
            raise ValueError("a linear form needs a nonzero coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def normalized(self) -> "LinearForm":
        """Proportionality representative: first nonzero coefficient is 1."""
        lead = next(c for c in self.coeffs if c)
        return LinearForm(tuple(c / lead for c in self.coeffs))

    def is_proportional(self, other: "LinearForm") -> bool:
        return self.normalized() == other.normalized()

    def to_poly(self) -> Poly:
        n = self.nvars
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = c
        return Poly(n, terms)

    def locus(self) -> Tuple[int, Poly]:
        """Solve ``form = 0`` for its first variable with a nonzero coefficient.

        Returns ``(index, replacement)`` so that substituting the replacement
        for that variable maps the ideal ``(form)`` to zero.
        """
        n = self.nvars
        v = next(i for i, c in enumerate(self.coeffs) if c)
        lead = self.coeffs[v]
        terms = {}
        for i, c in enumerate(self.coeffs):
            if i != v and c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = -c / lead
        return v, Poly(n, terms)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __str__(self) -> str:
        return str(self.to_poly())

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: Sequence[str]) -> "LinearForm":
        return cls(tuple(Fraction(c) for c in obj))


def _basis_form(nvars: int, entries: Mapping[int, int]) -> LinearForm:
    cs = [0] * nvars
    for i, c in entries.items():
        cs[i] = c
    return LinearForm(tuple(cs))


def positive_roots(family, rank: int) -> list[LinearForm]:
    """``x_i`` (type B) or ``2x_i`` (type C), then ``x_p - x_q``, then ``x_p + x_q``.

    Forms live in the ``rank + 1``-variable ring (z coefficient zero).
    """
    family = as_family(family)
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    n = rank + 1
    short = 1 if family is Family.B else 2
    roots = [_basis_form(n, {i: short}) for i in range(rank)]
    pairs = [(p, q) for p in range(rank) for q in range(p + 1, rank)]
    roots += [_basis_form(n, {p: 1, q: -1}) for p, q in pairs]
    roots += [_basis_form(n, {p: 1, q: 1}) for p, q in pairs]
    return roots


@dataclass(frozen=True)
class Arrangement:
    family: Family
    rank: int
    forms: Tuple[LinearForm, ...]

    @property
    def nvars(self) -> int:
        return self.rank + 1

    @property
    def coxeter_number(self) -> int:
        return 2 * self.rank

    def to_json(self) -> dict:
        return {"family": str(self.family), "rank": self.rank, "forms": [f.to_json() for f in self.forms]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Arrangement":
        return cls(as_family(obj["family"]), int(obj["rank"]), tuple(LinearForm.from_json(f) for f in obj["forms"]))


def shi_cone(family, rank: int) -> Arrangement:
    """Forms ``[z] + roots + [alpha - z for alpha in roots]``."""
    family = as_family(family)
    roots = positive_roots(family, rank)
    n = rank + 1
    z = _basis_form(n, {rank: 1})
    forms = (z, *roots, *(a - z for a in roots))
    return Arrangement(family, rank, forms)


def defining_poly(a: Arrangement) -> Poly:
    """Product of all forms, with root coefficients kept as they are."""
    q = Poly.const(a.nvars, 1)
    for f in a.forms:
        q = q * f.to_poly()
    return q


def pairwise_non_proportional(forms: Sequence[LinearForm]) -> bool:
    reps = [f.normalized() for f in forms]
    return len(set(reps)) == len(reps)
