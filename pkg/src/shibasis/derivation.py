"""Derivations of Q[x1..xl, z]: the Euler derivation and the basis phi_j.

A derivation is stored as its coefficient vector; ``coefficients`` returns it
in the column order ``(d/dz, d/dx1, ..., d/dxl)`` used by the Saito matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence, Tuple

from .bernoulli import BernoulliKey, Family, as_family, homogenize
from .poly import Poly, elementary_symmetric, substitute
from .render import poly_to_latex, poly_to_text


class InvariantViolation(RuntimeError):
    """An index the construction guarantees in range came out of range."""


@dataclass(frozen=True)
class Derivation:
    z_coeff: Poly
    x_coeffs: Tuple[Poly, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "x_coeffs", tuple(self.x_coeffs))
        n = self.z_coeff.nvars
        if len(self.x_coeffs) != n - 1:
            raise ValueError(f"expected {n - 1} x-coefficients, got {len(self.x_coeffs)}")
        if any(c.nvars != n for c in self.x_coeffs):
            raise ValueError("coefficients live in different rings")

    @property
    def nvars(self) -> int:
        return self.z_coeff.nvars

    @property
    def rank(self) -> int:
        return self.nvars - 1

    @property
    def coefficients(self) -> Tuple[Poly, ...]:
        return (self.z_coeff, *self.x_coeffs)

    def apply(self, p: Poly) -> Poly:
        return apply(self, p)

    def degree(self) -> int | None:
        """Largest total degree among the coefficients; None if all vanish."""
        degs = [c.total_degree() for c in self.coefficients if c]
        return max(degs) if degs else None

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = set().union(*(c.degrees() for c in self.coefficients))
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def restrict_z0(self) -> "Derivation":
        """Coefficients with z set to 0 (the derivation itself is untouched)."""
        zero = {self.nvars - 1: Poly.zero(self.nvars)}
        return Derivation(
            substitute(self.z_coeff, zero),
            tuple(substitute(c, zero) for c in self.x_coeffs),
            f"{self.label}|z=0" if self.label else "",
        )

    def same_coefficients(self, other: "Derivation") -> bool:
        return self.coefficients == other.coefficients

    def scale(self, c) -> "Derivation":
        return Derivation(self.z_coeff * c, tuple(x * c for x in self.x_coeffs), self.label)

    def with_x_coeff(self, i: int, poly: Poly, label: str | None = None) -> "Derivation":
        xs = list(self.x_coeffs)
        xs[i] = poly
        return replace(self, x_coeffs=tuple(xs), label=self.label if label is None else label)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "z_coeff": self.z_coeff.to_json(),
            "x_coeffs": [c.to_json() for c in self.x_coeffs],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Derivation":
        return cls(
            Poly.from_json(obj["z_coeff"]),
            tuple(Poly.from_json(c) for c in obj["x_coeffs"]),
            obj.get("label", ""),
        )

    def to_text(self) -> str:
        parts = []
        for name, c in zip(["z"] + [f"x{i}" for i in range(1, self.nvars)], self.coefficients):
            if c:
                parts.append(f"  d/d{name}: {poly_to_text(c)}")
        return "\n".join([f"{self.label}:"] + (parts or ["  0"]))

    def to_latex(self) -> str:
        slots = ["\\partial_{z}"] + [f"\\partial_{{{i}}}" for i in range(1, self.nvars)]
        parts = [f"\\left({poly_to_latex(c)}\\right){s}" for c, s in zip(self.coefficients, slots) if c]
        return " + ".join(parts) if parts else "0"


def _check_rank(rank: int) -> None:
    if not isinstance(rank, int) or rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank!r}")


def _check_index(j: int, rank: int) -> None:
    _check_rank(rank)
    if not 1 <= j <= rank:
        raise IndexError(f"j={j} outside 1..{rank}")


def euler(rank: int) -> Derivation:
    """``z d/dz + sum x_i d/dx_i``."""
    _check_rank(rank)
    n = rank + 1
    return Derivation(Poly.var(n, rank), tuple(Poly.var(n, i) for i in range(rank)), "theta_E")


def apply(d: Derivation, p: Poly) -> Poly:
    if p.nvars != d.nvars:
        raise ValueError("derivation and polynomial live in different rings")
    out = Poly.zero(p.nvars)
    for var, c in zip([d.nvars - 1, *range(d.rank)], d.coefficients):
        if c:
            out = out + c * p.diff(var)
    return out


def _kernel_sums(family: Family, j: int, rank: int, tau: Sequence[Poly]) -> dict[tuple[int, int], Poly]:
    """``sum_{k2,k3} (-1)^(k2+k3) sigma_k2(x_j) tau_k3 Bbar_{r,s}(x_i, z)`` for every (s, i)."""
    n = rank + 1
    sigma2 = (Poly.const(n, 1), Poly.var(n, j - 1))
    out = {}
    for s in range(j):
        for i in range(rank):
            acc = Poly.zero(n)
            for k2 in (0, 1):
                for k3 in range(rank - j + 1):
                    r = 2 * rank - 2 * j - k2 - 2 * k3 + 2
                    if r < 1:
                        raise InvariantViolation(f"r={r} < 1 at j={j}, k2={k2}, k3={k3}")
                    term = sigma2[k2] * tau[k3] * homogenize(BernoulliKey(family, r, s), n, i)
                    acc = acc - term if (k2 + k3) % 2 else acc + term
            out[(s, i)] = acc
    return out


def phi(family, j: int, rank: int) -> Derivation:
    """The degree-2l derivation phi_j of the given family.

    Each element of ``{x_1, ..., x_{j-1}}`` is assigned to N1 (factor
    ``x_t^2``), N2 (factor ``-x_t z``) or neither; the count of "neither"
    is ``s``.  All ``3^(j-1)`` assignments are enumerated.
    """
    family = as_family(family)
    _check_index(j, rank)
    n = rank + 1
    z = Poly.var(n, rank)
    xs = [Poly.var(n, t) for t in range(rank)]
    squares_after = [x * x for x in xs[j:]]
    tau = [elementary_symmetric(k, squares_after, n) for k in range(rank - j + 1)]
    kernel = _kernel_sums(family, j, rank, tau)

    coeffs = [Poly.zero(n) for _ in range(rank)]
    for assignment in itertools.product((0, 1, 2), repeat=j - 1):
        prefactor = Poly.const(n, 1)
        for t, role in enumerate(assignment):
            if role == 1:
                prefactor = prefactor * xs[t] * xs[t]
            elif role == 2:
                prefactor = prefactor * (-(xs[t] * z))
        s = assignment.count(0)
        if s != (j - 1) - assignment.count(1) - assignment.count(2) or s < 0:
            raise InvariantViolation(f"s={s} inconsistent at j={j}")
        for i in range(rank):
            coeffs[i] = coeffs[i] + prefactor * kernel[(s, i)]
    if j % 2:
        coeffs = [-c for c in coeffs]
    return Derivation(Poly.zero(n), tuple(coeffs), f"phi_{j}^{family}(l={rank})")


def phi_grouped(family, j: int, rank: int) -> Derivation:
    """Independent construction of phi_j through generating functions.

    The sum over disjoint (N1, N2) is the coefficient of ``y^s`` in
    ``prod_{t<j} (x_t^2 - x_t z + y)``, and ``tau_k`` is the coefficient of
    ``y^k`` in ``prod_{t>j} (1 + x_t^2 y)``.  Polynomials in y are lists of
    coefficients.
    """
    family = as_family(family)
    _check_index(j, rank)
    n = rank + 1
    one = Poly.const(n, 1)
    z = Poly.var(n, rank)
    xs = [Poly.var(n, t) for t in range(rank)]

    def times_linear(ys: list[Poly], c0: Poly, c1: Poly) -> list[Poly]:
        out = [Poly.zero(n) for _ in range(len(ys) + 1)]
        for k, a in enumerate(ys):
            out[k] = out[k] + a * c0
            out[k + 1] = out[k + 1] + a * c1
        return out

    grouped = [one]
    for t in range(j - 1):
        grouped = times_linear(grouped, xs[t] * xs[t] - xs[t] * z, one)
    tau = [one]
    for t in range(j, rank):
        tau = times_linear(tau, one, xs[t] * xs[t])

    coeffs = []
    for i in range(rank):
        total = Poly.zero(n)
        for s, weight in enumerate(grouped):
            inner = Poly.zero(n)
            for k2, sig in ((0, one), (1, xs[j - 1])):
                for k3, t3 in enumerate(tau):
                    r = 2 * rank - 2 * j - k2 - 2 * k3 + 2
                    b = homogenize(BernoulliKey(family, r, s), n, i)
                    inner = inner + sig * t3 * b * (-1) ** (k2 + k3)
            total = total + weight * inner
        coeffs.append(total * (-1) ** j)
    return Derivation(Poly.zero(n), tuple(coeffs), f"phi_{j}^{family}(l={rank})")


def basis(family, rank: int) -> list[Derivation]:
    """``[theta_E, phi_1, ..., phi_l]`` (Saito row order)."""
    return [euler(rank)] + [phi(family, j, rank) for j in range(1, rank + 1)]


def solomon_terao_restriction(j: int, rank: int) -> Derivation:
    """``x_j sum_k (-1)^k sigma_k(x_t^2 : t != j) sum_i x_i^(2l-2k-1)/(2l-2k-1) d/dx_i``.

    Lives in the ``l+1``-variable ring but never involves z.
    """
    _check_index(j, rank)
    n = rank + 1
    xs = [Poly.var(n, t) for t in range(rank)]
    others = [xs[t] * xs[t] for t in range(rank) if t != j - 1]
    coeffs = [Poly.zero(n) for _ in range(rank)]
    for k in range(rank):
        sig = elementary_symmetric(k, others, n)
        if not sig:
            continue
        m = 2 * rank - 2 * k - 1
        front = xs[j - 1] * sig * Fraction((-1) ** k, m)
        for i in range(rank):
            coeffs[i] = coeffs[i] + front * xs[i] ** m
    return Derivation(Poly.zero(n), tuple(coeffs), f"Xi(x_{j})(l={rank})")


def signed_permutation(d: Derivation, perm: Sequence[int], signs: Sequence[int]) -> Derivation:
    """Act by the Weyl group element ``x_i -> signs[i] * x_{perm[i]}`` (0-based).

    Coefficients are transformed by the substitution and the ``d/dx_i`` slot
    moves to ``d/dx_{perm[i]}`` with the same sign.
    """
    rank = d.rank
    if sorted(perm) != list(range(rank)) or len(signs) != rank or any(e not in (1, -1) for e in signs):
        raise ValueError("not a signed permutation")
    n = d.nvars
    subst = {i: Poly.var(n, perm[i]) * signs[i] for i in range(rank)}
    xs = [Poly.zero(n) for _ in range(rank)]
    for i, c in enumerate(d.x_coeffs):
        xs[perm[i]] = substitute(c, subst) * signs[i]
    return Derivation(substitute(d.z_coeff, subst), tuple(xs), d.label)
