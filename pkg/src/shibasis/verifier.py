"""Certification of the constructed bases.

Three independent kinds of evidence are produced:

* membership: ``theta(f)`` is divisible by ``f`` for every form ``f`` of the
  arrangement (decided by substitution onto ``f = 0``, with polynomial
  division as a second opinion that must agree);
* Saito's criterion: ``det`` of the coefficient matrix equals ``c * Q`` with
  ``c != 0``, either as an exact polynomial identity or at random points;
* the z = 0 restriction of each ``phi_j`` against its closed form.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import derivation as dv
from .bernoulli import BernoulliKey, Family, as_family, homogenize
from .poly import Poly, divmod_poly, det, exact_divide, format_rational, substitute
from .rootsystem import Arrangement, LinearForm, defining_poly, shi_cone

DEFAULT_SEED = 0
DEFAULT_TRIALS = 8
SAMPLE_BOUND = 10**6


class Mode(str, enum.Enum):
    EXACT = "exact"
    PROBABILISTIC = "probabilistic"

    def __str__(self) -> str:
        return self.value


class BasisCheckFailed(Exception):
    """The candidate basis does not satisfy Saito's criterion."""


class DegreeMismatch(BasisCheckFailed):
    pass


class NotProportional(BasisCheckFailed):
    pass


# membership ------------------------------------------------------------------


@dataclass(frozen=True)
class FormCheck:
    form: LinearForm
    quotient_exists: bool
    witness: Poly  # quotient when divisible, remainder otherwise


@dataclass(frozen=True)
class MembershipReport:
    derivation_label: str
    checks: tuple[FormCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.quotient_exists for c in self.checks)

    @property
    def failures(self) -> list[FormCheck]:
        return [c for c in self.checks if not c.quotient_exists]

    def to_json(self) -> dict:
        return {
            "derivation": self.derivation_label,
            "passed": self.passed,
            "forms_checked": len(self.checks),
            "failures": [{"form": c.form.to_json(), "remainder": c.witness.to_json()} for c in self.failures],
        }


def divisible_by_form(p: Poly, form: LinearForm) -> tuple[bool, Poly]:
    """Whether ``form`` divides ``p``; returns the quotient or the remainder."""
    var, repl = form.locus()
    on_locus = substitute(p, {var: repl}).is_zero()
    q, r = divmod_poly(p, form.to_poly())
    if on_locus != r.is_zero():
        raise dv.InvariantViolation(f"substitution and division disagree on {form}")
    return on_locus, (q if on_locus else r)


def check_membership(d: dv.Derivation, a: Arrangement) -> MembershipReport:
    if d.nvars != a.nvars:
        raise ValueError("derivation and arrangement live in different rings")
    checks = []
    for form in a.forms:
        ok, witness = divisible_by_form(d.apply(form.to_poly()), form)
        checks.append(FormCheck(form, ok, witness))
    return MembershipReport(d.label, tuple(checks))


# congruences -------------------------------------------------------------------


def congruence_relations(family, r: int, s: int, p: int, q: int, eps: int, nvars: int | None = None) -> tuple[bool, bool]:
    """Both congruences for ``Bbar(x_p, z) + eps * Bbar(x_q, z)`` (1-based p, q).

    First: vanishes modulo ``x_p + eps x_q``.  Second: modulo
    ``x_p + eps x_q - z`` it equals the family's closed form.
    """
    family = as_family(family)
    if eps not in (-1, 0, 1):
        raise ValueError(f"eps must be -1, 0 or 1, got {eps!r}")
    if eps and p == q:
        raise ValueError("p and q must differ when eps != 0")
    if p < 1 or q < 1:
        raise ValueError("variable indices are 1-based")
    n = nvars if nvars is not None else max(p, q) + 1
    if max(p, q) > n - 1:
        raise ValueError(f"index out of range for nvars={n}")
    key = BernoulliKey(family, r, s)
    xp = Poly.var(n, p - 1)
    exq = Poly.var(n, q - 1) * eps
    lhs = homogenize(key, n, p - 1) + homogenize(key, n, q - 1) * eps

    plus = xp + exq
    first_ok = substitute(lhs, {p - 1: -exq}).is_zero()

    zed = n - 1
    reduced = substitute(lhs, {zed: plus})
    if family is Family.B:
        middle = exact_divide(xp**r - exq**r, xp - exq)
    else:
        middle = xp ** (r - 1) + exq ** (r - 1)
    expected = plus * middle * (xp * exq) ** s
    second_ok = reduced == expected
    return first_ok, second_ok


def congruence_check(family, r: int, s: int, p: int, q: int, eps: int, nvars: int | None = None) -> bool:
    return all(congruence_relations(family, r, s, p, q, eps, nvars))


@dataclass(frozen=True)
class CongruenceResult:
    family: Family
    r: int
    s: int
    p: int
    q: int
    eps: int
    ok: bool


def congruence_sweep(family, rank: int, r_max: int | None = None, s_max: int | None = None) -> list[CongruenceResult]:
    """All ``r <= r_max``, ``s <= s_max``, eps in {-1, 0, 1} and index pairs of the rank.

    Defaults are ``r_max = 2l + 2`` and ``s_max = l``.
    """
    family = as_family(family)
    if rank < 2:
        raise ValueError("the sweep needs at least two variables x_p, x_q")
    r_max = 2 * rank + 2 if r_max is None else r_max
    s_max = rank if s_max is None else s_max
    n = rank + 1
    out = []
    for r in range(1, r_max + 1):
        for s in range(s_max + 1):
            for eps in (-1, 0, 1):
                if eps:
                    pairs = [(p, q) for p in range(1, rank + 1) for q in range(p + 1, rank + 1)]
                else:
                    pairs = [(p, p) for p in range(1, rank + 1)]
                for p, q in pairs:
                    ok = congruence_check(family, r, s, p, q, eps, n)
                    out.append(CongruenceResult(family, r, s, p, q, eps, ok))
    return out


# Saito's criterion ---------------------------------------------------------------


@dataclass(frozen=True)
class SaitoCertificate:
    mode: Mode
    constant_c: Fraction
    q: Poly | None  # expanded only in exact mode
    determinant: Poly | None
    degree_det: int
    degree_q: int
    trials: int | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        out = {
            "mode": str(self.mode),
            "c": format_rational(self.constant_c),
            "degree_det": self.degree_det,
            "degree_q": self.degree_q,
        }
        if self.mode is Mode.PROBABILISTIC:
            out["trials"] = self.trials
            out["seed"] = self.seed
        return out


def _scalar_det(rows: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return out


def saito_check(
    basis: Sequence[dv.Derivation],
    a: Arrangement,
    mode: Mode | str = Mode.EXACT,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    check_degrees: bool = True,
) -> SaitoCertificate:
    """Rows ``basis`` (theta_E first), columns ``(d/dz, d/dx1, ..., d/dxl)``."""
    mode = Mode(str(mode))
    if len(basis) != a.nvars:
        raise ValueError(f"need {a.nvars} derivations, got {len(basis)}")
    if any(d.nvars != a.nvars for d in basis):
        raise ValueError("derivations and arrangement live in different rings")
    degree_q = len(a.forms)
    degs = [d.degree() for d in basis]
    if check_degrees and (None in degs or sum(degs) != degree_q):
        raise DegreeMismatch(f"degrees {degs} sum to {sum(x or 0 for x in degs)}, need {degree_q}")
    rows = [d.coefficients for d in basis]

    if mode is Mode.EXACT:
        q_poly = defining_poly(a)
        dpoly = det(rows)
        if dpoly.is_zero():
            raise NotProportional("determinant vanishes identically")
        quot, rem = divmod_poly(dpoly, q_poly)
        if rem or not quot.is_constant() or quot.is_zero():
            raise NotProportional("determinant is not a constant multiple of Q")
        return SaitoCertificate(mode, quot.constant_value(), q_poly, dpoly, dpoly.total_degree(), degree_q)

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    forms = [f.to_poly() for f in a.forms]
    ratio = None
    for _ in range(trials):
        while True:
            point = [rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND) for _ in range(a.nvars)]
            qv = Fraction(1)
            for f in forms:
                qv *= f.evaluate(point)
            if qv:
                break
        dv_ = _scalar_det([[e.evaluate(point) for e in row] for row in rows])
        r = dv_ / qv
        if not r:
            raise NotProportional(f"determinant vanishes at {point}")
        if ratio is None:
            ratio = r
        elif r != ratio:
            raise NotProportional(f"det/Q is {r} at {point} but {ratio} earlier")
    degree_det = sum(x for x in degs if x is not None)
    return SaitoCertificate(mode, ratio, None, None, degree_det, degree_q, trials, seed)


# full verification --------------------------------------------------------------


@dataclass
class Certificate:
    family: Family
    rank: int
    membership: list[MembershipReport]
    restriction_identity: bool
    saito: SaitoCertificate | None
    saito_error: str | None = None
    mode: Mode = Mode.EXACT
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(m.passed for m in self.membership) and self.restriction_identity and self.saito is not None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        saito = self.saito.to_json() if self.saito is not None else {"mode": str(self.mode), "c": None, "error": self.saito_error}
        return {
            "family": str(self.family),
            "rank": self.rank,
            "membership": [m.to_json() for m in self.membership],
            "saito": saito,
            "restriction_identity": self.restriction_identity,
            "status": self.status,
        }

    def to_text(self) -> str:
        lines = [f"family {self.family}, rank {self.rank}"]
        for m in self.membership:
            lines.append(f"membership {m.derivation_label}: {'pass' if m.passed else 'FAIL'} ({len(m.checks)} forms)")
        lines.append(f"restriction identity: {'pass' if self.restriction_identity else 'FAIL'}")
        if self.saito is not None:
            lines.append(f"saito ({self.saito.mode}): c = {self.saito.constant_c}")
        else:
            lines.append(f"saito ({self.mode}): FAIL ({self.saito_error})")
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


def restriction_identity(family, phis: Sequence[dv.Derivation]) -> bool:
    """``phi_j|z=0`` against the closed form (doubled for type C)."""
    family = as_family(family)
    factor = 1 if family is Family.B else 2
    for j, d in enumerate(phis, start=1):
        expected = dv.solomon_terao_restriction(j, d.rank).scale(factor)
        if not d.restrict_z0().same_coefficients(expected):
            return False
    return True


def full_verify(
    family,
    rank: int,
    mode: Mode | str = Mode.EXACT,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    basis: Sequence[dv.Derivation] | None = None,
) -> Certificate:
    """Membership, restriction identity and Saito's criterion in one report.

    ``basis`` overrides the constructed ``[theta_E, phi_1, ..., phi_l]``.
    """
    family = as_family(family)
    mode = Mode(str(mode))
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    a = shi_cone(family, rank)
    rows = list(basis) if basis is not None else dv.basis(family, rank)
    membership = [check_membership(d, a) for d in rows]
    restriction = restriction_identity(family, rows[1:])
    saito, err = None, None
    try:
        saito = saito_check(rows, a, mode, seed, trials)
    except BasisCheckFailed as exc:
        err = f"{type(exc).__name__}: {exc}"
    return Certificate(family, rank, membership, restriction, saito, err, mode)
