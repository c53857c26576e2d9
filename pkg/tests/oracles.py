"""Reference computations that share no code path with the package."""

from __future__ import annotations

import itertools
from fractions import Fraction

from shibasis.poly import Poly


def rhs_value(family: str, r: int, s: int, k: int) -> int:
    """Right-hand side of the difference equation at an integer, in plain ints."""
    tail = ((k + 1) * (-k)) ** s
    if family == "B":
        top = (k + 1) ** r - (-k) ** r
        assert top % (2 * k + 1) == 0
        return top // (2 * k + 1) * tail
    return ((k + 1) ** (r - 1) + (-k) ** (r - 1)) * tail


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def telescoping_bernoulli(family: str, r: int, s: int) -> list[Fraction]:
    """Coefficients (lowest first) from F(n) = sum_{k<n} g(k) and interpolation."""
    bound = r + 2 * s  # degree of F never exceeds r + 2s
    values = [Fraction(0)]
    for k in range(bound):
        values.append(values[-1] + rhs_value(family, r, s, k))
    vander = [[Fraction(n) ** e for e in range(bound + 1)] for n in range(bound + 1)]
    coeffs = _solve(vander, values)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def leibniz_det(m: list[list[Poly]]) -> Poly:
    n = len(m)
    nvars = m[0][0].nvars
    total = Poly.zero(nvars)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Poly.const(nvars, -1 if inversions % 2 else 1)
        for row, col in enumerate(perm):
            term = term * m[row][col]
        total = total + term
    return total


def naive_product(p: Poly, q: Poly) -> dict:
    """Product on the tuple-keyed term maps."""
    out: dict = {}
    for ea, ca in p.terms.items():
        for eb, cb in q.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def sample_mutations(basis, count: int, seed: int = 0):
    """Yield ``(description, mutated_basis)``: +1 on one degree-2l monomial of one phi_j coefficient."""
    import random

    rng = random.Random(seed)
    rank = basis[0].rank
    n = rank + 1
    for _ in range(count):
        j = rng.randint(1, rank)
        i = rng.randrange(rank)
        coeff = basis[j].x_coeffs[i]
        if coeff and rng.random() < 0.5:
            mono = rng.choice(list(coeff.terms))
        else:
            cuts = sorted(rng.randint(0, 2 * rank) for _ in range(n - 1))
            mono = tuple(b - a for a, b in zip([0] + cuts, cuts + [2 * rank]))
        bump = Poly.monomial(n, mono, 1)
        mutated = list(basis)
        mutated[j] = basis[j].with_x_coeff(i, coeff + bump)
        yield f"phi_{j} d/dx{i + 1} += {bump}", mutated
