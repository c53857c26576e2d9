"""Human-readable rendering of polynomials (plain text and LaTeX)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _names(nvars: int, names: Sequence[str] | None) -> list[str]:
    from .poly import default_names

    return list(names) if names is not None else default_names(nvars)


def _monomial_text(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_text(c: Fraction, mono: str) -> str:
    num, den = abs(c.numerator), c.denominator
    if mono:
        body = mono if num == 1 else f"{num}{mono}"
    else:
        body = str(num)
    if den != 1:
        body += f"/{den}"
    return body


def _join(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for i, (c, body) in enumerate(terms):
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def poly_to_text(p, names: Sequence[str] | None = None) -> str:
    """E.g. ``x1^3/3 + 2x1*z^2/3``; terms leading first."""
    names = _names(p.nvars, names)
    return _join([(c, _term_text(c, _monomial_text(e, names))) for e, c in p.terms.items()])


def unipoly_to_text(coeffs: Sequence[Fraction], var: str = "x") -> str:
    """Dense coefficients, lowest degree first; printed highest first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c:
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append((c, _term_text(c, mono)))
    return _join(terms)


def _latex_name(name: str) -> str:
    if len(name) > 1 and name[0].isalpha() and name[1:].isdigit():
        return f"{name[0]}_{{{name[1:]}}}"
    return name


def _monomial_latex(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(_latex_name(name))
        elif e:
            parts.append(f"{_latex_name(name)}^{{{e}}}")
    return " ".join(parts)


def _term_latex(c: Fraction, mono: str) -> str:
    num, den = abs(c.numerator), c.denominator
    if den != 1:
        coeff = f"\\frac{{{num}}}{{{den}}}"
        return f"{coeff} {mono}" if mono else coeff
    if not mono:
        return str(num)
    return mono if num == 1 else f"{num} {mono}"


def poly_to_latex(p, names: Sequence[str] | None = None) -> str:
    names = _names(p.nvars, names)
    return _join([(c, _term_latex(c, _monomial_latex(e, names))) for e, c in p.terms.items()])


def unipoly_to_latex(coeffs: Sequence[Fraction], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c:
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{{{k}}}")
            terms.append((c, _term_latex(c, mono)))
    return _join(terms)
