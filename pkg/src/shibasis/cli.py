"""Command-line front end.

Exit codes: 0 on success / PASS, 1 on a failed verification, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import derivation as dv
from .bernoulli import BernoulliKey, as_family, bernoulli, homogenize
from .render import poly_to_latex, poly_to_text
from .verifier import DEFAULT_SEED, DEFAULT_TRIALS, Mode, congruence_sweep, full_verify

FORMATS = ("text", "json", "latex")


@dataclass(frozen=True)
class CliConfig:
    command: str
    family: str = "B"
    rank: int = 1
    mode: str = "exact"
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    format: str = "text"
    output_path: Path | None = None
    r: int = 1
    s: int = 0
    homogeneous: bool = False
    r_max: int | None = None
    s_max: int | None = None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _bernoulli_doc(cfg: CliConfig) -> str:
    key = BernoulliKey(as_family(cfg.family), cfg.r, cfg.s)
    if cfg.homogeneous:
        names = ["x", "z"] if cfg.rank == 1 else None
        p = homogenize(key, cfg.rank + 1, 0)
        if cfg.format == "json":
            return _dump(p.to_json(names))
        return poly_to_latex(p, names) if cfg.format == "latex" else poly_to_text(p, names)
    u = bernoulli(key)
    if cfg.format == "json":
        return _dump(u.to_json())
    return u.to_latex() if cfg.format == "latex" else str(u)


def _basis_doc(cfg: CliConfig) -> str:
    family = as_family(cfg.family)
    rows = dv.basis(family, cfg.rank)
    if cfg.format == "json":
        return _dump({"family": str(family), "rank": cfg.rank, "derivations": [d.to_json() for d in rows]})
    if cfg.format == "latex":
        lines = [f"\\theta_E = {rows[0].to_latex()}"]
        lines += [f"\\varphi_{{{j}}}^{{{family}}} = {d.to_latex()}" for j, d in enumerate(rows[1:], 1)]
        return "\n\n".join(lines)
    return "\n".join(d.to_text() for d in rows)


def _verify_doc(cfg: CliConfig) -> tuple[int, str]:
    cert = full_verify(cfg.family, cfg.rank, cfg.mode, cfg.seed, cfg.trials)
    code = 0 if cert.passed else 1
    if cfg.format == "json":
        return code, _dump(cert.to_json())
    if cfg.format == "latex":
        c = cert.saito.constant_c if cert.saito else None
        body = f"\\det = {c} \\cdot Q" if c is not None else "\\text{Saito check failed}"
        return code, f"% {cert.status}\n{body}"
    return code, cert.to_text()


def _congruence_doc(cfg: CliConfig) -> tuple[int, str]:
    results = congruence_sweep(cfg.family, cfg.rank, cfg.r_max, cfg.s_max)
    bad = [r for r in results if not r.ok]
    r_max = 2 * cfg.rank + 2 if cfg.r_max is None else cfg.r_max
    s_max = cfg.rank if cfg.s_max is None else cfg.s_max
    status = "PASS" if not bad else "FAIL"
    if cfg.format == "json":
        doc = _dump({
            "family": str(as_family(cfg.family)),
            "rank": cfg.rank,
            "r_max": r_max,
            "s_max": s_max,
            "checked": len(results),
            "failures": [{"r": b.r, "s": b.s, "p": b.p, "q": b.q, "eps": b.eps} for b in bad],
            "status": status,
        })
    else:
        lines = [f"{len(results)} congruences checked (r <= {r_max}, s <= {s_max}, eps in -1,0,1)"]
        lines += [f"FAIL r={b.r} s={b.s} p={b.p} q={b.q} eps={b.eps}" for b in bad]
        lines.append(f"status: {status}")
        doc = "\n".join(lines)
    return (0 if not bad else 1), doc


def run(cfg: CliConfig) -> tuple[int, str]:
    """Execute a parsed configuration; returns ``(exit_code, document)``."""
    if cfg.command == "bernoulli":
        return 0, _bernoulli_doc(cfg)
    if cfg.command == "basis":
        return 0, _basis_doc(cfg)
    if cfg.command == "verify":
        return _verify_doc(cfg)
    if cfg.command == "congruence":
        return _congruence_doc(cfg)
    raise ValueError(f"unknown command {cfg.command!r}")


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid int value: {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {value}")
        return value

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shibasis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, rank_default: int | None) -> None:
        p.add_argument("--family", type=str.upper, choices=["B", "C"], default="B")
        if rank_default is None:
            p.add_argument("--rank", type=_int_at_least(1), required=True)
        else:
            p.add_argument("--rank", type=_int_at_least(1), default=rank_default)
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", type=Path, default=None, help="write here instead of stdout")

    b = sub.add_parser("bernoulli", help="print B^F_{r,s}")
    common(b, 1)
    b.add_argument("--r", type=_int_at_least(1), required=True)
    b.add_argument("--s", type=_int_at_least(0), required=True)
    b.add_argument("--homogeneous", action="store_true", help="print z^(r+2s) B(x/z)")

    s = sub.add_parser("basis", help="print theta_E and phi_1..phi_l")
    common(s, None)

    v = sub.add_parser("verify", help="certify the basis; exit 0 iff PASS")
    common(v, None)
    v.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--trials", type=_int_at_least(1), default=DEFAULT_TRIALS)

    c = sub.add_parser("congruence", help="sweep the congruence relations")
    common(c, None)
    c.add_argument("--r-max", type=_int_at_least(1), default=None)
    c.add_argument("--s-max", type=_int_at_least(0), default=None)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> CliConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "congruence" and ns.rank < 2:
        parser.error("congruence needs --rank >= 2")
    fields = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    return CliConfig(output_path=ns.out, **fields)


def main(argv: Sequence[str] | None = None) -> int:
    cfg = parse_config(argv)
    code, doc = run(cfg)
    if cfg.output_path is not None:
        cfg.output_path.write_text(doc + "\n")
    else:
        sys.stdout.write(doc + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
