#!/usr/bin/env python3
"""Write theta_E, phi_1..phi_l and the verification certificate for a range of ranks.

    python scripts/export_bases.py --out results/ --max-rank 4
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from shibasis.derivation import basis
from shibasis.verifier import full_verify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--max-rank", type=int, default=3)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for family in ("B", "C"):
        for rank in range(1, args.max_rank + 1):
            rows = basis(family, rank)
            stem = args.out / f"{family}{rank}"
            stem.with_suffix(".basis.json").write_text(
                json.dumps({"family": family, "rank": rank, "derivations": [d.to_json() for d in rows]}, indent=2)
            )
            stem.with_suffix(".tex").write_text("\n\n".join(f"% {d.label}\n{d.to_latex()}" for d in rows) + "\n")
            cert = full_verify(family, rank)
            stem.with_suffix(".certificate.json").write_text(json.dumps(cert.to_json(), indent=2))
            print(f"{family}{rank}: {cert.status}  c = {cert.saito.constant_c if cert.saito else '-'}")


if __name__ == "__main__":
    main()
