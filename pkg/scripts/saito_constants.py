#!/usr/bin/env python3
"""Tabulate the Saito constant c (det = c * Q) for both families.

    python scripts/saito_constants.py --max-rank 4
    python scripts/saito_constants.py --max-rank 5 --mode probabilistic --trials 8
"""

from __future__ import annotations

import argparse
import time

from shibasis.verifier import Mode, full_verify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=4)
    ap.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=8)
    args = ap.parse_args()

    print(f"{'family':<7}{'rank':>5}  {'status':<7}{'c':>14}{'seconds':>10}")
    for family in ("B", "C"):
        for rank in range(1, args.max_rank + 1):
            t0 = time.perf_counter()
            cert = full_verify(family, rank, args.mode, args.seed, args.trials)
            c = str(cert.saito.constant_c) if cert.saito else "-"
            print(f"{family:<7}{rank:>5}  {cert.status:<7}{c:>14}{time.perf_counter() - t0:>10.2f}")


if __name__ == "__main__":
    main()
