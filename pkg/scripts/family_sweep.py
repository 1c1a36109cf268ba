"""Enumerate small family parameters (q, p, r, phi), verify each member and report minimality."""

from __future__ import annotations

import argparse
import time

from verba.constructions import FamilyParameters, build_family_group, validate_family, verify_family_chirality
from verba.filters import is_minimal_chiral


def candidates(max_order: int):
    for q in range(3, max_order):
        for phi in range(2, q):
            for p in range(2, q):
                if pow(phi, p, q) != 1:
                    continue
                for r in range(p, max_order // (q * p) + 1, p):
                    params = FamilyParameters(q, p, r, phi)
                    if params.order <= max_order and validate_family(params) is None:
                        yield params
                break   # p is the order of phi; larger multiples give no new members


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=300)
    ap.add_argument("--minimal", action="store_true", help="also test minimal chirality")
    args = ap.parse_args(argv)
    for params in candidates(args.max_order):
        t = time.perf_counter()
        v = verify_family_chirality(params)
        line = (f"q={params.q:<3} p={params.p:<2} r={params.r:<3} phi={params.phi:<3} "
                f"order={params.order:<5} {v.status} image={v.stats['image_size']:<4}")
        if args.minimal:
            G, _ = build_family_group(params)
            line += f" minimal={is_minimal_chiral(G, v)}"
        print(line + f" {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
