"""Order of the word-map group W(G) for small groups, with timings.

    python3 scripts/reproduce_fv_s3.py            # S3 and a few neighbours
    python3 scripts/reproduce_fv_s3.py --cap 10000
"""

from __future__ import annotations

import argparse
import time

from verba.standard import abelian_group, dicyclic_group, dihedral_group, quaternion_group, symmetric_group
from verba.wordmaps import build_word_map_group


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--cap", type=int, default=1_000_000)
    ap.add_argument("-d", type=int, default=2)
    args = ap.parse_args(argv)
    groups = [symmetric_group(3), abelian_group((2, 2)), dihedral_group(8), quaternion_group(),
              dihedral_group(10), dicyclic_group(12), dihedral_group(16)]
    print(f"{'group':<10}{'order':>6}{'|W(G)|':>12}{'seconds':>10}")
    for G in groups:
        t = time.perf_counter()
        W = build_word_map_group(G, args.d, args.cap)
        size = f">{W.order}" if W.truncated else str(W.order)
        print(f"{G.label:<10}{G.order:>6}{size:>12}{time.perf_counter() - t:>10.2f}")


if __name__ == "__main__":
    main()
