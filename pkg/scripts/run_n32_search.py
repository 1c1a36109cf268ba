"""Exhaustive search for an endomorphism inverting a^(p^2) c^p d in N32 quotients.

Runs the main quotient (p^3, p^2, p^2, p, p) and the variant with c of order p,
in the chosen mode, and prints the certificates as JSON lines.
"""

from __future__ import annotations

import argparse
import json

from verba.nilpotent.search import n32_congruence_certificate, n32_witness_search


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--mode", choices=("full", "restricted"), default="restricted")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)
    p = args.p
    from verba.config import Limits
    limits = Limits.from_env(threads=args.threads)
    for moduli in [(p ** 3, p * p, p * p, p, p), (p ** 3, p * p, p, p, p)]:
        res = n32_witness_search(p, moduli, args.mode, limits=limits)
        print(json.dumps(res.to_dict()))
    cert = n32_congruence_certificate(p)
    print(json.dumps({"p": p, "congruences_ok": cert.ok, "c_solutions": cert.c_solutions,
                      "d_solutions": cert.d_solutions}))


if __name__ == "__main__":
    main()
