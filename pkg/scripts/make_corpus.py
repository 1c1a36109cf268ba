"""Regenerate the bundled group files under src/verba/corpus."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from verba.constructions import semidirect_cyclic
from verba.groupfile import table_document
from verba.standard import abelian_group, abelian_invariant_lists, quaternion_group

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "verba" / "corpus"


def dihedral_permutations(order: int) -> dict:
    m = order // 2
    rotation = [(i + 1) % m for i in range(m)]
    reflection = [(-i) % m for i in range(m)]
    return {"label": f"D{order}", "permutations": {"degree": m, "generators": [rotation, reflection]}}


def documents():
    for inv in abelian_invariant_lists(32):
        name = f"cyclic-{inv[0]}" if len(inv) == 1 else "abelian-" + "x".join(map(str, inv))
        yield name, table_document(abelian_group(inv))
    for order in range(6, 101, 2):
        yield f"dihedral-{order}", dihedral_permutations(order)
    yield "quaternion-8", table_document(quaternion_group(), "Q8")
    yield "alternating-4", {"label": "A4", "permutations": {
        "degree": 4, "generators": [[1, 2, 0, 3], [1, 0, 3, 2]]}}
    yield "symmetric-4", {"label": "S4", "permutations": {
        "degree": 4, "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]}}
    yield "frobenius-21", table_document(semidirect_cyclic(7, 3, 2), "F21")
    for name, (q, pr, phi) in {"family-63": (7, 9, 2), "family-80": (5, 16, 2),
                               "family-275": (11, 25, 3)}.items():
        yield name, {"label": name, "semidirect": {"q": q, "pr": pr, "phi": phi}}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    count = 0
    for name, doc in documents():
        (args.out / f"{name}.json").write_text(json.dumps(doc, separators=(",", ":")) + "\n")
        count += 1
    print(f"wrote {count} group files to {args.out}")


if __name__ == "__main__":
    main()
