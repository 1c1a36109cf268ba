"""Independent re-checking of verdict certificates.

Nothing here calls the search code: word images are enumerated with plain
``itertools.product`` loops over the table, subgroups and power sets are
recomputed from scratch, and the word-map group is rebuilt with its own
breadth-first search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup
from .words import parse_word


@dataclass
class ReplayResult:
    ok: bool
    method: str
    problems: list[str] = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "method": self.method, "problems": self.problems,
                "checked": self.checked}


def _eval(letters, table, inv, args) -> int:
    out = 0
    for var, sign in letters:
        g = args[var]
        out = table[out][g if sign == 1 else inv[g]]
    return out


def naive_image(letters, arity: int, table, inv) -> set[int]:
    n = len(table)
    return {_eval(letters, table, inv, args) for args in itertools.product(range(n), repeat=arity)}


def _is_automorphism(table: np.ndarray, images) -> bool:
    images = np.asarray(images, dtype=np.int64)
    n = len(table)
    if images.shape != (n,) or sorted(images.tolist()) != list(range(n)):
        return False
    return bool(np.array_equal(images[table], table[images[:, None], images[None, :]]))


def _closure(table, seeds) -> set[int]:
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in seeds:
                y = int(table[x][s])
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return found


def _power_commutator_sets(table, inv) -> dict[int, set[int]]:
    n = len(table)
    orders = []
    for g in range(n):
        k, x = 1, g
        while x != 0:
            x, k = int(table[x][g]), k + 1
        orders.append(k)
    e = int(np.lcm.reduce(orders))
    comms = {int(table[table[inv[x]][inv[y]]][table[x][y]]) for x in range(n) for y in range(n)}
    derived = _closure(table, sorted(comms))
    out = {}
    for k in (k for k in range(1, e + 1) if e % k == 0):
        powers = set()
        for g in range(n):
            x = 0
            for _ in range(k):
                x = int(table[x][g])
            powers.add(x)
        prod = {int(table[p][d]) for p in powers for d in derived}
        out[k] = prod - powers
    return out


class _Checker:
    def __init__(self, G: FiniteGroup):
        self.G = G
        self.table = G.table.tolist()
        self.inv = G.inverses.tolist()
        self.problems: list[str] = []
        self.checked: dict = {}

    def fail(self, msg: str):
        self.problems.append(msg)

    def automorphisms(self, cert) -> list[list[int]] | None:
        auts = cert.get("automorphisms", [])
        for i, a in enumerate(auts):
            if not _is_automorphism(self.G.table, a):
                self.fail(f"automorphism {i} is not an automorphism")
                return None
        self.checked["automorphisms"] = len(auts)
        return auts

    def inverse_witnesses(self, cert, elements) -> None:
        auts = self.automorphisms(cert)
        if auts is None:
            return
        witness = {int(x): int(i) for x, i in cert.get("witness", [])}
        for x in elements:
            i = witness.get(x)
            if i is None or not 0 <= i < len(auts):
                self.fail(f"element {x} has no inverting automorphism")
                return
            if auts[i][x] != self.inv[x]:
                self.fail(f"automorphism {i} does not send {x} to its inverse")
                return

    # -- per-method checks -----------------------------------------------------------

    def chiral(self, cert) -> None:
        try:
            w = parse_word(cert["word"])
        except (KeyError, ValueError) as exc:
            self.fail(f"witness word unreadable: {exc}")
            return
        arity = int(cert.get("arity", w.arity))
        w = w.with_arity(max(arity, w.arity))
        x, xinv = int(cert["element"]), int(cert["inverse"])
        args = [int(a) for a in cert.get("arguments", [])]
        n = self.G.order
        if not (0 <= x < n and 0 <= xinv < n):
            self.fail("witness element out of range")
            return
        if self.inv[x] != xinv:
            self.fail(f"recorded inverse {xinv} is not the inverse of {x}")
        if len(args) != w.arity or _eval(w.letters, self.table, self.inv, args) != x:
            self.fail("arguments do not evaluate to the witness element")
        img = naive_image(w.letters, w.arity, self.table, self.inv)
        self.checked["image_size"] = len(img)
        if x not in img:
            self.fail(f"witness element {x} is not in the image")
        if self.inv[x] in img:
            self.fail(f"inverse {self.inv[x]} of the witness lies in the image")

    def abelian(self, cert) -> None:
        t = self.G.table
        if not np.array_equal(t, t.T):
            self.fail("group is not abelian")

    def aut_inverse(self, cert) -> None:
        self.inverse_witnesses(cert, range(self.G.order))

    def power_commutator(self, cert) -> None:
        sets = _power_commutator_sets(self.table, self.inv)
        claimed = {int(k): set(v) for k, v in cert.get("sets", {}).items()}
        if claimed != sets:
            self.fail("recorded power-commutator sets differ from a recomputation")
            return
        self.checked["divisors"] = sorted(sets)
        self.inverse_witnesses(cert, sorted(set().union(*sets.values())))

    def split_extension(self, cert) -> None:
        t, inv, n = self.table, self.inv, self.G.order
        N, H = set(cert["N"]), set(cert["H"])
        if _closure(t, sorted(N)) != N or _closure(t, sorted(H)) != H:
            self.fail("N or H is not a subgroup")
            return
        if any(t[inv[g]][t[x][g]] not in N for g in range(n) for x in N):
            self.fail("N is not normal")
        if any(t[x][y] != t[y][x] for x in N for y in N):
            self.fail("N is not abelian")
        if N & H != {0} or len(N) * len(H) != n:
            self.fail("H is not a complement of N")
        sigma = cert["inversion"]
        if not _is_automorphism(self.G.table, sigma):
            self.fail("inversion map is not an automorphism")
        elif any(sigma[x] != inv[x] for x in N) or any(sigma[h] != h for h in H):
            self.fail("inversion map does not invert N and fix H")
        auts = self.automorphisms(cert)
        if auts is None:
            return
        target = N | H
        landing = {int(g): (int(i), int(y)) for g, i, y in cert["landing"]}
        for g in range(n):
            if g not in landing:
                self.fail(f"element {g} has no landing entry")
                return
            i, y = landing[g]
            img = g if i == -1 else auts[i][g]
            if img != y or y not in target:
                self.fail(f"element {g} does not land in N or H")
                return
        ids = sorted(H)
        local = {g: k for k, g in enumerate(ids)}
        sub = [[local[t[a][b]] for b in ids] for a in ids]
        Hg = FiniteGroup.from_table(sub, "complement")
        inner = replay_verdict(cert["h_verdict"], Hg)
        self.checked["h_verdict"] = inner.to_dict()
        if not inner.ok or cert["h_verdict"].get("verdict") != "achiral":
            self.fail("complement verdict does not replay as achiral")

    def neumann_achiral(self, cert) -> None:
        d = int(cert["d"])
        n = self.G.order
        tab = self.G.table.astype(np.int64)
        idx = np.indices((n,) * d).reshape(d, -1)
        gens = [idx[i] for i in range(d)] + [self.G.inverses[idx[i]] for i in range(d)]
        seen = {np.zeros(n ** d, dtype=np.int64).tobytes()}
        frontier = [np.zeros(n ** d, dtype=np.int64)]
        while frontier:
            nxt = []
            for f in frontier:
                for g in gens:
                    h = tab[f, g]
                    key = h.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(h)
                        vals = set(np.unique(h).tolist())
                        if any(self.inv[v] not in vals for v in vals):
                            self.fail("a word map with a non-inverse-closed image exists")
                            return
            frontier = nxt
        self.checked["word_map_group_order"] = len(seen)
        if len(seen) != int(cert["word_map_group_order"]):
            self.fail(f"recomputed |W(G)| = {len(seen)} differs from {cert['word_map_group_order']}")


def replay_verdict(report: dict, G: FiniteGroup) -> ReplayResult:
    """Recheck a verdict dictionary (``verdict``, ``method``, ``certificate``) against ``G``."""
    status, method = report.get("verdict"), report.get("method", "")
    cert = report.get("certificate") or {}
    c = _Checker(G)
    try:
        if status == "chiral":
            c.chiral(cert)
        elif status == "achiral":
            handler = {
                "abelian": c.abelian,
                "aut-inverse": c.aut_inverse,
                "power-commutator": c.power_commutator,
                "split-extension": c.split_extension,
                "neumann-exhaustive": c.neumann_achiral,
            }.get(method)
            if handler is None:
                c.fail(f"no replay rule for achiral method {method!r}")
            else:
                handler(cert)
        else:
            c.fail(f"verdict {status!r} carries nothing to replay")
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        c.fail(f"malformed certificate: {exc!r}")
    return ReplayResult(not c.problems, method, c.problems, c.checked)
