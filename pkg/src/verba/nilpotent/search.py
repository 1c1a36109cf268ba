"""Exhaustive search for an endomorphism of an N32 quotient inverting a given element.

For ``phi: a -> u, b -> v`` the image of ``g = a^i b^j c^k d^l e^m`` is
``u^i v^j [u,v]^k [[u,v],u]^l [[u,v],v]^m``.  The ``a``-coordinate of that
product is ``i*u_a + j*v_a`` modulo ``m_a``, so every pair is first screened
on it; only pairs that pass are evaluated in full.  Restricted mode also
drops, before enumeration, every ``u`` that cannot pass the screen when
``j = 0``.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..config import BudgetExceeded, Limits
from .n32 import (
    A, B, N32Element, N32Quotient, comm5, default_moduli, mul5, n32_witness_element,
    pow5, reduce_mod,
)

MODES = ("full", "restricted")


@dataclass
class SearchResult:
    found: bool
    pair: tuple[N32Element, N32Element] | None
    moduli: tuple[int, ...]
    mode: str
    element: N32Element
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "outcome": "found" if self.found else "no-endomorphism",
            "moduli": list(self.moduli),
            "mode": self.mode,
            "element": list(self.element.coords),
            "stats": dict(self.stats),
        }
        if self.pair is not None:
            out["u"] = list(self.pair[0].coords)
            out["v"] = list(self.pair[1].coords)
        return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


def _seed_pairs():
    """Sign flips of the generators, tried before the sweep."""
    for u in (A, A.inverse()):
        for v in (B, B.inverse()):
            yield u, v


def n32_witness_search(p: int, moduli=None, mode: str = "full", element: N32Element | None = None,
                       limits: Limits | None = None, block: int = 48) -> SearchResult:
    """Look for ``(u, v)`` with ``phi(g) = g^-1`` in the quotient with the given moduli.

    ``g`` defaults to ``a^(p^2) c^p d``.  Pairs that do not define an
    endomorphism are skipped.  Returns the first hit, or a certificate that
    none exists together with counts of what was examined.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if p % 2 == 0 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    limits = limits or Limits.from_env()
    Q = N32Quotient(tuple(moduli) if moduli is not None else default_moduli(p))
    g = element if element is not None else n32_witness_element(p)
    gr = reduce_mod(g.coords, Q.moduli)
    target = Q.inv(gr)
    ma, mb, mc, md, me = Q.moduli
    t0 = time.perf_counter()
    stats = {"quotient_order": Q.order, "seeded": 0, "pairs_examined": 0,
             "a_screen_passed": 0, "u_candidates": 0, "v_candidates": 0,
             "relations_checked_pairwise": False, "threads": limits.threads}

    def finish(found, pair):
        stats["elapsed_seconds"] = round(time.perf_counter() - t0, 3)
        return SearchResult(found, pair, Q.moduli, mode, N32Element(gr), stats)

    for u, v in _seed_pairs():
        uc, vc = reduce_mod(u.coords, Q.moduli), reduce_mod(v.coords, Q.moduli)
        stats["seeded"] += 1
        if Q.is_endomorphism(uc, vc) and Q.apply(uc, vc, gr) == target:
            return finish(True, (N32Element(uc), N32Element(vc)))

    E = tuple(x.astype(np.int64) for x in Q.element_arrays())
    zero = np.zeros(Q.order, dtype=bool)
    u_ok = ~zero
    v_ok = ~zero
    for x in Q.pow(E, ma):
        u_ok &= x == 0
    for x in Q.pow(E, mb):
        v_ok &= x == 0
    if mode == "restricted" and gr[1] == 0:
        u_ok &= (gr[0] * E[0] - target[0]) % ma == 0
    u_idx = np.flatnonzero(u_ok)
    v_idx = np.flatnonzero(v_ok)
    stats["u_candidates"] = int(u_idx.size)
    stats["v_candidates"] = int(v_idx.size)
    total = u_idx.size * v_idx.size
    if total > limits.pair_budget:
        raise BudgetExceeded(f"{total} candidate pairs exceed the pair budget {limits.pair_budget}")
    V = tuple(x[v_idx] for x in E)
    check_all = not Q.relations_automatic()
    stats["relations_checked_pairwise"] = check_all
    stop = threading.Event()
    lock = threading.Lock()
    hits: list[tuple[int, tuple, tuple]] = []

    def run_block(start: int):
        if stop.is_set():
            return
        ids = u_idx[start:start + block]
        U = tuple(x[ids][:, None] for x in E)
        a_coord = (gr[0] * U[0] + gr[1] * V[0][None, :]) % ma
        ui, vi = np.nonzero(a_coord == target[0])
        uu = tuple(x[ui, 0] for x in U)
        vv = tuple(x[vi] for x in V)
        ok = np.ones(ui.size, dtype=bool)
        if check_all:
            ok = _relations_hold(Q, uu, vv)
        img = Q.apply(uu, vv, gr)
        hit = ok.copy()
        for coord, want in zip(img, target):
            hit &= coord == want
        with lock:
            stats["pairs_examined"] += ids.size * V[0].size
            stats["a_screen_passed"] += int(ui.size)
            if hit.any():
                k = int(np.flatnonzero(hit)[0])
                hits.append((start, tuple(int(x[k]) for x in uu), tuple(int(x[k]) for x in vv)))
                stop.set()

    starts = range(0, u_idx.size, block)
    if limits.threads > 1:
        with ThreadPoolExecutor(limits.threads) as pool:
            list(pool.map(run_block, starts))
    else:
        for s in starts:
            run_block(s)
            if stop.is_set():
                break
    if hits:
        _, u, v = min(hits)
        return finish(True, (N32Element(u), N32Element(v)))
    return finish(False, None)


def _relations_hold(Q: N32Quotient, uu, vv) -> np.ndarray:
    ma, mb, mc, md, me = Q.moduli
    cc = Q.comm(uu, vv)
    ok = np.ones(uu[0].shape, dtype=bool)
    for base, m in ((uu, ma), (vv, mb), (cc, mc), (Q.comm(cc, uu), md), (Q.comm(cc, vv), me)):
        for x in Q.pow(base, m):
            ok &= x == 0
    return ok


# --- the two congruences -------------------------------------------------

@dataclass
class CongruenceCertificate:
    p: int
    rows: list[dict]
    c_solutions: list[int]
    d_solutions: list[int]

    @property
    def ok(self) -> bool:
        p = self.p
        xs = range(p * p)
        return (self.c_solutions == [x for x in xs if x % p == 1]
                and self.d_solutions == [x for x in xs if x % p == p - 1]
                and not set(self.c_solutions) & set(self.d_solutions))

    def to_dict(self) -> dict:
        return {"p": self.p, "ok": self.ok, "c_solutions": self.c_solutions,
                "d_solutions": self.d_solutions, "rows": self.rows}


def n32_congruence_certificate(p: int, seed: int = 0) -> CongruenceCertificate:
    """Sweep the exponent ``x`` of ``b`` in ``phi(b)`` over residues mod ``p^2``.

    With ``phi(a) = a^-1 c^s1 d^s2 e^s3`` and ``phi(b) = a^t0 b^x c^t1 d^t2 e^t3``
    (the starred exponents drawn at random, since the conditions must not
    depend on them), ``phi(g) = g^-1`` for ``g = a^(p^2) c^p d`` needs the
    ``c``-coordinate of ``phi(g)`` to be ``-p`` mod ``p^2`` and the
    ``d``-coordinate to be ``p^3 - 1`` mod ``p``.  Each row records both tests.
    """
    if p == 2:
        raise ValueError("p = 2 is excluded: the two congruences coincide modulo 2")
    if not _is_prime(p):
        raise ValueError("p must be an odd prime")
    rng = np.random.default_rng(seed)
    g = n32_witness_element(p).coords
    ginv = N32Element(g).inverse().coords
    rows = []
    for x in range(p * p):
        s1, s2, s3, t0, t1, t2, t3 = (int(r) for r in rng.integers(-3 * p, 3 * p, size=7))
        u = (-1, 0, s1, s2, s3)
        v = (t0, x, t1, t2, t3)
        img = _apply_exact(u, v, g)
        c_ok = (img[2] - ginv[2]) % (p * p) == 0
        d_ok = (img[3] - ginv[3]) % p == 0
        rows.append({"x": x, "c": img[2], "d": img[3], "c_condition": bool(c_ok),
                     "d_condition": bool(d_ok)})
    return CongruenceCertificate(
        p, rows,
        [r["x"] for r in rows if r["c_condition"]],
        [r["x"] for r in rows if r["d_condition"]],
    )


def _apply_exact(u, v, g):
    cc = comm5(u, v)
    out = pow5(u, g[0])
    for f, k in ((v, g[1]), (cc, g[2]), (comm5(cc, u), g[3]), (comm5(cc, v), g[4])):
        out = mul5(out, pow5(f, k))
    return out
