"""The group W(G) of d-variable word maps, built by breadth-first search.

A word map is stored as its full array of values on ``G^d`` (mixed-radix
order, first coordinate most significant), so two words define the same
map exactly when their arrays agree.  W(G) is isomorphic to the relatively
free group of rank d in the variety generated by G, which is why the BFS
also yields |FV(G)|.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .config import DEFAULT_LIMITS, BudgetExceeded, Limits
from .groups import ElementSet, FiniteGroup, minimal_generator_count
from .verdict import ACHIRAL, CHIRAL, UNKNOWN, ChiralityVerdict, chiral_certificate
from .words import Word, decode_tuple


@dataclass(frozen=True, eq=False)
class WordMapTable:
    values: np.ndarray
    rep_word: Word
    group_order: int


@dataclass(eq=False)
class WordMapGroup:
    group: FiniteGroup
    d: int
    values: np.ndarray          # one row per map, BFS order; row 0 is the trivial map
    parent: np.ndarray
    edge: np.ndarray            # generator index used to reach the row from its parent
    truncated: bool
    stats: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.order

    def generator_letters(self) -> list[tuple[int, int]]:
        return [(i, s) for i in range(self.d) for s in (1, -1)]

    def rep_word(self, i: int) -> Word:
        letters = self.generator_letters()
        path = []
        while i != 0:
            path.append(letters[self.edge[i]])
            i = int(self.parent[i])
        return Word(tuple(reversed(path)), self.d)

    def map(self, i: int) -> WordMapTable:
        return WordMapTable(self.values[i], self.rep_word(i), self.group.order)

    def maps(self) -> Iterator[WordMapTable]:
        for i in range(self.order):
            yield self.map(i)

    def index_of(self, values: np.ndarray) -> int | None:
        key = np.asarray(values, dtype=self.values.dtype).tobytes()
        if not hasattr(self, "_index"):
            self._index = {row.tobytes(): i for i, row in enumerate(self.values)}
        return self._index.get(key)

    def projections(self) -> list[np.ndarray]:
        return projection_maps(self.group.order, self.d)


def projection_maps(n: int, d: int) -> list[np.ndarray]:
    ar = np.arange(n ** d, dtype=np.int64)
    return [(ar // n ** (d - 1 - i)) % n for i in range(d)]


def _storage_dtype(n: int):
    if n <= 256:
        return np.uint8
    if n <= 65536:
        return np.uint16
    return np.int32


def build_word_map_group(G: FiniteGroup, d: int, cap: int | None = None, *,
                         limits: Limits = DEFAULT_LIMITS,
                         on_new: Callable[[np.ndarray, int], bool] | None = None,
                         ) -> WordMapGroup:
    """BFS on the Cayley graph of W(G) from the trivial map.

    Edges multiply point-wise by the projections ``x_i`` and their inverses,
    so the BFS parent chain gives a shortest representative word for every
    map.  The search stops with ``truncated=True`` once ``cap`` maps (or the
    memory budget) would be exceeded.  ``on_new(rows, first_index)`` sees
    every batch of new maps and may return True to stop early; the result is
    then marked truncated as well.
    """
    started = time.perf_counter()
    n = G.order
    tuples = n ** d
    if tuples > limits.tuple_budget:
        raise BudgetExceeded(f"|G|^d = {tuples} exceeds tuple budget {limits.tuple_budget}")
    cap = limits.map_cap if cap is None else cap
    dtype = _storage_dtype(n)
    row_bytes = tuples * np.dtype(dtype).itemsize
    # generator arrays plus int64 temporaries of one BFS step
    overhead = 2 * d * row_bytes + 24 * tuples
    if limits.memory_budget - overhead < 2 * row_bytes:
        raise BudgetExceeded(f"|G|^d = {tuples} value arrays need about {overhead + 2 * row_bytes} "
                             f"bytes, beyond the memory budget {limits.memory_budget}")
    effective_cap = max(1, min(cap, (limits.memory_budget - overhead) // row_bytes))
    table = G.table
    gens = []
    for p in projection_maps(n, d):
        gens.append(p.astype(dtype))
        gens.append(G.inverses[p].astype(dtype))

    store = np.empty((min(effective_cap, 1024), tuples), dtype=dtype)
    store[0] = G.identity
    parent = [0]
    edge = [-1]
    index = {store[0].tobytes(): 0}
    count = 1
    truncated = False
    stopped = on_new is not None and on_new(store[:1], 0)
    frontier = np.array([0])
    batch = max(1, 4_000_000 // tuples)
    while len(frontier) and not truncated and not stopped:
        next_frontier = []
        for lo in range(0, len(frontier), batch):
            rows_idx = frontier[lo:lo + batch]
            F = store[rows_idx].astype(np.int64)
            for gi, g in enumerate(gens):
                nb = table[F, g[None, :]].astype(dtype)
                first_new = count
                for r in range(nb.shape[0]):
                    key = nb[r].tobytes()
                    if key in index:
                        continue
                    if count >= effective_cap:
                        truncated = True
                        break
                    if count >= store.shape[0]:
                        grown = np.empty((min(effective_cap, 2 * store.shape[0]), tuples), dtype=dtype)
                        grown[:count] = store[:count]
                        store = grown
                    store[count] = nb[r]
                    index[key] = count
                    parent.append(int(rows_idx[r]))
                    edge.append(gi)
                    next_frontier.append(count)
                    count += 1
                if on_new is not None and count > first_new:
                    stopped = bool(on_new(store[first_new:count], first_new))
                if truncated or stopped:
                    break
            if truncated or stopped:
                break
        frontier = np.array(next_frontier, dtype=np.int64)
    W = WordMapGroup(G, d, store[:count].copy(), np.array(parent), np.array(edge),
                     truncated or stopped)
    W._index = index
    W.stats = {"maps": count, "cap": cap, "effective_cap": effective_cap,
               "tuples": tuples, "stopped_early": stopped, "cap_hit": truncated,
               "elapsed": round(time.perf_counter() - started, 4)}
    return W


def word_map_image(m: WordMapTable) -> ElementSet:
    return ElementSet.from_ids(m.group_order, np.unique(m.values))


def _chirality_violations(G: FiniteGroup, rows: np.ndarray) -> tuple[int, int] | None:
    """First (row, element) whose image misses the element's inverse."""
    k = rows.shape[0]
    masks = np.zeros((k, G.order), dtype=bool)
    masks[np.arange(k)[:, None], rows.astype(np.int64)] = True
    bad = masks & ~masks[:, G.inverses]
    hit = np.flatnonzero(bad.any(axis=1))
    if not len(hit):
        return None
    r = int(hit[0])
    return r, int(np.flatnonzero(bad[r])[0])


def decide_chirality(G: FiniteGroup, cap: int | None = None, *, d: int | None = None,
                     limits: Limits = DEFAULT_LIMITS) -> ChiralityVerdict:
    """Exhaustive decision through W(G).

    With ``d`` generators of G it is enough to look at d-variable words; the
    image of a word map is read off its value array.  A violating map found
    before the cap is a complete certificate, so truncation only turns an
    otherwise achiral outcome into ``unknown``.
    """
    started = time.perf_counter()
    d = minimal_generator_count(G) if d is None else d
    d = max(d, 1)
    found: dict = {}

    def check(rows, first):
        v = _chirality_violations(G, rows)
        if v is not None:
            found["row"], found["element"] = first + v[0], v[1]
            return True
        return False

    try:
        W = build_word_map_group(G, d, cap, limits=limits, on_new=check)
    except BudgetExceeded as exc:
        return ChiralityVerdict(UNKNOWN, "neumann-exhaustive",
                                {"reason": str(exc), "d": d},
                                {"elapsed": round(time.perf_counter() - started, 4)})
    stats = dict(W.stats, d=d, elapsed=round(time.perf_counter() - started, 4))
    if found:
        i, x = found["row"], found["element"]
        word = W.rep_word(i)
        pos = int(np.flatnonzero(W.values[i] == x)[0])
        args = decode_tuple(pos, G.order, d)
        cert = chiral_certificate(word, x, G.inv(x), args)
        return ChiralityVerdict(CHIRAL, "neumann-exhaustive", cert, stats)
    if W.truncated:
        return ChiralityVerdict(UNKNOWN, "neumann-exhaustive",
                                {"reason": "word-map group truncated", "maps_seen": W.order,
                                 "cap": stats["cap"], "effective_cap": stats["effective_cap"],
                                 "d": d}, stats)
    return ChiralityVerdict(ACHIRAL, "neumann-exhaustive",
                            {"d": d, "word_map_group_order": W.order}, stats)


def verify_fv_group_axioms(W: WordMapGroup) -> str | None:
    """Recheck that the stored maps form a group; ``None`` means they do."""
    if W.truncated:
        raise ValueError("cannot verify truncated set")
    G = W.group
    if not np.all(W.values[:, 0] == G.identity):
        return "a map is not the identity on the all-identity tuple"
    trivial = np.full(W.values.shape[1], G.identity, dtype=W.values.dtype)
    if W.index_of(trivial) is None:
        return "the trivial map is missing"
    vals = W.values.astype(np.int64)
    for i, p in enumerate(W.projections()):
        if W.index_of(p) is None:
            return f"projection x{i + 1} is missing"
        for g in (p, G.inverses[p]):
            prods = G.table[vals, g[None, :]]
            for r, row in enumerate(prods):
                if W.index_of(row) is None:
                    return f"map {r} times a generator leaves the set"
    inverses = G.inverses[vals]
    for r, row in enumerate(inverses):
        if W.index_of(row) is None:
            return f"inverse of map {r} is missing"
    from .groups import validate_group
    problem = validate_group(G)
    if problem is not None:
        return f"point-wise product not associative: {problem}"
    return None


def dump_maps(W: WordMapGroup, stream) -> None:
    """One line per map: representative word, a tab, the values in base |G|."""
    n = W.group.order
    digits = "0123456789abcdefghijklmnopqrstuvwxyz"
    for i in range(W.order):
        row = W.values[i]
        if n <= len(digits):
            digest = "".join(digits[int(v)] for v in row)
        else:
            digest = " ".join(str(int(v)) for v in row)
        stream.write(f"{W.rep_word(i)}\t{digest}\n")
