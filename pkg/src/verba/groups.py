"""Finite groups stored as multiplication tables.

Elements are dense integer ids ``0..n-1``; after normalisation the identity
is always id 0.  Every algorithm downstream is a sequence of table lookups,
mostly vectorised through numpy fancy indexing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import DEFAULT_ORDER_CAP, BudgetExceeded


class GroupError(ValueError):
    """Malformed group data (non-square table, ids out of range, ...)."""


@dataclass(frozen=True, eq=False)
class ElementSet:
    """Membership bitset over the element ids of one group."""

    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_ids(cls, n: int, ids: Iterable[int]) -> "ElementSet":
        mask = np.zeros(n, dtype=bool)
        ids = np.fromiter(ids, dtype=np.int64) if not isinstance(ids, np.ndarray) else ids
        mask[ids] = True
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(np.ones(n, dtype=bool))

    @property
    def universe(self) -> int:
        return len(self.mask)

    def ids(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def to_list(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.mask)]

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_list())

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.mask.shape == other.mask.shape and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash(np.packbits(self.mask).tobytes())

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask & ~other.mask)

    def issubset(self, other: "ElementSet") -> bool:
        return not bool(np.any(self.mask & ~other.mask))

    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __repr__(self) -> str:
        ids = self.to_list()
        shown = ", ".join(map(str, ids[:12])) + (", ..." if len(ids) > 12 else "")
        return f"ElementSet({{{shown}}} of {self.universe})"


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[a, b]`` is the id of the product ``a*b``.  Use
    :meth:`from_table` to build one from raw data; it validates the axioms
    and moves the identity to id 0.
    """

    table: np.ndarray
    identity: int
    inverses: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.table.setflags(write=False)
        self.inverses.setflags(write=False)

    @classmethod
    def from_table(cls, table, label: str = "", *, check: bool = True,
                   normalize: bool = True) -> "FiniteGroup":
        t = _as_table(table)
        n = t.shape[0]
        identity = _find_identity(t)
        if identity is None:
            raise GroupError("table has no two-sided identity")
        if normalize and identity != 0:
            perm = np.arange(n)
            perm[[0, identity]] = perm[[identity, 0]]
            # perm is an involution, so relabelling with it twice is the identity
            t = perm[t[np.ix_(perm, perm)]].astype(np.int32)
            identity = 0
        hits = t == identity
        if check and not np.all(hits.sum(axis=1) == 1):
            raise GroupError("some element has no unique inverse")
        inverses = np.argmax(hits, axis=1).astype(np.int32)
        group = cls(t, int(identity), inverses, label)
        if check:
            problem = validate_group(group)
            if problem is not None:
                raise GroupError(problem)
        return group

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, label={self.label!r})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def prod(self, elements: Iterable[int]) -> int:
        return reduce(self.mul, elements, self.identity)

    def pow(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        return _scalar_pow(self, g, k)

    def commutator(self, a: int, b: int) -> int:
        t, inv = self.table, self.inverses
        return int(t[t[inv[a], inv[b]], t[a, b]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        t = self.table
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        while True:
            done = (cur == self.identity) & (orders == 0)
            orders[done] = k
            if np.all(orders):
                break
            cur = t[cur, np.arange(n)]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[h, g] = h^-1 g h``."""
        t, inv = self.table, self.inverses
        n = self.order
        left = t[inv[:, None], np.arange(n)[None, :]]
        out = t[left, np.arange(n)[:, None]]
        out.setflags(write=False)
        return out


def _as_table(table) -> np.ndarray:
    try:
        t = np.asarray(table)
    except Exception as exc:  # ragged nested lists
        raise GroupError(f"table is not rectangular: {exc}") from None
    if t.dtype == object or t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError(f"table must be a non-empty square array, got shape {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        raise GroupError("table entries must be integers")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise GroupError(f"id out of range at ({bad[0]},{bad[1]}): {t[tuple(bad)]}")
    return t.astype(np.int32)


def _find_identity(t: np.ndarray) -> int | None:
    n = t.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            return e
    return None


def _scalar_pow(G: FiniteGroup, g: int, k: int) -> int:
    result, base = G.identity, g
    while k:
        if k & 1:
            result = G.mul(result, base)
        base = G.mul(base, base)
        k >>= 1
    return result


def validate_group(candidate: FiniteGroup) -> str | None:
    """Check every group axiom; ``None`` means the table is a group.

    Otherwise the returned message names the first failing axiom together
    with the offending ids.  Associativity is checked exhaustively.
    """
    t = _as_table(candidate.table)
    n = t.shape[0]
    if len(candidate.inverses) != n:
        return f"inverse table has length {len(candidate.inverses)}, expected {n}"
    ar = np.arange(n)
    e = candidate.identity
    if not (0 <= e < n):
        return f"identity id {e} out of range"
    if not np.array_equal(t[e], ar):
        g = int(np.flatnonzero(t[e] != ar)[0])
        return f"identity at (e,g)=({e},{g}): e*g = {t[e, g]}"
    if not np.array_equal(t[:, e], ar):
        g = int(np.flatnonzero(t[:, e] != ar)[0])
        return f"identity at (g,e)=({g},{e}): g*e = {t[g, e]}"
    inv = np.asarray(candidate.inverses)
    bad = np.flatnonzero(t[ar, inv] != e)
    if len(bad):
        g = int(bad[0])
        return f"inverse at g={g}: g*inv(g) = {t[g, inv[g]]}"
    # chunk over a to keep the n^3 check within memory
    step = max(1, 4_000_000 // (n * n))
    for lo in range(0, n, step):
        a = ar[lo:lo + step]
        left = t[t[a][:, :, None], ar[None, None, :]]      # (ab)c
        right = t[a[:, None, None], t[None, :, :]]         # a(bc)
        diff = left != right
        if diff.any():
            i, b, c = np.argwhere(diff)[0]
            a0 = int(a[i])
            return (f"associativity at (a,b,c)=({a0},{b},{c}): "
                    f"(ab)c={left[i, b, c]} but a(bc)={right[i, b, c]}")
    for axis, name in ((1, "row"), (0, "column")):
        s = np.sort(t, axis=axis)
        ok = np.all(s == (ar[None, :] if axis == 1 else ar[:, None]), axis=axis)
        if not np.all(ok):
            return f"latin square: {name} {int(np.flatnonzero(~ok)[0])} is not a permutation"
    return None


def from_permutations(degree: int, generators: Sequence[Sequence[int]], *,
                      order_cap: int = DEFAULT_ORDER_CAP, label: str = "") -> FiniteGroup:
    """Close a set of permutations of ``range(degree)`` into a table.

    Permutations are image arrays; the product ``p*q`` applies ``p`` first,
    so ``(p*q)[x] = q[p[x]]``.  Element 0 is the identity.
    """
    if degree <= 0:
        raise GroupError("degree must be positive")
    gens = []
    for g in generators:
        g = np.asarray(g, dtype=np.int64)
        if g.shape != (degree,) or not np.array_equal(np.sort(g), np.arange(degree)):
            raise GroupError(f"not a permutation of range({degree}): {g.tolist()}")
        gens.append(g)
    dtype = np.int16 if degree < 2**15 else np.int64
    ident = np.arange(degree, dtype=dtype)
    elems = [ident]
    index = {ident.tobytes(): 0}
    # element k = elems[parent[k]] * gens[via[k]]
    parent, via = [0], [-1]
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            p = elems[i]
            for gi, g in enumerate(gens):
                q = g[p].astype(dtype)
                key = q.tobytes()
                if key not in index:
                    if len(elems) >= order_cap:
                        raise BudgetExceeded(f"permutation closure exceeds order cap {order_cap}")
                    index[key] = len(elems)
                    elems.append(q)
                    parent.append(i)
                    via.append(gi)
                    nxt.append(index[key])
        frontier = nxt
    n = len(elems)
    # right multiplication by each generator, then columns along the BFS tree:
    # p_i * p_k = (p_i * p_parent) * g
    right = [np.array([index[g[p].astype(dtype).tobytes()] for p in elems], dtype=np.int32)
             for g in gens]
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for k in range(1, n):
        table[:, k] = right[via[k]][table[:, parent[k]]]
    return FiniteGroup.from_table(table, label, check=False)


def exponent(G: FiniteGroup) -> int:
    return int(reduce(math.lcm, (int(o) for o in np.unique(G.element_orders)), 1))


def power_map(G: FiniteGroup, k: int) -> np.ndarray:
    """Array of ``g**k`` for every element, by square-and-multiply."""
    t = G.table
    n = G.order
    base = np.arange(n) if k >= 0 else G.inverses.astype(np.int64)
    k = abs(k)
    result = np.full(n, G.identity, dtype=np.int64)
    while k:
        if k & 1:
            result = t[result, base]
        base = t[base, base]
        k >>= 1
    return result


def power_image_set(G: FiniteGroup, k: int) -> ElementSet:
    return ElementSet.from_ids(G.order, np.unique(power_map(G, k)))


@dataclass(frozen=True)
class SubgroupData:
    elements: ElementSet
    generators: tuple[int, ...]
    is_normal: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    def ids(self) -> np.ndarray:
        return self.elements.ids()


def closure_mask(G: FiniteGroup, seeds: Sequence[int], start: np.ndarray | None = None,
                 limit: int | None = None) -> np.ndarray | None:
    """Membership mask of the subgroup generated by ``seeds``.

    ``start`` may hold the mask of a subgroup generated by a subset of
    ``seeds``; the search then grows from it.  Returns ``None`` as soon as more than ``limit`` elements appear.
    """
    t = G.table
    gens = np.unique(np.asarray(list(seeds), dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    frontier = np.array([G.identity])
    if start is not None:
        mask |= start
        frontier = np.flatnonzero(start)
    if len(gens) == 0:
        return mask
    while len(frontier):
        new = np.unique(t[frontier[:, None], gens[None, :]].ravel())
        new = new[~mask[new]]
        mask[new] = True
        if limit is not None and mask.sum() > limit:
            return None
        frontier = new
    return mask


def _is_normal_mask(G: FiniteGroup, mask: np.ndarray, gens: Sequence[int]) -> bool:
    if len(gens) == 0:
        return True
    conj = G.conjugation[:, np.asarray(gens, dtype=np.int64)]
    return bool(mask[conj].all())


def subgroup_generated(G: FiniteGroup, seeds: Sequence[int]) -> SubgroupData:
    seeds = tuple(int(s) for s in seeds)
    for s in seeds:
        if not 0 <= s < G.order:
            raise GroupError(f"element id {s} out of range")
    mask = closure_mask(G, seeds)
    return SubgroupData(ElementSet(mask), seeds, _is_normal_mask(G, mask, seeds))


def derived_subgroup(G: FiniteGroup) -> SubgroupData:
    t, inv = G.table, G.inverses
    comms = t[t[inv[:, None], inv[None, :]], t]
    gens = np.unique(comms)
    gens = gens[gens != G.identity]
    mask = closure_mask(G, gens)
    return SubgroupData(ElementSet(mask), tuple(int(g) for g in gens), True)


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    conj = G.conjugation
    for g in range(G.order):
        if not seen[g]:
            cls = np.unique(conj[:, g])
            seen[cls] = True
            classes.append(cls)
    return classes


def normal_subgroups(G: FiniteGroup, *, cap: int = 4096) -> list[SubgroupData]:
    """All normal subgroups, sorted by order then by element ids.

    Every normal subgroup is a product of normal closures of conjugacy
    classes, so closing the set of class closures under products with those
    atoms reaches all of them.
    """
    if G.order > cap:
        raise BudgetExceeded(f"normal_subgroups: order {G.order} exceeds cap {cap}")
    t = G.table
    atoms = {}
    for cls in conjugacy_classes(G):
        mask = closure_mask(G, cls)
        atoms.setdefault(np.packbits(mask).tobytes(), (mask, tuple(int(c) for c in cls)))
    found = {}
    trivial = np.zeros(G.order, dtype=bool)
    trivial[G.identity] = True
    found[np.packbits(trivial).tobytes()] = (trivial, ())
    queue = list(found.values())
    while queue:
        nxt = []
        for mask, gens in queue:
            for amask, agens in atoms.values():
                if not np.any(amask & ~mask):
                    continue
                prod = np.zeros(G.order, dtype=bool)
                prod[t[np.flatnonzero(mask)[:, None], np.flatnonzero(amask)[None, :]].ravel()] = True
                key = np.packbits(prod).tobytes()
                if key not in found:
                    found[key] = (prod, gens + agens)
                    nxt.append(found[key])
        queue = nxt
    subs = [SubgroupData(ElementSet(m), g, True) for m, g in found.values()]
    subs.sort(key=lambda s: (s.order, s.elements.to_list()))
    return subs


def quotient(G: FiniteGroup, N: SubgroupData, label: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """Coset table of ``G/N`` and the projection array ``g -> coset id``."""
    n_ids = N.ids()
    if not _is_normal_mask(G, N.elements.mask, n_ids):
        raise GroupError("quotient by a subgroup that is not normal")
    t = G.table
    reps_of = t[:, n_ids].min(axis=1)
    reps, proj = np.unique(reps_of, return_inverse=True)
    table = proj[t[reps[:, None], reps[None, :]]]
    Q = FiniteGroup.from_table(table, label or f"{G.label}/N{N.order}", check=False)
    return Q, proj.astype(np.int64)


def minimal_generating_tuple(G: FiniteGroup) -> tuple[int, ...]:
    """A generating tuple of least possible length.

    Searches the lattice of subgroups generated by k elements level by
    level, deduplicating subgroups; an element already inside the current
    subgroup never extends it, and elements of order ``n`` settle d = 1.
    """
    n = G.order
    if n == 1:
        return ()
    orders = G.element_orders
    if orders.max() == n:
        return (int(np.argmax(orders)),)
    by_order = np.argsort(-orders, kind="stable")
    level = {}
    for g in by_order:
        if g == G.identity:
            continue
        mask = closure_mask(G, [int(g)])
        level.setdefault(np.packbits(mask).tobytes(), (mask, (int(g),)))
    while True:
        nxt = {}
        ordered = sorted(level.values(), key=lambda mg: -mg[0].sum())
        for mask, gens in ordered:
            for g in by_order:
                if mask[g]:
                    continue
                new = closure_mask(G, gens + (int(g),), start=mask)
                if new.all():
                    return gens + (int(g),)
                nxt.setdefault(np.packbits(new).tobytes(), (new, gens + (int(g),)))
        level = nxt


def minimal_generator_count(G: FiniteGroup) -> int:
    return max(1, len(minimal_generating_tuple(G))) if G.order > 1 else 0


def subgroup_as_group(G: FiniteGroup, H: SubgroupData | ElementSet,
                      label: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """Standalone table of a subgroup plus the embedding ``local id -> G id``."""
    mask = H.elements.mask if isinstance(H, SubgroupData) else H.mask
    ids = np.flatnonzero(mask)
    local = np.full(G.order, -1, dtype=np.int64)
    local[ids] = np.arange(len(ids))
    table = local[G.table[np.ix_(ids, ids)]]
    if (table < 0).any():
        raise GroupError("element set is not closed under multiplication")
    sub = FiniteGroup.from_table(table, label, check=False)
    # identity is G.identity (the smallest id, 0) so no relabelling happened
    return sub, ids


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str = "") -> FiniteGroup:
    """``G x H`` with ``(g, h)`` stored at id ``g*|H| + h``."""
    m = H.order
    tg = G.table[:, None, :, None]
    th = H.table[None, :, None, :]
    table = (tg * m + th).reshape(G.order * m, G.order * m)
    return FiniteGroup.from_table(table, label or f"{G.label} x {H.label}", check=False)


def is_homomorphism(src: FiniteGroup, dst: FiniteGroup, images: np.ndarray) -> bool:
    images = np.asarray(images)
    return bool(np.array_equal(images[src.table], dst.table[images[:, None], images[None, :]]))
