"""Small catalogue of standard groups built directly as tables."""

from __future__ import annotations

from functools import reduce

import numpy as np

from .groups import FiniteGroup, direct_product, from_permutations


def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup.from_table((ar[:, None] + ar[None, :]) % n, f"C{n}", check=False)


def abelian_group(invariants: tuple[int, ...]) -> FiniteGroup:
    """Direct product of cyclic groups with the given orders."""
    invariants = tuple(invariants) or (1,)
    G = reduce(direct_product, (cyclic_group(m) for m in invariants))
    label = " x ".join(f"C{m}" for m in invariants)
    return FiniteGroup(G.table, G.identity, G.inverses, label)


def dihedral_group(order: int) -> FiniteGroup:
    """Symmetries of a regular ``order/2``-gon; ``r^i s^j`` has id ``i + m*j``."""
    m = order // 2
    if order % 2 or m < 1:
        raise ValueError("dihedral group order must be even and positive")
    i, a, k, b = np.meshgrid(np.arange(m), [0, 1], np.arange(m), [0, 1], indexing="ij")
    rot = (i + np.where(a == 1, -k, k)) % m
    ref = (a + b) % 2
    table = (rot + m * ref).reshape(m, 2, m, 2).transpose(1, 0, 3, 2).reshape(order, order)
    return FiniteGroup.from_table(table, f"D{order}")


def dicyclic_group(order: int) -> FiniteGroup:
    """``<a, x | a^2m, x^2 = a^m, x^-1 a x = a^-1>``; order 8 is Q8."""
    m = order // 4
    if order % 4 or m < 1:
        raise ValueError("dicyclic group order must be a multiple of 4")
    n2 = 2 * m
    table = np.empty((order, order), dtype=np.int64)
    for j in (0, 1):
        for l in (0, 1):
            for i in range(n2):
                for k in range(n2):
                    if j == 0:
                        e, x = i + k, l
                    elif l == 0:
                        e, x = i - k, 1
                    else:
                        e, x = i - k + m, 0
                    table[i + n2 * j, k + n2 * l] = e % n2 + n2 * x
    return FiniteGroup.from_table(table, "Q8" if order == 8 else f"Dic{order}")


def quaternion_group() -> FiniteGroup:
    return dicyclic_group(8)


def symmetric_group(degree: int) -> FiniteGroup:
    if degree < 2:
        return FiniteGroup.from_table([[0]], f"S{degree}")
    swap = list(range(degree))
    swap[0], swap[1] = 1, 0
    cycle = list(range(1, degree)) + [0]
    return from_permutations(degree, [swap, cycle], label=f"S{degree}")


def alternating_group(degree: int) -> FiniteGroup:
    gens = []
    for k in range(2, degree):
        p = list(range(degree))
        p[0], p[1], p[k] = 1, k, 0  # the 3-cycle (0 1 k)
        gens.append(p)
    if not gens:
        return FiniteGroup.from_table([[0]], f"A{degree}")
    return from_permutations(degree, gens, label=f"A{degree}")


def abelian_invariant_lists(max_order: int) -> list[tuple[int, ...]]:
    """Invariant factors ``m1 | m2 | ...`` of every abelian group up to ``max_order``."""
    out = [(1,)]

    def build(prefix: tuple[int, ...], rest: int, acc: list):
        if rest == 1:
            acc.append(prefix)
            return
        last = prefix[-1] if prefix else 1
        for m in range(2, rest + 1):
            if rest % m == 0 and m % last == 0:
                build(prefix + (m,), rest // m, acc)

    for n in range(2, max_order + 1):
        found: list[tuple[int, ...]] = []
        build((), n, found)
        out.extend(sorted(found))
    return out
