"""Truncated power series in non-commuting variables.

Sending each generator ``g_i`` to ``1 + X_i`` embeds the free nilpotent
group of class ``c`` into the units of the series ring modulo terms of
degree ``c + 1`` (the Magnus embedding).  Two words are equal in the free
nilpotent group exactly when their truncated series agree, which makes this
an independent check on the collection formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from ..words import Word

Monomial = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    rank: int
    degree_bound: int
    coefficients: Mapping[Monomial, int]

    def __post_init__(self):
        clean = {m: c for m, c in self.coefficients.items() if c and len(m) < self.degree_bound}
        object.__setattr__(self, "coefficients", MappingProxyType(clean))

    @classmethod
    def one(cls, rank: int, degree_bound: int) -> "TruncatedSeries":
        return cls(rank, degree_bound, {(): 1})

    @classmethod
    def generator(cls, i: int, rank: int, degree_bound: int, sign: int = 1) -> "TruncatedSeries":
        if sign == 1:
            return cls(rank, degree_bound, {(): 1, (i,): 1})
        # (1 + X)^-1 = 1 - X + X^2 - ...
        return cls(rank, degree_bound, {(i,) * k: (-1) ** k for k in range(degree_bound)})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.rank, self.degree_bound) != (other.rank, other.degree_bound):
            raise ValueError("series from different rings")
        out: dict[Monomial, int] = {}
        bound = self.degree_bound
        for m1, c1 in self.coefficients.items():
            for m2, c2 in other.coefficients.items():
                if len(m1) + len(m2) < bound:
                    key = m1 + m2
                    out[key] = out.get(key, 0) + c1 * c2
        return TruncatedSeries(self.rank, bound, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.rank, self.degree_bound) == (other.rank, other.degree_bound) and \
            dict(self.coefficients) == dict(other.coefficients)

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def coefficient(self, monomial: Monomial) -> int:
        return self.coefficients.get(tuple(monomial), 0)

    def __repr__(self) -> str:
        names = "ABCDEFGH"
        terms = [f"{c:+d}*{''.join(names[i] for i in m) or '1'}"
                 for m, c in sorted(self.coefficients.items(), key=lambda mc: (len(mc[0]), mc[0]))]
        return f"TruncatedSeries({' '.join(terms)})"


def magnus_evaluate(word: Word, degree_bound: int, rank: int | None = None) -> TruncatedSeries:
    """Series of a word over generators ``x1 = a, x2 = b, (x3 = c)``."""
    rank = word.arity if rank is None else rank
    if word.arity > rank:
        raise ValueError(f"word uses {word.arity} variables but rank is {rank}")
    cache = {}
    acc = TruncatedSeries.one(rank, degree_bound)
    for v, s in word.letters:
        if (v, s) not in cache:
            cache[v, s] = TruncatedSeries.generator(v, rank, degree_bound, s)
        acc = acc * cache[v, s]
    return acc
