"""The free nilpotent group of class 3 and rank 2, and its finite quotients.

Basis ``a, b, c = [a,b], d = [c,a], e = [c,b]`` with ``d, e`` central.
Coordinates ``(a, b, c, d, e)`` stand for ``a^a b^b c^c d^d e^e``.

The arithmetic helpers below work on anything supporting ``+ - * //``:
Python ints for exact computations in the free group, and int64 numpy
arrays (reduced with :func:`reduce_mod`) for vectorised search in
quotients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..words import Word, commutator, power

BASIS = ("a", "b", "c", "d", "e")


def _c2(t):
    return t * (t - 1) // 2


def mul5(x, y):
    """Product of two coordinate 5-tuples."""
    x0, x1, x2, x3, x4 = x
    y0, y1, y2, y3, y4 = y
    c = x2 - x1 * y0
    return (x0 + y0, x1 + y1, c + y2,
            x3 + y3 + x2 * y0 - x1 * _c2(y0),
            x4 + y4 - y0 * _c2(x1) + c * y1)


def inv5(x):
    x0, x1, x2, x3, x4 = x
    v0, v1 = -x0, -x1
    return (v0, v1, -x2 + x1 * v0,
            -x3 - x2 * v0 + x1 * _c2(v0),
            -x4 + v0 * _c2(x1) - (x2 - x1 * v0) * v1)


def comm5(x, y):
    return mul5(mul5(inv5(x), inv5(y)), mul5(x, y))


def pow5(x, n: int):
    """``x^n`` for a Python int exponent, by repeated squaring."""
    zero = tuple(0 * t for t in x)
    base = x if n >= 0 else inv5(x)
    n = abs(n)
    out = zero
    while n:
        if n & 1:
            out = mul5(out, base)
        base = mul5(base, base)
        n >>= 1
    return out


@dataclass(frozen=True)
class N32Element:
    coords: tuple[int, int, int, int, int] = (0, 0, 0, 0, 0)

    def __post_init__(self):
        if len(self.coords) != 5:
            raise ValueError("N32 elements have five coordinates")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __mul__(self, other: "N32Element") -> "N32Element":
        return N32Element(mul5(self.coords, other.coords))

    def __pow__(self, n: int) -> "N32Element":
        return N32Element(pow5(self.coords, n))

    def inverse(self) -> "N32Element":
        return N32Element(inv5(self.coords))

    def __str__(self) -> str:
        parts = [f"{s}^{x}" for s, x in zip(BASIS, self.coords) if x]
        return "*".join(parts) or "1"


IDENTITY = N32Element()
A = N32Element((1, 0, 0, 0, 0))
B = N32Element((0, 1, 0, 0, 0))
C = N32Element((0, 0, 1, 0, 0))
D = N32Element((0, 0, 0, 1, 0))
E = N32Element((0, 0, 0, 0, 1))


def n32_commutator(u: N32Element, v: N32Element) -> N32Element:
    return N32Element(comm5(u.coords, v.coords))


def n32_from_word(w: Word) -> N32Element:
    out = IDENTITY
    for var, s in w.letters:
        g = (A, B)[var]
        out = out * (g if s == 1 else g.inverse())
    return out


def n32_to_word(g: N32Element) -> Word:
    """The normal-form word ``a^i b^j [a,b]^k [[a,b],a]^l [[a,b],b]^m``."""
    a, b = Word.var(0, 2), Word.var(1, 2)
    c = commutator(a, b)
    out = Word((), 2)
    for f, x in zip((a, b, c, commutator(c, a), commutator(c, b)), g.coords):
        out = out * power(f, x)
    return out


def n32_apply_endomorphism(u, v, g):
    """``phi(g)`` for ``phi: a -> u, b -> v`` on coordinate tuples.

    ``g`` holds Python int exponents; ``u`` and ``v`` may be arrays.
    """
    cc = comm5(u, v)
    out = pow5(u, g[0])
    for f, x in ((v, g[1]), (cc, g[2]), (comm5(cc, u), g[3]), (comm5(cc, v), g[4])):
        out = mul5(out, pow5(f, x))
    return out


# --- finite quotients -----------------------------------------------------

def check_moduli(moduli) -> str | None:
    """Return why ``N32 / <a^ma, b^mb, c^mc, d^md, e^me>`` is not a valid coordinate quotient.

    Reducing each coordinate modulo its modulus respects the product law iff
    ``mc | ma, mb``; ``md | gcd(ma, mb, mc)`` and ``md | C(ma, 2)``;
    ``me | gcd(ma, mb, mc)`` and ``me | C(mb, 2)``.
    """
    if len(moduli) != 5:
        return "expected five moduli"
    ma, mb, mc, md, me = (int(m) for m in moduli)
    if min(ma, mb, mc, md, me) < 1:
        return "moduli must be positive"
    if ma % mc or mb % mc:
        return f"m_c={mc} must divide m_a={ma} and m_b={mb}"
    g = math.gcd(ma, mb, mc)
    if g % md or _c2(ma) % md:
        return f"m_d={md} must divide gcd(m_a,m_b,m_c)={g} and C(m_a,2)={_c2(ma)}"
    if g % me or _c2(mb) % me:
        return f"m_e={me} must divide gcd(m_a,m_b,m_c)={g} and C(m_b,2)={_c2(mb)}"
    return None


def reduce_mod(x, moduli):
    return tuple(t % m for t, m in zip(x, moduli))


@dataclass(frozen=True)
class N32Quotient:
    moduli: tuple[int, int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        msg = check_moduli(self.moduli)
        if msg:
            raise ValueError(msg)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def mul(self, x, y):
        return reduce_mod(mul5(x, y), self.moduli)

    def inv(self, x):
        return reduce_mod(inv5(x), self.moduli)

    def pow(self, x, n: int):
        """``x^n``, reducing after every multiplication."""
        zero = tuple(0 * t for t in x)
        base = x if n >= 0 else self.inv(x)
        n = abs(n)
        out = zero
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def comm(self, x, y):
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def apply(self, u, v, g):
        """``phi(g)`` for ``phi: a -> u, b -> v``, exponents of ``g`` taken as ints."""
        cc = self.comm(u, v)
        out = self.pow(u, int(g[0]))
        for f, x in ((v, g[1]), (cc, g[2]), (self.comm(cc, u), g[3]), (self.comm(cc, v), g[4])):
            out = self.mul(out, self.pow(f, int(x)))
        return out

    def element_arrays(self) -> tuple[np.ndarray, ...]:
        """All elements as five flat int64 coordinate arrays (mixed radix, ``a`` most significant)."""
        grids = np.meshgrid(*(np.arange(m, dtype=np.int64) for m in self.moduli), indexing="ij")
        return tuple(g.ravel() for g in grids)

    def relations_automatic(self) -> bool:
        """True when ``[u,v]^mc, [[u,v],u]^md, [[u,v],v]^me`` hold for every ``u, v``
        once ``u^ma = v^mb = 1``; then any pair of images defines an endomorphism."""
        _, _, mc, md, me = self.moduli
        return mc % md == 0 and mc % me == 0 and md == me

    def is_endomorphism(self, u, v) -> bool:
        """Whether ``a -> u, b -> v`` respects the five defining relations."""
        ma, mb, mc, md, me = self.moduli
        zero = (0,) * 5
        cc = self.comm(u, v)
        rels = (self.pow(u, ma), self.pow(v, mb), self.pow(cc, mc),
                self.pow(self.comm(cc, u), md), self.pow(self.comm(cc, v), me))
        return all(tuple(r) == zero for r in rels)


def default_moduli(p: int) -> tuple[int, int, int, int, int]:
    return (p ** 3, p ** 2, p ** 2, p, p)


def n32_witness_element(p: int) -> N32Element:
    """``a^(p^2) c^p d``."""
    return N32Element((p * p, 0, p, 1, 0))


def n32_quotient_endomorphism_check(u: N32Element, v: N32Element, moduli) -> bool:
    """Whether ``a -> u, b -> v`` extends to an endomorphism of the quotient."""
    Q = N32Quotient(tuple(moduli))
    return Q.is_endomorphism(reduce_mod(u.coords, Q.moduli), reduce_mod(v.coords, Q.moduli))


def n32_multiply(u: N32Element, v: N32Element) -> N32Element:
    return u * v


def n32_invert(u: N32Element) -> N32Element:
    return u.inverse()


def n32_power(u: N32Element, n: int) -> N32Element:
    return u ** n
