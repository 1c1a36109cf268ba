"""The free nilpotent group of class 2 and rank 3.

Normal form ``a^i b^j c^k d^l e^m f^n`` with ``d = [a,b]``, ``e = [a,c]``,
``f = [b,c]`` central.  With ``[x,y] = x^-1 y^-1 x y`` we have
``yx = xy[y,x]``, and collecting the right factor's ``a`` and ``b`` to the
left gives the product law in :func:`n23_multiply`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..words import Word, commutator, power

BASIS = ("a", "b", "c", "d", "e", "f")


@dataclass(frozen=True)
class N23Element:
    coords: tuple[int, int, int, int, int, int] = (0, 0, 0, 0, 0, 0)

    def __post_init__(self):
        if len(self.coords) != 6:
            raise ValueError("N23 elements have six coordinates")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __mul__(self, other: "N23Element") -> "N23Element":
        return n23_multiply(self, other)

    def __pow__(self, n: int) -> "N23Element":
        return n23_power(self, n)

    @property
    def abelianization(self) -> tuple[int, int, int]:
        return self.coords[:3]

    def __str__(self) -> str:
        parts = [f"{s}^{x}" for s, x in zip(BASIS, self.coords) if x]
        return "*".join(parts) or "1"


IDENTITY = N23Element()
A = N23Element((1, 0, 0, 0, 0, 0))
B = N23Element((0, 1, 0, 0, 0, 0))
C = N23Element((0, 0, 1, 0, 0, 0))
D = N23Element((0, 0, 0, 1, 0, 0))
E = N23Element((0, 0, 0, 0, 1, 0))
F = N23Element((0, 0, 0, 0, 0, 1))


def n23_multiply(u: N23Element, v: N23Element) -> N23Element:
    ua, ub, uc, ud, ue, uf = u.coords
    va, vb, vc, vd, ve, vf = v.coords
    return N23Element((ua + va, ub + vb, uc + vc,
                       ud + vd - ub * va,
                       ue + ve - uc * va,
                       uf + vf - uc * vb))


def n23_invert(u: N23Element) -> N23Element:
    ua, ub, uc, ud, ue, uf = u.coords
    return N23Element((-ua, -ub, -uc, -ud - ub * ua, -ue - uc * ua, -uf - uc * ub))


def n23_power(u: N23Element, n: int) -> N23Element:
    base = u if n >= 0 else n23_invert(u)
    n = abs(n)
    result = IDENTITY
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def n23_commutator(u: N23Element, v: N23Element) -> N23Element:
    return n23_invert(u) * n23_invert(v) * u * v


def n23_from_word(w: Word) -> N23Element:
    gens = (A, B, C)
    out = IDENTITY
    for var, s in w.letters:
        out = out * (gens[var] if s == 1 else n23_invert(gens[var]))
    return out


def n23_to_word(g: N23Element) -> Word:
    """The normal-form word ``a^i b^j c^k [a,b]^l [a,c]^m [b,c]^n``."""
    a, b, c = (Word.var(i, 3) for i in range(3))
    factors = (a, b, c, commutator(a, b), commutator(a, c), commutator(b, c))
    out = Word((), 3)
    for f, x in zip(factors, g.coords):
        out = out * power(f, x)
    return out


def n23_commutator_images(images: tuple[N23Element, N23Element, N23Element]):
    """Images of ``d, e, f`` under the endomorphism with the given images of ``a, b, c``."""
    pa, pb, pc = images
    return n23_commutator(pa, pb), n23_commutator(pa, pc), n23_commutator(pb, pc)


def n23_apply_endomorphism(images: tuple[N23Element, N23Element, N23Element],
                           g: N23Element) -> N23Element:
    """phi(g) by substituting images into the normal form of g."""
    pd, pe, pf = n23_commutator_images(images)
    out = IDENTITY
    for factor, x in zip(tuple(images) + (pd, pe, pf), g.coords):
        out = out * n23_power(factor, x)
    return out


@dataclass(frozen=True)
class IntMatrix2:
    """Integer matrix with rows ``(x z)`` and ``(y w)``."""

    x: int
    z: int
    y: int
    w: int

    @property
    def det(self) -> int:
        return self.x * self.w - self.z * self.y

    def apply(self, j: int, k: int) -> tuple[int, int]:
        return self.x * j + self.z * k, self.y * j + self.w * k


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def n23_inverting_matrix(j: int, k: int) -> IntMatrix2:
    """Determinant -1 matrix fixing the column vector ``(j, k)``.

    Conjugates ``diag(1, -1)`` by a unimodular ``U`` whose first column is
    ``(j, k)/g``; the second column comes from a Bezout relation, normalised
    so that the coefficient ``s`` of ``j/g`` lies in ``[0, |k/g|)``.
    """
    if j == 0 and k == 0:
        return IntMatrix2(1, 0, 0, -1)
    g = math.gcd(j, k)
    j1, k1 = j // g, k // g
    _, s, t = _bezout(j1, k1)
    if k1:
        shift = s // abs(k1)
        s -= shift * abs(k1)
        t += shift * j1 * (1 if k1 > 0 else -1)
    M = _conjugate_diag(j1, k1, s, t)
    assert M.det == -1 and M.apply(j, k) == (j, k), (j, k, M)
    return M


def _conjugate_diag(j1: int, k1: int, s: int, t: int) -> IntMatrix2:
    # U = [[j1, -t], [k1, s]], D = diag(1, -1), U^-1 = [[s, t], [-k1, j1]]
    ud = ((j1, t), (k1, -s))
    inv = ((s, t), (-k1, j1))
    x = ud[0][0] * inv[0][0] + ud[0][1] * inv[1][0]
    z = ud[0][0] * inv[0][1] + ud[0][1] * inv[1][1]
    y = ud[1][0] * inv[0][0] + ud[1][1] * inv[1][0]
    w = ud[1][0] * inv[0][1] + ud[1][1] * inv[1][1]
    return IntMatrix2(x, z, y, w)


@dataclass(frozen=True)
class AchiralityInstance:
    ok: bool
    g: N23Element
    matrix: IntMatrix2
    images: tuple[N23Element, N23Element, N23Element]
    phi_g: N23Element
    g_inverse: N23Element


def n23_verify_achirality_instance(i: int, j: int, k: int, l: int) -> AchiralityInstance:
    """Check that ``g = a^i d^j e^k f^l`` is sent to its inverse by the explicit endomorphism.

    ``a -> a^-1``, ``b -> b^x c^y``, ``c -> b^z c^w`` with ``M = (x z; y w)``
    from :func:`n23_inverting_matrix`.
    """
    g = N23Element((i, 0, 0, j, k, l))
    M = n23_inverting_matrix(j, k)
    images = (n23_invert(A), n23_power(B, M.x) * n23_power(C, M.y),
              n23_power(B, M.z) * n23_power(C, M.w))
    phi_g = n23_apply_endomorphism(images, g)
    g_inv = n23_invert(g)
    return AchiralityInstance(phi_g == g_inv, g, M, images, phi_g, g_inv)


@dataclass(frozen=True)
class AxisReduction:
    image: N23Element
    matrix: tuple[tuple[int, int, int], ...]      # abelianisation action, columns = images of a,b,c
    compound: tuple[tuple[int, int, int], ...]    # induced action on (d, e, f)


def _unimodular_reducer(v: tuple[int, int, int]) -> list[list[int]]:
    """U in GL(3, Z) with ``U v = (gcd, 0, 0)``, built from row operations."""
    U = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    v = list(v)

    def row_op(dst, src, q):  # row_dst -= q * row_src
        v[dst] -= q * v[src]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    while sum(1 for x in v if x) > 1:
        nz = [i for i in range(3) if v[i]]
        piv = min(nz, key=lambda i: (abs(v[i]), i))
        for i in nz:
            if i != piv:
                row_op(i, piv, v[i] // v[piv])
    nz = [i for i in range(3) if v[i]]
    if nz and nz[0] != 0:
        p = nz[0]
        v[0], v[p] = v[p], v[0]
        U[0], U[p] = U[p], U[0]
    if v[0] < 0:
        v[0] = -v[0]
        U[0] = [-a for a in U[0]]
    return U


def _compound(U) -> tuple[tuple[int, int, int], ...]:
    """Second compound matrix on the basis (d, e, f) = ([a,b], [a,c], [b,c])."""
    pairs = ((0, 1), (0, 2), (1, 2))
    return tuple(tuple(U[r][c] * U[s][d] - U[r][d] * U[s][c] for (c, d) in pairs)
                 for (r, s) in pairs)


def n23_axis_reduce(g: N23Element) -> AxisReduction:
    """Automorphic image of ``g`` of the shape ``a^* d^* e^* f^*``."""
    U = _unimodular_reducer(g.abelianization)
    gens = tuple(N23Element((U[0][c], U[1][c], U[2][c], 0, 0, 0)) for c in range(3))
    image = n23_apply_endomorphism(gens, g)
    compound = _compound(U)
    pd, pe, pf = n23_commutator_images(gens)
    for col, elt in enumerate((pd, pe, pf)):
        if elt.abelianization != (0, 0, 0) or elt.coords[3:] != tuple(row[col] for row in compound):
            raise AssertionError("compound matrix disagrees with commutator images")
    if image.coords[1:3] != (0, 0):
        raise AssertionError(f"reduction failed: {image}")
    return AxisReduction(image, tuple(tuple(r) for r in U), compound)
