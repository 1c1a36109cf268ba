"""The chiral family ``C_q x| C_pr`` and its witness word.

Elements are pairs ``(x, n)`` with ``x`` mod ``pr`` and ``n`` mod ``q``,
stored at id ``x*q + n``, multiplied by

    (x, n) * (y, m) = (x + y, phi^y * n + m).

With this rule ``a^2 = (2x, n + phi^x n)``, matching the expansion of
``a^p`` used for the family.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TUPLE_BUDGET, BudgetExceeded
from .groups import FiniteGroup
from .verdict import CHIRAL, ChiralityVerdict, chiral_certificate
from .words import Word, commutator, find_preimage, image, is_inversion_closed, power


class FamilyError(ValueError):
    """Parameters violate a hypothesis of the family."""


class StructuralAssertionError(AssertionError):
    """The computed image contradicts the expected coset structure."""


def multiplicative_order(phi: int, q: int) -> int | None:
    if math.gcd(phi, q) != 1:
        return None
    x, k = phi % q, 1
    while x != 1 % q:
        x = x * phi % q
        k += 1
    return k


@dataclass(frozen=True)
class FamilyParameters:
    q: int
    p: int
    r: int
    phi: int

    @property
    def pr(self) -> int:
        return self.p * self.r

    @property
    def order(self) -> int:
        return self.q * self.pr

    @classmethod
    def from_stanza(cls, q: int, pr: int, phi: int) -> "FamilyParameters":
        """Infer ``p`` as the order of ``phi`` mod ``q`` and ``r = pr / p``."""
        p = multiplicative_order(phi, q)
        if p is None:
            raise FamilyError(f"phi = {phi} is not a unit mod q = {q}")
        if pr % p:
            raise FamilyError(f"order p = {p} of phi does not divide pr = {pr}")
        params = cls(q, p, pr // p, phi % q)
        problem = validate_family(params)
        if problem:
            raise FamilyError(problem)
        return params

    def label(self) -> str:
        return f"C{self.q} x| C{self.pr} (phi={self.phi})"


def validate_family(params: FamilyParameters) -> str | None:
    """First violated hypothesis, or ``None``."""
    q, p, r, phi = params.q, params.p, params.r, params.phi
    if q < 2 or p < 1 or r < 1:
        return f"parameters must be positive with q >= 2: {params}"
    if not 1 <= phi < q:
        return f"phi = {phi} must satisfy 1 <= phi < q"
    if pow(phi, p, q) != 1:
        return f"phi^p = {phi}^{p} = {pow(phi, p, q)} != 1 mod {q}"
    for j in range(1, p):
        if pow(phi, j, q) == 1:
            return f"phi has order {j} < p = {p} mod {q}"
    if math.gcd(phi - 1, q) != 1:
        return f"gcd(phi - 1, q) = {math.gcd(phi - 1, q)} != 1"
    if math.gcd(phi + 1, q) != 1:
        return f"gcd(phi + 1, q) = {math.gcd(phi + 1, q)} != 1"
    if r % p:
        return f"p = {p} does not divide r = {r}"
    return None


def semidirect_cyclic(q: int, m: int, phi: int, label: str = "") -> FiniteGroup:
    """``C_q x| C_m`` where the generator of ``C_m`` acts by ``n -> phi*n``."""
    if pow(phi, m, q) != 1 % q:
        raise FamilyError(f"phi^{m} != 1 mod {q}: the action is not well defined")
    powers = np.array([pow(phi, y, q) for y in range(m)], dtype=np.int64)
    x = np.arange(m)[:, None, None, None]
    n = np.arange(q)[None, :, None, None]
    y = np.arange(m)[None, None, :, None]
    k = np.arange(q)[None, None, None, :]
    first = (x + y) % m
    second = (powers[y] * n + k) % q
    table = (first * q + second).reshape(m * q, m * q)
    return FiniteGroup.from_table(table, label or f"C{q} x| C{m} (phi={phi})", check=False)


def element_id(params: FamilyParameters, x: int, n: int) -> int:
    return (x % params.pr) * params.q + n % params.q


def coordinates(params: FamilyParameters, g: int) -> tuple[int, int]:
    return divmod(int(g), params.q)


def _power_formula(params: FamilyParameters, x: int, n: int) -> tuple[int, int]:
    """``a^p = (px, n + phi^x n + ... + phi^{x(p-1)} n)``."""
    q, phi = params.q, params.phi
    s = sum(pow(phi, x * j, q) for j in range(params.p)) * n
    return (params.p * x) % params.pr, s % q


def build_family_group(params: FamilyParameters) -> tuple[FiniteGroup, np.ndarray]:
    """The family group and its coordinate array ``id -> (x, n)``."""
    problem = validate_family(params)
    if problem:
        raise FamilyError(problem)
    G = semidirect_cyclic(params.q, params.pr, params.phi, params.label())
    coords = np.array([coordinates(params, g) for g in range(G.order)], dtype=np.int64)
    for g in range(G.order):
        x, n = (int(c) for c in coords[g])
        if coordinates(params, G.pow(g, params.p)) != _power_formula(params, x, n):
            raise StructuralAssertionError(f"power formula fails at {(x, n)}")
    return G, coords


def family_witness_word(params: FamilyParameters) -> Word:
    """``x^p [x, y] [x^-1, y]^phi``."""
    x, y = Word.var(0, 2), Word.var(1, 2)
    return power(x, params.p) * commutator(x, y) * power(commutator(power(x, -1), y), params.phi)


def verify_family_chirality(params: FamilyParameters, *,
                            budget: int = DEFAULT_TUPLE_BUDGET) -> ChiralityVerdict:
    """Exhaustive image of the witness word plus the two coset checks.

    (a) the only image element with first coordinate ``p`` is ``(p, 0)``;
    (b) every ``(-p, m)`` is in the image.  Then ``(-p, 1)`` is a witness.
    """
    started = time.perf_counter()
    if params.order ** 2 > budget:
        raise BudgetExceeded(f"{params.order}^2 pairs exceed tuple budget {budget}")
    G, coords = build_family_group(params)
    w = family_witness_word(params)
    img = image(w, G, budget=budget)
    ids = img.ids()
    top = coords[ids, 0]
    on_p = ids[top == params.p % params.pr]
    expected = element_id(params, params.p, 0)
    if on_p.tolist() != [expected]:
        raise StructuralAssertionError(
            f"image meets the coset of (p,0) in {[tuple(coords[g]) for g in on_p]}")
    coset = [element_id(params, -params.p, m) for m in range(params.q)]
    missing = [m for m, g in enumerate(coset) if g not in img]
    if missing:
        raise StructuralAssertionError(f"(-p, m) missing from the image for m in {missing}")
    witness = element_id(params, -params.p, 1)
    inverse = G.inv(witness)
    closed, violator = is_inversion_closed(img, G)
    if closed or inverse in img:
        raise StructuralAssertionError("generic inversion check disagrees with the coset argument")
    args = find_preimage(w, G, witness, budget=budget)
    cert = chiral_certificate(w, witness, inverse, args)
    cert.update({"family": {"q": params.q, "p": params.p, "r": params.r, "phi": params.phi},
                 "witness_coordinates": [-params.p % params.pr, 1],
                 "generic_violator": violator})
    stats = {"evaluations": G.order ** 2, "image_size": len(img),
             "elapsed": round(time.perf_counter() - started, 4)}
    return ChiralityVerdict(CHIRAL, "family-witness", cert, stats)
