"""Free-group words and their word maps on finite groups.

A word is a freely reduced tuple of letters ``(variable, sign)``.  The
commutator convention is ``[u, v] = u^-1 v^-1 u v`` with left-normed
nesting ``[u, v, w] = [[u, v], w]``.

Grammar accepted by :func:`parse_word`::

    word     := term+
    term     := atom ('^' signed-int)?
    atom     := variable | '[' word (',' word)+ ']' | '(' word ')' | '1'
    variable := 'x' digits | a single letter a-z

Bare letters are numbered in order of first appearance; ``x1, x2, ...`` are
explicit 1-based indices.  The two styles cannot be mixed in one word.
``*`` and whitespace are ignored.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT_TUPLE_BUDGET, BudgetExceeded
from .groups import ElementSet, FiniteGroup

MAX_VARIABLES = 64

Letter = tuple[int, int]


def free_reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for v, s in letters:
        if out and out[-1][0] == v and out[-1][1] == -s:
            out.pop()
        else:
            out.append((int(v), int(s)))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()
    arity: int = field(default=-1, compare=False)

    def __post_init__(self):
        letters = free_reduce(self.letters)
        for v, s in letters:
            if v < 0 or s not in (1, -1):
                raise ValueError(f"bad letter {(v, s)}")
        used = max((v for v, _ in letters), default=-1) + 1
        arity = used if self.arity < 0 else self.arity
        if arity < used:
            raise ValueError(f"arity {arity} too small for variable x{used}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "arity", arity)

    @classmethod
    def var(cls, i: int, arity: int = -1) -> "Word":
        return cls(((i, 1),), arity)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, max(self.arity, other.arity))

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __invert__(self) -> "Word":
        return invert(self)

    def with_arity(self, arity: int) -> "Word":
        return Word(self.letters, arity)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        i = 0
        while i < len(self.letters):
            v, s = self.letters[i]
            j = i
            while j < len(self.letters) and self.letters[j] == (v, s):
                j += 1
            e = s * (j - i)
            parts.append(f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}")
            i = j
        return "*".join(parts)


def invert(w: Word) -> Word:
    return Word(tuple((v, -s) for v, s in reversed(w.letters)), w.arity)


def power(w: Word, k: int) -> Word:
    base = w if k >= 0 else invert(w)
    return Word(base.letters * abs(k), w.arity)


def commutator(*words: Word) -> Word:
    """Left-normed commutator ``[w1, w2, ..., wk]``."""
    if len(words) < 2:
        raise ValueError("a commutator needs at least two entries")
    acc = words[0]
    for v in words[1:]:
        acc = invert(acc) * invert(v) * acc * v
    return acc


def engel_word(n: int) -> Word:
    """The n-Engel word ``[x, y, y, ..., y]`` with ``n`` copies of ``y``."""
    x, y = Word.var(0, 2), Word.var(1, 2)
    return commutator(x, *([y] * n))


def weight(w: Word) -> tuple[int, ...]:
    sums = [0] * w.arity
    for v, s in w.letters:
        sums[v] += s
    return tuple(sums)


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Replace each ``x_i`` by ``images[i]`` (an endomorphism of the free group)."""
    arity = max((im.arity for im in images), default=0)
    out: list[Letter] = []
    for v, s in w.letters:
        out.extend(images[v].letters if s == 1 else invert(images[v]).letters)
    return Word(tuple(out), max(arity, w.arity))


# -- elementary Nielsen moves, as lists of generator images ---------------------------

def _identity_images(d: int) -> list[Word]:
    return [Word.var(i, d) for i in range(d)]


def nielsen_swap(d: int, i: int, j: int) -> list[Word]:
    images = _identity_images(d)
    images[i], images[j] = images[j], images[i]
    return images


def nielsen_invert(d: int, i: int) -> list[Word]:
    images = _identity_images(d)
    images[i] = Word(((i, -1),), d)
    return images


def nielsen_multiply(d: int, i: int, j: int, k: int = 1) -> list[Word]:
    """``x_i -> x_i x_j^k`` (for ``i != j``, a product of elementary moves)."""
    if i == j:
        raise ValueError("x_i -> x_i x_i^k is not an automorphism")
    images = _identity_images(d)
    images[i] = Word(((i, 1),) + ((j, 1 if k > 0 else -1),) * abs(k), d)
    return images


@dataclass(frozen=True)
class PowerCommutatorForm:
    """``x1^a * c`` with ``c`` of zero weight, Nielsen-equivalent to a word."""

    a: int
    c: Word
    transformed: Word
    moves: tuple[tuple, ...] = ()

    def word(self) -> Word:
        return power(Word.var(0, self.c.arity), self.a) * self.c


def normalize_power_commutator(w: Word) -> PowerCommutatorForm:
    """Bring ``w`` to the form ``x1^a c`` by Nielsen moves, with ``a >= 0``.

    Euclid's algorithm runs on the weight vector through substitutions
    ``x_i -> x_i x_j^-q``; the surviving variable is moved to ``x1`` and
    inverted if needed.  Writing the result as ``x1^a`` times the rest
    leaves a zero-weight (hence commutator) word.
    """
    d = w.arity
    if d == 0:
        return PowerCommutatorForm(0, w, w)
    cur = w
    a = list(weight(w))
    moves = []
    while sum(1 for x in a if x) > 1:
        nz = [i for i in range(d) if a[i]]
        i = min(nz, key=lambda k: (abs(a[k]), k))
        j = next(k for k in nz if k != i)
        q = a[j] // a[i]
        cur = substitute(cur, nielsen_multiply(d, i, j, -q))
        moves.append(("multiply", i, j, -q))
        a[j] -= q * a[i]
    nz = [i for i in range(d) if a[i]]
    if nz and nz[0] != 0:
        cur = substitute(cur, nielsen_swap(d, 0, nz[0]))
        moves.append(("swap", 0, nz[0]))
        a[0], a[nz[0]] = a[nz[0]], a[0]
    if a[0] < 0:
        cur = substitute(cur, nielsen_invert(d, 0))
        moves.append(("invert", 0))
        a[0] = -a[0]
    assert weight(cur) == tuple([a[0]] + [0] * (d - 1)), (weight(cur), a)
    c = power(Word.var(0, d), -a[0]) * cur
    return PowerCommutatorForm(a[0], c, cur, tuple(moves))


# -- parsing ----------------------------------------------------------------------------

class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.letter_ids: dict[str, int] = {}
        self.explicit = False

    def error(self, msg: str):
        raise WordSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n*":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> tuple[Letter, ...]:
        letters: list[Letter] = []
        terms = 0
        while self.peek() and self.peek() not in ",])":
            letters.extend(self.term())
            terms += 1
        if not terms:
            self.error("expected a term")
        return free_reduce(letters)

    def term(self) -> tuple[Letter, ...]:
        start = self.pos
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            m = _INT.match(self.text, self.pos)
            if m is None:
                self.error("expected an integer exponent")
            self.pos = m.end()
            k = int(m.group().replace(" ", ""))
            w = Word(base)
            return power(w, k).letters
        if self.pos == start:
            self.error("unexpected character")
        return base

    def atom(self) -> tuple[Letter, ...]:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            parts = [self.word()]
            if self.peek() != ",":
                self.error("a commutator needs at least two entries")
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.word())
            if self.peek() != "]":
                self.error("expected ']'")
            self.pos += 1
            return commutator(*(Word(p) for p in parts)).letters
        if ch == "(":
            self.pos += 1
            inner = self.word()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "1":
            self.pos += 1
            return ()
        if ch.isalpha() and ch.islower():
            return ((self.variable(), 1),)
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def variable(self) -> int:
        ch = self.text[self.pos]
        j = self.pos + 1
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if ch == "x" and j > self.pos + 1:
            if self.letter_ids:
                self.error("cannot mix x1, x2, ... with bare letters")
            self.explicit = True
            idx = int(self.text[self.pos + 1:j]) - 1
            if idx < 0:
                self.error("variables are numbered from x1")
            if idx >= MAX_VARIABLES:
                self.error(f"variable index exceeds {MAX_VARIABLES}")
            self.pos = j
            return idx
        if self.explicit:
            self.error("cannot mix x1, x2, ... with bare letters")
        self.pos += 1
        if ch not in self.letter_ids:
            self.letter_ids[ch] = len(self.letter_ids)
        return self.letter_ids[ch]


_INT = re.compile(r"[+-]?\s*\d+")


def parse_word(text: str) -> Word:
    p = _Parser(text)
    letters = p.word()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return Word(letters)


# -- evaluation -------------------------------------------------------------------------

def evaluate(w: Word, G: FiniteGroup, args: Sequence[int]) -> int:
    if len(args) < w.arity:
        raise ValueError(f"word needs {w.arity} arguments, got {len(args)}")
    t, inv = G.table, G.inverses
    g = G.identity
    for v, s in w.letters:
        g = t[g, args[v] if s == 1 else inv[args[v]]]
    return int(g)


def tuple_count(G: FiniteGroup, arity: int) -> int:
    return G.order ** arity


def decode_tuple(index: int, n: int, arity: int) -> tuple[int, ...]:
    """Mixed-radix decoding; the first coordinate is the most significant."""
    out = []
    for _ in range(arity):
        index, r = divmod(index, n)
        out.append(r)
    return tuple(reversed(out))


def _values_chunk(w: Word, G: FiniteGroup, lo: int, hi: int) -> np.ndarray:
    n, d = G.order, w.arity
    idx = np.arange(lo, hi, dtype=np.int64)
    coords = [(idx // n ** (d - 1 - i)) % n for i in range(d)]
    inv_coords = {}
    t, inv = G.table, G.inverses
    cur = np.full(hi - lo, G.identity, dtype=np.int64)
    for v, s in w.letters:
        if s == 1:
            arg = coords[v]
        else:
            if v not in inv_coords:
                inv_coords[v] = inv[coords[v]]
            arg = inv_coords[v]
        cur = t[cur, arg]
    return cur


def word_values(w: Word, G: FiniteGroup, *, budget: int = DEFAULT_TUPLE_BUDGET,
                chunk: int = 1 << 20) -> np.ndarray:
    """Value of ``w`` on every tuple of ``G^arity`` in mixed-radix order."""
    total = tuple_count(G, w.arity)
    if total > budget:
        raise BudgetExceeded(f"|G|^{w.arity} = {total} exceeds tuple budget {budget}")
    return np.concatenate([_values_chunk(w, G, lo, min(total, lo + chunk))
                           for lo in range(0, total, chunk)])


def image(w: Word, G: FiniteGroup, *, budget: int = DEFAULT_TUPLE_BUDGET,
          threads: int = 1, chunk: int = 1 << 20) -> ElementSet:
    """The set ``G_w`` of all values of the word map, by exhaustive enumeration."""
    total = tuple_count(G, w.arity)
    if total > budget:
        raise BudgetExceeded(f"|G|^{w.arity} = {total} exceeds tuple budget {budget}")
    spans = [(lo, min(total, lo + chunk)) for lo in range(0, total, chunk)]

    def part(span):
        m = np.zeros(G.order, dtype=bool)
        m[_values_chunk(w, G, *span)] = True
        return m

    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(threads) as pool:
            masks = list(pool.map(part, spans))
    else:
        masks = [part(s) for s in spans]
    return ElementSet(np.logical_or.reduce(masks))


def find_preimage(w: Word, G: FiniteGroup, target: int, *,
                  budget: int = DEFAULT_TUPLE_BUDGET) -> tuple[int, ...] | None:
    vals = word_values(w, G, budget=budget)
    hits = np.flatnonzero(vals == target)
    if not len(hits):
        return None
    return decode_tuple(int(hits[0]), G.order, w.arity)


def inverse_set(S: ElementSet, G: FiniteGroup) -> ElementSet:
    mask = np.zeros(G.order, dtype=bool)
    mask[G.inverses[S.ids()]] = True
    return ElementSet(mask)


def is_inversion_closed(S: ElementSet, G: FiniteGroup) -> tuple[bool, int | None]:
    """Whether ``S`` is closed under inverses; otherwise the least ``x`` in S with ``x^-1`` not in S."""
    bad = S.mask & ~S.mask[G.inverses]
    if bad.any():
        return False, int(np.flatnonzero(bad)[0])
    return True, None

