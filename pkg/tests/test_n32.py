import random

import numpy as np
from hypothesis import given, strategies as st

from strategies import words
from verba.nilpotent.magnus import magnus_evaluate
from verba.nilpotent.n32 import (
    A, B, C, D, E, IDENTITY, N32Element, N32Quotient, check_moduli, mul5, n32_commutator,
    n32_from_word, n32_quotient_endomorphism_check, n32_to_word, n32_witness_element, reduce_mod,
)

coords = st.tuples(*[st.integers(-12, 12)] * 5).map(N32Element)
MAIN = (27, 9, 9, 3, 3)


def test_collection_examples():
    assert (B * A).coords == (1, 1, -1, 0, 0)
    assert (C * B).coords == (0, 1, 1, 0, 1)
    assert n32_commutator(A, B) == C
    assert n32_commutator(C, A) == D and n32_commutator(C, B) == E


def test_published_inverse_form():
    for p in (3, 5, 7):
        g = n32_witness_element(p)
        assert g.inverse().coords == (-p * p, 0, -p, p ** 3 - 1, 0)


@given(coords, coords, coords)
def test_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(coords, st.integers(-10, 10))
def test_inverse_and_power(u, n):
    assert u * u.inverse() == IDENTITY
    assert (u ** n) * (u ** -n) == IDENTITY


@given(words(max_arity=2, max_len=12))
def test_oracle_agreement(w):
    g = n32_from_word(w)
    assert magnus_evaluate(n32_to_word(g), 4, 2) == magnus_evaluate(w, 4, 2)


def test_quotient_is_well_defined():
    rng = random.Random(3)
    for _ in range(300):
        x = tuple(rng.randrange(m) for m in MAIN)
        y = tuple(rng.randrange(m) for m in MAIN)
        xs = tuple(t + m * rng.randint(-3, 3) for t, m in zip(x, MAIN))
        ys = tuple(t + m * rng.randint(-3, 3) for t, m in zip(y, MAIN))
        assert reduce_mod(mul5(x, y), MAIN) == reduce_mod(mul5(xs, ys), MAIN)


def test_small_quotient_exhaustively_associative():
    Q = N32Quotient((3, 3, 3, 3, 3))
    E_ = Q.element_arrays()
    rng = np.random.default_rng(0)
    idx = rng.integers(0, Q.order, size=(3, 5000))
    u, v, w = (tuple(x[i] for x in E_) for i in idx)
    left, right = Q.mul(Q.mul(u, v), w), Q.mul(u, Q.mul(v, w))
    assert all(np.array_equal(a, b) for a, b in zip(left, right))


def test_check_moduli():
    assert check_moduli(MAIN) is None
    assert check_moduli((27, 9, 3, 3, 3)) is None
    assert "m_c" in check_moduli((27, 9, 27, 3, 3))
    assert "m_d" in check_moduli((2, 2, 2, 2, 1))


def test_endomorphism_check_examples():
    assert n32_quotient_endomorphism_check(A, B, MAIN)
    assert n32_quotient_endomorphism_check(A.inverse(), B.inverse(), MAIN)
    # (ba)^9 = a^9 is not trivial mod 27
    assert not n32_quotient_endomorphism_check(A, B * A, MAIN)


def test_commutator_relations_automatic_for_main_moduli():
    Q = N32Quotient(MAIN)
    assert Q.relations_automatic()
    rng = random.Random(5)
    for _ in range(300):
        u = tuple(rng.randrange(m) for m in MAIN)
        v = tuple(rng.randrange(m) for m in MAIN)
        powers_ok = Q.pow(u, 27) == (0,) * 5 and Q.pow(v, 9) == (0,) * 5
        assert Q.is_endomorphism(u, v) == powers_ok


def test_unequal_central_moduli_need_full_check():
    assert not N32Quotient((9, 9, 9, 3, 1)).relations_automatic()
