import pytest

from verba.config import BudgetExceeded, Limits
from verba.nilpotent.n32 import A, N32Element, inv5, n32_apply_endomorphism, reduce_mod
from verba.nilpotent.search import n32_congruence_certificate, n32_witness_search


def test_generator_is_inverted_by_sign_flip():
    res = n32_witness_search(3, element=A)
    assert res.found
    assert res.pair == (N32Element((26, 0, 0, 0, 0)), N32Element((0, 1, 0, 0, 0)))


def test_weaker_moduli_admit_inversion():
    res = n32_witness_search(3, moduli=(27, 9, 3, 3, 3))
    assert res.found
    # a -> a^-1, b -> b^-1, reduced mod (27, 9)
    assert [x.coords for x in res.pair] == [(26, 0, 0, 0, 0), (0, 8, 0, 0, 0)]


def test_sweep_finds_non_seeded_pair():
    res = n32_witness_search(3, moduli=(9, 9, 3, 3, 3), element=N32Element((1, 1, 0, 0, 0)))
    assert res.found and res.stats["pairs_examined"] > 0


@pytest.mark.parametrize("g", [(3, 0, 1, 2, 0), (3, 0, 6, 1, 0), (0, 3, 3, 0, 1)])
def test_full_and_restricted_agree(g):
    kw = dict(moduli=(9, 9, 9, 3, 3), element=N32Element(g))
    full = n32_witness_search(3, mode="full", **kw)
    restricted = n32_witness_search(3, mode="restricted", **kw)
    assert full.found and restricted.found
    # recheck the hit with exact integer arithmetic, reducing only at the end
    u, v = full.pair
    image = n32_apply_endomorphism(u.coords, v.coords, g)
    assert reduce_mod(image, (9, 9, 9, 3, 3)) == reduce_mod(inv5(g), (9, 9, 9, 3, 3))


@pytest.mark.slow
def test_full_mode_main_quotient_has_no_inverting_endomorphism():
    # the restricted run of the same search is part of the acceptance suite
    res = n32_witness_search(3, mode="full")
    assert not res.found
    assert res.stats["pairs_examined"] == 19683 * 6561


def test_pair_budget():
    with pytest.raises(BudgetExceeded):
        n32_witness_search(3, limits=Limits(pair_budget=1000))


def test_rejects_even_or_composite():
    with pytest.raises(ValueError):
        n32_witness_search(2)
    with pytest.raises(ValueError):
        n32_witness_search(9)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_congruence_certificate(p):
    cert = n32_congruence_certificate(p)
    assert cert.ok
    assert len(cert.rows) == p * p
    assert not set(cert.c_solutions) & set(cert.d_solutions)


def test_congruence_independent_of_unknowns():
    tables = {tuple(n32_congruence_certificate(5, seed=s).c_solutions) for s in range(5)}
    assert len(tables) == 1


def test_congruence_rejects_two():
    with pytest.raises(ValueError, match="p = 2"):
        n32_congruence_certificate(2)
