import io

import numpy as np
import pytest

from verba.config import BudgetExceeded, Limits
from verba.corpus import load_corpus_group
from verba.standard import abelian_group, cyclic_group, dihedral_group, quaternion_group, symmetric_group
from verba.replay import replay_verdict
from verba.wordmaps import (
    build_word_map_group, decide_chirality, dump_maps, verify_fv_group_axioms, word_map_image,
)
from verba.words import evaluate, parse_word


@pytest.mark.parametrize("G, d, order", [
    (cyclic_group(2), 1, 2),
    (cyclic_group(2), 2, 4),
    (abelian_group((2, 2)), 2, 4),
    (cyclic_group(6), 2, 36),
    (symmetric_group(3), 2, 972),
    (dihedral_group(8), 2, 32),
    (quaternion_group(), 2, 32),
])
def test_word_map_group_orders(G, d, order):
    W = build_word_map_group(G, d)
    assert not W.truncated
    assert W.order == order
    assert verify_fv_group_axioms(W) is None


def test_rep_words_evaluate_to_stored_maps():
    G = symmetric_group(3)
    W = build_word_map_group(G, 2)
    rng = np.random.default_rng(1)
    for i in rng.choice(W.order, 30, replace=False):
        w = W.rep_word(int(i))
        vals = [evaluate(w, G, (a, b)) for a in range(6) for b in range(6)]
        assert vals == W.values[i].tolist()


def test_truncation_flag_and_axiom_refusal():
    W = build_word_map_group(dihedral_group(20), 2, cap=500)
    assert W.truncated and W.order <= 500
    with pytest.raises(ValueError):
        verify_fv_group_axioms(W)


def test_memory_budget_truncates():
    limits = Limits(memory_budget=36 * 100)
    W = build_word_map_group(symmetric_group(3), 2, limits=limits)
    assert W.truncated and W.order <= 100


def test_memory_budget_refuses_oversized_arrays():
    limits = Limits(memory_budget=36 * 20)
    with pytest.raises(BudgetExceeded):
        build_word_map_group(symmetric_group(3), 2, limits=limits)
    v = decide_chirality(symmetric_group(3), limits=limits)
    assert v.status == "unknown" and "memory budget" in v.certificate["reason"]


def test_map_image():
    W = build_word_map_group(symmetric_group(3), 2)
    sizes = {len(word_map_image(m)) for m in W.maps()}
    # trivial, A3 (squares), {1} plus transpositions (cubes), everything
    assert sizes == {1, 3, 4, 6}


def test_dump_format():
    W = build_word_map_group(cyclic_group(2), 1)
    buf = io.StringIO()
    dump_maps(W, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 2 and lines[0].split("\t")[0] == "1"


def test_decide_s3_achiral():
    v = decide_chirality(symmetric_group(3))
    assert v.is_achiral and v.method == "neumann-exhaustive"
    assert v.certificate["word_map_group_order"] == 972


@pytest.mark.parametrize("G", [dihedral_group(8), quaternion_group(), abelian_group((2, 2))])
def test_two_and_three_variables_agree(G):
    assert decide_chirality(G, d=2).status == decide_chirality(G, d=3).status == "achiral"


def test_s3_three_variables_no_contradiction():
    # W(S3) on three variables is far beyond a small cap; the outcome may only be
    # unknown or agree with the two-variable verdict
    v = decide_chirality(symmetric_group(3), 20000, d=3)
    assert v.status in ("achiral", "unknown")


def test_engine_finds_family_80_chiral():
    G = load_corpus_group("family-80").group
    v = decide_chirality(G, 10**6)
    assert v.is_chiral
    assert replay_verdict(v.to_dict(), G).ok
    w = parse_word(v.certificate["word"])
    assert evaluate(w, G, v.certificate["arguments"]) == v.certificate["element"]


@pytest.mark.slow
def test_engine_finds_family_63_chiral():
    G = load_corpus_group("family-63").group
    assert decide_chirality(G, 10**6).is_chiral


def test_truncated_search_is_unknown():
    v = decide_chirality(symmetric_group(4), 1000)
    assert v.is_unknown and "truncated" in v.certificate["reason"]
