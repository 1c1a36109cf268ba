import numpy as np
import pytest

from verba.constructions import FamilyParameters, build_family_group, semidirect_cyclic, verify_family_chirality
from verba.filters import (
    automorphic_to_inverse_filter, automorphism_transversal, enumerate_automorphisms, filter_cascade, find_complements,
    inner_automorphisms, inversion_automorphism, is_automorphism, is_minimal_chiral,
    power_commutator_filter, power_commutator_sets, split_extension_certificate,
)
from verba.groups import direct_product, normal_subgroups, subgroup_as_group, subgroup_generated
from verba.replay import replay_verdict
from verba.standard import (
    abelian_group, alternating_group, cyclic_group, dihedral_group, quaternion_group, symmetric_group,
)
from verba.verdict import ACHIRAL, ChiralityVerdict


@pytest.mark.parametrize("G, count", [
    (cyclic_group(4), 2), (cyclic_group(7), 6), (symmetric_group(3), 6),
    (abelian_group((2, 2)), 6), (quaternion_group(), 24), (dihedral_group(8), 8),
    (alternating_group(4), 24),
])
def test_automorphism_counts(G, count):
    auts = enumerate_automorphisms(G)
    assert len(auts) == count
    assert all(is_automorphism(G, a.images) for a in auts)


@pytest.mark.parametrize("G", [symmetric_group(3), quaternion_group(), dihedral_group(12),
                               alternating_group(4), symmetric_group(4), abelian_group((2, 4))])
def test_transversal_times_inner_is_everything(G):
    full = {a.images.tobytes() for a in enumerate_automorphisms(G)}
    composed = {np.asarray(c.images[s.images], dtype=np.int64).tobytes()
                for s in automorphism_transversal(G) for c in inner_automorphisms(G)}
    assert composed == full


def test_inner_automorphisms_are_automorphisms():
    G = symmetric_group(4)
    inner = inner_automorphisms(G)
    assert len({a.images.tobytes() for a in inner}) == 24
    assert all(is_automorphism(G, a.images) for a in inner)


@pytest.mark.parametrize("G", [symmetric_group(3), dihedral_group(10), quaternion_group(),
                               alternating_group(4), symmetric_group(4)])
def test_aut_inverse_filter(G):
    cert = automorphic_to_inverse_filter(G)
    assert cert is not None
    v = ChiralityVerdict(ACHIRAL, "aut-inverse", cert.data)
    assert replay_verdict(v.to_dict(), G).ok


def test_frobenius_21_needs_power_commutator():
    G = semidirect_cyclic(7, 3, 2, "F21")
    assert automorphic_to_inverse_filter(G) is None
    cert = power_commutator_filter(G)
    assert cert is not None
    sets = power_commutator_sets(G)
    assert sorted(sets) == [1, 3, 7, 21]
    v = filter_cascade(G)
    assert v.method == "power-commutator"
    assert replay_verdict(v.to_dict(), G).ok


def test_split_extension_certificate_on_dihedral():
    G = dihedral_group(12)
    rotations = subgroup_generated(G, [1])
    H = subgroup_generated(G, [6])
    sigma = inversion_automorphism(G, rotations, H)
    assert all(sigma.images[x] == G.inv(x) for x in rotations.ids())
    Hg, _ = subgroup_as_group(G, H)
    h_verdict = filter_cascade(Hg)
    cert = split_extension_certificate(G, rotations, H, h_verdict)
    assert cert is not None
    v = filter_cascade(G, hints=[(rotations, H)])
    # aut-inverse fires first; the certificate itself still replays
    report = {"verdict": "achiral", "method": "split-extension", "certificate": cert.data}
    assert replay_verdict(report, G).ok
    assert v.is_achiral


def test_split_hypotheses_checked():
    G = symmetric_group(3)
    N = subgroup_generated(G, [1])     # an order-2 subgroup, not normal
    with pytest.raises(ValueError):
        inversion_automorphism(G, N, subgroup_generated(G, [0]))


def test_complements_exist_in_s4():
    G = symmetric_group(4)
    V4 = [N for N in normal_subgroups(G) if N.order == 4][0]
    comps = list(find_complements(G, V4))
    assert comps and all(H.order == 6 for H in comps)


@pytest.mark.parametrize("name, q, pr, phi", [("63", 7, 9, 2), ("80", 5, 16, 2)])
def test_family_inconclusive(name, q, pr, phi):
    G, _ = build_family_group(FamilyParameters.from_stanza(q, pr, phi))
    v = filter_cascade(G)
    assert v.is_unknown
    assert v.certificate["tried"] == ["abelian", "aut-inverse", "power-commutator", "split-extension"]


def test_minimal_chiral_family_63():
    params = FamilyParameters.from_stanza(7, 9, 2)
    G, _ = build_family_group(params)
    evidence = verify_family_chirality(params)
    assert is_minimal_chiral(G, evidence) is True
    bigger = direct_product(G, cyclic_group(2))
    # the same word still separates in G x C2, and G is a proper quotient of it
    from verba.words import image, is_inversion_closed, parse_word
    w = parse_word(evidence.certificate["word"])
    assert not is_inversion_closed(image(w, bigger), bigger)[0]
    chiral_evidence = ChiralityVerdict("chiral", "family-witness", evidence.certificate)
    assert is_minimal_chiral(bigger, chiral_evidence) is False


def test_minimal_chiral_needs_chiral_evidence():
    with pytest.raises(ValueError):
        is_minimal_chiral(symmetric_group(3), filter_cascade(symmetric_group(3)))
