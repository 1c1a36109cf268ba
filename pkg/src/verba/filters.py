"""Cheap sufficient conditions for achirality, with replayable certificates.

Everything here rests on two facts: word-map images are closed under
automorphisms, and an element that some endomorphism sends to its inverse
can never witness chirality.  Only automorphisms are enumerated.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .config import DEFAULT_AUT_CAP, DEFAULT_LIMITS, BudgetExceeded, Limits
from .groups import (
    ElementSet,
    FiniteGroup,
    SubgroupData,
    closure_mask,
    conjugacy_classes,
    derived_subgroup,
    exponent,
    is_homomorphism,
    minimal_generating_tuple,
    normal_subgroups,
    power_image_set,
    quotient,
    subgroup_as_group,
)
from .verdict import ACHIRAL, UNKNOWN, ChiralityVerdict
from .words import image, is_inversion_closed, parse_word

FILTER_NAMES = ("abelian", "aut-inverse", "power-commutator", "split-extension")


@dataclass(frozen=True, eq=False)
class Automorphism:
    images: np.ndarray
    generator_images: tuple[int, ...] = ()

    def __call__(self, g: int) -> int:
        return int(self.images[g])


@dataclass(frozen=True)
class FilterCertificate:
    filter_name: str
    data: dict[str, Any] = field(default_factory=dict)


# -- automorphisms ----------------------------------------------------------------------

def _bfs_levels(G: FiniteGroup, gens: Sequence[int]):
    """Spanning tree of <gens> as BFS levels of (nodes, parents, generator index)."""
    t = G.table
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    frontier = np.array([G.identity])
    levels = []
    while len(frontier):
        nodes, parents, gidx = [], [], []
        for j, s in enumerate(gens):
            nb = t[frontier, s]
            fresh = ~seen[nb]
            nb_f, par_f = nb[fresh], frontier[fresh]
            # one tree edge per new node
            nb_f, first = np.unique(nb_f, return_index=True)
            par_f = par_f[first]
            seen[nb_f] = True
            nodes.append(nb_f)
            parents.append(par_f)
            gidx.append(np.full(len(nb_f), j))
        nodes = np.concatenate(nodes)
        if not len(nodes):
            break
        levels.append((nodes, np.concatenate(parents), np.concatenate(gidx)))
        frontier = nodes
    return levels, seen


class _Extender:
    """Extends generator images along a spanning tree and checks all edges."""

    def __init__(self, G: FiniteGroup, gens: Sequence[int]):
        self.G = G
        self.gens = list(gens)
        self.levels, self.members = _bfs_levels(G, gens)
        self.ids = np.flatnonzero(self.members)
        self.edges = [(self.ids, G.table[self.ids, s]) for s in gens]

    def extend(self, imgs: Sequence[int]) -> np.ndarray | None:
        t = self.G.table
        img = np.full(self.G.order, -1, dtype=np.int64)
        img[self.G.identity] = self.G.identity
        targets = np.asarray(imgs, dtype=np.int64)
        for nodes, parents, gidx in self.levels:
            img[nodes] = t[img[parents], targets[gidx]]
        sub = img[self.ids]
        if len(np.unique(sub)) != len(sub):
            return None
        for (src, dst), im in zip(self.edges, targets):
            if not np.array_equal(img[dst], t[img[src], im]):
                return None
        return img


def _backtrack_automorphisms(G: FiniteGroup, gens, cands, cap: int) -> list[Automorphism]:
    prefixes = [_Extender(G, gens[:k + 1]) for k in range(len(gens))]
    out: list[Automorphism] = []

    def backtrack(k: int, chosen: list[int]):
        for c in cands[k]:
            trial = chosen + [int(c)]
            img = prefixes[k].extend(trial)
            if img is None:
                continue
            if k + 1 == len(gens):
                out.append(Automorphism(img, tuple(trial)))
                if len(out) > cap:
                    raise BudgetExceeded(f"more than {cap} automorphisms")
            else:
                backtrack(k + 1, trial)

    backtrack(0, [])
    return out


def enumerate_automorphisms(G: FiniteGroup, cap: int = DEFAULT_AUT_CAP) -> list[Automorphism]:
    """All automorphisms, by backtracking over images of a minimal generating tuple.

    Images of the k-th generator range over elements of the same order; each
    partial assignment is extended over the subgroup generated by the first
    k generators and rejected as soon as an edge of its Cayley graph breaks.
    """
    gens = minimal_generating_tuple(G)
    if not gens:
        return [Automorphism(np.array([G.identity]), ())]
    orders = G.element_orders
    cands = [np.flatnonzero(orders == orders[s]) for s in gens]
    return _backtrack_automorphisms(G, gens, cands, cap)


def automorphism_transversal(G: FiniteGroup, cap: int = DEFAULT_AUT_CAP) -> list[Automorphism]:
    """Automorphisms sending the first generator to a conjugacy class representative.

    Every automorphism is an inner one composed with a member of this list,
    so it is all that is needed when conjugation is handled separately.
    """
    gens = minimal_generating_tuple(G)
    if not gens:
        return [Automorphism(np.array([G.identity]), ())]
    orders = G.element_orders
    size = len(np.unique(G.conjugation[:, gens[0]]))
    reps = [int(c[0]) for c in conjugacy_classes(G)
            if len(c) == size and orders[c[0]] == orders[gens[0]]]
    cands = [np.array(reps)] + [np.flatnonzero(orders == orders[s]) for s in gens[1:]]
    return _backtrack_automorphisms(G, gens, cands, cap)


def inner_automorphisms(G: FiniteGroup) -> list[Automorphism]:
    rows = np.unique(G.conjugation, axis=0)
    return [Automorphism(r.astype(np.int64)) for r in rows]


def is_automorphism(G: FiniteGroup, images) -> bool:
    images = np.asarray(images)
    return len(np.unique(images)) == G.order and is_homomorphism(G, G, images)


_AUT_CACHE: "weakref.WeakKeyDictionary[FiniteGroup, list[Automorphism]]" = weakref.WeakKeyDictionary()


def _transversal(G: FiniteGroup, cap: int) -> list[Automorphism]:
    if G not in _AUT_CACHE:
        _AUT_CACHE[G] = automorphism_transversal(G, cap)
    return _AUT_CACHE[G]


def _automorphism_into(G: FiniteGroup, g: int, mask: np.ndarray, cap: int) -> np.ndarray | None:
    """Images of some automorphism sending ``g`` into ``mask``, or ``None``."""
    conj = G.conjugation
    for s in _transversal(G, cap):
        hs = np.flatnonzero(mask[conj[:, s.images[g]]])
        if len(hs):
            return conj[hs[0]][s.images].astype(np.int64)
    return None


def is_automorphic_to_inverse(G: FiniteGroup, x: int, auts: Sequence[Automorphism]) -> bool:
    target = G.inverses[x]
    if np.any(G.conjugation[:, x] == target):
        return True
    return any(a.images[x] == target for a in auts)


def _inverse_witnesses(G: FiniteGroup, elements: np.ndarray, limits: Limits):
    """Pick, for each element, an automorphism sending it to its inverse.

    Returns ``(automorphisms, {element: index})`` restricted to the ones used,
    plus the elements for which none exists.  Inner automorphisms are tried
    before the full automorphism group is enumerated.
    """
    inv = G.inverses
    chosen: dict[bytes, int] = {}
    auts: list[np.ndarray] = []
    witness: dict[int, int] = {}

    def use(images: np.ndarray) -> int:
        key = images.astype(np.int64).tobytes()
        if key not in chosen:
            chosen[key] = len(auts)
            auts.append(images.astype(np.int64))
        return chosen[key]

    if G.is_abelian:
        idx = use(np.asarray(inv))
        return auts, {int(x): idx for x in elements}, []
    conj = G.conjugation
    missing = []
    for x in elements:
        hs = np.flatnonzero(conj[:, x] == inv[x])
        if len(hs):
            witness[int(x)] = use(conj[hs[0]])
        else:
            missing.append(int(x))
    if missing:
        still = []
        for x in missing:
            mask = np.zeros(G.order, dtype=bool)
            mask[inv[x]] = True
            img = _automorphism_into(G, x, mask, limits.aut_cap)
            if img is None:
                still.append(x)
            else:
                witness[x] = use(img)
        missing = still
    return auts, witness, missing


def _aut_payload(auts, witness) -> dict[str, Any]:
    return {"automorphisms": [a.tolist() for a in auts],
            "witness": sorted([int(x), int(i)] for x, i in witness.items())}


def automorphic_to_inverse_filter(G: FiniteGroup, *, limits: Limits = DEFAULT_LIMITS
                                  ) -> FilterCertificate | None:
    """Certificate that every element is automorphic to its inverse, else ``None``."""
    auts, witness, missing = _inverse_witnesses(G, np.arange(G.order), limits)
    if missing:
        return None
    return FilterCertificate("aut-inverse", _aut_payload(auts, witness))


def power_commutator_sets(G: FiniteGroup) -> dict[int, ElementSet]:
    """``S_k = (G^k G') minus G^k`` for every divisor k of the exponent."""
    e = exponent(G)
    D = derived_subgroup(G).ids()
    out = {}
    for k in (k for k in range(1, e + 1) if e % k == 0):
        P = power_image_set(G, k)
        mask = np.zeros(G.order, dtype=bool)
        mask[G.table[P.ids()[:, None], D[None, :]].ravel()] = True
        out[k] = ElementSet(mask & ~P.mask)
    return out


def power_commutator_filter(G: FiniteGroup, *, limits: Limits = DEFAULT_LIMITS
                            ) -> FilterCertificate | None:
    """Every element of every ``S_k`` must be automorphic to its inverse."""
    sets = power_commutator_sets(G)
    union = np.zeros(G.order, dtype=bool)
    for S in sets.values():
        union |= S.mask
    auts, witness, missing = _inverse_witnesses(G, np.flatnonzero(union), limits)
    if missing:
        return None
    data = {"exponent": exponent(G), "sets": {str(k): S.to_list() for k, S in sets.items()}}
    data.update(_aut_payload(auts, witness))
    return FilterCertificate("power-commutator", data)


# -- split extensions -------------------------------------------------------------------

def _is_abelian_set(G: FiniteGroup, ids: np.ndarray) -> bool:
    sub = G.table[np.ix_(ids, ids)]
    return bool(np.array_equal(sub, sub.T))


def _check_split(G: FiniteGroup, N: SubgroupData, H: SubgroupData) -> str | None:
    n_ids, h_ids = N.ids(), H.ids()
    if not _is_abelian_set(G, n_ids):
        return "N is not abelian"
    if not N.elements.mask[G.conjugation[:, n_ids]].all():
        return "N is not normal"
    if not H.elements.mask[G.table[np.ix_(h_ids, h_ids)]].all():
        return "H is not a subgroup"
    if int((N.elements.mask & H.elements.mask).sum()) != 1:
        return "N and H intersect nontrivially"
    if len(n_ids) * len(h_ids) != G.order:
        return "|N||H| != |G|"
    return None


def inversion_automorphism(G: FiniteGroup, N: SubgroupData, H: SubgroupData) -> Automorphism:
    """The automorphism ``n*h -> n^-1 * h`` of ``G = N x| H`` with N abelian."""
    problem = _check_split(G, N, H)
    if problem is not None:
        raise ValueError(f"inversion_automorphism: {problem}")
    n_ids, h_ids = N.ids(), H.ids()
    images = np.full(G.order, -1, dtype=np.int64)
    products = G.table[n_ids[:, None], h_ids[None, :]]
    images[products] = G.table[G.inverses[n_ids][:, None], h_ids[None, :]]
    if (images < 0).any() or not is_automorphism(G, images):
        raise ValueError("inversion_automorphism: the inversion map is not an automorphism")
    return Automorphism(images)


def find_complements(G: FiniteGroup, N: SubgroupData, *, max_closures: int = 20000
                     ) -> list[SubgroupData]:
    """Complements of N generated by one or two elements (best effort, capped)."""
    m = G.order // N.order
    orders = G.element_orders
    nmask = N.elements.mask
    found: dict[bytes, SubgroupData] = {}
    for h in np.flatnonzero(orders == m):
        mask = closure_mask(G, [int(h)])
        if int((mask & nmask).sum()) == 1:
            found.setdefault(np.packbits(mask).tobytes(),
                             SubgroupData(ElementSet(mask), (int(h),), False))
    if found or m == 1:
        return list(found.values())
    pool = [int(g) for g in np.flatnonzero((m % orders == 0) & ~nmask)]
    closures = 0
    for h1, h2 in itertools.combinations(pool, 2):
        if closures >= max_closures:
            break
        closures += 1
        mask = closure_mask(G, [h1, h2], limit=m)
        if mask is None or mask.sum() != m or int((mask & nmask).sum()) != 1:
            continue
        key = np.packbits(mask).tobytes()
        if key not in found:
            found[key] = SubgroupData(ElementSet(mask), (h1, h2), False)
            break
    return list(found.values())


def find_split_decompositions(G: FiniteGroup, *, max_closures: int = 20000):
    """Pairs (N, H) with N abelian normal, proper and nontrivial, H a complement."""
    out = []
    for N in sorted(normal_subgroups(G), key=lambda s: -s.order):
        if N.order in (1, G.order) or not _is_abelian_set(G, N.ids()):
            continue
        for H in find_complements(G, N, max_closures=max_closures):
            out.append((N, H))
    return out


def split_extension_certificate(G: FiniteGroup, N: SubgroupData, H: SubgroupData,
                                h_verdict: ChiralityVerdict, *,
                                limits: Limits = DEFAULT_LIMITS) -> FilterCertificate | None:
    """Achirality from an abelian kernel N and an achiral complement H.

    Needs every element to be automorphic into N or H.  Raises ValueError
    when the split hypotheses themselves fail.
    """
    sigma = inversion_automorphism(G, N, H)
    if not h_verdict.is_achiral:
        return None
    target = N.elements.mask | H.elements.mask
    chosen: dict[bytes, int] = {}
    auts: list[np.ndarray] = []
    landing = []
    pending = []
    conj = G.conjugation
    for g in range(G.order):
        if target[g]:
            landing.append([g, -1, g])
            continue
        hs = np.flatnonzero(target[conj[:, g]])
        if len(hs):
            img = conj[hs[0]].astype(np.int64)
            key = img.tobytes()
            chosen.setdefault(key, len(auts))
            if chosen[key] == len(auts):
                auts.append(img)
            landing.append([g, chosen[key], int(img[g])])
        else:
            pending.append(g)
    if pending:
        for g in pending:
            img = _automorphism_into(G, g, target, limits.aut_cap)
            if img is None:
                return None
            key = img.tobytes()
            chosen.setdefault(key, len(auts))
            if chosen[key] == len(auts):
                auts.append(img)
            landing.append([g, chosen[key], int(img[g])])
    landing.sort()
    data = {"N": N.elements.to_list(), "H": H.elements.to_list(),
            "inversion": sigma.images.tolist(),
            "automorphisms": [a.tolist() for a in auts], "landing": landing,
            "h_verdict": h_verdict.to_dict()}
    return FilterCertificate("split-extension", data)


# -- orchestration ----------------------------------------------------------------------

def filter_cascade(G: FiniteGroup, hints: Sequence[tuple[SubgroupData, SubgroupData]] | None = None,
                   *, limits: Limits = DEFAULT_LIMITS, depth: int = 0) -> ChiralityVerdict:
    """abelian, aut-inverse, power-commutator, split-extension; first success wins."""
    tried = []
    if G.is_abelian:
        return ChiralityVerdict(ACHIRAL, "abelian", {"filter_name": "abelian"})
    tried.append("abelian")
    try:
        for name, fn in (("aut-inverse", automorphic_to_inverse_filter),
                         ("power-commutator", power_commutator_filter)):
            cert = fn(G, limits=limits)
            if cert is not None:
                return ChiralityVerdict(ACHIRAL, name, dict(cert.data, filter_name=name))
            tried.append(name)
        decompositions = list(hints) if hints is not None else find_split_decompositions(G)
        for N, H in decompositions:
            Hg, _ = subgroup_as_group(G, H, f"complement of order {H.order}")
            h_verdict = filter_cascade(Hg, limits=limits, depth=depth + 1)
            if not h_verdict.is_achiral:
                continue
            cert = split_extension_certificate(G, N, H, h_verdict, limits=limits)
            if cert is not None:
                return ChiralityVerdict(ACHIRAL, "split-extension",
                                        dict(cert.data, filter_name="split-extension"))
        tried.append("split-extension")
    except BudgetExceeded as exc:
        return ChiralityVerdict(UNKNOWN, "filters", {"tried": tried, "reason": str(exc)})
    return ChiralityVerdict(UNKNOWN, "filters",
                            {"tried": tried, "split_decompositions": len(decompositions)})


def is_minimal_chiral(G: FiniteGroup, chirality_evidence: ChiralityVerdict, *,
                      limits: Limits = DEFAULT_LIMITS, map_cap: int = 200_000) -> bool | None:
    """True iff every proper quotient is achiral; ``None`` if some quotient is undecided.

    A quotient on which the evidence's own witness word is chiral settles the
    answer as False without further search.
    """
    from .wordmaps import decide_chirality

    if not chirality_evidence.is_chiral:
        raise ValueError("is_minimal_chiral needs chiral evidence")
    word_text = chirality_evidence.certificate.get("word")
    undecided = False
    for N in normal_subgroups(G):
        if N.order == 1:
            continue
        Q, _ = quotient(G, N)
        if Q.order == 1:
            continue
        v = filter_cascade(Q, limits=limits)
        if v.is_achiral:
            continue
        if word_text is not None:
            w = parse_word(word_text)
            closed, _ = is_inversion_closed(image(w, Q, budget=limits.tuple_budget), Q)
            if not closed:
                return False
        v = decide_chirality(Q, map_cap, limits=limits)
        if v.is_chiral:
            return False
        if v.is_unknown:
            undecided = True
    return None if undecided else True
