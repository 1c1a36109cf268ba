"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (collected again in the
terminal summary).  Time limits are pinned in ``LIMITS``.
"""

import json
import random
import time


from conftest import ACCEPTANCE_LINES
from verba.cli import main as cli_main
from verba.constructions import FamilyParameters, build_family_group, semidirect_cyclic, verify_family_chirality
from verba.corpus import corpus_names, load_corpus_group
from verba.filters import filter_cascade, is_minimal_chiral
from verba.nilpotent.magnus import magnus_evaluate
from verba.nilpotent.n23 import (
    n23_from_word, n23_to_word, n23_verify_achirality_instance,
)
from verba.nilpotent.n32 import n32_from_word, n32_to_word
from verba.nilpotent.search import n32_congruence_certificate, n32_witness_search
from verba.standard import alternating_group, dihedral_group, symmetric_group
from verba.wordmaps import build_word_map_group, decide_chirality
from verba.words import Word, engel_word, image, is_inversion_closed, normalize_power_commutator

# seconds
LIMITS = {
    "ac1_wgroup_s3": 60.0,
    "ac2_decide_s3": 300.0,
    "ac3_family_each": 10.0,
    "ac4_cascade_total": 600.0,
    "ac9_search": 1800.0,
}


def report(tag: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {tag}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def random_word(rng: random.Random, arity: int, max_len: int) -> Word:
    n = rng.randint(0, max_len)
    return Word(tuple((rng.randrange(arity), rng.choice((1, -1))) for _ in range(n)), arity)


def test_ac01_fv_s3_order():
    t = time.perf_counter()
    W = build_word_map_group(symmetric_group(3), 2)
    dt = time.perf_counter() - t
    report("AC1", W.order == 972 and not W.truncated and dt < LIMITS["ac1_wgroup_s3"],
           f"|W(S3)| (d=2) = {W.order}, expected 972; {dt:.2f}s < {LIMITS['ac1_wgroup_s3']}s")


def test_ac02_s3_exhaustively_achiral():
    t = time.perf_counter()
    v = decide_chirality(symmetric_group(3))
    dt = time.perf_counter() - t
    report("AC2", v.is_achiral and v.method == "neumann-exhaustive" and dt < LIMITS["ac2_decide_s3"],
           f"decide_chirality(S3) = {v.status} [{v.method}]; {dt:.2f}s < {LIMITS['ac2_decide_s3']}s")


def test_ac03_family_chirality_and_minimality():
    details, ok = [], True
    for q, p, r, phi in [(7, 3, 3, 2), (5, 4, 4, 2)]:
        params = FamilyParameters(q, p, r, phi)
        t = time.perf_counter()
        v = verify_family_chirality(params)      # raises if assertion (a) or (b) fails
        dt = time.perf_counter() - t
        ok &= v.is_chiral and dt < LIMITS["ac3_family_each"]
        details.append(f"({q},{p},{r},{phi}) {v.status} in {dt:.2f}s")
    params = FamilyParameters(7, 3, 3, 2)
    G, _ = build_family_group(params)
    minimal = is_minimal_chiral(G, verify_family_chirality(params))
    ok &= minimal is True
    details.append(f"order-63 minimal chiral: {minimal}")
    report("AC3", ok, "; ".join(details) + f" (limit {LIMITS['ac3_family_each']}s each)")


def test_ac04_filter_cascade_on_corpus():
    t = time.perf_counter()
    failures, inconclusive, certified = [], {}, 0
    for name in corpus_names():
        G = load_corpus_group(name).group
        if G.order >= 108:
            continue
        v = filter_cascade(G)
        if name in ("family-63", "family-80"):
            inconclusive[name] = v.status
        elif not v.is_achiral:
            failures.append(name)
        else:
            certified += 1
    dt = time.perf_counter() - t
    ok = (not failures and all(s == "unknown" for s in inconclusive.values())
          and len(inconclusive) == 2 and dt < LIMITS["ac4_cascade_total"])
    report("AC4", ok, f"{certified} groups certified achiral, failures {failures}; "
                      f"families {inconclusive}; {dt:.1f}s < {LIMITS['ac4_cascade_total']}s")


def test_ac05_engel_images_inversion_closed():
    bad = []
    words = [engel_word(2), engel_word(3)]
    for name in corpus_names():
        G = load_corpus_group(name).group
        for w in words:
            if not is_inversion_closed(image(w, G), G)[0]:
                bad.append((name, str(w)))
    report("AC5", not bad, f"[x,y,y] and [x,y,y,y] on {len(corpus_names())} groups, open images: {bad}")


def test_ac06_nielsen_normal_form_invariance():
    rng = random.Random(2024)
    groups = [symmetric_group(3), dihedral_group(8), alternating_group(4)]
    failures = 0
    for _ in range(100):
        w = random_word(rng, rng.randint(1, 3), 10)
        form = normalize_power_commutator(w)
        for G in groups:
            failures += image(w, G) != image(form.word(), G)
    report("AC6", failures == 0, f"100 random words on S3, D8, A4: {failures} image mismatches")


def test_ac07_n23_instances_and_oracle():
    rng = random.Random(7)
    bad_instances = 0
    for _ in range(200):
        i, j, k, l = (rng.randint(-20, 20) for _ in range(4))
        res = n23_verify_achirality_instance(i, j, k, l)
        M = res.matrix
        good = res.ok and M.det == -1 and M.apply(j, k) == (j, k) and res.phi_g == res.g_inverse
        bad_instances += not good
    bad_products = 0
    for _ in range(100):
        u, v = random_word(rng, 3, 8), random_word(rng, 3, 8)
        prod = n23_from_word(u) * n23_from_word(v)
        bad_products += magnus_evaluate(n23_to_word(prod), 3, 3) != magnus_evaluate(u * v, 3, 3)
    report("AC7", bad_instances == 0 and bad_products == 0,
           f"200 N(2,3) instances: {bad_instances} failures; 100 products vs series: {bad_products} failures")


def test_ac08_n32_collection_vs_oracle():
    rng = random.Random(8)
    failures = 0
    for _ in range(500):
        w = random_word(rng, 2, 12)
        failures += magnus_evaluate(n32_to_word(n32_from_word(w)), 4, 2) != magnus_evaluate(w, 4, 2)
    report("AC8", failures == 0, f"500 random words vs degree-4 series: {failures} failures")


def test_ac09_n32_witness_search():
    res = n32_witness_search(3, (27, 9, 9, 3, 3), mode="restricted")
    dt = res.stats["elapsed_seconds"]
    weak = n32_witness_search(3, (27, 9, 3, 3, 3), mode="restricted")
    weak_text = (f"found u={list(weak.pair[0].coords)}, v={list(weak.pair[1].coords)}"
                 if weak.found else "no endomorphism")
    report("AC9", not res.found and dt < LIMITS["ac9_search"],
           f"(27,9,9,3,3): {'found' if res.found else 'no-endomorphism'} after "
           f"{res.stats['pairs_examined']} pairs in {dt:.1f}s < {LIMITS['ac9_search']}s; "
           f"(27,9,3,3,3) informative outcome: {weak_text}")


def test_ac10_congruence_certificates():
    oks = {p: n32_congruence_certificate(p).ok for p in (3, 5, 7)}
    try:
        n32_congruence_certificate(2)
        rejected = False
    except ValueError:
        rejected = True
    report("AC10", all(oks.values()) and rejected, f"p=3,5,7 certificates {oks}; p=2 rejected: {rejected}")


def test_ac11_resource_guard(tmp_path, capsys):
    G = semidirect_cyclic(5, 4, 2, "C5 x| C4")
    path = tmp_path / "f20.json"
    path.write_text(json.dumps({"label": G.label, "table": G.table.tolist()}))
    t = time.perf_counter()
    code = cli_main(["wgroup", str(path), "-d", "2", "--map-cap", "100000"])
    out, err = capsys.readouterr()
    dt = time.perf_counter() - t
    doc = json.loads(out)
    ok = code == 0 and doc["truncated"] and "truncated" in err and doc["maps_seen"] <= 100000
    report("AC11", ok, f"order-20 group, cap 100000: truncated={doc['truncated']} after "
                       f"{doc['maps_seen']} maps in {dt:.1f}s, notice on stderr")
