"""``verba`` command line.

Every command writes one JSON document to stdout and a short summary to
stderr.  Exit status: 0 when a verdict or result was produced, 1 when
``verify`` finds a mismatch, 2 for bad input, 3 when an internal structural
assertion fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .config import BudgetExceeded, Limits
from .constructions import (
    FamilyError, FamilyParameters, StructuralAssertionError, validate_family,
    verify_family_chirality,
)
from .filters import filter_cascade
from .groupfile import GroupFileError, LoadedGroup, load_group_file
from .nilpotent import (
    n23_verify_achirality_instance, n32_congruence_certificate, n32_witness_search,
)
from .replay import replay_verdict
from .verdict import ACHIRAL
from .wordmaps import build_word_map_group, decide_chirality, dump_maps
from .words import WordSyntaxError, image, is_inversion_closed, parse_word

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _limits(args) -> Limits:
    return Limits.from_env(map_cap=getattr(args, "map_cap", None),
                           tuple_budget=getattr(args, "tuple_budget", None),
                           threads=getattr(args, "threads", None))


def _load(path: str, limits: Limits) -> LoadedGroup:
    return load_group_file(path, limits)


def _emit(doc: dict, summary: str) -> None:
    json.dump(doc, sys.stdout, indent=1)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _base(command: str, **extra) -> dict:
    return {"tool_version": __version__, "command": command, **extra}


def _verdict_report(loaded: LoadedGroup, verdict, limits: Limits, stats: dict) -> dict:
    G = loaded.group
    doc = _base("check", group_label=G.label, order=G.order)
    doc.update(verdict.to_dict())
    doc["stats"] = {**verdict.stats, **stats, "map_cap": limits.map_cap,
                    "tuple_budget": limits.tuple_budget, "threads": limits.threads}
    if loaded.family is not None:
        f = loaded.family
        doc["family"] = {"q": f.q, "p": f.p, "r": f.r, "phi": f.phi}
    return doc


# -- commands ----------------------------------------------------------------------------

def cmd_check(args) -> int:
    limits = _limits(args)
    loaded = _load(args.group, limits)
    G = loaded.group
    started = time.perf_counter()
    stats: dict = {}
    verdict = None
    if not args.exhaustive:
        verdict = filter_cascade(G, limits=limits)
        stats["filters_elapsed"] = round(time.perf_counter() - started, 4)
        if verdict.status != ACHIRAL and loaded.family is not None:
            verdict = verify_family_chirality(loaded.family, budget=limits.tuple_budget)
    if (verdict is None or verdict.is_unknown) and not args.filters_only:
        verdict = decide_chirality(G, args.map_cap if args.map_cap is not None else limits.map_cap,
                                   limits=limits)
    stats["elapsed"] = round(time.perf_counter() - started, 4)
    doc = _verdict_report(loaded, verdict, limits, stats)
    _emit(doc, f"{G.label} (order {G.order}): {verdict.status} [{verdict.method}]")
    return EXIT_OK


def cmd_wgroup(args) -> int:
    limits = _limits(args)
    G = _load(args.group, limits).group
    started = time.perf_counter()
    W = build_word_map_group(G, args.d, limits.map_cap, limits=limits)
    doc = _base("wgroup", group_label=G.label, order=G.order, d=args.d,
                truncated=W.truncated, word_map_group_order=None if W.truncated else W.order,
                maps_seen=W.order,
                stats={**W.stats, "elapsed": round(time.perf_counter() - started, 4)})
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            dump_maps(W, fh)
        doc["dump"] = args.dump
    if W.truncated:
        summary = (f"truncated: W({G.label}) with d={args.d} has more than {W.order} maps "
                   f"(cap {W.stats.get('effective_cap', limits.map_cap)})")
    else:
        summary = f"|W({G.label})| with d={args.d} = {W.order}"
    _emit(doc, summary)
    return EXIT_OK


def cmd_image(args) -> int:
    limits = _limits(args)
    G = _load(args.group, limits).group
    w = parse_word(args.word)
    img = image(w, G, budget=limits.tuple_budget, threads=limits.threads)
    closed, violator = is_inversion_closed(img, G)
    doc = _base("image", group_label=G.label, order=G.order, word=str(w), arity=w.arity,
                image=img.to_list(), size=len(img), closed=closed, violator=violator)
    note = "closed under inversion" if closed else f"not closed: {violator} in image, inverse missing"
    _emit(doc, f"image of {w} in {G.label}: {len(img)} elements, {note}")
    return EXIT_OK


def cmd_family(args) -> int:
    limits = _limits(args)
    params = FamilyParameters.from_stanza(args.q, args.pr, args.phi)
    msg = validate_family(params)
    if msg:
        raise InputError(msg)
    verdict = verify_family_chirality(params, budget=limits.tuple_budget)
    doc = _base("family", group_label=params.label(), order=params.order,
                family={"q": params.q, "p": params.p, "r": params.r, "phi": params.phi})
    doc.update(verdict.to_dict())
    _emit(doc, f"{params.label()}: {verdict.status} [{verdict.method}], "
               f"witness element {verdict.certificate['element']}")
    return EXIT_OK


def cmd_n23_verify(args) -> int:
    if args.instance is not None:
        tuples = [tuple(args.instance)]
    else:
        rng = random.Random(args.seed)
        tuples = [tuple(rng.randint(-args.bound, args.bound) for _ in range(4))
                  for _ in range(args.random)]
    rows, failures = [], 0
    for t in tuples:
        res = n23_verify_achirality_instance(*t)
        failures += not res.ok
        M = res.matrix
        rows.append({"ijkl": list(t), "ok": res.ok, "matrix": [M.x, M.z, M.y, M.w],
                     "phi_g": list(res.phi_g.coords), "g_inverse": list(res.g_inverse.coords)})
    doc = _base("nilpotent n23-verify", instances=len(rows), failures=failures, results=rows)
    _emit(doc, f"n23-verify: {len(rows) - failures}/{len(rows)} instances inverted")
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


def _parse_moduli(text: str | None):
    if text is None:
        return None
    try:
        mods = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"moduli must be five comma-separated integers, got {text!r}") from None
    if len(mods) != 5:
        raise InputError("moduli must be five comma-separated integers")
    return mods


def cmd_n32_search(args) -> int:
    limits = _limits(args)
    res = n32_witness_search(args.p, _parse_moduli(args.moduli), args.mode, limits=limits)
    doc = _base("nilpotent n32-search", p=args.p, **res.to_dict())
    if res.found:
        summary = f"found: a -> {res.pair[0]}, b -> {res.pair[1]} inverts {res.element}"
    else:
        summary = (f"no endomorphism of the quotient {res.moduli} inverts {res.element} "
                   f"({res.stats['pairs_examined']} pairs, {res.stats['elapsed_seconds']} s)")
    _emit(doc, summary)
    return EXIT_OK


def cmd_n32_congruence(args) -> int:
    cert = n32_congruence_certificate(args.p, seed=args.seed)
    doc = _base("nilpotent n32-congruence", **cert.to_dict())
    _emit(doc, f"p={args.p}: c-condition x = {cert.c_solutions[:3]}..., "
               f"d-condition x = {cert.d_solutions[:3]}..., overlap none: {cert.ok}")
    return EXIT_OK if cert.ok else EXIT_INTERNAL


def cmd_verify(args) -> int:
    limits = _limits(args)
    try:
        report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report {args.report}: {exc}") from exc
    if not isinstance(report, dict) or "verdict" not in report:
        raise InputError("report has no verdict")
    if report["verdict"] not in ("chiral", "achiral"):
        raise InputError(f"a {report['verdict']!r} report carries no certificate")
    G = _load(args.group, limits).group
    if "order" in report and report["order"] != G.order:
        raise InputError(f"report is for a group of order {report['order']}, file has {G.order}")
    res = replay_verdict(report, G)
    doc = _base("verify", group_label=G.label, **res.to_dict())
    _emit(doc, "ok" if res.ok else "mismatch: " + "; ".join(res.problems))
    return EXIT_OK if res.ok else EXIT_MISMATCH


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--map-cap", type=int, default=None,
                      help="maximum number of word maps kept (env VERBA_MAP_CAP)")
    caps.add_argument("--tuple-budget", type=int, default=None,
                      help="maximum argument tuples enumerated (env VERBA_TUPLE_BUDGET)")
    caps.add_argument("--threads", type=int, default=None, help="worker threads (env VERBA_THREADS)")

    ap = argparse.ArgumentParser(prog="verba", description="Chirality of finite groups under word maps.")
    ap.add_argument("--version", action="version", version=f"verba {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[caps], help="decide chirality of a group file")
    p.add_argument("group")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--filters-only", action="store_true", help="stop after the filter cascade")
    mode.add_argument("--exhaustive", action="store_true", help="skip filters, enumerate W(G)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("wgroup", parents=[caps], help="order of the word-map group W(G)")
    p.add_argument("group")
    p.add_argument("-d", type=int, default=2, help="number of variables (default 2)")
    p.add_argument("--dump", metavar="FILE", help="write representative words and value arrays")
    p.set_defaults(func=cmd_wgroup)

    p = sub.add_parser("image", parents=[caps], help="image of a word map")
    p.add_argument("group")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("family", parents=[caps], help="verify a member of the chiral family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--pr", type=int, required=True)
    p.add_argument("--phi", type=int, required=True)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("nilpotent", help="free nilpotent group computations")
    nsub = p.add_subparsers(dest="nilpotent_command", required=True)
    q = nsub.add_parser("n23-verify", help="invert a^i d^j e^k f^l in N(2,3)")
    q.add_argument("--instance", type=int, nargs=4, metavar=("I", "J", "K", "L"))
    q.add_argument("--random", type=int, default=200)
    q.add_argument("--bound", type=int, default=20)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_n23_verify)
    q = nsub.add_parser("n32-search", parents=[caps], help="search for an inverting endomorphism")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--moduli", help="m_a,m_b,m_c,m_d,m_e (default p^3,p^2,p^2,p,p)")
    q.add_argument("--mode", choices=("full", "restricted"), default="restricted")
    q.set_defaults(func=cmd_n32_search)
    q = nsub.add_parser("n32-congruence", help="sweep the two congruences")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_n32_congruence)

    p = sub.add_parser("verify", parents=[caps], help="replay a report's certificate")
    p.add_argument("report")
    p.add_argument("group")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StructuralAssertionError, AssertionError) as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, GroupFileError, WordSyntaxError, FamilyError, BudgetExceeded,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
