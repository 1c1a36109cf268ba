"""Run the filter cascade over the bundled corpus and tabulate which filter fired.

Groups the filters leave open are optionally handed to the exhaustive engine.
"""

from __future__ import annotations

import argparse
import collections
import time

from verba.corpus import corpus_names, load_corpus_group
from verba.filters import filter_cascade
from verba.wordmaps import decide_chirality


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--exhaustive-cap", type=int, default=0,
                    help="map cap for the exhaustive fallback (0 disables it)")
    args = ap.parse_args(argv)
    tally = collections.Counter()
    started = time.perf_counter()
    for name in corpus_names():
        G = load_corpus_group(name).group
        t = time.perf_counter()
        v = filter_cascade(G)
        line = f"{name:<22}{G.order:>5}  {v.status:<8}{v.method:<18}{time.perf_counter() - t:7.2f}s"
        if v.is_unknown and args.exhaustive_cap:
            e = decide_chirality(G, args.exhaustive_cap)
            line += f"  exhaustive: {e.status} ({e.stats.get('maps', '?')} maps)"
        tally[v.method] += 1
        print(line)
    print(f"\n{dict(tally)} in {time.perf_counter() - started:.1f}s")


if __name__ == "__main__":
    main()
