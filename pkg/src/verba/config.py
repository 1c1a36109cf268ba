"""Resource limits shared by the enumeration engines.

Every cap has a default and can be overridden through the environment
(``VERBA_MAP_CAP``, ``VERBA_TUPLE_BUDGET``, ``VERBA_THREADS``); explicit
arguments always win over the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

DEFAULT_ORDER_CAP = 10**6
DEFAULT_MAP_CAP = 10**7
DEFAULT_TUPLE_BUDGET = 10**8
DEFAULT_AUT_CAP = 10**6
# candidate (u, v) pairs the nilpotent witness search may examine
DEFAULT_PAIR_BUDGET = 10**10
# bytes of map storage the word-map BFS may hold before it truncates
DEFAULT_MEMORY_BUDGET = 2 * 2**30


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed a configured cap."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Limits:
    order_cap: int = DEFAULT_ORDER_CAP
    map_cap: int = DEFAULT_MAP_CAP
    tuple_budget: int = DEFAULT_TUPLE_BUDGET
    aut_cap: int = DEFAULT_AUT_CAP
    pair_budget: int = DEFAULT_PAIR_BUDGET
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    threads: int = 1

    @classmethod
    def from_env(cls, **overrides) -> "Limits":
        base = cls(
            map_cap=_env_int("VERBA_MAP_CAP", DEFAULT_MAP_CAP),
            tuple_budget=_env_int("VERBA_TUPLE_BUDGET", DEFAULT_TUPLE_BUDGET),
            threads=max(1, _env_int("VERBA_THREADS", 1)),
        )
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **overrides)


DEFAULT_LIMITS = Limits()
