"""JSON group files.

A file holds ``label`` and exactly one of ``table`` (rows of 0-based ids),
``permutations`` (``degree`` plus ``generators`` as image arrays) or
``semidirect`` (``q``, ``pr``, ``phi`` for the cyclic-by-cyclic family).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .config import Limits
from .constructions import FamilyParameters, build_family_group, validate_family
from .groups import FiniteGroup, GroupError, from_permutations

KINDS = ("table", "permutations", "semidirect")


class GroupFileError(ValueError):
    """Malformed or inconsistent group file."""


@dataclass(frozen=True, eq=False)
class LoadedGroup:
    group: FiniteGroup
    kind: str
    family: FamilyParameters | None = None


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise GroupFileError(f"{what} must be an integer, got {x!r}")
    return x


def group_from_document(doc: Any, limits: Limits | None = None) -> LoadedGroup:
    limits = limits or Limits.from_env()
    if not isinstance(doc, dict):
        raise GroupFileError("group file must be a JSON object")
    present = [k for k in KINDS if k in doc]
    if len(present) != 1:
        raise GroupFileError(f"expected exactly one of {', '.join(KINDS)}; found {present or 'none'}")
    kind = present[0]
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise GroupFileError("label must be a string")
    body = doc[kind]
    try:
        if kind == "table":
            if not isinstance(body, list) or not all(isinstance(r, list) for r in body):
                raise GroupFileError("table must be a list of rows")
            rows = [[_int(x, "table entry") for x in r] for r in body]
            if len(rows) > limits.order_cap:
                raise GroupFileError(f"order {len(rows)} exceeds the order cap {limits.order_cap}")
            return LoadedGroup(FiniteGroup.from_table(rows, label), kind)
        if kind == "permutations":
            if not isinstance(body, dict):
                raise GroupFileError("permutations must be an object")
            degree = _int(body.get("degree"), "degree")
            gens = body.get("generators")
            if not isinstance(gens, list):
                raise GroupFileError("generators must be a list of image arrays")
            gens = [[_int(x, "permutation entry") for x in g] for g in gens]
            return LoadedGroup(from_permutations(degree, gens, order_cap=limits.order_cap,
                                                 label=label), kind)
        if not isinstance(body, dict):
            raise GroupFileError("semidirect must be an object")
        q, pr, phi = (_int(body.get(k), k) for k in ("q", "pr", "phi"))
        params = FamilyParameters.from_stanza(q, pr, phi)
        msg = validate_family(params)
        if msg:
            raise GroupFileError(msg)
        G, _ = build_family_group(params)
        if label:
            G = FiniteGroup(G.table, G.identity, G.inverses, label)
        return LoadedGroup(G, kind, params)
    except GroupError as exc:
        raise GroupFileError(str(exc)) from exc
    except GroupFileError:
        raise
    except ValueError as exc:
        raise GroupFileError(str(exc)) from exc


def load_group_file(path: str | Path, limits: Limits | None = None) -> LoadedGroup:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return group_from_document(doc, limits)


def table_document(G: FiniteGroup, label: str | None = None) -> dict:
    return {"label": label if label is not None else G.label, "table": G.table.tolist()}


def write_group_file(path: str | Path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, separators=(",", ":")) + "\n", encoding="utf-8")
