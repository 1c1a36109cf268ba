"""Access to the group files shipped in ``verba/corpus``."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .config import Limits
from .groupfile import LoadedGroup, load_group_file


def corpus_dir() -> Path:
    return Path(str(resources.files("verba") / "corpus"))


def corpus_names() -> list[str]:
    return sorted(p.stem for p in corpus_dir().glob("*.json"))


def corpus_path(name: str) -> Path:
    path = corpus_dir() / f"{name}.json"
    if not path.exists():
        raise KeyError(f"no bundled group named {name!r}")
    return path


def load_corpus_group(name: str, limits: Limits | None = None) -> LoadedGroup:
    return load_group_file(corpus_path(name), limits)
