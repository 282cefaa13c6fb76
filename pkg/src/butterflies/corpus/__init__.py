"""Bundled example diagrams (``.pd`` bridge diagrams and ``.btf`` butterflies)."""

from __future__ import annotations

from pathlib import Path

HERE = Path(__file__).resolve().parent


def corpus_path(name: str) -> Path:
    p = HERE / name
    if not p.exists():
        raise FileNotFoundError(f"no corpus entry {name!r}")
    return p


def list_corpus(suffix: str = "") -> list[str]:
    return sorted(p.name for p in HERE.iterdir() if p.is_file() and p.suffix in (".pd", ".btf")
                  and p.name.endswith(suffix))
