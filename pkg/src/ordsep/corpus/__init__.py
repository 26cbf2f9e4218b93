"""Packaged example presentations.

``*.mon`` files are full presentations; ``J.rec``, ``K.rec`` and ``L.rec``
name single languages over ``omega_parity.mon``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..fileformat import PresentationFile, load_presentation


def corpus_dir() -> Path:
    return Path(str(resources.files(__name__)))


def names() -> list[str]:
    """Presentation names, smallest carrier first."""
    found = [p.stem for p in corpus_dir().glob("*.mon")]
    return sorted(found, key=lambda n: (len(load(n).monoid), n))


def path(name: str) -> Path:
    p = corpus_dir() / name
    return p if p.suffix else p.with_suffix(".mon")


def load(name: str) -> PresentationFile:
    return load_presentation(path(name))
