"""Proof scripts shipped with the package, one ``.qds`` file per argument."""

from __future__ import annotations

from importlib import resources

from ..dsl import ScriptReport, run_script


def names() -> list[str]:
    """File names of the shipped scripts, sorted."""
    root = resources.files(__name__)
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".qds"))


def source(name: str) -> str:
    if not name.endswith(".qds"):
        name += ".qds"
    path = resources.files(__name__) / name
    if not path.is_file():
        raise FileNotFoundError(f"no shipped script named {name!r}")
    return path.read_text(encoding="utf-8")


def replay(name: str) -> ScriptReport:
    return run_script(source(name), name)
