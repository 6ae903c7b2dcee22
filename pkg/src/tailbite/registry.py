"""Named code fixtures and enumerator templates shipped with the package."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .analysis import EnumeratorTemplate, is_self_dual, read_template
from .construction import CodeSpec, build_generator, load_code_spec
from .errors import TailbiteError

__all__ = [
    "Registry",
    "load_registry",
    "fixtures_dir",
    "templates_dir",
    "load_named_template",
    "PENDING_STATUS",
]

PENDING_STATUS = "pending-transcription"


def fixtures_dir() -> Path:
    return Path(resources.files("tailbite") / "data" / "fixtures")


def templates_dir() -> Path:
    return Path(resources.files("tailbite") / "data" / "templates")


@dataclass(frozen=True)
class Registry:
    """All named CodeSpec fixtures from one fixtures directory.

    Every entry either passed is_self_dual when loaded or carries the
    pending-transcription status (such entries stay visible and fail
    verification loudly instead of being hidden).
    """

    entries: dict

    def names(self) -> list:
        return sorted(self.entries)

    def get(self, name: str) -> CodeSpec:
        if name not in self.entries:
            raise TailbiteError(
                f"unknown fixture {name!r}; available: {', '.join(self.names())}"
            )
        return self.entries[name]


def load_registry(path=None) -> Registry:
    """Load every *.spec fixture, checking self-duality of unmarked entries."""
    root = Path(path) if path is not None else fixtures_dir()
    entries = {}
    for spec_path in sorted(root.glob("*.spec")):
        spec = load_code_spec(spec_path)
        if spec.status != PENDING_STATUS and not is_self_dual(build_generator(spec)):
            raise TailbiteError(
                f"fixture {spec.name!r} ({spec_path}) is not self-dual and is not "
                f"marked 'status: {PENDING_STATUS}'"
            )
        entries[spec.name] = spec
    return Registry(entries=entries)


def load_named_template(name: str) -> EnumeratorTemplate:
    """Resolve a template by shipped name (w72_1, doubly_even_72) or path."""
    candidate = templates_dir() / f"{name}.tmpl"
    if candidate.is_file():
        return read_template(candidate, name=name)
    if Path(name).is_file():
        return read_template(Path(name))
    raise TailbiteError(
        f"unknown template {name!r}; shipped templates: "
        + ", ".join(sorted(p.stem for p in templates_dir().glob("*.tmpl")))
    )
