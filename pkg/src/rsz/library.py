"""Quivers shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import InputError
from .quiver import GradedQuiver, loads_quiver

FIXTURE_NAMES = (
    "kronecker_graded",
    "jordan_neg1",
    "jordan_2",
    "loop",
    "a2",
    "kronecker",
    "loop_arrow",
    "cycle3",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise InputError(f"unknown fixture {name!r}")
    return resources.files("rsz").joinpath("fixtures", f"{name}.quiver").read_text("utf-8")


def load_fixture(name: str) -> GradedQuiver:
    return loads_quiver(fixture_text(name))


def all_fixtures() -> dict[str, GradedQuiver]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


def load_quiver(ref: str) -> GradedQuiver:
    """A path to a .quiver/.json file, or a fixture name."""
    path = Path(ref)
    if path.is_file():
        try:
            text = path.read_text("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {ref}: {exc}") from exc
        return loads_quiver(text)
    if ref in FIXTURE_NAMES:
        return load_fixture(ref)
    raise InputError(f"no such file or fixture: {ref}")


def fixture_json_text(name: str) -> str:
    """A shipped JSON example such as an orbit-category object."""
    res = resources.files("rsz").joinpath("fixtures", f"{name}.json")
    if not res.is_file():
        raise InputError(f"no such file or example: {name}")
    return res.read_text("utf-8")


def example_names() -> list[str]:
    folder = resources.files("rsz").joinpath("fixtures")
    return sorted(p.name[: -len(".json")] for p in folder.iterdir() if p.name.endswith(".json"))
