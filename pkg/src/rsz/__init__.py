"""Covering quivers, orbit-category homs and AR-component census for
radical-square-zero algebras given by graded quivers."""

from .errors import InputError, InvariantError, PreconditionError, RszError, WindowError
from .field import F2, QQ, FieldSpec, prime_field
from .quiver import Arrow, GradedQuiver, Walk, enumerate_paths, graded_opposite, parse_quiver, serialize_quiver
from .library import FIXTURE_NAMES, load_fixture, load_quiver

__all__ = [
    "Arrow",
    "F2",
    "FIXTURE_NAMES",
    "FieldSpec",
    "GradedQuiver",
    "InputError",
    "InvariantError",
    "PreconditionError",
    "QQ",
    "RszError",
    "Walk",
    "WindowError",
    "enumerate_paths",
    "graded_opposite",
    "load_fixture",
    "load_quiver",
    "parse_quiver",
    "prime_field",
    "serialize_quiver",
]

__version__ = "0.1.0"
