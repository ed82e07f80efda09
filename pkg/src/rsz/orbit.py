"""Objects of the orbit category as (representation, homological shift) pairs.

On a P window one unit of shift is absorbed by one level of pull-back:
``(M, a)`` is isomorphic to ``(pull_back(M, a), 0)``.  On a Q~ window with
period ``r`` only multiples of ``r`` are absorbed, so canonical shifts lie in
``[0, r)`` (and are left alone when ``r = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .covering import P_KIND, QTILDE_KIND, cached_window
from .errors import InputError, PreconditionError, WindowError
from .grading import grading_period
from .quiver import GradedQuiver
from .representations import (
    Representation,
    are_isomorphic,
    ext1_dim,
    hom_dim,
    projective,
    pull_back,
    reembed,
    rep_from_json,
    rep_to_json,
    simple,
)

MAX_WINDOW_WIDTH = 256


@dataclass(frozen=True, eq=False)
class OrbitObject:
    rep: Representation
    shift: int = 0

    @property
    def window(self):
        return self.rep.quiver

    def __repr__(self):
        return f"OrbitObject({self.rep!r}, shift={self.shift})"


def _levels(M: Representation) -> list[int]:
    return [j for _, j in M.dims]


def fit_window(c, lo: int, hi: int):
    """A window of the same covering containing ``c`` and the levels ``lo..hi``."""
    jmin, jmax = min(c.jmin, lo), max(c.jmax, hi)
    if (jmin, jmax) == (c.jmin, c.jmax):
        return c
    if jmax - jmin > MAX_WINDOW_WIDTH:
        raise WindowError(f"window {jmin}:{jmax} exceeds the width cap {MAX_WINDOW_WIDTH}", needed=(jmin, jmax))
    return cached_window(c.base, c.kind, jmin, jmax, c.base_vertex)


def shifted(M: Representation, k: int) -> Representation:
    """``pull_back(M, k)``, enlarging the window when the support would leave it."""
    levels = _levels(M)
    if levels:
        M = reembed(M, fit_window(M.quiver, min(levels) - k, max(levels) - k))
    return pull_back(M, k)


def align(M: Representation, N: Representation) -> tuple[Representation, Representation]:
    c, d = M.quiver, N.quiver
    if c is d or c == d:
        return M, N
    if c.base != d.base or c.kind != d.kind or c.base_vertex != d.base_vertex:
        raise InputError("objects live on different coverings")
    w = fit_window(c, d.jmin, d.jmax)
    return reembed(M, w), reembed(N, w)


def _step(c) -> int:
    return 1 if c.kind == P_KIND else c.deck_step


def canonicalize(x: OrbitObject) -> OrbitObject:
    r = _step(x.window)
    if r == 0:
        return x
    q, rem = divmod(x.shift, r)
    return OrbitObject(shifted(x.rep, r * q), rem)


def ext_term(M: Representation, N: Representation, e: int) -> int:
    """Ext^e on a hereditary category: hom for 0, Ext^1 for 1, zero otherwise."""
    if e not in (0, 1):
        return 0
    M, N = align(M, N)
    return hom_dim(M, N) if e == 0 else ext1_dim(M, N)


def orbit_terms(x: OrbitObject, y: OrbitObject, bound: int) -> dict[int, int]:
    """Per-twist summands ``Hom(x, Phi^p y)`` for ``|p| <= bound``, evaluated literally.

    ``Phi`` is one shift composed with the inverse deck pull-back (one level on
    P, ``r`` levels on Q~).  With ``y = (N, b)`` and ``x = (M, a)`` the summand
    is ``Ext^(step*p + b - a)(M, pull_back(N, -step*p))``.
    """
    c = x.window
    step = _step(c)
    terms = {}
    for p in range(-bound, bound + 1):
        if step == 0 and p != 0:
            terms[p] = 0
            continue
        e = step * p + y.shift - x.shift
        terms[p] = ext_term(x.rep, shifted(y.rep, -step * p), e) if e in (0, 1) else 0
    return terms


def brute_orbit_hom(x: OrbitObject, y: OrbitObject, bound: int) -> int:
    return sum(orbit_terms(x, y, bound).values())


def orbit_hom_dim(x: OrbitObject, y: OrbitObject) -> int:
    x, y = canonicalize(x), canonicalize(y)
    c = x.window
    if c.kind == P_KIND:
        M, N = align(x.rep, y.rep)
        return hom_dim(M, N) + ext_term(M, shifted(N, -1), 1)
    # canonical Q~ shifts lie in [0, r), so only p in {-1, 0, 1} can contribute
    return sum(orbit_terms(x, y, 1).values())


def orbit_iso(x: OrbitObject, y: OrbitObject) -> bool:
    x, y = canonicalize(x), canonicalize(y)
    if x.shift != y.shift:
        return False
    M, N = align(x.rep, y.rep)
    return are_isomorphic(M, N)


def orbit_to_json(x: OrbitObject) -> dict:
    data = rep_to_json(x.rep)
    data["shift"] = x.shift
    return data


def orbit_from_json(data: dict, window) -> OrbitObject:
    try:
        shift = int(data.get("shift", 0))
    except (TypeError, ValueError) as exc:
        raise InputError("shift must be an integer") from exc
    levels = []
    for key in data.get("dims", {}):
        name, _, level = str(key).rpartition("@")
        try:
            levels.append(int(level))
        except ValueError as exc:
            raise InputError(f"bad vertex key {key!r}") from exc
    if levels:
        window = fit_window(window, min(levels), max(levels))
    return OrbitObject(rep_from_json(data, window), shift)


# transport between the P picture and the Q~ picture


@dataclass(frozen=True)
class TransportCheck:
    x: str
    y: str
    shift_x: int
    shift_y: int
    p_picture: int
    other_picture: int

    @property
    def ok(self) -> bool:
        return self.p_picture == self.other_picture


@dataclass(frozen=True)
class TransportReport:
    period: int
    checks: tuple = field(default=())

    @property
    def status(self) -> str:
        return "ok" if all(c.ok for c in self.checks) else "mismatch"

    @property
    def mismatches(self) -> list[TransportCheck]:
        return [c for c in self.checks if not c.ok]


def sample_reps(qt, field_spec=None) -> list[Representation]:
    """Simples and window projectives at the vertices of a Q~ window."""
    from .field import QQ

    F = field_spec or QQ
    reps = [simple(qt, v, F) for v in qt.vertices]
    reps += [projective(qt, v, F) for v in qt.vertices]
    return reps


def _to_base(M: Representation, base_quiver) -> Representation:
    """An r = 0 Q~ representation read on Q itself via ``(i, pot(i)) -> i``."""
    return Representation(
        base_quiver, M.field, {i: d for (i, _), d in M.dims.items()},
        {name: mat for (name, _), mat in M.maps.items()},
    )


def _shift_pairs(shifts):
    """Each side shifted on its own: ``(0, b)`` and ``(a, 0)``."""
    pairs = [(0, b) for b in shifts]
    pairs += [(a, 0) for a in shifts if a != 0]
    return pairs


def verify_transport(
    q: GradedQuiver,
    qt,
    reps: list[Representation] | None = None,
    shifts=range(-3, 4),
) -> TransportReport:
    """Compare orbit homs in the P picture with the Q~ picture (r >= 1) or
    with the derived category of Q itself (r = 0)."""
    if qt.kind != QTILDE_KIND:
        raise PreconditionError("verify_transport expects a Q~ window")
    r = grading_period(q)
    reps = sample_reps(qt) if reps is None else reps
    p_window = cached_window(q, P_KIND, qt.jmin, qt.jmax)
    base_quiver = q.underlying() if r == 0 else None
    checks = []
    for M in reps:
        for N in reps:
            Mp, Np = reembed(M, p_window), reembed(N, p_window)
            for a, b in _shift_pairs(shifts):
                bound = abs(b - a) + 1
                lhs = brute_orbit_hom(OrbitObject(Mp, a), OrbitObject(Np, b), bound)
                if r == 0:
                    rhs = ext_term(_to_base(M, base_quiver), _to_base(N, base_quiver), b - a)
                else:
                    rhs = brute_orbit_hom(OrbitObject(M, a), OrbitObject(N, b), bound // r + 1)
                checks.append(TransportCheck(repr(M), repr(N), a, b, lhs, rhs))
    return TransportReport(r, tuple(checks))
