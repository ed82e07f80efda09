"""Finite windows of the covering quivers P and Q~.

P has vertices ``(i, j)`` for every vertex ``i`` and level ``j`` and an arrow
``(a, j): (s(a), j) -> (t(a), j + d(a))`` for every arrow ``a``.  Q~ is the
connected component of P through ``(base, 0)``.  A window keeps the levels
``jmin..jmax`` and every arrow with both endpoints inside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import InputError, PreconditionError, WindowError
from .grading import grading_period, spanning_potentials
from .quiver import FiniteQuiver, GradedQuiver, enumerate_paths, is_connected

P_KIND = "P"
QTILDE_KIND = "Qtilde"


def default_slack(q: GradedQuiver) -> int:
    return (len(q.vertices) + 1) * (q.max_abs_d + 1)


@dataclass(frozen=True)
class CoveringQuiver:
    base: GradedQuiver
    kind: str
    jmin: int
    jmax: int
    vertices: tuple
    arrows: tuple
    base_vertex: str | None = None
    deck_step: int = 1
    _vset: frozenset = field(init=False, compare=False, repr=False)
    _out: dict = field(init=False, compare=False, repr=False)
    _in: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        vset = frozenset(self.vertices)
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            s, t = self.source(a), self.target(a)
            if s not in vset or t not in vset:
                raise InputError(f"arrow {a} leaves the window")
            out[s].append(a)
            inc[t].append(a)
        object.__setattr__(self, "_vset", vset)
        object.__setattr__(self, "_out", {v: tuple(x) for v, x in out.items()})
        object.__setattr__(self, "_in", {v: tuple(x) for v, x in inc.items()})

    @property
    def name(self) -> str:
        return f"{self.base.name}:{self.kind}[{self.jmin},{self.jmax}]"

    @property
    def width(self) -> int:
        return self.jmax - self.jmin

    def source(self, a):
        name, j = a
        return (self.base.arrow(name).source, j)

    def target(self, a):
        name, j = a
        arr = self.base.arrow(name)
        return (arr.target, j + arr.virtual_degree)

    def has_vertex(self, v) -> bool:
        return v in self._vset

    def out_arrows(self, v) -> tuple:
        return self._out.get(v, ())

    def in_arrows(self, v) -> tuple:
        return self._in.get(v, ())

    def cropped_out(self, v) -> bool:
        """Some arrow of the infinite quiver leaves ``v`` to a level outside the window."""
        i, j = v
        return any(not self.jmin <= j + a.virtual_degree <= self.jmax for a in self.base.out_arrows(i))

    def cropped_in(self, v) -> bool:
        i, j = v
        return any(not self.jmin <= j - a.virtual_degree <= self.jmax for a in self.base.in_arrows(i))

    def is_cropped(self, v) -> bool:
        return self.cropped_in(v) or self.cropped_out(v)

    @staticmethod
    def project_vertex(v) -> str:
        return v[0]

    @staticmethod
    def project_arrow(a) -> str:
        return a[0]

    def underlying(self) -> FiniteQuiver:
        return FiniteQuiver.build(
            self.name, self.vertices, ((a, self.source(a), self.target(a)) for a in self.arrows)
        )

    def is_acyclic(self) -> bool:
        return self.underlying().is_acyclic()

    def with_window(self, jmin: int, jmax: int) -> "CoveringQuiver":
        """Same covering, different window."""
        return cached_window(self.base, self.kind, jmin, jmax, self.base_vertex)

    def to_dot(self) -> str:
        return covering_dot(self)


def _sort_vertices(q: GradedQuiver, vs: Iterable) -> tuple:
    return tuple(sorted(vs, key=lambda v: (v[1], q.vertex_index(v[0]))))


def _arrow_order(q: GradedQuiver):
    index = {a.name: k for k, a in enumerate(q.arrows)}
    return lambda a: (a[1], index[a[0]])


def build_p_window(q: GradedQuiver, jmin: int, jmax: int) -> CoveringQuiver:
    if jmin > jmax:
        raise InputError(f"empty window {jmin}:{jmax}")
    vertices = _sort_vertices(q, ((i, j) for i in q.vertices for j in range(jmin, jmax + 1)))
    arrows = [
        (a.name, j)
        for a in q.arrows
        for j in range(jmin, jmax + 1)
        if jmin <= j + a.virtual_degree <= jmax
    ]
    return CoveringQuiver(q, P_KIND, jmin, jmax, vertices, tuple(sorted(arrows, key=_arrow_order(q))))


@dataclass(frozen=True)
class DeckAction:
    """The level shift ``(i, j) -> (i, j + shift)`` restricted to a window."""

    covering: CoveringQuiver
    shift: int

    def _check(self, v, item):
        if not self.covering.has_vertex(v):
            raise WindowError(f"deck({self.shift}) moves {item} outside {self.covering.name}")

    def vertex(self, v):
        w = (v[0], v[1] + self.shift)
        self._check(w, f"vertex {v[0]}@{v[1]}")
        return w

    def arrow(self, a):
        b = (a[0], a[1] + self.shift)
        self._check(self.covering.source(b), f"arrow {a[0]}@{a[1]}")
        self._check(self.covering.target(b), f"arrow {a[0]}@{a[1]}")
        return b

    def vertices(self, vs: Iterable) -> frozenset:
        return frozenset(self.vertex(v) for v in vs)

    def then(self, other: "DeckAction") -> "DeckAction":
        return DeckAction(self.covering, self.shift + other.shift)


def deck(c: CoveringQuiver, k: int) -> DeckAction:
    return DeckAction(c, k)


def qtilde_levels(q: GradedQuiver, base_vertex: str) -> tuple[dict[str, int], int]:
    """Potentials from ``base_vertex`` and the period: ``(i, j)`` lies in Q~ iff
    ``j == pot[i]`` (period 0) or ``j`` is congruent to ``pot[i]`` mod the period."""
    pot, _ = spanning_potentials(q, base_vertex)
    return pot, grading_period(q)


def build_q_tilde(
    q: GradedQuiver, base_vertex: str, jmin: int, jmax: int, slack: int | None = None
) -> CoveringQuiver:
    if not is_connected(q):
        raise PreconditionError("Q~ is only defined for a connected quiver")
    if base_vertex not in q.vertices:
        raise InputError(f"unknown base vertex {base_vertex!r}")
    if jmin > jmax:
        raise InputError(f"empty window {jmin}:{jmax}")
    slack = default_slack(q) if slack is None else slack
    lo, hi = jmin - slack, jmax + slack
    start = (base_vertex, 0)
    if not lo <= 0 <= hi:
        lo, hi = min(lo, 0), max(hi, 0)
    # walk-connectivity inside the enlarged window
    seen = {start}
    queue = [start]
    while queue:
        i, j = queue.pop()
        for a in q.arrows:
            moves = []
            if a.source == i:
                moves.append((a.target, j + a.virtual_degree))
            if a.target == i:
                moves.append((a.source, j - a.virtual_degree))
            for w in moves:
                if lo <= w[1] <= hi and w not in seen:
                    seen.add(w)
                    queue.append(w)
    verts = {v for v in seen if jmin <= v[1] <= jmax}
    pot, r = qtilde_levels(q, base_vertex)
    expected = {
        (i, j)
        for i in q.vertices
        for j in range(jmin, jmax + 1)
        if (j == pot[i] if r == 0 else (j - pot[i]) % r == 0)
    }
    if verts != expected:
        more = max(2 * slack, default_slack(q))
        raise WindowError(
            f"slack {slack} too small to certify Q~ connectivity in {jmin}:{jmax}; retry with slack {more}"
        )
    vertices = _sort_vertices(q, verts)
    arrows = [
        (a.name, j)
        for (i, j) in vertices
        for a in q.out_arrows(i)
        if jmin <= j + a.virtual_degree <= jmax
    ]
    return CoveringQuiver(
        q, QTILDE_KIND, jmin, jmax, vertices, tuple(sorted(arrows, key=_arrow_order(q))),
        base_vertex=base_vertex, deck_step=r,
    )


def covering_morphism(c: CoveringQuiver) -> tuple[dict, dict]:
    """Vertex and arrow maps of the projection onto the base quiver."""
    return ({v: v[0] for v in c.vertices}, {a: a[0] for a in c.arrows})


def window_components(c: CoveringQuiver) -> list[frozenset]:
    """Undirected connected components, ordered by their first vertex."""
    adj = {v: [] for v in c.vertices}
    for a in c.arrows:
        s, t = c.source(a), c.target(a)
        adj[s].append(t)
        adj[t].append(s)
    seen, comps = set(), []
    for v in c.vertices:
        if v in seen:
            continue
        comp, stack = {v}, [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class ComponentVerdict:
    status: str  # "ok" | "inconclusive" | "mismatch"
    period: int
    components: tuple
    interior: tuple  # indices into components
    message: str


def split_components(c: CoveringQuiver) -> ComponentVerdict:
    if c.kind != P_KIND:
        raise PreconditionError("split_components expects a P window")
    q = c.base
    r = grading_period(q)
    comps = window_components(c)
    comp_of = {v: k for k, comp in enumerate(comps) for v in comp}
    if r >= 1:
        third = c.width / 3
        lo, hi = c.jmin + third, c.jmax - third
        interior = tuple(k for k, comp in enumerate(comps) if any(lo <= j <= hi for _, j in comp))
        required = 2 * r * (1 + q.max_abs_d * len(q.vertices))
        # deck(1) on a representative vertex of each interior component
        perm = {}
        for k in interior:
            i, j = min((v for v in comps[k] if lo <= v[1] <= hi), key=lambda v: (v[1], v[0]))
            w = (i, j + 1)
            if c.has_vertex(w):
                perm[k] = comp_of[w]
        transitive = False
        if len(interior) == r and len(perm) == r and set(perm.values()) == set(interior):
            k0 = interior[0]
            orbit, k = [k0], perm[k0]
            while k != k0 and len(orbit) <= r:
                orbit.append(k)
                k = perm[k]
            transitive = len(orbit) == r
        if transitive:
            return ComponentVerdict("ok", r, tuple(comps), interior,
                                    f"{r} interior components permuted cyclically by deck(1)")
        status = "mismatch" if c.width >= required else "inconclusive"
        return ComponentVerdict(
            status, r, tuple(comps), interior,
            f"{len(interior)} interior components, expected {r} in a cycle (width {c.width}, "
            f"certified from {required})",
        )
    # r == 0: complete components are level-shifted copies of Q
    complete = tuple(k for k, comp in enumerate(comps) if not any(c.is_cropped(v) for v in comp))
    if not complete:
        return ComponentVerdict("inconclusive", 0, tuple(comps), (), "no uncropped component in window")
    first = comps[complete[0]]
    for k in complete:
        comp = comps[k]
        names = sorted(i for i, _ in comp)
        if names != sorted(q.vertices):
            return ComponentVerdict("mismatch", 0, tuple(comps), complete,
                                    f"component {k} does not project bijectively onto Q")
        arrows = sorted(a[0] for a in c.arrows if c.source(a) in comp)
        if arrows != sorted(a.name for a in q.arrows):
            return ComponentVerdict("mismatch", 0, tuple(comps), complete,
                                    f"component {k} arrows do not project bijectively onto Q")
        shift = min(j for _, j in comp) - min(j for _, j in first)
        if frozenset((i, j + shift) for i, j in first) != comp:
            return ComponentVerdict("mismatch", 0, tuple(comps), complete,
                                    f"component {k} is not a level shift of component {complete[0]}")
    return ComponentVerdict("ok", 0, tuple(comps), complete,
                            f"{len(complete)} complete level-shifted copies of Q")


@dataclass(frozen=True)
class BijectionReport:
    status: str  # "ok" | "mismatch" | "inconclusive"
    checked_pairs: int
    mismatches: tuple
    required_width: int


def _window_path_counts(c: CoveringQuiver, start, max_len: int) -> dict:
    counts = {start: 1}
    layer = {start: 1}
    for _ in range(max_len):
        nxt: dict = {}
        for v, k in layer.items():
            for a in c.out_arrows(v):
                t = c.target(a)
                nxt[t] = nxt.get(t, 0) + k
        for v, k in nxt.items():
            counts[v] = counts.get(v, 0) + k
        layer = nxt
    return counts


def verify_walk_bijection(q: GradedQuiver, c: CoveringQuiver, max_len: int) -> BijectionReport:
    """Compare path counts in the window with virtual-degree path counts in ``q``.

    Only sources whose paths of length <= max_len cannot leave the window
    are used.
    """
    reach = max_len * q.max_abs_d
    required = 2 * reach
    sources = [v for v in c.vertices if c.jmin <= v[1] - reach and v[1] + reach <= c.jmax]
    if not sources:
        return BijectionReport("inconclusive", 0, (), required)
    base_counts = enumerate_paths(q, max_len).counts
    by_source: dict[str, dict[tuple[str, int], int]] = {}
    for (s, t, p), k in base_counts.items():
        by_source.setdefault(s, {})[(t, p)] = k
    mismatches = []
    checked = 0
    for src in sources:
        i, j = src
        window = _window_path_counts(c, src, max_len)
        for tgt in c.vertices:
            checked += 1
            expect = by_source.get(i, {}).get((tgt[0], tgt[1] - j), 0)
            got = window.get(tgt, 0)
            if got != expect:
                mismatches.append((src, tgt, got, expect))
        # every path of q lifts to a path ending inside this window
        for (t, p), k in by_source.get(i, {}).items():
            if not c.has_vertex((t, j + p)):
                mismatches.append((src, (t, j + p), 0, k))
    return BijectionReport("ok" if not mismatches else "mismatch", checked, tuple(mismatches), required)


def covering_dot(c: CoveringQuiver) -> str:
    lines = [f'digraph "{c.name}" {{']
    for i, j in c.vertices:
        lines.append(f'  "{i}@{j}";')
    for a in c.arrows:
        (si, sj), (ti, tj) = c.source(a), c.target(a)
        lines.append(f'  "{si}@{sj}" -> "{ti}@{tj}" [label="{a[0]}@{a[1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def longest_path_length(c: CoveringQuiver) -> int:
    """Length of the longest directed path in an acyclic window."""
    order = c.underlying().topological_order()
    if order is None:
        raise PreconditionError("window has a directed cycle")
    best = {v: 0 for v in c.vertices}
    for v in order:
        for a in c.out_arrows(v):
            t = c.target(a)
            best[t] = max(best[t], best[v] + 1)
    return max(best.values(), default=0)


@lru_cache(maxsize=256)
def cached_window(q: GradedQuiver, kind: str, jmin: int, jmax: int, base_vertex: str | None = None) -> CoveringQuiver:
    """Shared window objects, so representations on equal windows compare cheaply."""
    if kind == P_KIND:
        return build_p_window(q, jmin, jmax)
    return build_q_tilde(q, base_vertex, jmin, jmax)
