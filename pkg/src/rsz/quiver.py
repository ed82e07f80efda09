"""Finite graded quivers, walks and paths.

Every arrow ``a`` carries an integer degree ``|a|``; its virtual degree is
``d(a) = 1 - |a|`` and a formal inverse contributes ``|a| - 1``.  The virtual
degree is what the covering quivers use as the level increment.
"""

from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InputError

FORWARD = 1
INVERSE = -1


def key_str(key) -> str:
    """String form of a vertex/arrow key: ids stay as-is, ``(x, j)`` becomes ``x@j``."""
    if isinstance(key, tuple):
        return f"{key[0]}@{key[1]}"
    return str(key)


@dataclass(frozen=True)
class FiniteQuiver:
    """Ungraded finite quiver over arbitrary hashable vertex and arrow keys.

    This is the common currency for representations and translation quivers;
    graded quivers and covering windows both convert to it.
    """

    name: str
    vertices: tuple
    arrows: tuple
    sources: dict = field(compare=False, repr=False)
    targets: dict = field(compare=False, repr=False)
    _out: dict = field(init=False, compare=False, repr=False)
    _in: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        vset = set(self.vertices)
        out, inc = defaultdict(list), defaultdict(list)
        for a in self.arrows:
            s, t = self.sources[a], self.targets[a]
            if s not in vset or t not in vset:
                raise InputError(f"arrow {key_str(a)} has an endpoint outside the quiver")
            out[s].append(a)
            inc[t].append(a)
        object.__setattr__(self, "_out", {v: tuple(out[v]) for v in self.vertices})
        object.__setattr__(self, "_in", {v: tuple(inc[v]) for v in self.vertices})

    @classmethod
    def build(cls, name, vertices, arrows: Iterable[tuple]) -> "FiniteQuiver":
        """``arrows`` yields ``(key, source, target)`` triples."""
        keys, src, tgt = [], {}, {}
        for a, s, t in arrows:
            keys.append(a)
            src[a], tgt[a] = s, t
        return cls(name, tuple(vertices), tuple(keys), src, tgt)

    def source(self, a):
        return self.sources[a]

    def target(self, a):
        return self.targets[a]

    def out_arrows(self, v) -> tuple:
        return self._out.get(v, ())

    def in_arrows(self, v) -> tuple:
        return self._in.get(v, ())

    def has_vertex(self, v) -> bool:
        return v in self._out

    def opposite(self) -> "FiniteQuiver":
        return FiniteQuiver(
            f"{self.name}^op", self.vertices, self.arrows, dict(self.targets), dict(self.sources)
        )

    def topological_order(self) -> list | None:
        """Kahn order (ties broken by declaration order); ``None`` if there is a cycle."""
        indeg = {v: len(self._in[v]) for v in self.vertices}
        order = []
        ready = [v for v in self.vertices if indeg[v] == 0]
        pos = {v: i for i, v in enumerate(self.vertices)}
        while ready:
            ready.sort(key=pos.__getitem__)
            v = ready.pop(0)
            order.append(v)
            for a in self._out[v]:
                t = self.targets[a]
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        return order if len(order) == len(self.vertices) else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int = 0

    @property
    def virtual_degree(self) -> int:
        return 1 - self.degree


@dataclass(frozen=True)
class GradedQuiver:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    _by_name: dict = field(init=False, compare=False, repr=False)
    _vindex: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if not self.vertices:
            raise InputError("a quiver needs at least one vertex")
        vindex = {}
        for i, v in enumerate(self.vertices):
            if v in vindex:
                raise InputError(f"duplicate vertex id {v!r}")
            vindex[v] = i
        by_name = {}
        for a in self.arrows:
            if a.name in by_name:
                raise InputError(f"duplicate arrow id {a.name!r}")
            for end in (a.source, a.target):
                if end not in vindex:
                    raise InputError(f"arrow {a.name!r} uses unknown vertex {end!r}")
            by_name[a.name] = a
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_vindex", vindex)

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def d(self, name: str) -> int:
        """Virtual degree of the arrow ``name``."""
        return 1 - self._by_name[name].degree

    @property
    def max_abs_d(self) -> int:
        return max((abs(a.virtual_degree) for a in self.arrows), default=0)

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def underlying(self) -> FiniteQuiver:
        return FiniteQuiver.build(
            self.name, self.vertices, ((a.name, a.source, a.target) for a in self.arrows)
        )

    def subquiver(self, vertices: Iterable[str], name: str | None = None) -> "GradedQuiver":
        keep = set(vertices)
        return GradedQuiver(
            name or self.name,
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a.source in keep and a.target in keep),
        )


@dataclass(frozen=True)
class Walk:
    """A walk given by its steps in the order they are traversed.

    ``steps`` is a tuple of ``(arrow id, FORWARD | INVERSE)``; the trivial walk
    at ``base`` has no steps.  Walks are written right to left, so
    ``Walk(q, "1", (("alpha", 1), ("beta", -1)))`` is ``beta^-1 alpha``.
    """

    quiver: GradedQuiver
    base: str
    steps: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((a, int(e)) for a, e in self.steps))
        if self.base not in self.quiver.vertices:
            raise InputError(f"unknown vertex {self.base!r}")
        here = self.base
        for a, e in self.steps:
            if not self.quiver.has_arrow(a):
                raise InputError(f"unknown arrow {a!r}")
            arr = self.quiver.arrow(a)
            if e == FORWARD:
                start, end = arr.source, arr.target
            elif e == INVERSE:
                start, end = arr.target, arr.source
            else:
                raise InputError(f"bad step direction {e!r}")
            if start != here:
                raise InputError(f"step {a!r} does not start at {here!r}")
            here = end
        object.__setattr__(self, "_end", here)

    @property
    def source(self) -> str:
        return self.base

    @property
    def target(self) -> str:
        return self._end

    @property
    def is_closed(self) -> bool:
        return self.source == self.target

    def inverse(self) -> "Walk":
        return Walk(self.quiver, self.target, tuple((a, -e) for a, e in reversed(self.steps)))

    def then(self, other: "Walk") -> "Walk":
        """Concatenation: first ``self``, then ``other`` (written ``other * self``)."""
        if other.source != self.target:
            raise InputError("walks do not compose")
        return Walk(self.quiver, self.base, self.steps + other.steps)

    def power(self, k: int) -> "Walk":
        if not self.is_closed:
            raise InputError("only closed walks have powers")
        w = self if k >= 0 else self.inverse()
        return Walk(self.quiver, self.base, w.steps * abs(k))

    def __str__(self):
        if not self.steps:
            return f"e_{self.base}"
        return " ".join(a if e == FORWARD else f"{a}^-1" for a, e in reversed(self.steps))


def virtual_degree(w: Walk) -> int:
    return sum(e * w.quiver.d(a) for a, e in w.steps)


@dataclass(frozen=True)
class PathMultiset:
    """Counts of directed paths keyed by ``(source, target, degree)``.

    ``max_len`` records the truncation, so a count is only a lower bound for
    quivers with oriented cycles.
    """

    counts: dict
    max_len: int

    def __getitem__(self, key) -> int:
        return self.counts.get(key, 0)

    def total(self, degree: int | None = None) -> int:
        return sum(c for (_, _, p), c in self.counts.items() if degree is None or p == degree)


def iter_paths(q: GradedQuiver, max_len: int) -> Iterator[tuple[str, tuple[Arrow, ...]]]:
    """Yield ``(start vertex, arrows)`` for every directed path of length <= max_len."""
    out = {v: q.out_arrows(v) for v in q.vertices}

    def extend(start, here, prefix):
        yield start, prefix
        if len(prefix) == max_len:
            return
        for a in out[here]:
            yield from extend(start, a.target, prefix + (a,))

    for v in q.vertices:
        yield from extend(v, v, ())


def enumerate_paths(q: GradedQuiver, max_len: int, weight: str = "virtual") -> PathMultiset:
    """Explicitly enumerate paths of length <= max_len.

    ``weight="virtual"`` keys paths by virtual degree; ``weight="degree"`` by
    the plain degree sum, which is what the graded opposite's paths are
    counted by.
    """
    if max_len < 0:
        raise InputError("max_len must be nonnegative")
    if weight not in ("virtual", "degree"):
        raise InputError(f"unknown weight {weight!r}")
    counts: Counter = Counter()
    for start, arrows in iter_paths(q, max_len):
        end = arrows[-1].target if arrows else start
        if weight == "virtual":
            p = sum(a.virtual_degree for a in arrows)
        else:
            p = sum(a.degree for a in arrows)
        counts[(start, end, p)] += 1
    return PathMultiset(dict(counts), max_len)


def graded_opposite(q: GradedQuiver) -> GradedQuiver:
    arrows = tuple(Arrow(f"{a.name}_op", a.target, a.source, 1 - a.degree) for a in q.arrows)
    return GradedQuiver(f"{q.name}_op", q.vertices, arrows)


# -- (de)serialization -------------------------------------------------------

_ID = r"[^\s@:#]+"
_QUIVER_RE = re.compile(r"^quiver\s+(\S+)$")
_VERTEX_RE = re.compile(rf"^vertex\s+({_ID})$")
_ARROW_RE = re.compile(
    rf"^arrow\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})(?:\s+deg\s+([+-]?\d+))?$"
)


def parse_quiver(text: str) -> GradedQuiver:
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    seen_v: set[str] = set()
    seen_a: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _QUIVER_RE.match(line):
            if name is not None:
                raise InputError("second quiver declaration", lineno)
            name = m.group(1)
        elif m := _VERTEX_RE.match(line):
            v = m.group(1)
            if v in seen_v:
                raise InputError(f"duplicate vertex id {v!r}", lineno)
            seen_v.add(v)
            vertices.append(v)
        elif m := _ARROW_RE.match(line):
            a, s, t, deg = m.groups()
            if a in seen_a:
                raise InputError(f"duplicate arrow id {a!r}", lineno)
            for end in (s, t):
                if end not in seen_v:
                    raise InputError(f"unknown vertex {end!r}", lineno)
            seen_a.add(a)
            arrows.append(Arrow(a, s, t, int(deg) if deg is not None else 0))
        else:
            raise InputError(f"cannot parse {line!r}", lineno)
    if name is None:
        raise InputError("missing 'quiver NAME' line")
    if not vertices:
        raise InputError("a quiver needs at least one vertex")
    return GradedQuiver(name, tuple(vertices), tuple(arrows))


def quiver_from_dict(data: dict) -> GradedQuiver:
    try:
        arrows = tuple(
            Arrow(str(a["name"]), str(a["source"]), str(a["target"]), int(a.get("degree", 0)))
            for a in data["arrows"]
        )
        return GradedQuiver(str(data["name"]), tuple(str(v) for v in data["vertices"]), arrows)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad quiver JSON: {exc}") from exc


def quiver_to_dict(q: GradedQuiver) -> dict:
    return {
        "name": q.name,
        "vertices": list(q.vertices),
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target, "degree": a.degree}
            for a in q.arrows
        ],
    }


def serialize_quiver(q: GradedQuiver, format: str = "text") -> str:
    if format == "json":
        return json.dumps(quiver_to_dict(q), indent=2) + "\n"
    if format != "text":
        raise InputError(f"unknown format {format!r}")
    lines = [f"quiver {q.name}"]
    lines += [f"vertex {v}" for v in q.vertices]
    lines += [f"arrow {a.name} : {a.source} -> {a.target} deg {a.degree}" for a in q.arrows]
    return "\n".join(lines) + "\n"


def loads_quiver(text: str) -> GradedQuiver:
    """Parse either format; JSON is recognised by its leading brace."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON: {exc.msg}", exc.lineno) from exc
        return quiver_from_dict(data)
    return parse_quiver(text)


def undirected_components(q: GradedQuiver) -> list[list[str]]:
    adj: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.source].append(a.target)
        adj[a.target].append(a.source)
    seen: set[str] = set()
    comps = []
    for v in q.vertices:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp, key=q.vertex_index))
    return comps


def is_connected(q: GradedQuiver) -> bool:
    return len(undirected_components(q)) == 1


def closed_walks(q: GradedQuiver, max_len: int) -> Iterator[Walk]:
    """All closed walks (steps in both directions) of length 1..max_len.

    Used by tests as a brute-force witness; walks that immediately backtrack
    are included since they are legitimate walks.
    """
    moves: dict[str, list[tuple[str, int, str]]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        moves[a.source].append((a.name, FORWARD, a.target))
        moves[a.target].append((a.name, INVERSE, a.source))

    def extend(start, here, steps):
        if steps and here == start:
            yield Walk(q, start, steps)
        if len(steps) == max_len:
            return
        for a, e, nxt in moves[here]:
            yield from extend(start, nxt, steps + ((a, e),))

    for v in q.vertices:
        yield from extend(v, v, ())

