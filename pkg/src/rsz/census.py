"""Translation quivers ZQ', knitting of connecting components, orbit quotients
and the predicted shapes of Auslander-Reiten components."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .covering import build_p_window, build_q_tilde, default_slack, longest_path_length
from .errors import PreconditionError
from .grading import classify_shape, is_admissible
from .quiver import GradedQuiver, key_str

INFINITE = "infinite"
UNQUANTIFIED = "unquantified"

ZQTILDE_OP = "ZQtildeOp"
ZA_INF = "ZAinf"
QTILDE_OP = "QtildeOp"
RIGHTMOST = "RightmostSectionSubquiver"
NA_INF = "NAinf"
NMINUS_A_INF = "NminusAinf"
FINITE_WING = "FiniteWing"
ZQ_OP = "ZQop"
TUBE = "Tube"


@dataclass(frozen=True)
class TranslationQuiver:
    """Finite piece of a translation quiver.

    ``arrows`` maps an arrow key to ``(source, target)``; ``tau`` is the
    partial translation.  Vertices are ``(slice, label)`` pairs.
    """

    name: str
    vertices: tuple
    arrows: dict
    tau: dict

    def __post_init__(self):
        vs = set(self.vertices)
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for a, (s, t) in self.arrows.items():
            if s not in vs or t not in vs:
                raise PreconditionError(f"arrow {a} leaves the translation quiver")
            out[s].append(a)
            inc[t].append(a)
        object.__setattr__(self, "_vset", frozenset(vs))
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)
        seen = {}
        for v, w in self.tau.items():
            if w in seen:
                raise PreconditionError(f"tau is not injective at {v} and {seen[w]}")
            seen[w] = v

    def has_vertex(self, v) -> bool:
        return v in self._vset

    def source(self, a):
        return self.arrows[a][0]

    def target(self, a):
        return self.arrows[a][1]

    def out_arrows(self, v) -> list:
        return self._out[v]

    def in_arrows(self, v) -> list:
        return self._in[v]

    def successors(self, v) -> list:
        return [self.target(a) for a in self._out[v]]

    def predecessors(self, v) -> list:
        return [self.source(a) for a in self._in[v]]

    def tau_inverse(self, v):
        for x, y in self.tau.items():
            if y == v:
                return x
        return None

    def mesh_ok(self, v) -> bool:
        """Arrows into ``v`` match arrows out of ``tau(v)`` (as multisets of neighbours)."""
        t = self.tau.get(v)
        if t is None:
            return True
        return sorted(map(repr, self.predecessors(v))) == sorted(map(repr, self.successors(t)))

    def to_dot(self, labels: dict | None = None) -> str:
        return translation_dot(self, labels)


def _vname(v) -> str:
    n, x = v
    return f"{n}:{key_str(x)}"


def translation_dot(tq: TranslationQuiver, labels: dict | None = None) -> str:
    lines = [f'digraph "{tq.name}" {{']
    for v in tq.vertices:
        extra = f' [label="{_vname(v)}\\n{labels[v]}"]' if labels and v in labels else ""
        lines.append(f'  "{_vname(v)}"{extra};')
    for a in sorted(tq.arrows, key=repr):
        s, t = tq.arrows[a]
        lines.append(f'  "{_vname(s)}" -> "{_vname(t)}";')
    for v in tq.vertices:
        if v in tq.tau:
            lines.append(f'  "{_vname(v)}" -> "{_vname(tq.tau[v])}" [style=dashed, constraint=false];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def build_zq(qp, nmin: int, nmax: int, name: str | None = None) -> TranslationQuiver:
    """ZQ' restricted to slices ``nmin..nmax`` for a finite acyclic quiver ``qp``.

    Arrows ``(n, a): (n, s) -> (n, t)`` and ``(n, a, "*"): (n, t) -> (n + 1, s)``;
    ``tau(n, v) = (n - 1, v)``.
    """
    if qp.topological_order() is None:
        raise PreconditionError("ZQ' needs an acyclic quiver")
    vertices = tuple((n, v) for n in range(nmin, nmax + 1) for v in qp.vertices)
    arrows = {}
    for n in range(nmin, nmax + 1):
        for a in qp.arrows:
            s, t = qp.source(a), qp.target(a)
            arrows[(n, a)] = ((n, s), (n, t))
            if n < nmax:
                arrows[(n, a, "*")] = ((n, t), (n + 1, s))
    tau = {(n, v): (n - 1, v) for n in range(nmin + 1, nmax + 1) for v in qp.vertices}
    return TranslationQuiver(name or f"Z({getattr(qp, 'name', 'Q')})", vertices, arrows, tau)


# knitting


@dataclass(frozen=True)
class KnitResult:
    """Knitted labels on ZQ~^op: signed dimension vectors as dicts over window vertices."""

    window: object
    tq: TranslationQuiver
    labels: dict
    contaminated: frozenset

    def vector(self, v) -> tuple:
        lab = self.labels[v]
        return tuple(lab.get(x, 0) for x in self.window.vertices)

    def clean(self) -> list:
        return [v for v in self.tq.vertices if v in self.labels and v not in self.contaminated]

    def is_positive(self, v) -> bool:
        lab = self.labels[v]
        return any(lab.values()) and all(x >= 0 for x in lab.values())

    def mesh_defect(self, v) -> dict | None:
        """``dim tau^-1 X + dim X - sum of middle terms`` at ``X = v`` (None if not knitted)."""
        w = self.tq.tau_inverse(v)
        if w is None or w not in self.labels or v not in self.labels:
            return None
        middle = self.tq.successors(v)
        if any(m not in self.labels for m in middle):
            return None
        total = _add(self.labels[w], self.labels[v])
        for m in middle:
            total = _add(total, self.labels[m], -1)
        return {k: x for k, x in total.items() if x}

    def section_candidate(self) -> list:
        """Last clean positive vertex of every knitted tau-orbit."""
        last = {}
        for n, x in self.tq.vertices:
            v = (n, x)
            if v in self.labels and v not in self.contaminated and self.is_positive(v):
                last[x] = v
        return [last[x] for x in self.window.vertices if x in last]


def _add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, x in b.items():
        out[k] = out.get(k, 0) + sign * x
    return out


def _path_counts(c, v) -> dict:
    order = c.underlying().topological_order()
    counts = {v: 1}
    for u in order:
        if u not in counts:
            continue
        for a in c.out_arrows(u):
            t = c.target(a)
            counts[t] = counts.get(t, 0) + counts[u]
    return counts


def knit_connecting(qt, steps: int) -> KnitResult:
    """Knit the component through the projectives on ZQ~^op over ``steps`` slices.

    Slice 0 holds ``dim P_v``; ``dim tau^-1 X = sum over arrows out of X - dim X``.
    A label is contaminated when the window cuts arrows at its vertex, when a
    projective reaches a vertex with cropped outgoing arrows, or when it was
    computed from a contaminated label.
    """
    under = qt.underlying()
    if under.topological_order() is None:
        raise PreconditionError("knitting needs an acyclic window")
    qop = under.opposite()
    tq = build_zq(qop, 0, steps, name=f"Z({qt.name})^op")
    labels: dict = {}
    dirty: set = set()
    for v in qt.vertices:
        counts = _path_counts(qt, v)
        labels[(0, v)] = counts
        if any(qt.cropped_out(w) for w in counts):
            dirty.add((0, v))
    order = qop.topological_order()
    for n in range(steps):
        for v in order:
            x = (n, v)
            succ = tq.successors(x)
            target = (n + 1, v)
            lab = {k: -c for k, c in labels[x].items()}
            for m in succ:
                lab = _add(lab, labels[m])
            labels[target] = {k: c for k, c in lab.items() if c}
            if x in dirty or qt.is_cropped(v) or any(m in dirty for m in succ):
                dirty.add(target)
    return KnitResult(qt, tq, labels, frozenset(dirty))


def euler_defect(knit: KnitResult, v) -> int | None:
    """Largest violation of ``<dim tau^-1 X, e_w> + <e_w, dim X> = 0`` over window vertices ``w``."""
    from .representations import euler_form

    w = knit.tq.tau_inverse(v)
    if w is None or w not in knit.labels:
        return None
    c = knit.window
    worst = 0
    for x in c.vertices:
        e = {x: 1}
        val = euler_form(c, knit.labels[w], e) + euler_form(c, e, knit.labels[v])
        worst = max(worst, abs(val))
    return worst


# orbit quotients


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=_order)] = min(ra, rb, key=_order)


def _order(v):
    return (v[0], repr(v[1]))


def orbit_quotient(tq: TranslationQuiver, shift: int, vertex_map=None, arrow_map=None) -> TranslationQuiver:
    """Orbits of ``(n, v) -> (n + shift, vertex_map(v))`` inside the window.

    Each orbit is represented by its member with the smallest slice.
    """
    if shift < 1 and vertex_map is None:
        raise PreconditionError("orbit quotient needs a positive slice shift or a vertex map")
    slices = sorted({n for n, _ in tq.vertices})
    if shift >= 1 and slices[-1] - slices[0] + 1 < 2 * shift:
        raise PreconditionError(f"window of {len(slices)} slices is narrower than 2*{shift}")
    vmap = vertex_map or (lambda x: x)

    def image(v):
        n, x = v
        return (n + shift, vmap(x))

    uf = _UnionFind(tq.vertices)
    for v in tq.vertices:
        w = image(v)
        if tq.has_vertex(w):
            uf.union(v, w)
    rep = {v: uf.find(v) for v in tq.vertices}

    def arrow_image(a):
        if arrow_map is not None:
            return arrow_map(a)
        if isinstance(a, tuple) and a and isinstance(a[0], int):
            return (a[0] + shift,) + a[1:]
        return None

    auf = _UnionFind(list(tq.arrows))
    for a in tq.arrows:
        b = arrow_image(a)
        if b in tq.arrows:
            s, t = tq.arrows[a]
            if tq.arrows[b] == (image(s), image(t)):
                auf.union(a, b)
    arrows = {}
    for a in tq.arrows:
        r = auf.find(a)
        if r not in arrows:
            s, t = tq.arrows[r]
            arrows[r] = (rep[s], rep[t])
    tau = {}
    for v, t in tq.tau.items():
        tau.setdefault(rep[v], rep[t])
    vertices = tuple(sorted(set(rep.values()), key=_order))
    return TranslationQuiver(f"{tq.name}/{shift}", vertices, arrows, tau)


def stack_shifts(tq: TranslationQuiver, layers: range) -> TranslationQuiver:
    """Disjoint copies ``Sigma^p`` of ``tq`` for ``p`` in ``layers``; labels become ``(p, v)``."""
    vertices = tuple((n, (p, x)) for p in layers for n, x in tq.vertices)
    arrows = {
        (p, a): ((s[0], (p, s[1])), (t[0], (p, t[1])))
        for p in layers
        for a, (s, t) in tq.arrows.items()
    }
    tau = {(v[0], (p, v[1])): (t[0], (p, t[1])) for p in layers for v, t in tq.tau.items()}
    return TranslationQuiver(f"{tq.name}x{len(layers)}", vertices, arrows, tau)


# census


@dataclass(frozen=True)
class CensusEntry:
    shape: str
    count: int | str
    caveat: str | None = None
    section: tuple | None = None

    def to_dict(self) -> dict:
        out = {"shape": self.shape, "count": self.count}
        if self.caveat:
            out["caveat"] = self.caveat
        if self.section is not None:
            out["section"] = list(self.section)
        return out


@dataclass(frozen=True)
class ComponentCensus:
    entries: tuple = field(default=())

    def count(self, shape: str):
        for e in self.entries:
            if e.shape == shape:
                return e.count
        return None

    def shapes(self) -> list[str]:
        return [e.shape for e in self.entries]

    def as_dict(self) -> dict:
        return {e.shape: e.count for e in self.entries}

    def to_json(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]


def tits_form_type(q: GradedQuiver) -> str:
    """``dynkin`` / ``euclidean`` / ``wild`` from the Tits form of the underlying graph."""
    n = len(q.vertices)
    idx = {v: i for i, v in enumerate(q.vertices)}
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = Fraction(2)
    for a in q.arrows:
        s, t = idx[a.source], idx[a.target]
        G[s][t] -= 1
        G[t][s] -= 1
    # symmetric elimination: count positive, zero and negative pivots
    pos = zero = neg = 0
    A = [row[:] for row in G]
    rest = list(range(n))
    while rest:
        k = next((i for i in rest if A[i][i] != 0), None)
        if k is None:
            # all remaining diagonal zero: any nonzero off-diagonal entry makes it indefinite
            if any(A[i][j] != 0 for i in rest for j in rest):
                neg += 1
            zero += len(rest)
            break
        piv = A[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rest.remove(k)
        for i in rest:
            f = A[i][k] / piv
            for j in rest:
                A[i][j] -= f * A[k][j]
    if neg:
        return "wild"
    if zero == 0:
        return "dynkin"
    return "euclidean" if zero == 1 else "wild"


def knit_window(q: GradedQuiver, steps: int = 2, half_width: int | None = None):
    """A Q~ window and its knitted fragment, sized from the default slack."""
    w = half_width if half_width is not None else 2 * default_slack(q)
    qt = build_q_tilde(q, q.vertices[0], -w, w)
    return qt, knit_connecting(qt, steps)


def predict_census(q: GradedQuiver) -> ComponentCensus:
    if not is_admissible(q):
        raise PreconditionError(f"quiver {q.name!r} is not admissible")
    report = classify_shape(q)
    r = report.grading_period
    if r == 0:
        kind = tits_form_type(q)
        if kind == "dynkin":
            return ComponentCensus((CensusEntry(ZQ_OP, 1),))
        caveat = "regular components from hereditary theory; not derived here"
        if kind == "euclidean":
            return ComponentCensus((CensusEntry(ZQ_OP, INFINITE), CensusEntry(TUBE, INFINITE, caveat)))
        return ComponentCensus((CensusEntry(ZQ_OP, INFINITE), CensusEntry(ZA_INF, INFINITE, caveat)))
    if not report.has_oriented_cycles:
        return ComponentCensus((
            CensusEntry(ZQTILDE_OP, r),
            CensusEntry(ZA_INF, 2 * r if report.is_type_A_tilde else INFINITE),
        ))
    if report.is_graded_oriented_cycle:
        return ComponentCensus((CensusEntry(QTILDE_OP, r), CensusEntry(ZA_INF, r)))
    qt, knit = knit_window(q)
    lo, hi = qt.jmin + qt.width // 3, qt.jmax - qt.width // 3
    section = tuple(
        f"{n}:{key_str(x)}" for n, x in knit.section_candidate() if lo <= x[1] <= hi
    )
    presence = "present; count not determined"
    return ComponentCensus((
        CensusEntry(RIGHTMOST, r, "section is a candidate from a knitted window", section),
        CensusEntry(ZA_INF, UNQUANTIFIED, presence),
        CensusEntry(NA_INF, UNQUANTIFIED, presence),
        CensusEntry(NMINUS_A_INF, UNQUANTIFIED, presence),
        CensusEntry(FINITE_WING, INFINITE),
    ))


def has_ar_triangles(q: GradedQuiver) -> bool:
    return not classify_shape(q).has_oriented_cycles


def path_length_growth(q: GradedQuiver, widths=(4, 8)) -> list[int]:
    """Longest path in P windows of growing width; bounded iff no oriented cycles."""
    return [longest_path_length(build_p_window(q, -w, w)) for w in widths]


def quotient_matches(a: TranslationQuiver, b: TranslationQuiver, bijection: dict) -> list[str]:
    """Differences between two translation quivers under a partial vertex bijection."""
    problems = []
    inv = {y: x for x, y in bijection.items()}
    for x, y in bijection.items():
        if not a.has_vertex(x) or not b.has_vertex(y):
            problems.append(f"missing vertex {x} / {y}")
            continue
        sa = sorted(repr(bijection[s]) for s in a.successors(x) if s in bijection)
        sb = sorted(repr(s) for s in b.successors(y) if s in inv)
        if sa != sb:
            problems.append(f"arrows differ at {x}: {sa} vs {sb}")
        ta, tb = a.tau.get(x), b.tau.get(y)
        if ta in bijection and tb in inv and bijection[ta] != tb:
            problems.append(f"tau differs at {x}")
    return problems
