"""Grading period, cycle-sign analysis, admissibility and shape classification.

Admissibility means: for every integer p only finitely many paths have
virtual degree p.  It fails exactly when some strongly connected component
carries a directed cycle of virtual degree zero (or cycles of both signs), or
when a positive component can reach a negative one (or vice versa).
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from math import gcd

from .errors import InvariantError, PreconditionError
from .quiver import INVERSE, FORWARD, GradedQuiver, Walk, undirected_components


class CycleSign(str, enum.Enum):
    NO_CYCLE = "no_cycle"
    ALL_POSITIVE = "all_positive"
    ALL_NEGATIVE = "all_negative"
    ZERO_OR_MIXED = "zero_or_mixed"


@dataclass(frozen=True)
class SccSignature:
    scc_id: int
    members: tuple[str, ...]
    cycle_sign: CycleSign


@dataclass(frozen=True)
class AnalysisReport:
    grading_period: int
    admissible: bool
    has_oriented_cycles: bool
    is_graded_oriented_cycle: bool
    is_type_A_tilde: bool
    has_ar_triangles: bool
    connected: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _require_connected(q: GradedQuiver, what: str) -> list[list[str]]:
    comps = undirected_components(q)
    if len(comps) > 1:
        periods = [_period_connected(q.subquiver(c)) for c in comps]
        detail = ", ".join(f"{{{','.join(c)}}}: r={r}" for c, r in zip(comps, periods))
        raise PreconditionError(f"{what} needs a connected quiver; components {detail}")
    return comps


def spanning_potentials(q: GradedQuiver, root: str | None = None):
    """Virtual degree of the spanning-tree walk from ``root`` to each vertex.

    Returns ``(potential, tree_steps)`` where ``tree_steps[v]`` is the
    ``(arrow, direction, parent)`` used to reach ``v``.  Only the component of
    ``root`` is covered.
    """
    root = q.vertices[0] if root is None else root
    pot = {root: 0}
    tree: dict[str, tuple[str, int, str]] = {}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for a in q.arrows:
            if a.source == u and a.target not in pot:
                pot[a.target] = pot[u] + a.virtual_degree
                tree[a.target] = (a.name, FORWARD, u)
                queue.append(a.target)
            elif a.target == u and a.source not in pot:
                pot[a.source] = pot[u] - a.virtual_degree
                tree[a.source] = (a.name, INVERSE, u)
                queue.append(a.source)
    return pot, tree


def _period_connected(q: GradedQuiver, root: str | None = None) -> int:
    pot, tree = spanning_potentials(q, root)
    tree_arrows = {name for name, _, _ in tree.values()}
    r = 0
    for a in q.arrows:
        if a.name in tree_arrows:
            continue
        r = gcd(r, abs(pot[a.source] + a.virtual_degree - pot[a.target]))
    return r


def grading_period(q: GradedQuiver, root: str | None = None) -> int:
    _require_connected(q, "grading_period")
    return _period_connected(q, root)


def tree_walk(q: GradedQuiver, root: str, v: str) -> Walk:
    """The spanning-tree walk from ``root`` to ``v``."""
    _, tree = spanning_potentials(q, root)
    steps = []
    while v != root:
        name, e, parent = tree[v]
        steps.append((name, e))
        v = parent
    return Walk(q, root, tuple(reversed(steps)))


def period_walk(q: GradedQuiver, root: str) -> Walk | None:
    """A closed walk at ``root`` whose virtual degree is the grading period.

    Built as an integer combination of fundamental cycles (extended gcd).
    ``None`` when the period is 0.
    """
    _require_connected(q, "period_walk")
    pot, tree = spanning_potentials(q, root)
    tree_arrows = {name for name, _, _ in tree.values()}
    cycles = []
    for a in q.arrows:
        if a.name in tree_arrows:
            continue
        defect = pot[a.source] + a.virtual_degree - pot[a.target]
        if defect == 0:
            continue
        loop = (
            tree_walk(q, root, a.source)
            .then(Walk(q, a.source, ((a.name, FORWARD),)))
            .then(tree_walk(q, root, a.target).inverse())
        )
        cycles.append((defect, loop))
    if not cycles:
        return None
    # extended gcd over the defects; coefficients give the combination
    g, coeffs = cycles[0][0], [1]
    for defect, _ in cycles[1:]:
        x0, x1, a, b = 1, 0, g, defect
        y0, y1 = 0, 1
        while b:
            k = a // b
            a, b = b, a - k * b
            x0, x1 = x1, x0 - k * x1
            y0, y1 = y1, y0 - k * y1
        coeffs = [c * x0 for c in coeffs] + [y0]
        g = a
    if g < 0:
        g, coeffs = -g, [-c for c in coeffs]
    w = Walk(q, root)
    for (_, loop), c in zip(cycles, coeffs):
        w = w.then(loop.power(c))
    return w


def _tarjan(q: GradedQuiver) -> list[list[str]]:
    """SCCs in topological order of the condensation (sources first)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out = {v: [a.target for a in q.out_arrows(v)] for v in q.vertices}
    sccs: list[list[str]] = []
    counter = 0
    for root in q.vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for k in range(i, len(out[v])):
                w = out[v][k]
                if w not in index:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp, key=q.vertex_index))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    sccs.reverse()
    return sccs


def _has_cycle_at_most_zero(members, arrows, n: int, sign: int) -> bool:
    """Bellman-Ford: is there a directed cycle with ``sign * degree <= 0``?

    Weights ``(n+1) * sign * d - 1`` turn "degree <= 0" into a strictly
    negative cycle; simple cycles have length <= n so positive-degree cycles
    stay positive.
    """
    dist = {v: 0 for v in members}
    edges = [(a.source, a.target, (n + 1) * sign * a.virtual_degree - 1) for a in arrows]
    for _ in range(len(members)):
        changed = False
        for s, t, w in edges:
            if dist[s] + w < dist[t]:
                dist[t] = dist[s] + w
                changed = True
        if not changed:
            return False
    return any(dist[s] + w < dist[t] for s, t, w in edges)


def scc_sign_analysis(q: GradedQuiver) -> list[SccSignature]:
    n = len(q.vertices)
    result = []
    for sid, members in enumerate(_tarjan(q)):
        mset = set(members)
        inside = [a for a in q.arrows if a.source in mset and a.target in mset]
        if not inside:
            sign = CycleSign.NO_CYCLE
        else:
            nonpos = _has_cycle_at_most_zero(members, inside, n, +1)
            nonneg = _has_cycle_at_most_zero(members, inside, n, -1)
            if not nonpos:
                sign = CycleSign.ALL_POSITIVE
            elif not nonneg:
                sign = CycleSign.ALL_NEGATIVE
            else:
                sign = CycleSign.ZERO_OR_MIXED
        result.append(SccSignature(sid, tuple(members), sign))
    return result


def is_admissible(q: GradedQuiver) -> bool:
    sigs = scc_sign_analysis(q)
    if any(s.cycle_sign is CycleSign.ZERO_OR_MIXED for s in sigs):
        return False
    comp_of = {v: s.scc_id for s in sigs for v in s.members}
    succ: dict[int, set[int]] = {s.scc_id: set() for s in sigs}
    for a in q.arrows:
        cs, ct = comp_of[a.source], comp_of[a.target]
        if cs != ct:
            succ[cs].add(ct)
    signs = {s.scc_id: s.cycle_sign for s in sigs}
    opposite = {
        CycleSign.ALL_POSITIVE: CycleSign.ALL_NEGATIVE,
        CycleSign.ALL_NEGATIVE: CycleSign.ALL_POSITIVE,
    }
    for s in sigs:
        bad = opposite.get(s.cycle_sign)
        if bad is None:
            continue
        seen, todo = set(), list(succ[s.scc_id])
        while todo:
            c = todo.pop()
            if c in seen:
                continue
            seen.add(c)
            if signs[c] is bad:
                return False
            todo.extend(succ[c])
    return True


def certified_length_bound(q: GradedQuiver, p: int) -> int:
    """Upper bound on the length of any path of virtual degree ``p`` (admissible ``q``)."""
    n = len(q.vertices)
    return (abs(p) + (n + 1) * (q.max_abs_d + 1)) * (n + 1)


def count_paths_by_virtual_degree(q: GradedQuiver, p: int) -> int:
    """Exact number of directed paths of virtual degree ``p``.

    This is the dimension of the degree-p piece of the Koszul dual.  The
    count is taken up to the certified length bound and must not change over
    a further ``n + 1`` steps.
    """
    if not is_admissible(q):
        raise PreconditionError(
            f"quiver {q.name!r} is not admissible: some virtual degree has infinitely many paths"
        )
    bound = certified_length_bound(q, p)
    n = len(q.vertices)
    layer = {(v, 0): 1 for v in q.vertices}
    total = len(q.vertices) if p == 0 else 0
    at_bound = total if bound == 0 else None
    for length in range(1, bound + n + 2):
        nxt: dict[tuple[str, int], int] = {}
        for (v, deg), c in layer.items():
            for a in q.out_arrows(v):
                key = (a.target, deg + a.virtual_degree)
                nxt[key] = nxt.get(key, 0) + c
        layer = nxt
        total += sum(c for (_, deg), c in layer.items() if deg == p)
        if length == bound:
            at_bound = total
    if total != at_bound:
        raise InvariantError(f"path count at virtual degree {p} did not stabilise")
    return total


def _undirected_degree(q: GradedQuiver) -> dict[str, int]:
    deg = {v: 0 for v in q.vertices}
    for a in q.arrows:
        deg[a.source] += 1
        deg[a.target] += 1
    return deg


def is_type_a_tilde(q: GradedQuiver) -> bool:
    """Underlying multigraph is a single cycle (loops and 2-cycles included)."""
    deg = _undirected_degree(q)
    return (
        len(undirected_components(q)) == 1
        and len(q.arrows) == len(q.vertices)
        and all(d == 2 for d in deg.values())
    )


def is_graded_oriented_cycle(q: GradedQuiver) -> bool:
    outd = {v: 0 for v in q.vertices}
    ind = {v: 0 for v in q.vertices}
    for a in q.arrows:
        outd[a.source] += 1
        ind[a.target] += 1
    return (
        len(undirected_components(q)) == 1
        and all(outd[v] == 1 and ind[v] == 1 for v in q.vertices)
    )


def has_oriented_cycles(q: GradedQuiver) -> bool:
    return any(s.cycle_sign is not CycleSign.NO_CYCLE for s in scc_sign_analysis(q))


def classify_shape(q: GradedQuiver) -> AnalysisReport:
    _require_connected(q, "classify_shape")
    cyclic = has_oriented_cycles(q)
    return AnalysisReport(
        grading_period=_period_connected(q),
        admissible=is_admissible(q),
        has_oriented_cycles=cyclic,
        is_graded_oriented_cycle=is_graded_oriented_cycle(q),
        is_type_A_tilde=is_type_a_tilde(q),
        has_ar_triangles=not cyclic,
        connected=True,
    )
