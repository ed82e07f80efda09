"""Brute-force reference computations, independent of the package's linear algebra.

Everything here enumerates over F_2 and is only meant for tiny instances.
"""

from __future__ import annotations

import itertools
from math import log2

from rsz import F2
from rsz.representations import Representation


def all_matrices(rows: int, cols: int):
    for bits in itertools.product((0, 1), repeat=rows * cols):
        yield tuple(tuple(bits[r * cols:(r + 1) * cols]) for r in range(rows))


def mul(A, B, inner: int, cols: int):
    return tuple(
        tuple(sum(A[r][k] * B[k][c] for k in range(inner)) % 2 for c in range(cols))
        for r in range(len(A))
    )


def all_reps(quiver, dims: dict):
    """Every F_2 representation with the given dimension vector."""
    arrows = list(quiver.arrows)
    shapes = [(dims.get(quiver.target(a), 0), dims.get(quiver.source(a), 0)) for a in arrows]
    for mats in itertools.product(*(list(all_matrices(r, c)) for r, c in shapes)):
        yield Representation(quiver, F2, dims, dict(zip(arrows, mats)))


def dim_vectors(quiver, bound: int):
    for combo in itertools.product(range(bound + 1), repeat=len(quiver.vertices)):
        if any(combo):
            yield dict(zip(quiver.vertices, combo))


def _mat(M, a):
    q = M.quiver
    return M.maps.get(a) or tuple((0,) * M.dim(q.source(a)) for _ in range(M.dim(q.target(a))))


def _cochains0(M, N):
    verts = list(M.quiver.vertices)
    choices = [list(all_matrices(N.dim(v), M.dim(v))) for v in verts]
    for combo in itertools.product(*choices):
        yield dict(zip(verts, combo))


def _coboundary(M, N, phi):
    q = M.quiver
    out = []
    for a in q.arrows:
        s, t = q.source(a), q.target(a)
        left = mul(phi[t], _mat(M, a), M.dim(t), M.dim(s))
        right = mul(_mat(N, a), phi[s], N.dim(s), M.dim(s))
        out.append(tuple(tuple((x - y) % 2 for x, y in zip(r1, r2)) for r1, r2 in zip(left, right)))
    return tuple(out)


def brute_hom(M, N) -> int:
    """dim Hom(M, N) by counting all commuting families of matrices."""
    count = 0
    for phi in _cochains0(M, N):
        if all(all(x == 0 for row in block for x in row) for block in _coboundary(M, N, phi)):
            count += 1
    return int(log2(count))


def brute_ext(M, N) -> int:
    """dim Ext^1(M, N) as |arrow cochains| / |coboundaries| for a path algebra."""
    q = M.quiver
    images = {_coboundary(M, N, phi) for phi in _cochains0(M, N)}
    c1 = sum(N.dim(q.target(a)) * M.dim(q.source(a)) for a in q.arrows)
    return c1 - int(log2(len(images)))


def nonsplit_extension(Y, X):
    """Middle term E of some non-split 0 -> X -> E -> Y -> 0 over F_2, or None if Ext^1(Y, X) = 0."""
    q = X.quiver
    arrows = list(q.arrows)
    images = {_coboundary(Y, X, phi) for phi in _cochains0(Y, X)}
    shapes = [(X.dim(q.target(a)), Y.dim(q.source(a))) for a in arrows]
    for c in itertools.product(*(list(all_matrices(r, k)) for r, k in shapes)):
        if tuple(c) in images:
            continue
        dims = {v: X.dim(v) + Y.dim(v) for v in q.vertices}
        maps = {}
        for a, ca in zip(arrows, c):
            s, t = q.source(a), q.target(a)
            xa, ya = _mat(X, a), _mat(Y, a)
            top = [list(xa[i]) + list(ca[i]) for i in range(X.dim(t))]
            bottom = [[0] * X.dim(s) + list(ya[i]) for i in range(Y.dim(t))]
            maps[a] = top + bottom
        return Representation(q, F2, dims, maps)
    return None


def _span(vectors, d):
    out = {(0,) * d}
    for v in vectors:
        out |= {tuple((x + y) % 2 for x, y in zip(u, v)) for u in out}
    return frozenset(out)


def subspaces(d: int):
    vecs = list(itertools.product((0, 1), repeat=d))
    found = set()
    for k in range(d + 1):
        for combo in itertools.combinations(vecs, k):
            found.add(_span(combo, d))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _apply(A, v):
    return tuple(sum(A[r][k] * v[k] for k in range(len(v))) % 2 for r in range(len(A)))


def _is_sub(M, spaces):
    q = M.quiver
    for a in q.arrows:
        s, t = q.source(a), q.target(a)
        if M.dim(s) == 0:
            continue
        A = _mat(M, a)
        if any(_apply(A, v) not in spaces[t] for v in spaces[s]):
            return False
    return True


def brute_is_decomposable(M) -> bool:
    """Search for two nonzero complementary subrepresentations."""
    verts = [v for v in M.quiver.vertices if M.dim(v)]
    per_vertex = [subspaces(M.dim(v)) for v in verts]
    subs = []
    for combo in itertools.product(*per_vertex):
        spaces = dict(zip(verts, combo))
        for v in M.quiver.vertices:
            spaces.setdefault(v, frozenset({()}))
        if _is_sub(M, spaces):
            subs.append(spaces)
    for U in subs:
        size_u = sum(len(U[v]) for v in verts)
        if size_u == len(verts):
            continue  # zero
        for V in subs:
            if sum(len(V[v]) for v in verts) == len(verts):
                continue
            if all(
                len(U[v]) * len(V[v]) == 2 ** M.dim(v) and U[v] & V[v] == {(0,) * M.dim(v)}
                for v in verts
            ):
                return True
    return False


def brute_path_counts(q, max_len: int) -> dict:
    """(source, target, virtual degree) -> number of paths of length <= max_len, by DFS."""
    counts: dict = {}

    def walk(start, here, deg, length):
        counts[(start, here, deg)] = counts.get((start, here, deg), 0) + 1
        if length == max_len:
            return
        for a in q.arrows:
            if a.source == here:
                walk(start, a.target, deg + 1 - a.degree, length + 1)

    for v in q.vertices:
        walk(v, v, 0, 0)
    return counts


def closed_walk_gcd(q, max_len: int) -> int:
    """gcd of virtual degrees of all closed walks of length <= max_len (both directions)."""
    from math import gcd

    moves = {v: [] for v in q.vertices}
    for a in q.arrows:
        d = 1 - a.degree
        moves[a.source].append((a.target, d))
        moves[a.target].append((a.source, -d))
    g = 0
    for start in q.vertices:
        layer = {(start, 0)}
        for _ in range(max_len):
            layer = {(t, deg + d) for v, deg in layer for t, d in moves[v]}
            for v, deg in layer:
                if v == start:
                    g = gcd(g, abs(deg))
    return g


def _closed_paths(q, max_len: int):
    """(vertex set, virtual degree) of every directed closed path of length <= max_len."""
    out = []

    def extend(start, here, deg, seen, length):
        for a in q.arrows:
            if a.source != here:
                continue
            d = deg + 1 - a.degree
            if a.target == start:
                out.append((seen | {here}, d))
            if length + 1 < max_len:
                extend(start, a.target, d, seen | {here}, length + 1)

    for v in q.vertices:
        extend(v, v, 0, frozenset(), 0)
    return out


def _reach(q):
    reach = {v: {v} for v in q.vertices}
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            for v in q.vertices:
                if a.source in reach[v] and a.target not in reach[v]:
                    reach[v].add(a.target)
                    changed = True
    return reach


def brute_admissible(q) -> bool:
    """Admissible iff no cycle of degree >= 0 and a cycle of degree <= 0 are linked by a path."""
    cycles = _closed_paths(q, len(q.vertices))
    reach = _reach(q)

    def linked(c1, c2):
        return any(w in reach[v] for v in c1 for w in c2) or any(v in reach[w] for v in c1 for w in c2)

    for vs1, d1 in cycles:
        for vs2, d2 in cycles:
            if d1 >= 0 >= d2 and linked(vs1, vs2):
                return False
    return True


def total_paths(q, max_len: int) -> int:
    layer = {v: 1 for v in q.vertices}
    total = len(q.vertices)
    for _ in range(max_len):
        nxt = {}
        for v, c in layer.items():
            for a in q.arrows:
                if a.source == v:
                    nxt[a.target] = nxt.get(a.target, 0) + c
        layer = nxt
        total += sum(layer.values())
    return total
