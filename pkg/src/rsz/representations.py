"""Finite-dimensional representations of finite acyclic quivers.

Convention: the matrix of an arrow ``a: s -> t`` has ``dims[t]`` rows and
``dims[s]`` columns and acts on column vectors.  The quiver may be any object
with ``vertices``, ``arrows``, ``source``, ``target`` and ``has_vertex``; in
practice a :class:`~rsz.quiver.FiniteQuiver` or a covering window.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from typing import Iterable

from . import linalg as la
from .errors import InputError, InvariantError, PreconditionError, WindowError
from .field import FieldSpec, QQ
from .quiver import key_str

DEFAULT_SEED = 0xD5EED
RANDOM_TRIALS = 64
EXHAUSTIVE_CAP = 4096

INDECOMPOSABLE = "indecomposable"
DECOMPOSABLE = "decomposable"
PROBABLY_INDECOMPOSABLE = "probably_indecomposable"


def default_seed() -> int:
    raw = os.environ.get("RSZ_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise InputError(f"RSZ_SEED must be an integer, got {raw!r}") from exc


class Representation:
    """Immutable quiver representation; zero dims and zero matrices are dropped."""

    __slots__ = ("quiver", "field", "dims", "maps")

    def __init__(self, quiver, field: FieldSpec, dims: dict, maps: dict | None = None):
        maps = maps or {}
        clean_dims = {}
        for v, d in dims.items():
            if not quiver.has_vertex(v):
                raise InputError(f"{key_str(v)} is not a vertex of {quiver.name}")
            if not isinstance(d, int) or d < 0:
                raise InputError(f"dimension at {key_str(v)} must be a nonnegative integer")
            if d:
                clean_dims[v] = d
        arrow_set = set(quiver.arrows)
        clean_maps = {}
        for a, mat in maps.items():
            if a not in arrow_set:
                raise InputError(f"{key_str(a)} is not an arrow of {quiver.name}")
            rows, cols = clean_dims.get(quiver.target(a), 0), clean_dims.get(quiver.source(a), 0)
            mat = tuple(tuple(field(x) for x in row) for row in mat)
            if rows == 0 or cols == 0:
                if any(len(row) for row in mat) and not la.is_zero(mat):
                    raise InputError(f"matrix of {key_str(a)} must be empty")
                continue
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise InputError(f"matrix of {key_str(a)} must be {rows}x{cols}")
            if not la.is_zero(mat):
                clean_maps[a] = mat
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dims", clean_dims)
        object.__setattr__(self, "maps", clean_maps)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def dim(self, v) -> int:
        return self.dims.get(v, 0)

    def matrix(self, a) -> la.Matrix:
        m = self.maps.get(a)
        if m is not None:
            return m
        return la.zeros(self.dim(self.quiver.target(a)), self.dim(self.quiver.source(a)), self.field)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def support(self) -> list:
        return [v for v in self.quiver.vertices if v in self.dims]

    def is_zero(self) -> bool:
        return not self.dims

    def dim_vector(self) -> tuple:
        return tuple(self.dim(v) for v in self.quiver.vertices)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and self.maps == other.maps
        )

    __hash__ = None

    def __repr__(self):
        dims = ", ".join(f"{key_str(v)}:{d}" for v, d in ((v, self.dims[v]) for v in self.support))
        return f"Representation({self.quiver.name}; {dims or '0'})"


def _same_category(M: Representation, N: Representation) -> None:
    if M.field != N.field:
        raise InputError(f"field mismatch: {M.field} vs {N.field}")
    if M.quiver != N.quiver:
        raise InputError(f"quiver mismatch: {M.quiver.name} vs {N.quiver.name}")


# constructors


def zero_rep(quiver, field: FieldSpec = QQ) -> Representation:
    return Representation(quiver, field, {})


def simple(quiver, v, field: FieldSpec = QQ) -> Representation:
    return Representation(quiver, field, {v: 1})


def thin(quiver, support: Iterable, field: FieldSpec = QQ, scalars: dict | None = None) -> Representation:
    """Dimension 1 on ``support``; every arrow inside the support acts by 1 (or ``scalars[a]``)."""
    sup = set(support)
    scalars = scalars or {}
    maps = {
        a: ((scalars.get(a, 1),),)
        for a in quiver.arrows
        if quiver.source(a) in sup and quiver.target(a) in sup
    }
    return Representation(quiver, field, {v: 1 for v in sup}, maps)


def _paths_from(quiver, v, limit: int = 100000) -> dict:
    """Paths from ``v`` grouped by target, each as a tuple of arrows."""
    out: dict = {}
    stack = [(v, ())]
    count = 0
    while stack:
        here, path = stack.pop()
        out.setdefault(here, []).append(path)
        count += 1
        if count > limit:
            raise PreconditionError(f"too many paths from {key_str(v)}; is the quiver acyclic?")
        for a in quiver.out_arrows(here):
            stack.append((quiver.target(a), path + (a,)))
    for paths in out.values():
        paths.sort(key=lambda p: [key_str(a) for a in p])
    return out


def projective(quiver, v, field: FieldSpec = QQ) -> Representation:
    """Indecomposable projective at ``v``: basis of paths starting at ``v``."""
    paths = _paths_from(quiver, v)
    dims = {w: len(ps) for w, ps in paths.items()}
    index = {w: {p: k for k, p in enumerate(ps)} for w, ps in paths.items()}
    maps = {}
    for a in quiver.arrows:
        s, t = quiver.source(a), quiver.target(a)
        if s not in paths:
            continue
        mat = [[0] * dims[s] for _ in range(dims[t])]
        for k, p in enumerate(paths[s]):
            mat[index[t][p + (a,)]][k] = 1
        maps[a] = mat
    return Representation(quiver, field, dims, maps)


def injective(quiver, v, field: FieldSpec = QQ) -> Representation:
    """Indecomposable injective at ``v``: dual basis of paths ending at ``v``."""
    opp = _Opposite(quiver)
    paths = _paths_from(opp, v)
    dims = {w: len(ps) for w, ps in paths.items()}
    index = {w: {p: k for k, p in enumerate(ps)} for w, ps in paths.items()}
    maps = {}
    for a in quiver.arrows:
        s, t = quiver.source(a), quiver.target(a)
        if s not in paths or t not in paths:
            continue
        # p lists arrows from v backwards, so its first arrow out of s is p[-1]
        mat = [[0] * dims[s] for _ in range(dims[t])]
        for k, p in enumerate(paths[s]):
            if p and p[-1] == a:
                mat[index[t][p[:-1]]][k] = 1
        maps[a] = mat
    return Representation(quiver, field, dims, maps)


class _Opposite:
    """Arrow-reversed view used for injectives (paths are read backwards)."""

    def __init__(self, quiver):
        self.q = quiver

    def out_arrows(self, v):
        return self.q.in_arrows(v)

    def target(self, a):
        return self.q.source(a)


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise InputError("direct_sum needs at least one summand")
    first = reps[0]
    for M in reps[1:]:
        _same_category(first, M)
    q, F = first.quiver, first.field
    dims = {v: sum(M.dim(v) for M in reps) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        s = q.source(a)
        rows = []
        before = 0
        for M in reps:
            after = dims[s] - before - M.dim(s)
            for row in M.matrix(a):
                rows.append((F.zero,) * before + tuple(row) + (F.zero,) * after)
            before += M.dim(s)
        maps[a] = tuple(rows)
    return Representation(q, F, dims, maps)


# hom, Euler form, Ext


def _hom_system(M: Representation, N: Representation):
    q, F = M.quiver, M.field
    verts = [v for v in q.vertices if M.dim(v) and N.dim(v)]
    offset, n = {}, 0
    for v in verts:
        offset[v] = n
        n += N.dim(v) * M.dim(v)

    def var(v, r, c):
        return offset[v] + r * M.dim(v) + c

    rows = []
    for a in q.arrows:
        s, t = q.source(a), q.target(a)
        ms, mt, ns, nt = M.dim(s), M.dim(t), N.dim(s), N.dim(t)
        if ms == 0 or nt == 0:
            continue
        Ma, Na = M.matrix(a), N.matrix(a)
        # (phi_t M_a - N_a phi_s)[r][c] = 0
        for r in range(nt):
            for c in range(ms):
                row = [F.zero] * n
                if t in offset:
                    for k in range(mt):
                        if Ma[k][c] != 0:
                            i = var(t, r, k)
                            row[i] = F.add(row[i], Ma[k][c])
                if s in offset:
                    for k in range(ns):
                        if Na[r][k] != 0:
                            i = var(s, k, c)
                            row[i] = F.sub(row[i], Na[r][k])
                if any(x != 0 for x in row):
                    rows.append(row)
    return verts, offset, n, rows


def hom_basis(M: Representation, N: Representation) -> list[dict]:
    """Basis of Hom(M, N); each element maps vertex -> N_v x M_v matrix."""
    _same_category(M, N)
    verts, offset, n, rows = _hom_system(M, N)
    basis = []
    for vec in la.nullspace(rows, n, M.field):
        phi = {}
        for v in verts:
            base, mv = offset[v], M.dim(v)
            phi[v] = tuple(
                tuple(vec[base + r * mv + c] for c in range(mv)) for r in range(N.dim(v))
            )
        basis.append(phi)
    return basis


def hom_dim(M: Representation, N: Representation) -> int:
    _same_category(M, N)
    _, _, n, rows = _hom_system(M, N)
    return n - la.rank(rows, n, M.field)


def euler_form(quiver, d: dict, e: dict) -> int:
    """Ringel form of a finite acyclic quiver on dimension vectors (dicts)."""
    total = sum(d.get(v, 0) * e.get(v, 0) for v in quiver.vertices)
    total -= sum(d.get(quiver.source(a), 0) * e.get(quiver.target(a), 0) for a in quiver.arrows)
    return total


def ext1_dim(M: Representation, N: Representation) -> int:
    h = hom_dim(M, N)
    x = h - euler_form(M.quiver, M.dims, N.dims)
    if x < 0:
        raise InvariantError(f"negative Ext dimension {x}: hom={h}")
    return x


def is_morphism(M: Representation, N: Representation, phi: dict) -> bool:
    q, F = M.quiver, M.field
    for a in q.arrows:
        s, t = q.source(a), q.target(a)
        lhs = la.matmul(_block(phi, t, N, M), M.matrix(a), F, M.dim(t), M.dim(s))
        rhs = la.matmul(N.matrix(a), _block(phi, s, N, M), F, N.dim(s), M.dim(s))
        if lhs != rhs:
            return False
    return True


def _block(phi: dict, v, N: Representation, M: Representation):
    b = phi.get(v)
    return b if b is not None else la.zeros(N.dim(v), M.dim(v), M.field)


# level shifts on covering windows


def _shifted_window_error(M, k, missing):
    c = M.quiver
    js = [j for _, j in M.dims] or [0]
    lo, hi = min(js) - k, max(js) - k
    raise WindowError(
        f"pull_back by {k} moves {key_str(missing)} outside {c.name}",
        needed=(min(lo, c.jmin), max(hi, c.jmax)),
    )


def pull_back(M: Representation, k: int) -> Representation:
    """Pull back along the deck shift by ``k``: the result at ``(i, j)`` is ``M`` at ``(i, j + k)``."""
    c = M.quiver
    if not hasattr(c, "jmin"):
        raise PreconditionError("pull_back needs a covering window")
    if c.kind == "Qtilde" and (k % c.deck_step if c.deck_step else k):
        raise PreconditionError(f"shift {k} does not preserve Q~ (deck step {c.deck_step})")
    dims = {}
    for (i, j), d in M.dims.items():
        w = (i, j - k)
        if not c.has_vertex(w):
            _shifted_window_error(M, k, (i, j))
        dims[w] = d
    maps = {(name, j - k): mat for (name, j), mat in M.maps.items()}
    return Representation(c, M.field, dims, maps)


def reembed(M: Representation, quiver) -> Representation:
    """The same data on another window of the same covering."""
    for v in M.dims:
        if not quiver.has_vertex(v):
            raise WindowError(f"{key_str(v)} is outside {quiver.name}")
    return Representation(quiver, M.field, dict(M.dims), dict(M.maps))


# endomorphisms, Fitting decomposition


def _end_apply_poly(coeffs: list, phi: dict, M: Representation) -> dict:
    """``f(phi)`` for ``f`` given by coefficients (highest first), blockwise."""
    F = M.field
    out = {}
    for v, d in M.dims.items():
        A = phi.get(v, la.zeros(d, d, F))
        acc = la.zeros(d, d, F)
        for c in coeffs:
            acc = la.add(la.matmul(acc, A, F, d, d), la.scale(c, la.identity(d, F), F), F)
        out[v] = acc
    return out


def _fitting_parts(phi: dict, M: Representation):
    """Per-vertex bases of ker(phi^D) and im(phi^D)."""
    F, D = M.field, M.total_dim
    kers, ims = {}, {}
    for v, d in M.dims.items():
        A = la.mat_pow(phi.get(v, la.zeros(d, d, F)), D, F)
        kers[v] = la.kernel(A, d, d, F)
        ims[v] = la.column_space(A, d, d, F)
    return kers, ims


def _fitting_rank(phi: dict, M: Representation) -> int:
    _, ims = _fitting_parts(phi, M)
    return sum(len(b) for b in ims.values())


def subrepresentation(M: Representation, spaces: dict) -> Representation:
    """Restriction of ``M`` to invariant subspaces given by per-vertex bases."""
    q, F = M.quiver, M.field
    dims = {v: len(spaces.get(v, [])) for v in M.dims}
    maps = {}
    for a in q.arrows:
        s, t = q.source(a), q.target(a)
        if not dims.get(s) or not dims.get(t):
            continue
        Bs = la.from_columns(spaces[s], M.dim(s), F)
        Bt = la.from_columns(spaces[t], M.dim(t), F)
        image = la.matmul(M.matrix(a), Bs, F, M.dim(s), dims[s])
        maps[a] = la.solve(Bt, image, dims[t], F)
    return Representation(q, F, dims, maps)


def _charpoly_factors(phi: dict, M: Representation):
    import sympy  # deferred: only needed when the cheap certificates do not decide

    x = sympy.Symbol("x")
    F = M.field
    poly = None
    for v, d in M.dims.items():
        A = phi.get(v, la.zeros(d, d, F))
        mat = sympy.Matrix([[sympy.Rational(e.numerator, e.denominator) if F.kind == "Q" else int(e)
                             for e in row] for row in A])
        cp = mat.charpoly(x).as_expr()
        p = sympy.Poly(cp, x, modulus=F.p) if F.kind == "Fp" else sympy.Poly(cp, x, domain="QQ")
        poly = p if poly is None else poly * p
    _, factors = poly.factor_list()
    return factors


def _poly_coeffs(p, F: FieldSpec) -> list:
    import sympy

    out = []
    for c in p.all_coeffs():
        if F.kind == "Q":
            c = sympy.Rational(c)
            out.append(F(f"{c.p}/{c.q}"))
        else:
            out.append(F(int(c)))
    return out


def _splitter(phi: dict, M: Representation) -> dict | None:
    """An endomorphism with a nontrivial Fitting decomposition derived from ``phi``."""
    D = M.total_dim
    if 0 < _fitting_rank(phi, M) < D:
        return phi
    factors = _charpoly_factors(phi, M)
    if len(factors) >= 2:
        f, mult = factors[0]
        h = _end_apply_poly(_poly_coeffs(f ** mult, M.field), phi, M)
        if 0 < _fitting_rank(h, M) < D:
            return h
        raise InvariantError("coprime factor of the characteristic polynomial did not split")
    return None


def _combination(basis: list[dict], coeffs, M: Representation) -> dict:
    F = M.field
    out = {}
    for v, d in M.dims.items():
        acc = la.zeros(d, d, F)
        for c, b in zip(coeffs, basis):
            if c != 0 and v in b:
                acc = la.add(acc, la.scale(c, b[v], F), F)
        out[v] = acc
    return out


def _deterministic_candidates(basis, M):
    F = M.field
    m = len(basis)
    for i in range(m):
        yield [F.one if k == i else F.zero for k in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        yield [F.one if k in (i, j) else F.zero for k in range(m)]


def _nilpotent_span(elements: list[dict], M: Representation) -> bool:
    """Is every product of ``D`` elements of the span zero?"""
    F, D = M.field, M.total_dim
    layer = elements
    for _ in range(D):
        if not layer:
            return True
        products = []
        for x in layer:
            for y in elements:
                products.append({v: la.matmul(x[v], y[v], F, d, d) for v, d in M.dims.items()})
        layer = _independent(products, M)
    return not layer


def _flat(phi: dict, M: Representation) -> tuple:
    return tuple(x for v in M.support for row in phi[v] for x in row)


def _independent(elements: list[dict], M: Representation) -> list[dict]:
    """A basis of the span, chosen among ``elements``."""
    if not elements:
        return []
    n = sum(d * d for d in M.dims.values())
    vecs = [_flat(e, M) for e in elements]
    _, pivots = la.rref(la.transpose(vecs, n), len(vecs), M.field)
    return [elements[k] for k in pivots]


def _split_local_certificate(basis: list[dict], M: Representation) -> bool:
    """End(M) = k.1 + R with R (trace zero at a vertex) nilpotent implies End(M) local."""
    F = M.field
    for v, d in M.dims.items():
        if F.kind == "Fp" and d % F.p == 0:
            continue
        traces = [sum((b[v][i][i] for i in range(d)), F.zero) for b in basis]
        dv = F(d)
        R = []
        for b, t in zip(basis, traces):
            if t == 0:
                R.append(b)
            else:
                c = F.mul(t, F.inv(dv))
                R.append({w: la.sub(b[w], la.scale(c, la.identity(M.dims[w], F), F), F) for w in M.dims})
        return _nilpotent_span(_independent(R, M), M)
    return False


def _semisimple_quotient_dim(basis: list[dict], M: Representation) -> int:
    """dim End(M) - dim rad End(M) in characteristic 0 (trace-form kernel)."""
    F = M.field
    m = len(basis)
    gram = []
    for x in basis:
        row = []
        for y in basis:
            t = F.zero
            for v, d in M.dims.items():
                xy = la.matmul(x[v], y[v], F, d, d)
                t += sum((xy[i][i] for i in range(d)), F.zero)
            row.append(t)
        gram.append(row)
    return la.rank(gram, m, F)


def _field_certificate(phi: dict, M: Representation, quotient_dim: int) -> bool:
    """Char poly of ``phi`` a power of one irreducible of degree dim End/rad: the
    quotient is generated by ``phi`` as a field, so End(M) is local."""
    factors = _charpoly_factors(phi, M)
    return len(factors) == 1 and factors[0][0].degree() == quotient_dim


@dataclass(frozen=True)
class IndecomposabilityResult:
    status: str
    end_dim: int
    splitter: dict | None = field(default=None, compare=False, repr=False)
    method: str = ""


def analyse_indecomposability(M: Representation, seed: int | None = None) -> IndecomposabilityResult:
    if M.is_zero():
        raise PreconditionError("the zero representation is neither decomposable nor indecomposable")
    F = M.field
    basis = hom_basis(M, M)
    m = len(basis)
    if m == 1:
        return IndecomposabilityResult(INDECOMPOSABLE, m, method="End is the field")
    if F.kind == "Fp" and F.p ** m <= EXHAUSTIVE_CAP:
        # every element nilpotent or invertible  <=>  End(M) local
        for coeffs in itertools.product(range(F.p), repeat=m):
            phi = _combination(basis, coeffs, M)
            if 0 < _fitting_rank(phi, M) < M.total_dim:
                return IndecomposabilityResult(DECOMPOSABLE, m, phi, "Fitting split")
        return IndecomposabilityResult(INDECOMPOSABLE, m, method="exhaustive")
    quotient_dim = _semisimple_quotient_dim(basis, M) if F.kind == "Q" else None
    if quotient_dim == 1:
        return IndecomposabilityResult(INDECOMPOSABLE, m, method="End/rad is the field")
    for coeffs in _deterministic_candidates(basis, M):
        phi = _combination(basis, coeffs, M)
        h = _splitter(phi, M)
        if h is not None:
            return IndecomposabilityResult(DECOMPOSABLE, m, h, "Fitting split")
        if quotient_dim is not None and _field_certificate(phi, M, quotient_dim):
            return IndecomposabilityResult(INDECOMPOSABLE, m, method="End/rad is a field")
    if _split_local_certificate(basis, M):
        return IndecomposabilityResult(INDECOMPOSABLE, m, method="End = k + nilpotent")
    rng = random.Random(default_seed() if seed is None else seed)
    for _ in range(RANDOM_TRIALS):
        phi = _combination(basis, [F.random(rng, 16) for _ in range(m)], M)
        h = _splitter(phi, M)
        if h is not None:
            return IndecomposabilityResult(DECOMPOSABLE, m, h, "Fitting split")
        if quotient_dim is not None and _field_certificate(phi, M, quotient_dim):
            return IndecomposabilityResult(INDECOMPOSABLE, m, method="End/rad is a field")
    return IndecomposabilityResult(PROBABLY_INDECOMPOSABLE, m, method="random search")


def indecomposability_status(M: Representation, seed: int | None = None) -> str:
    return analyse_indecomposability(M, seed).status


def is_indecomposable(M: Representation, seed: int | None = None) -> bool:
    return analyse_indecomposability(M, seed).status != DECOMPOSABLE


def _sort_key(M: Representation):
    return M.dim_vector()


def decompose(M: Representation, seed: int | None = None) -> list[Representation]:
    """Krull-Schmidt decomposition, summands sorted by dimension vector."""
    if M.is_zero():
        raise PreconditionError("cannot decompose the zero representation")
    result = analyse_indecomposability(M, seed)
    if result.status != DECOMPOSABLE:
        return [M]
    kers, ims = _fitting_parts(result.splitter, M)
    parts = []
    for spaces in (kers, ims):
        parts.extend(decompose(subrepresentation(M, spaces), seed))
    return sorted(parts, key=_sort_key)


def _invertible(phi: dict, M: Representation) -> bool:
    return all(la.inverse(phi.get(v, la.zeros(d, d, M.field)), M.field) is not None for v, d in M.dims.items())


def find_isomorphism(M: Representation, N: Representation, seed: int | None = None) -> dict | None:
    """An invertible element of Hom(M, N), if one is found."""
    _same_category(M, N)
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return {}
    basis = hom_basis(M, N)
    m = len(basis)
    if not m or m != hom_dim(M, M) or m != hom_dim(N, N):
        return None
    F = M.field
    for coeffs in _deterministic_candidates(basis, M):
        phi = _combination(basis, coeffs, M)
        if _invertible(phi, M):
            return phi
    if F.kind == "Fp" and F.p ** m <= EXHAUSTIVE_CAP:
        for coeffs in itertools.product(range(F.p), repeat=m):
            phi = _combination(basis, coeffs, M)
            if _invertible(phi, M):
                return phi
        return None
    # a nonzero determinant polynomial survives most random points
    rng = random.Random(default_seed() if seed is None else seed)
    for _ in range(RANDOM_TRIALS):
        phi = _combination(basis, [F.random(rng, 1000) for _ in range(m)], M)
        if _invertible(phi, M):
            return phi
    return None


def are_isomorphic(M: Representation, N: Representation, seed: int | None = None) -> bool:
    return find_isomorphism(M, N, seed) is not None


# serialisation


def _format_entry(x, F: FieldSpec) -> str:
    return F.format(x)


def rep_to_json(M: Representation) -> dict:
    q, F = M.quiver, M.field
    return {
        "quiver": q.name,
        "field": F.to_dict(),
        "dims": {key_str(v): M.dims[v] for v in M.support},
        "maps": {
            key_str(a): [[_format_entry(x, F) for x in row] for row in M.maps[a]]
            for a in q.arrows
            if a in M.maps
        },
    }


def _parse_key(text: str):
    if "@" in text:
        name, _, level = text.rpartition("@")
        try:
            return (name, int(level))
        except ValueError as exc:
            raise InputError(f"bad level in {text!r}") from exc
    return text


def rep_from_json(data: dict, quiver) -> Representation:
    try:
        F = FieldSpec.from_dict(data.get("field", {"kind": "Q"}))
        dims = {_parse_key(k): int(v) for k, v in data.get("dims", {}).items()}
        maps = {_parse_key(k): [[F(x) for x in row] for row in v] for k, v in data.get("maps", {}).items()}
    except (AttributeError, TypeError, ValueError) as exc:
        raise InputError(f"malformed representation JSON: {exc}") from exc
    return Representation(quiver, F, dims, maps)


# graded modules over the Koszul dual


@dataclass(frozen=True)
class GradedModule:
    """Finite graded module: pieces ``(i, j) -> dim`` of ``(M e_i)^j`` and the
    right actions of opposite arrows, keyed ``(arrow, j)`` as matrices
    ``(M e_{s})^j -> (M e_{t})^{j + d}``."""

    base: object
    field: FieldSpec
    pieces: dict
    actions: dict


def shift_module(M: GradedModule, k: int) -> GradedModule:
    """Degree shift ``M<k>`` with ``M<k>^j = M^(j+k)``."""
    return GradedModule(
        M.base,
        M.field,
        {(i, j - k): d for (i, j), d in M.pieces.items()},
        {(a, j - k): mat for (a, j), mat in M.actions.items()},
    )


def graded_module_to_rep(M: GradedModule, window=None) -> Representation:
    from .covering import build_p_window

    levels = [j for _, j in M.pieces] or [0]
    if window is None:
        window = build_p_window(M.base, min(levels), max(levels))
    for (a, j), mat in M.actions.items():
        arr = M.base.arrow(a)
        s, t = (arr.source, j), (arr.target, j + arr.virtual_degree)
        rows, cols = M.pieces.get(t, 0), M.pieces.get(s, 0)
        if len(mat) != rows or any(len(r) != cols for r in mat):
            raise InputError(f"action of {a}@{j} must be {rows}x{cols}")
    return Representation(window, M.field, dict(M.pieces), dict(M.actions))
