from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import brute_ext, brute_hom, brute_is_decomposable
from rsz import F2, QQ, InputError, PreconditionError, WindowError, load_fixture, prime_field
from rsz.covering import build_p_window, build_q_tilde
from rsz.representations import (
    DECOMPOSABLE,
    INDECOMPOSABLE,
    GradedModule,
    Representation,
    analyse_indecomposability,
    are_isomorphic,
    decompose,
    direct_sum,
    euler_form,
    ext1_dim,
    find_isomorphism,
    graded_module_to_rep,
    hom_basis,
    hom_dim,
    injective,
    is_indecomposable,
    is_morphism,
    projective,
    pull_back,
    rep_from_json,
    rep_to_json,
    shift_module,
    simple,
    thin,
    zero_rep,
)


def windows():
    return [
        build_q_tilde(load_fixture("a2"), "1", 0, 1),
        build_q_tilde(load_fixture("kronecker"), "1", 0, 1),
        build_q_tilde(load_fixture("kronecker_graded"), "1", 0, 2),
        build_p_window(load_fixture("loop"), 0, 2),
        build_p_window(load_fixture("loop_arrow"), 0, 1),
    ]


WINDOWS = windows()


@st.composite
def reps(draw, window=None, field=F2, max_dim=2, max_total=3):
    c = window if window is not None else draw(st.sampled_from(WINDOWS))
    dims = {}
    for v in c.vertices:
        if sum(dims.values()) < max_total:
            dims[v] = draw(st.integers(0, min(max_dim, max_total - sum(dims.values()))))
    entries = st.integers(0, 1) if field.kind == "Fp" else st.integers(-2, 2)
    maps = {}
    for a in c.arrows:
        r, k = dims.get(c.target(a), 0), dims.get(c.source(a), 0)
        maps[a] = [[draw(entries) for _ in range(k)] for _ in range(r)]
    return Representation(c, field, dims, maps)


@st.composite
def rep_pairs(draw, field=F2, max_total=3):
    c = draw(st.sampled_from(WINDOWS))
    return draw(reps(c, field, max_total=max_total)), draw(reps(c, field, max_total=max_total))


@given(rep_pairs())
def test_hom_and_ext_match_brute_force(pair):
    M, N = pair
    assert hom_dim(M, N) == brute_hom(M, N)
    assert ext1_dim(M, N) == brute_ext(M, N)


@given(rep_pairs(field=QQ))
def test_euler_form_identity(pair):
    M, N = pair
    assert hom_dim(M, N) - ext1_dim(M, N) == euler_form(M.quiver, M.dims, N.dims)


@given(rep_pairs(field=QQ))
def test_hom_basis_elements_are_morphisms(pair):
    M, N = pair
    basis = hom_basis(M, N)
    assert len(basis) == hom_dim(M, N)
    assert all(is_morphism(M, N, phi) for phi in basis)


@given(st.sampled_from(WINDOWS).flatmap(lambda c: st.tuples(st.just(c), reps(c, QQ))))
def test_projective_and_injective_represent_evaluation(args):
    c, M = args
    for v in c.vertices:
        assert hom_dim(projective(c, v), M) == M.dim(v)
        assert hom_dim(M, injective(c, v)) == M.dim(v)


def test_projective_on_kronecker():
    c = build_q_tilde(load_fixture("kronecker"), "1", 0, 1)
    P1 = projective(c, ("1", 0))
    assert P1.dim_vector() == (1, 2)
    assert injective(c, ("2", 1)).dim_vector() == (2, 1)
    assert ext1_dim(simple(c, ("1", 0)), simple(c, ("2", 1))) == 2


@given(rep_pairs(field=QQ))
def test_hom_is_additive(pair):
    M, N = pair
    S = direct_sum(M, N)
    assert hom_dim(S, S) == hom_dim(M, M) + hom_dim(M, N) + hom_dim(N, M) + hom_dim(N, N)


def test_representation_validation():
    c = WINDOWS[0]
    a = c.arrows[0]
    with pytest.raises(InputError, match="not a vertex"):
        Representation(c, QQ, {("9", 0): 1})
    with pytest.raises(InputError, match="nonnegative"):
        Representation(c, QQ, {c.vertices[0]: -1})
    with pytest.raises(InputError, match="must be 1x1"):
        Representation(c, QQ, {v: 1 for v in c.vertices}, {a: [[1, 2]]})
    with pytest.raises(InputError, match="field mismatch"):
        hom_dim(simple(c, c.vertices[0], QQ), simple(c, c.vertices[0], F2))
    with pytest.raises(AttributeError):
        simple(c, c.vertices[0]).dims = {}


def test_pull_back_shifts_levels():
    q = load_fixture("kronecker_graded")
    c = build_p_window(q, -3, 3)
    M = thin(c, [("1", 0), ("2", 0), ("2", 2)])
    N = pull_back(M, 1)
    assert set(N.dims) == {("1", -1), ("2", -1), ("2", 1)}
    assert pull_back(N, -1) == M
    assert hom_dim(N, N) == hom_dim(M, M)
    with pytest.raises(WindowError) as info:
        pull_back(M, -2)
    assert info.value.needed == (-3, 4)


def test_pull_back_on_q_tilde_needs_multiple_of_period():
    c = build_q_tilde(load_fixture("kronecker_graded"), "1", -4, 4)
    M = simple(c, ("1", 0))
    assert set(pull_back(M, 2).dims) == {("1", -2)}
    with pytest.raises(PreconditionError, match="deck step 2"):
        pull_back(M, 1)
    a2 = build_q_tilde(load_fixture("a2"), "1", 0, 1)
    with pytest.raises(PreconditionError):
        pull_back(simple(a2, ("1", 0)), 1)


def test_thin_and_simple():
    c = WINDOWS[1]
    T = thin(c, c.vertices, QQ, {c.arrows[1]: 3})
    assert T.dim_vector() == (1, 1)
    assert T.matrix(c.arrows[1]) == ((Fraction(3),),)
    assert zero_rep(c).is_zero()
    with pytest.raises(PreconditionError):
        decompose(zero_rep(c))


@pytest.mark.parametrize("field", [QQ, F2, prime_field(3)])
def test_kronecker_regular_modules(field):
    c = build_q_tilde(load_fixture("kronecker"), "1", 0, 1)
    a, b = c.arrows
    dims = {("1", 0): 2, ("2", 1): 2}
    jordan = Representation(c, field, dims, {a: [[1, 0], [0, 1]], b: [[0, 1], [0, 0]]})
    assert is_indecomposable(jordan)
    split = Representation(c, field, dims, {a: [[1, 0], [0, 1]], b: [[0, 0], [0, 1]]})
    assert analyse_indecomposability(split).status == DECOMPOSABLE
    parts = decompose(split)
    assert len(parts) == 2 and all(p.dim_vector() == (1, 1) for p in parts)
    same = Representation(c, field, dims, {a: [[1, 0], [0, 1]], b: [[0, 0], [0, 0]]})
    assert [p.dim_vector() for p in decompose(same)] == [(1, 1), (1, 1)]


def test_irreducible_char_poly_over_q():
    """End(M) can be a proper field extension: M stays indecomposable over Q."""
    c = build_q_tilde(load_fixture("kronecker"), "1", 0, 1)
    a, b = c.arrows
    dims = {("1", 0): 2, ("2", 1): 2}
    M = Representation(c, QQ, dims, {a: [[1, 0], [0, 1]], b: [[0, -1], [1, 0]]})
    res = analyse_indecomposability(M)
    assert res.status == INDECOMPOSABLE and res.end_dim == 2
    # over F_2 the same matrix has a repeated root and is still indecomposable
    assert is_indecomposable(Representation(c, F2, dims, {a: [[1, 0], [0, 1]], b: [[0, 1], [1, 0]]}))
    # over F_5, x^2 + 1 splits, so the module splits
    assert not is_indecomposable(
        Representation(c, prime_field(5), dims, {a: [[1, 0], [0, 1]], b: [[0, -1], [1, 0]]})
    )


@given(reps(WINDOWS[1], F2, max_total=4))
def test_indecomposable_matches_exhaustive_search(M):
    if M.is_zero():
        return
    assert is_indecomposable(M) == (not brute_is_decomposable(M))


@given(st.sampled_from(WINDOWS).flatmap(lambda c: st.tuples(reps(c, QQ), reps(c, QQ))))
def test_decompose_direct_sum(pair):
    M, N = pair
    if M.is_zero() or N.is_zero():
        return
    S = direct_sum(M, N)
    parts = decompose(S)
    assert len(parts) >= 2
    assert sum(p.total_dim for p in parts) == S.total_dim
    assert all(is_indecomposable(p) for p in parts)
    assert are_isomorphic(direct_sum(*parts), S)


@given(reps(WINDOWS[2], QQ, max_total=4), st.integers(1, 5))
def test_isomorphism_after_change_of_basis(M, k):
    """Conjugate by an upper unitriangular basis change at every vertex."""
    new_maps = {}
    c = M.quiver

    def g(d, inv=False):
        s = -k if inv else k
        return [[1 if r == col else (s if col == r + 1 else 0) for col in range(d)] for r in range(d)]

    def mm(A, B):
        return [[sum(A[r][t] * B[t][col] for t in range(len(B))) for col in range(len(B[0]))] for r in range(len(A))]

    for a in c.arrows:
        s, t = c.source(a), c.target(a)
        if M.dim(s) and M.dim(t):
            inv = [[Fraction(x) for x in row] for row in _inverse(g(M.dim(s)))]
            new_maps[a] = mm(mm(g(M.dim(t)), [list(r) for r in M.matrix(a)]), inv)
    N = Representation(c, QQ, M.dims, new_maps)
    phi = find_isomorphism(M, N)
    assert phi is not None and is_morphism(M, N, phi)


def _inverse(U):
    n = len(U)
    inv = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for col in reversed(range(n)):
        for r in range(col):
            f = U[r][col]
            if f:
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def test_non_isomorphic():
    c = WINDOWS[1]
    a, b = c.arrows
    dims = {("1", 0): 1, ("2", 1): 1}
    M = Representation(c, QQ, dims, {a: [[1]], b: [[0]]})
    N = Representation(c, QQ, dims, {a: [[0]], b: [[1]]})
    assert not are_isomorphic(M, N)
    assert find_isomorphism(M, simple(c, ("1", 0))) is None


@given(st.sampled_from(WINDOWS).flatmap(lambda c: reps(c, QQ)))
def test_json_round_trip(M):
    assert rep_from_json(rep_to_json(M), M.quiver) == M


def test_json_errors():
    c = WINDOWS[0]
    with pytest.raises(InputError):
        rep_from_json({"dims": {"1@x": 1}}, c)
    with pytest.raises(InputError):
        rep_from_json({"dims": {"1@0": "one"}}, c)
    with pytest.raises(InputError):
        rep_from_json({"field": {"kind": "Fp", "p": 4}, "dims": {}}, c)


def test_graded_module_and_shift():
    q = load_fixture("kronecker_graded")
    M = GradedModule(q, QQ, {("1", 0): 1, ("2", 0): 1, ("2", 2): 1},
                     {("alpha", 0): [[1]], ("beta", 0): [[1]]})
    R = graded_module_to_rep(M)
    assert R.quiver.jmin == 0 and R.quiver.jmax == 2
    window = build_p_window(q, -3, 3)
    shifted = graded_module_to_rep(shift_module(M, 1), window)
    assert shifted == pull_back(graded_module_to_rep(M, window), 1)
    with pytest.raises(InputError):
        graded_module_to_rep(GradedModule(q, QQ, {("1", 0): 1}, {("alpha", 0): [[1]]}))
