import pytest
from hypothesis import assume, given

from conftest import graded_quivers
from oracles import all_reps, dim_vectors, nonsplit_extension

from rsz import F2, PreconditionError, load_fixture, parse_quiver
from rsz.census import (
    FINITE_WING,
    INFINITE,
    NA_INF,
    NMINUS_A_INF,
    QTILDE_OP,
    RIGHTMOST,
    TUBE,
    UNQUANTIFIED,
    ZA_INF,
    ZQ_OP,
    ZQTILDE_OP,
    build_zq,
    euler_defect,
    has_ar_triangles,
    knit_connecting,
    orbit_quotient,
    path_length_growth,
    predict_census,
    quotient_matches,
    stack_shifts,
    tits_form_type,
    translation_dot,
)
from rsz.covering import build_q_tilde
from rsz.quiver import FiniteQuiver
from rsz.grading import grading_period, is_admissible
from rsz.orbit import OrbitObject, orbit_iso
from rsz.representations import are_isomorphic, decompose, ext1_dim, is_indecomposable, thin

EXPECTED = {
    "kronecker_graded": {ZQTILDE_OP: 2, ZA_INF: 4},
    "jordan_neg1": {QTILDE_OP: 2, ZA_INF: 2},
    "jordan_2": {QTILDE_OP: 1, ZA_INF: 1},
    "loop": {QTILDE_OP: 1, ZA_INF: 1},
    "cycle3": {QTILDE_OP: 3, ZA_INF: 3},
    "a2": {ZQ_OP: 1},
    "kronecker": {ZQ_OP: INFINITE, TUBE: INFINITE},
    "loop_arrow": {
        RIGHTMOST: 1,
        ZA_INF: UNQUANTIFIED,
        NA_INF: UNQUANTIFIED,
        NMINUS_A_INF: UNQUANTIFIED,
        FINITE_WING: INFINITE,
    },
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_census_values(name):
    assert predict_census(load_fixture(name)).as_dict() == EXPECTED[name]


def test_loop_arrow_section_candidate():
    census = predict_census(load_fixture("loop_arrow"))
    entry = census.to_json()[0]
    assert entry["shape"] == RIGHTMOST
    assert entry["section"], "a section candidate must be reported"
    # the candidate lives at the sink of the quiver, one vertex per level
    assert all(s.split(":")[1].startswith("2@") for s in entry["section"])
    levels = [int(s.rsplit("@", 1)[1]) for s in entry["section"]]
    assert levels == sorted(levels) and len(set(levels)) == len(levels)


def test_acyclic_non_a_tilde_has_infinitely_many_tubes_of_type_a():
    q = parse_quiver(
        "quiver k3\nvertex 1\nvertex 2\narrow a : 1 -> 2 deg 1\narrow b : 1 -> 2\narrow c : 1 -> 2\n"
    )
    assert predict_census(q).as_dict() == {ZQTILDE_OP: 1, ZA_INF: INFINITE}


def test_census_requires_admissible():
    q = parse_quiver("quiver z\nvertex 1\narrow x : 1 -> 1 deg 1\n")
    with pytest.raises(PreconditionError):
        predict_census(q)


def test_census_json_shape():
    data = predict_census(load_fixture("kronecker")).to_json()
    assert data[1]["caveat"]
    assert predict_census(load_fixture("a2")).count(ZQ_OP) == 1
    assert predict_census(load_fixture("a2")).count(TUBE) is None


@pytest.mark.parametrize("text, kind", [
    ("quiver a\nvertex 1\nvertex 2\narrow g : 1 -> 2\n", "dynkin"),
    ("quiver d4\nvertex 0\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 0\narrow b : 2 -> 0\narrow c : 3 -> 0\n", "dynkin"),
    ("quiver k\nvertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\n", "euclidean"),
    ("quiver t\nvertex 1\nvertex 2\nvertex 3\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 1 -> 3\n", "euclidean"),
    ("quiver k3\nvertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 1 -> 2\n", "wild"),
    ("quiver d5\nvertex 0\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a : 1 -> 0\narrow b : 2 -> 0\narrow c : 3 -> 0\narrow d : 4 -> 0\n", "euclidean"),
])
def test_tits_form_type(text, kind):
    assert tits_form_type(parse_quiver(text)) == kind


def _a2_knit(steps=6):
    qt = build_q_tilde(load_fixture("a2"), "1", -2, 2)
    return qt, knit_connecting(qt, steps)


def test_a2_knitting_cycle():
    qt, knit = _a2_knit()
    assert not knit.contaminated
    # walk along the zigzag: slice by slice, sink first
    order = [(n, x) for n in range(7) for x in (("2", 1), ("1", 0))]
    absolute = [tuple(abs(c) for c in knit.vector(v)) for v in order]
    assert absolute[:3] == [(0, 1), (1, 1), (1, 0)]
    assert all(absolute[k] == absolute[k % 3] for k in range(len(absolute)))
    for v in knit.tq.vertices:
        if knit.tq.tau_inverse(v) is not None:
            assert knit.mesh_defect(v) == {}
            assert euler_defect(knit, v) == 0


def test_graded_kronecker_knitting():
    q = load_fixture("kronecker_graded")
    qt = build_q_tilde(q, "1", -8, 8)
    knit = knit_connecting(qt, 3)
    clean = knit.clean()
    assert len(clean) > 20
    for v in clean:
        if knit.tq.tau_inverse(v) in knit.labels:
            assert knit.mesh_defect(v) == {}
            assert euler_defect(knit, v) == 0


def test_graded_kronecker_labels_are_thin_indecomposables():
    """Independent of the mesh rule: clean positive labels are thin interval modules
    and consecutive ones are joined by a one-dimensional Ext."""
    qt = build_q_tilde(load_fixture("kronecker_graded"), "1", -8, 8)
    knit = knit_connecting(qt, 3)
    modules = {}
    for v in knit.clean():
        if knit.is_positive(v):
            label = knit.labels[v]
            assert set(label.values()) == {1}
            M = thin(qt, label)
            assert is_indecomposable(M)
            modules[v] = M
    pairs = 0
    for v, M in modules.items():
        w = knit.tq.tau_inverse(v)
        if w in modules:
            assert ext1_dim(modules[w], M) == 1
            pairs += 1
    assert pairs > 5


def test_knitting_marks_cropped_vertices():
    qt = build_q_tilde(load_fixture("kronecker_graded"), "1", -2, 2)
    knit = knit_connecting(qt, 2)
    assert knit.contaminated
    for v in knit.contaminated:
        assert v in knit.labels


def test_knitting_needs_acyclic_window():
    from rsz.covering import build_p_window

    q = parse_quiver("quiver c\nvertex 1\nvertex 2\narrow a : 1 -> 2 deg 1\narrow b : 2 -> 1 deg 1\n")
    with pytest.raises(PreconditionError):
        knit_connecting(build_p_window(q, 0, 1), 1)


def _a2_op():
    return FiniteQuiver.build("a2op", ("1", "2"), [("g", "2", "1")])


def test_build_zq_is_a_translation_quiver():
    tq = build_zq(_a2_op(), 0, 4)
    assert len(tq.vertices) == 10
    for v in tq.vertices:
        assert tq.mesh_ok(v)
    assert tq.tau[(1, "1")] == (0, "1")
    assert tq.tau_inverse((0, "1")) == (1, "1")


def test_orbit_quotient_of_za2():
    tq = build_zq(_a2_op(), 0, 5)
    quo = orbit_quotient(tq, 3)
    assert len(quo.vertices) == 6
    assert len(quo.arrows) == 6
    assert len(quo.tau) == 6
    assert quo.tau_inverse(quo.vertices[0]) is not None
    with pytest.raises(PreconditionError):
        orbit_quotient(tq, 4)
    with pytest.raises(PreconditionError):
        orbit_quotient(tq, 0)


def test_stack_and_quotient_with_vertex_map():
    tq = build_zq(_a2_op(), 0, 3)
    stacked = stack_shifts(tq, range(2))
    assert len(stacked.vertices) == 2 * len(tq.vertices)
    swap = orbit_quotient(stacked, 0, vertex_map=lambda x: (1 - x[0], x[1]))
    assert len(swap.vertices) == len(tq.vertices)


def test_quotient_matches():
    tq = build_zq(_a2_op(), 0, 3)
    same = {v: v for v in tq.vertices}
    assert quotient_matches(tq, tq, same) == []
    wrong = dict(same)
    wrong[(0, "1")], wrong[(0, "2")] = (0, "2"), (0, "1")
    assert quotient_matches(tq, tq, wrong)


def test_translation_dot_deterministic():
    tq = build_zq(_a2_op(), 0, 2)
    dot = translation_dot(tq)
    assert dot == translation_dot(build_zq(_a2_op(), 0, 2))
    assert "style=dashed" in dot


@pytest.mark.parametrize("name, expected", [
    ("kronecker_graded", True),
    ("a2", True),
    ("loop", False),
    ("loop_arrow", False),
])
def test_ar_triangles_and_path_growth(name, expected):
    q = load_fixture(name)
    assert has_ar_triangles(q) == expected
    small, large = path_length_growth(q)
    assert (small == large) == expected


def _support(label):
    return [x for x, k in label.items() if k]


@pytest.mark.parametrize("name, lo, hi, steps, minimum", [("a2", -2, 2, 6, 2), ("kronecker_graded", -8, 8, 3, 10)])
def test_mesh_middle_terms_match_nonsplit_extensions(name, lo, hi, steps, minimum):
    """Decompose the middle term of a non-split extension built by brute force over F_2
    and compare with the knitted middle terms of the mesh."""
    qt = build_q_tilde(load_fixture(name), "1", lo, hi)
    knit = knit_connecting(qt, steps)
    clean = set(knit.clean())
    checked = 0
    for v in knit.clean():
        w = knit.tq.tau_inverse(v)
        middle = knit.tq.successors(v)
        if w not in clean or not all(m in clean for m in middle):
            continue
        if not all(knit.is_positive(x) for x in (v, w, *middle)):
            continue
        X, Y = thin(qt, _support(knit.labels[v]), F2), thin(qt, _support(knit.labels[w]), F2)
        E = nonsplit_extension(Y, X)
        assert E is not None
        got = sorted(p.dim_vector() for p in decompose(E))
        want = sorted(tuple(knit.labels[m].get(x, 0) for x in qt.vertices) for m in middle)
        assert got == want, v
        checked += 1
    assert checked >= minimum


def test_loop_intervals_are_the_orbit_classes():
    qt = build_q_tilde(load_fixture("loop"), "v", 0, 3)
    levels = range(qt.jmin, qt.jmax + 1)
    intervals = [thin(qt, [("v", j) for j in range(a, b + 1)]) for a in levels for b in levels if a <= b]
    assert all(is_indecomposable(M) for M in intervals)
    for k, M in enumerate(intervals):
        for N in intervals[k + 1:]:
            assert not orbit_iso(OrbitObject(M, 0), OrbitObject(N, 0))
    # every indecomposable with small dimensions is one of them
    small = build_q_tilde(load_fixture("loop"), "v", 0, 2)
    targets = [thin(small, [("v", j) for j in range(a, b + 1)], F2) for a in range(3) for b in range(a, 3)]
    for dims in dim_vectors(small, 2):
        for M in all_reps(small, dims):
            for part in decompose(M):
                assert any(are_isomorphic(part, T) for T in targets if T.dims == part.dims)


@given(graded_quivers(max_vertices=3, max_extra=2, degrees=(-1, 2)))
def test_census_shapes_respect_the_period(q):
    assume(is_admissible(q))
    census = predict_census(q).as_dict()
    if grading_period(q):
        assert ZQ_OP not in census
    else:
        assert QTILDE_OP not in census and ZQTILDE_OP not in census
