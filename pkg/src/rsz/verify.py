"""Property suite behind ``rsz verify``.

Each property compares two independent computations on a small window and
reports pass, fail, inconclusive (window too small to decide) or skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice

from . import linalg as la
from .covering import (
    build_p_window,
    build_q_tilde,
    split_components,
    verify_walk_bijection,
)
from .errors import PreconditionError
from .grading import (
    count_paths_by_virtual_degree,
    grading_period,
    is_admissible,
    period_walk,
    spanning_potentials,
)
from .orbit import verify_transport
from .quiver import closed_walks, enumerate_paths, virtual_degree
from .representations import (
    direct_sum,
    ext1_dim,
    hom_dim,
    is_indecomposable,
    projective,
    simple,
)

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"


@dataclass(frozen=True)
class PropertyResult:
    name: str
    status: str
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _potential_span(q) -> int:
    pot, _ = spanning_potentials(q)
    return max(pot.values()) - min(pot.values())


def check_walk_bijection(q, max_len: int) -> PropertyResult:
    half = max_len * max(q.max_abs_d, 1) + 1
    c = build_p_window(q, -half, half)
    rep = verify_walk_bijection(q, c, max_len)
    status = {"ok": PASS, "mismatch": FAIL}.get(rep.status, INCONCLUSIVE)
    return PropertyResult(
        "walk_bijection", status,
        f"{rep.checked_pairs} vertex pairs, {len(rep.mismatches)} mismatches, paths up to length {max_len}",
    )


def check_koszul_counts(q, degrees=range(-3, 4)) -> PropertyResult:
    if not is_admissible(q):
        return PropertyResult("koszul_counts", SKIPPED, "quiver is not admissible")
    bad = []
    for p in degrees:
        certified = count_paths_by_virtual_degree(q, p)
        n = len(q.vertices)
        # every path of degree p has length below this, so plain enumeration is exhaustive
        limit = (abs(p) + (n + 1) * (q.max_abs_d + 1)) * (n + 1)
        brute = enumerate_paths(q, limit).total(p)
        if certified != brute:
            bad.append(f"p={p}: {certified} vs {brute}")
    if bad:
        return PropertyResult("koszul_counts", FAIL, "; ".join(bad))
    return PropertyResult("koszul_counts", PASS, f"degrees {degrees.start}..{degrees.stop - 1} agree")


def check_period(q, max_len: int) -> PropertyResult:
    r = grading_period(q)
    bad = [str(w) for w in islice(closed_walks(q, max_len), 20000) if r and virtual_degree(w) % r]
    if r == 0:
        bad += [str(w) for w in islice(closed_walks(q, max_len), 20000) if virtual_degree(w)]
    if bad:
        return PropertyResult("grading_period", FAIL, f"r={r} does not divide {bad[0]}")
    if r:
        w = period_walk(q, q.vertices[0])
        if w is None or abs(virtual_degree(w)) != r:
            return PropertyResult("grading_period", FAIL, f"no closed walk of degree {r} found")
    return PropertyResult("grading_period", PASS, f"r={r} divides every closed walk up to length {max_len}")


def check_components(q) -> PropertyResult:
    r = grading_period(q)
    required = 2 * r * (1 + q.max_abs_d * len(q.vertices))
    half = max(required // 2 + 1, 2 * (_potential_span(q) + 2))
    verdict = split_components(build_p_window(q, -half, half))
    status = {"ok": PASS, "mismatch": FAIL}.get(verdict.status, INCONCLUSIVE)
    return PropertyResult("components", status, verdict.message)


def _delta_corank(M, N) -> int:
    """``dim of the arrow space - rank`` of the coboundary built column by column."""
    q, F = M.quiver, M.field
    arrows = [a for a in q.arrows if M.dim(q.source(a)) and N.dim(q.target(a))]
    slots, n = {}, 0
    for a in arrows:
        slots[a] = n
        n += N.dim(q.target(a)) * M.dim(q.source(a))
    columns = []
    for v in q.vertices:
        mv, nv = M.dim(v), N.dim(v)
        for r in range(nv):
            for c in range(mv):
                col = [F.zero] * n
                # phi = E_rc at v; image on a: phi_t M_a - N_a phi_s
                for a in arrows:
                    s, t = q.source(a), q.target(a)
                    ms = M.dim(s)
                    if t == v:
                        Ma = M.matrix(a)
                        for k in range(ms):
                            i = slots[a] + r * ms + k
                            col[i] = F.add(col[i], Ma[c][k])
                    if s == v:
                        Na = N.matrix(a)
                        for k in range(N.dim(t)):
                            i = slots[a] + k * ms + c
                            col[i] = F.sub(col[i], Na[k][r])
                columns.append(col)
    if n == 0:
        return 0
    return n - la.rank(columns, n, F)


def check_euler(q, samples: int = 6) -> PropertyResult:
    c = build_p_window(q, -1, 1)
    if not c.is_acyclic():
        return PropertyResult("euler_form", SKIPPED, "P window has oriented cycles")
    reps = [simple(c, v) for v in c.vertices] + [projective(c, v) for v in c.vertices]
    reps = reps[: 2 * samples]
    bad = []
    for M in reps:
        for N in reps:
            if ext1_dim(M, N) != _delta_corank(M, N):
                bad.append(f"Ext^1({M}, {N})")
    if len(reps) >= 2:
        S = direct_sum(reps[0], reps[1])
        for N in reps:
            if hom_dim(S, N) != hom_dim(reps[0], N) + hom_dim(reps[1], N):
                bad.append(f"hom additivity against {N}")
    if bad:
        return PropertyResult("euler_form", FAIL, f"{len(bad)} disagreements, first {bad[0]}")
    return PropertyResult("euler_form", PASS, f"{len(reps) ** 2} pairs: hom - ext1 matches the coboundary rank")


def _qtilde_window(q, half: int):
    return build_q_tilde(q, q.vertices[0], -half, half)


def check_transport(q) -> PropertyResult:
    qt = _qtilde_window(q, 2)
    if not qt.is_acyclic():
        return PropertyResult("transport", SKIPPED, "Q~ window has oriented cycles")
    report = verify_transport(q, qt, shifts=range(-1, 2))
    if report.status == "ok":
        return PropertyResult("transport", PASS, f"{len(report.checks)} orbit homs agree (r={report.period})")
    m = report.mismatches[0]
    return PropertyResult(
        "transport", FAIL,
        f"{len(report.mismatches)} mismatches, first shifts ({m.shift_x},{m.shift_y}): {m.p_picture} vs {m.other_picture}",
    )


def check_indecomposables(q) -> PropertyResult:
    qt = _qtilde_window(q, 2)
    if not qt.is_acyclic():
        return PropertyResult("indecomposables", SKIPPED, "Q~ window has oriented cycles")
    reps = [simple(qt, v) for v in qt.vertices] + [projective(qt, v) for v in qt.vertices]
    bad = [repr(M) for M in reps if not is_indecomposable(M)]
    if bad:
        return PropertyResult("indecomposables", FAIL, f"{bad[0]} reported decomposable")
    return PropertyResult("indecomposables", PASS, f"{len(reps)} simples and projectives indecomposable")


def run_properties(q, max_len: int = 4) -> list[PropertyResult]:
    if max_len < 1:
        raise PreconditionError("--max-len must be positive")
    return [
        check_walk_bijection(q, max_len),
        check_koszul_counts(q),
        check_period(q, max_len),
        check_components(q),
        check_euler(q),
        check_transport(q),
        check_indecomposables(q),
    ]
