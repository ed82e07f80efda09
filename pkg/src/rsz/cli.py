"""Command line interface: ``rsz <command> FILE ...``.

FILE is a quiver in text or JSON format, or the name of a shipped fixture.
Exit codes: 0 success, 1 input error, 2 precondition violated, 3 window too
small / inconclusive, 4 a verified property failed or an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import knit_connecting, predict_census, translation_dot
from .covering import build_p_window, build_q_tilde, covering_dot, split_components
from .errors import InputError, RszError
from .grading import classify_shape, count_paths_by_virtual_degree
from .library import fixture_json_text, load_quiver
from .orbit import brute_orbit_hom, orbit_from_json, orbit_hom_dim, orbit_terms
from .quiver import key_str
from .verify import run_properties

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_WINDOW = 3
EXIT_FAILED = 4

_VALUE_OPTIONS = ("--window", "--degree")


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        jmin, jmax = int(lo), int(hi)
    except ValueError:
        raise InputError(f"window must look like JMIN:JMAX, got {text!r}") from None
    if jmin > jmax:
        raise InputError(f"empty window {text}")
    return jmin, jmax


def _emit(data, as_json: bool, human) -> None:
    if as_json:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        sys.stdout.write(human(data))


def _kv(data: dict) -> str:
    return "".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}\n" for k, v in data.items())


def _write_dot(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _load_json(ref: str) -> dict:
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8") if path.is_file() else fixture_json_text(ref)
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {ref}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{ref} must hold a JSON object")
    return data


# commands


def cmd_analyze(args) -> int:
    q = load_quiver(args.file)
    _emit(classify_shape(q).to_dict(), args.json, _kv)
    return EXIT_OK


def _covering_payload(c, verdict=None) -> dict:
    data = {
        "quiver": c.base.name,
        "kind": c.kind,
        "window": [c.jmin, c.jmax],
        "deck_step": c.deck_step,
        "vertices": [key_str(v) for v in c.vertices],
        "arrows": [
            {"name": key_str(a), "source": key_str(c.source(a)), "target": key_str(c.target(a))}
            for a in c.arrows
        ],
    }
    if c.base_vertex is not None:
        data["base_vertex"] = c.base_vertex
    if verdict is not None:
        data["components"] = {
            "status": verdict.status,
            "count": len(verdict.components),
            "interior": len(verdict.interior),
            "message": verdict.message,
        }
    return data


def _covering_text(data: dict) -> str:
    lines = [f"{data['kind']} window {data['window'][0]}:{data['window'][1]} of {data['quiver']}"]
    lines.append(f"deck step: {data['deck_step']}")
    lines.append(f"vertices ({len(data['vertices'])}): {' '.join(data['vertices'])}")
    lines.append(f"arrows ({len(data['arrows'])}):")
    lines += [f"  {a['name']}: {a['source']} -> {a['target']}" for a in data["arrows"]]
    if "components" in data:
        comp = data["components"]
        lines.append(f"components: {comp['count']} ({comp['status']}: {comp['message']})")
    return "\n".join(lines) + "\n"


def cmd_cover(args) -> int:
    q = load_quiver(args.file)
    jmin, jmax = _parse_window(args.window)
    if args.kind == "P":
        c = build_p_window(q, jmin, jmax)
        verdict = split_components(c)
    else:
        base = args.base or q.vertices[0]
        c = build_q_tilde(q, base, jmin, jmax, args.slack)
        verdict = None
    if args.dot:
        _write_dot(args.dot, covering_dot(c))
        if args.dot == "-":
            return EXIT_OK
    _emit(_covering_payload(c, verdict), args.json, _covering_text)
    return EXIT_OK


def cmd_koszul(args) -> int:
    q = load_quiver(args.file)
    n = count_paths_by_virtual_degree(q, args.degree)
    _emit({"quiver": q.name, "degree": args.degree, "dimension": n}, args.json, _kv)
    return EXIT_OK


def cmd_hom(args) -> int:
    q = load_quiver(args.file)
    xd, yd = _load_json(args.x), _load_json(args.y)
    levels = []
    for data in (xd, yd):
        for key in data.get("dims", {}):
            try:
                levels.append(int(str(key).rpartition("@")[2]))
            except ValueError:
                raise InputError(f"bad vertex key {key!r}") from None
    lo, hi = (min(levels), max(levels)) if levels else (0, 0)
    if args.window:
        lo, hi = _parse_window(args.window)
    window = build_p_window(q, lo - 1, hi + 1)
    x, y = orbit_from_json(xd, window), orbit_from_json(yd, window)
    result = {"orbit_hom": orbit_hom_dim(x, y)}
    if args.brute is not None:
        terms = orbit_terms(x, y, args.brute)
        result["brute"] = brute_orbit_hom(x, y, args.brute)
        result["agree"] = result["brute"] == result["orbit_hom"]
        result["terms"] = {str(p): v for p, v in sorted(terms.items()) if v}
    _emit(result, args.json, _kv)
    return EXIT_OK if result.get("agree", True) else EXIT_FAILED


def _census_text(entries: list) -> str:
    lines = []
    for e in entries:
        line = f"{e['shape']}: {e['count']}"
        if "caveat" in e:
            line += f"  ({e['caveat']})"
        lines.append(line)
        if e.get("section"):
            lines.append(f"  section candidate: {' '.join(e['section'])}")
    return "\n".join(lines) + "\n"


def cmd_census(args) -> int:
    q = load_quiver(args.file)
    _emit(predict_census(q).to_json(), args.json, _census_text)
    return EXIT_OK


def _vec(label: dict, c) -> list[int]:
    return [label.get(v, 0) for v in c.vertices]


def cmd_knit(args) -> int:
    q = load_quiver(args.file)
    if args.window:
        jmin, jmax = _parse_window(args.window)
    else:
        w = 2 * (len(q.vertices) + 1) * (q.max_abs_d + 1)
        jmin, jmax = -w, w
    qt = build_q_tilde(q, args.base or q.vertices[0], jmin, jmax)
    knit = knit_connecting(qt, args.steps)
    rows = []
    for v in knit.tq.vertices:
        n, x = v
        defect = knit.mesh_defect(v)
        rows.append({
            "slice": n,
            "vertex": key_str(x),
            "dim": {key_str(k): c for k, c in sorted(knit.labels[v].items(), key=lambda kv: qt.vertices.index(kv[0])) if c},
            "contaminated": v in knit.contaminated,
            "mesh_ok": None if defect is None else not defect,
        })
    if args.dot:
        labels = {v: ",".join(map(str, _vec(knit.labels[v], qt))) for v in knit.tq.vertices}
        _write_dot(args.dot, translation_dot(knit.tq, labels))
        if args.dot == "-":
            return EXIT_OK
    data = {"quiver": q.name, "window": [qt.jmin, qt.jmax], "steps": args.steps, "vertices": rows}

    def human(d):
        out = [f"knitted Z(Q~)^op over window {d['window'][0]}:{d['window'][1]}, {d['steps']} steps"]
        for r in d["vertices"]:
            flag = " (contaminated)" if r["contaminated"] else ""
            dims = " ".join(f"{k}={c}" for k, c in r["dim"].items()) or "0"
            out.append(f"  {r['slice']}:{r['vertex']}  {dims}{flag}")
        return "\n".join(out) + "\n"

    _emit(data, args.json, human)
    return EXIT_OK


def cmd_verify(args) -> int:
    q = load_quiver(args.file)
    results = run_properties(q, max_len=args.max_len)
    data = {"quiver": q.name, "properties": [r.to_dict() for r in results]}

    def human(d):
        return "".join(
            f"{p['status'].upper():12} {p['name']}: {p['detail']}\n" for p in d["properties"]
        )

    _emit(data, args.json, human)
    statuses = {r.status for r in results}
    if "fail" in statuses:
        return EXIT_FAILED
    if "inconclusive" in statuses:
        return EXIT_WINDOW
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="quiver file or fixture name")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "grading period, admissibility and shape")

    p = add("cover", cmd_cover, "window of the covering quiver P or Q~")
    p.add_argument("--kind", choices=("P", "tilde"), default="P")
    p.add_argument("--window", required=True, help="JMIN:JMAX (write --window=-4:4 for negatives)")
    p.add_argument("--base", help="base vertex of Q~ (default: first vertex)")
    p.add_argument("--slack", type=int, help="connectivity slack for Q~")
    p.add_argument("--dot", metavar="PATH", help="write DOT output to PATH ('-' for stdout)")

    p = add("koszul", cmd_koszul, "dimension of a graded piece of the Koszul dual")
    p.add_argument("--degree", type=int, required=True)

    p = add("hom", cmd_hom, "orbit-category hom dimension between two objects")
    p.add_argument("x", help="first object (JSON file or shipped example name)")
    p.add_argument("y", help="second object")
    p.add_argument("--brute", type=int, metavar="B", help="also sum the twists |p| <= B literally")
    p.add_argument("--window", help="P window JMIN:JMAX to start from")

    add("census", cmd_census, "predicted Auslander-Reiten component shapes")

    p = add("knit", cmd_knit, "knit the connecting component on a Q~ window")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--window", help="Q~ window JMIN:JMAX")
    p.add_argument("--base", help="base vertex of Q~")
    p.add_argument("--dot", metavar="PATH", help="write DOT output to PATH ('-' for stdout)")

    p = add("verify", cmd_verify, "run the property suite on a quiver")
    p.add_argument("--max-len", type=int, default=4, dest="max_len")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except RszError as exc:
        sys.stderr.write(f"rsz {args.command}: {exc}\n")
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
