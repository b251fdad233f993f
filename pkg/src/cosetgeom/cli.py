"""Command-line interface.

Exit codes: 0 ok, 2 invalid input, 3 resource limit, 4 verification mismatch.
Errors are written to stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import catalog
from .belyi import BelyiError, matches_dessin, parse_rational_map, passport_of
from .contextuality import labeling_candidates, score
from .cosets import CosetLimitError, CosetTable, low_index_subgroups
from .dessin import Dessin
from .extract import extract_geometries
from .geometry import IncidenceStructure
from .hyperplanes import hyperplanes
from .pauli import (PauliOp, find_mermin_square, find_pentagram, max_commuting_geometry,
                    verify_mermin_square, verify_pentagram)
from .words import presentation_from_selector

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH = 0, 2, 3, 4


class Mismatch(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "verification mismatch"))
        self.payload = payload


def _emit(obj, out: Path | None = None, name: str = "result.json"):
    text = json.dumps(obj, indent=2)
    print(text)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text + "\n")


def load_dessin(path: str) -> Dessin:
    data = json.loads(Path(path).read_text())
    if "action" in data:
        return Dessin.from_table(CosetTable.from_json(data))
    return Dessin.from_json(data)


def load_geometry(path: str) -> IncidenceStructure:
    return IncidenceStructure.from_json(Path(path).read_text())


def cmd_enumerate(a) -> int:
    p = presentation_from_selector(a.presentation)
    tables = low_index_subgroups(p, a.index, not a.all_subgroups, jobs=a.jobs, max_nodes=a.max_nodes)
    dessins = [Dessin.from_table(t) for t in tables]
    summary = {
        "presentation": p.name or [str(r) for r in p.relators],
        "index": a.index,
        "convention": "all subgroups" if a.all_subgroups else "conjugacy classes",
        "count": len(tables),
        "genera": dict(sorted(Counter(d.genus for d in dessins).items())),
        "passports": dict(Counter(json.dumps(d.passport()) for d in dessins).most_common()),
    }
    if a.out:
        out = Path(a.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, (t, d) in enumerate(zip(tables, dessins), 1):
            (out / f"dessin_{i:04d}.json").write_text(json.dumps({**d.to_json(), "table": t.to_json()}) + "\n")
    _emit(summary, Path(a.out) if a.out else None, "summary.json")
    return EXIT_OK


def cmd_analyze(a) -> int:
    d = load_dessin(a.dessin)
    b, w, f, g = d.signature()
    geos = []
    for i, geo in enumerate(extract_geometries(d), 1):
        entry = geo.to_json()
        entry["profile"] = geo.profile()
        entry["recognized"] = catalog.recognize(geo.structure)
        geos.append(entry)
        if a.out:
            Path(a.out).mkdir(parents=True, exist_ok=True)
            labels = [str(x) for x in d.labels()]
            (Path(a.out) / f"geometry_{i}_order{geo.order}.dot").write_text(geo.structure.to_dot("incidence", labels))
    if a.out:
        (Path(a.out) / "dessin.dot").write_text(d.to_dot())
    _emit({"dessin": d.to_json(), "B": b, "W": w, "F": f, "genus": g,
           "passport": d.passport(), "group_order": d.group.order(),
           "transversal": [str(x) for x in d.labels()], "geometries": geos},
          Path(a.out) if a.out else None, "analysis.json")
    return EXIT_OK


def cmd_score(a) -> int:
    d = load_dessin(a.dessin)
    if a.geometry:
        geos = [load_geometry(a.geometry)]
    else:
        geos = [x.structure for x in extract_geometries(d)
                if a.stabilizer_order is None or x.order == a.stabilizer_order]
    modes = [a.mode] if a.mode else ["iterated", "pairwise"]
    reports = []
    for s in geos:
        if s.n != d.n:
            raise ValueError(f"geometry has {s.n} points, dessin has {d.n}")
        cands = labeling_candidates(d, s, all_bases=a.labels == "all")
        if a.labels == "default":
            cands = cands[:1]
        for mode in modes:
            best = None
            for c in cands:
                rep = score(s, c.labels, d, mode, c.name)
                if best is None or rep.u > best.u:
                    best = rep
            out = best.to_json()
            out["geometry"] = s.name
            reports.append(out)
    _emit({"reports": reports}, Path(a.out) if a.out else None, "score.json")
    return EXIT_OK


def cmd_table1(a) -> int:
    from .scenarios import table1

    external = {}
    for item in a.dessin or []:
        name, _, path = item.partition("=")
        if not path:
            raise ValueError("--dessin for table1 takes NAME=FILE, e.g. GQ(2,2)=doily.json")
        external[name] = load_dessin(path)
    rows = table1(external)
    _emit({"rows": [r.to_json() for r in rows]}, Path(a.out) if a.out else None, "table1.json")
    return EXIT_OK


def cmd_pauli(a) -> int:
    if a.what == "mermin-square":
        if a.ops:
            grid = [[PauliOp.parse(x) for x in row.split(",")] for row in a.ops.split(";")]
        else:
            grid = find_mermin_square()
        v = verify_mermin_square(grid)
        payload = {"grid": [[str(x) for x in r] for r in grid], "valid": v.ok, "signs": v.signs,
                   "negative_lines": v.negative_lines, "reason": v.reason}
    elif a.what == "pentagram":
        ops, lines = find_pentagram()
        if a.ops:
            ops = [PauliOp.parse(x) for x in a.ops.split(",")]
        v = verify_pentagram(ops, lines)
        payload = {"operators": [str(x) for x in ops], "lines": [[p + 1 for p in line] for line in lines],
                   "valid": v.ok, "signs": v.signs, "negative_lines": v.negative_lines, "reason": v.reason}
    else:
        if a.n is None or a.n < 1:
            raise ValueError("maxset needs a qubit count n >= 1")
        gens = [PauliOp.parse(x) for x in a.ops.split(",")] if a.ops else None
        s, labels = max_commuting_geometry(a.n, gens)
        pg = catalog.build(f"PG({a.n - 1},2)") if a.n >= 2 else None
        from .geometry import isomorphic
        payload = {"operators": [str(x) for x in labels], "geometry": s.to_json(),
                   "isomorphic_to": f"PG({a.n - 1},2)" if pg is not None and isomorphic(s, pg) else None}
        v = None
    _emit(payload, Path(a.out) if a.out else None, f"pauli_{a.what}.json")
    if v is not None and not v.ok:
        raise Mismatch({"error": v.reason})
    return EXIT_OK


def cmd_belyi(a) -> int:
    f = parse_rational_map(a.function)
    rep = passport_of(f)
    payload = {"function": str(f), **rep.to_json()}
    if a.dessin:
        d = load_dessin(a.dessin)
        payload["dessin_passport"] = d.passport()
        payload["match"] = matches_dessin(f, d)
    _emit(payload, Path(a.out) if a.out else None, "belyi.json")
    if not rep.ok or payload.get("match") is False:
        raise Mismatch({"error": "rational map is not a Belyi map for this passport", **payload})
    return EXIT_OK


def cmd_hyperplanes(a) -> int:
    if bool(a.geometry) == bool(a.name):
        raise ValueError("give exactly one of --geometry FILE or --name NAME")
    s = load_geometry(a.geometry) if a.geometry else catalog.build(a.name)
    res = hyperplanes(s, a.mode, a.seeds)
    _emit({"geometry": s.name, **res.to_json(a.list)}, Path(a.out) if a.out else None, "hyperplanes.json")
    return EXIT_OK


def cmd_build(a) -> int:
    s = catalog.build(a.name)
    _emit(s.to_json(), Path(a.out) if a.out else None, "geometry.json")
    if a.dot:
        Path(a.dot).write_text(s.to_dot(a.graph))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cosetgeom", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="directory for JSON/DOT artifacts")
        return p

    p = common(sub.add_parser("enumerate", help="low-index subgroups -> dessins"))
    p.add_argument("--presentation", default="G", help="F, G, G', G'' or a comma list of relators")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--all-subgroups", action="store_true", help="every subgroup, not one per class")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-nodes", "--max-cosets", dest="max_nodes", type=int, default=None,
                   help="search budget; exceeding it exits with code 3")
    p.set_defaults(func=cmd_enumerate)

    p = common(sub.add_parser("analyze", help="signature, transversal and geometries of a dessin"))
    p.add_argument("--dessin", required=True)
    p.set_defaults(func=cmd_analyze)

    p = common(sub.add_parser("score", help="contextuality report"))
    p.add_argument("--dessin", required=True)
    p.add_argument("--geometry", help="geometry JSON on the dessin's points")
    p.add_argument("--stabilizer-order", type=int, help="score only this extracted class")
    p.add_argument("--mode", choices=["iterated", "pairwise"], help="default: both")
    p.add_argument("--labels", choices=["default", "all"], default="default",
                   help="default: BFS labels from point 1; all: every letter priority and base point")
    p.set_defaults(func=cmd_score)

    p = common(sub.add_parser("table1", help="l, u, l/u, c and log2 h for the generalized polygons"))
    p.add_argument("--dessin", action="append", help="NAME=FILE for a row that needs a dessin")
    p.set_defaults(func=cmd_table1)

    p = common(sub.add_parser("pauli", help="Mermin square, pentagram, maximal commuting sets"))
    p.add_argument("what", choices=["mermin-square", "pentagram", "maxset"])
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--ops", help="operators to verify instead of searching")
    p.set_defaults(func=cmd_pauli)

    p = common(sub.add_parser("belyi-check", help="passport of a rational map vs a dessin"))
    p.add_argument("--function", required=True)
    p.add_argument("--dessin")
    p.set_defaults(func=cmd_belyi)

    p = common(sub.add_parser("hyperplanes", help="geometric hyperplanes, h and log2 h"))
    p.add_argument("--geometry")
    p.add_argument("--name")
    p.add_argument("--mode", choices=["brute", "veldkamp"], default="veldkamp")
    p.add_argument("--seeds", choices=["full", "singular"], default="full")
    p.add_argument("--list", action="store_true", help="include the hyperplanes themselves")
    p.set_defaults(func=cmd_hyperplanes)

    p = common(sub.add_parser("build", help="catalog geometry as JSON"))
    p.add_argument("name", help="; ".join(catalog.names()))
    p.add_argument("--dot")
    p.add_argument("--graph", choices=["incidence", "collinearity"], default="incidence")
    p.set_defaults(func=cmd_build)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except CosetLimitError as e:
        code, err = EXIT_RESOURCE, {"error": str(e), "kind": "resource-limit"}
    except Mismatch as e:
        code, err = EXIT_MISMATCH, {"kind": "verification-mismatch", **e.payload}
    except (ValueError, KeyError, OSError, json.JSONDecodeError, BelyiError) as e:
        code, err = EXIT_INPUT, {"error": str(e), "kind": type(e).__name__}
    print(json.dumps(err, default=str), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
