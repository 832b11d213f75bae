"""Command-line front end.

Every subcommand prints a JSON report (``--text`` for a plain listing) and
exits 0 when the verdict holds, 1 when it fails and 2 on bad input.

Usage:
    reflexive-forge perfect --graph c5.txt
    reflexive-forge merge-check --g1 k3.txt --g2 k3.txt
    reflexive-forge toric-gb --config counterexample.txt --order "z,x2,x1,x3,x4,x5,x6,x7"
    reflexive-forge census --d 5
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

from . import __version__
from .complexes import (
    SimplicialComplex,
    incidence_columns,
    incidence_matrix,
    is_flag,
    parse_complex,
    stable_set_complex,
)
from .exactmath import parse_matrix, positive_negative_parts
from .graphs import (
    Graph,
    chromatic_number,
    clique_number,
    count_perfect_pairs,
    find_odd_antihole,
    find_odd_hole,
    parse_graph,
    perfect_classes,
    perfection_certificate,
)
from .polytopes import (
    PolytopeError,
    VPolytope,
    is_fano,
    is_gorenstein_fano,
    is_smooth,
    is_terminal,
    merge_polytope,
    normalized_volume,
    verify_obstruction_facet,
)
from .toric import (
    Configuration,
    ToricError,
    exists_squarefree_revlex_z_smallest,
    facet_widths,
    initial_ideal,
    is_compressed,
    is_harmony,
    parse_configuration,
    parse_order,
    standard_monomials_biject_fibers,
    toric_groebner_basis,
    toric_ideal_generators,
    triangulation_from_initial_ideal,
    verify_theorem1,
    MonomialOrder,
    EXHAUSTIVE_LIMIT,
)

log = logging.getLogger("reflexive_forge")

CACHE_ENV = "REFLEXIVE_FORGE_CACHE"
DEFAULT_CACHE = ".rf-cache"


class UsageError(Exception):
    pass


# input helpers --------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(path: str) -> Graph:
    try:
        return parse_graph(_read(path))
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_complex(path: str) -> SimplicialComplex:
    try:
        return parse_complex(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_config(path: str) -> Configuration:
    try:
        return parse_configuration(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_block(path: str) -> list[tuple[int, ...]]:
    try:
        rows, rest = parse_matrix(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if rest:
        raise UsageError(f"{path}: a block matrix takes no trailing flags")
    cols = [tuple(c) for c in zip(*rows)]
    if any(x < 0 for c in cols for x in c) or any(not any(c) for c in cols):
        raise UsageError(f"{path}: block columns must be nonnegative and nonzero")
    return cols


def _complex_arg(args, graph_attr: str, complex_attr: str) -> SimplicialComplex:
    g = getattr(args, graph_attr, None)
    c = getattr(args, complex_attr, None)
    if bool(g) == bool(c):
        raise UsageError(f"give exactly one of --{graph_attr} / --{complex_attr}")
    return stable_set_complex(_load_graph(g)) if g else _load_complex(c)


def _binomials(config: Configuration, elems) -> list[str]:
    return [config.format_binomial(b) for b in elems]


def _monomials(config: Configuration, ideal) -> list[str]:
    return [config.format_monomial(m) for m in ideal.generators]


# commands -------------------------------------------------------------------

def cmd_perfect(args) -> tuple[dict, Any, dict]:
    g = _load_graph(args.graph)
    cert = perfection_certificate(g)
    cert.update(clique_number=clique_number(g), chromatic_number=chromatic_number(g))
    return {"graph": g.to_json()}, cert["perfect"], cert


def cmd_stable_complex(args) -> tuple[dict, Any, dict]:
    g = _load_graph(args.graph)
    cx = stable_set_complex(g)
    cols = incidence_columns(cx)
    cert = {"faces": [sorted(f) for f in cx.face_sets()],
            "facets": [sorted(f) for f in cx.facets()],
            "incidence_columns": [list(c) for c in cols]}
    return {"graph": g.to_json()}, len(cols), cert


def cmd_harmony(args) -> tuple[dict, Any, dict]:
    a, b = _load_block(args.a), _load_block(args.b)
    if len(a[0]) != len(b[0]):
        raise UsageError("blocks have different row counts")
    ok = is_harmony(a, b)
    cert: dict = {}
    if not ok:
        zero = (0,) * len(a[0])
        for x in a + [zero]:
            for y in b + [zero]:
                p, m = positive_negative_parts(tuple(s - t for s, t in zip(x, y)))
                if p not in a + [zero] or m not in b + [zero]:
                    cert["witness"] = {"a": list(x), "b": list(y), "plus": list(p), "minus": list(m)}
                    break
            if cert:
                break
    return {"a": [list(c) for c in a], "b": [list(c) for c in b]}, ok, cert


def _order_for(config: Configuration, text: str | None) -> MonomialOrder:
    if text is None:
        return MonomialOrder.default(config.n, smallest=config.zero_index)
    try:
        return parse_order(config, text)
    except ToricError as exc:
        raise UsageError(str(exc)) from exc


def cmd_toric_gb(args) -> tuple[dict, Any, dict]:
    config = _load_config(args.config)
    order = _order_for(config, args.order)
    gens = toric_ideal_generators(config)
    gb = toric_groebner_basis(config, order)
    init = initial_ideal(gb)
    cert = {"generators": _binomials(config, gens),
            "order": order.describe(config),
            "initial_ideal": _monomials(config, init),
            "squarefree": init.is_squarefree()}
    if config.n <= 6:
        cert["fiber_check_degree"] = args.degree_bound
        cert["fiber_check"] = standard_monomials_biject_fibers(config, init, args.degree_bound)
    return ({"columns": [list(c) for c in config.columns], "order": args.order},
            _binomials(config, gb.elements), cert)


def cmd_initial(args) -> tuple[dict, Any, dict]:
    config = _load_config(args.config)
    order = _order_for(config, args.order)
    init = initial_ideal(toric_groebner_basis(config, order))
    cert = {"order": order.describe(config), "initial_ideal": _monomials(config, init)}
    return ({"columns": [list(c) for c in config.columns], "order": args.order},
            init.is_squarefree(), cert)


def cmd_compressed(args) -> tuple[dict, Any, dict]:
    if args.config:
        config = _load_config(args.config)
        inputs: dict = {"columns": [list(c) for c in config.columns]}
        cert: dict = {}
    else:
        cx = _complex_arg(args, "graph", "complex")
        config = incidence_matrix(cx)
        g = is_flag(cx)
        inputs = {"complex": cx.to_json()}
        cert = {"flag": g is not None}
        if g is not None:
            cert["graph"] = g.to_json()
            cert.update(perfection_certificate(g))
    widths = facet_widths(config)
    cert["facet_widths"] = widths
    verdict = is_compressed(config)
    if config.has_zero_column and len(config.nonzero_indices()) <= EXHAUSTIVE_LIMIT and args.deep:
        found = exists_squarefree_revlex_z_smallest(config)
        cert["z_smallest_squarefree_order"] = found.describe(config) if found else None
    return inputs, verdict, cert


def _polytope_summary(p: VPolytope) -> dict:
    fano = is_fano(p)
    out: dict = {"vertices": len(p.vertices), "facets": len(p.facets), "fano": fano}
    if fano:
        rep = is_gorenstein_fano(p)
        out["gorenstein"] = rep.gorenstein
        out["terminal"] = is_terminal(p)
        out["smooth"] = is_smooth(p)
        out["facet_report"] = list(rep.facets)
    out["normalized_volume"] = normalized_volume(p)
    return out


def cmd_merge_check(args) -> tuple[dict, Any, dict]:
    if args.g1 or args.g2:
        if not (args.g1 and args.g2):
            raise UsageError("give both --g1 and --g2")
        cx1 = stable_set_complex(_load_graph(args.g1))
        cx2 = stable_set_complex(_load_graph(args.g2))
    elif args.c1 and args.c2:
        cx1, cx2 = _load_complex(args.c1), _load_complex(args.c2)
    else:
        raise UsageError("give --g1/--g2 graphs or --c1/--c2 complexes")
    if cx1.d != cx2.d:
        raise UsageError("inputs live on different vertex counts")
    p = merge_polytope(cx1, cx2)
    cert = _polytope_summary(p)
    verdict = bool(cert["fano"] and cert.get("gorenstein"))
    return {"first": cx1.to_json(), "second": cx2.to_json()}, verdict, cert


def cmd_theorem1(args) -> tuple[dict, Any, dict]:
    a, b = _load_block(args.a), _load_block(args.b)
    if len(a[0]) != len(b[0]):
        raise UsageError("blocks have different row counts")
    check = verify_theorem1(a, b)
    data = check.data
    tri = triangulation_from_initial_ideal(data.config, check.initial) if check.initial.is_squarefree() else None
    cert = {"order": data.order.describe(data.config),
            "pairs": [list(p) for p in data.pairs],
            "predicted": _monomials(data.config, data.monomials),
            "initial_ideal": _monomials(data.config, check.initial),
            "groebner_basis": _binomials(data.config, check.basis.elements)}
    if tri is not None:
        z = data.config.zero_index
        cert["triangulation"] = {"simplices": [[data.config.names[i] for i in s] for s in tri.simplices],
                                 "unimodular": tri.is_unimodular,
                                 "all_contain_z": tri.all_contain(z),
                                 "quadratic": tri.is_quadratic_squarefree}
    return {"a": [list(c) for c in a], "b": [list(c) for c in b]}, check.holds, cert


def find_obstruction(cx: SimplicialComplex) -> tuple[str, list[int]] | None:
    """A minimal non-edge nonface, else an odd hole or antihole of the underlying graph."""
    for nf in cx.minimal_nonfaces():
        if len(nf) >= 3:
            return "nonflag", sorted(nf)
    g = is_flag(cx)
    hole = find_odd_hole(g)
    if hole is not None:
        return "oddhole", list(hole)
    anti = find_odd_antihole(g)
    if anti is not None:
        return "antihole", list(anti)
    return None


def cmd_obstruction(args) -> tuple[dict, Any, dict]:
    cx = _complex_arg(args, "graph", "complex")
    other = _load_complex(args.other) if args.other else cx
    if other.d != cx.d:
        raise UsageError("complexes live on different vertex counts")
    found = find_obstruction(cx)
    inputs = {"complex": cx.to_json(), "other": other.to_json()}
    if found is None:
        return inputs, False, {"obstruction": None}
    kind, verts = found
    p = merge_polytope(cx, other)
    rep = verify_obstruction_facet(p, kind, verts)
    cert = {"kind": kind, "vertices": verts}
    cert.update(rep.to_json())
    return inputs, rep.certified, cert


def _census_pair(args: tuple[Graph, Graph]) -> dict:
    g1, g2 = args
    p = merge_polytope(stable_set_complex(g1), stable_set_complex(g2))
    fano = is_fano(p)
    return {"fano": fano,
            "gorenstein": bool(fano and is_gorenstein_fano(p)),
            "terminal": bool(fano and is_terminal(p))}


def census(d: int, deep: bool = False, jobs: int = 1) -> tuple[dict, dict]:
    classes = perfect_classes(d)
    k = len(classes)
    verdict = {"perfect_graphs": k, "pairs": count_perfect_pairs(d) if d else 1}
    cert: dict = {"graphs": [[list(e) for e in g.sorted_edges()] for g in classes]}
    if d <= 4 or deep:
        pairs = [(classes[i], classes[j]) for i in range(k) for j in range(i, k)]
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                results = list(pool.map(_census_pair, pairs, chunksize=16))
        else:
            results = [_census_pair(p) for p in pairs]
        good = [r["fano"] and r["gorenstein"] and r["terminal"] for r in results]
        verdict["gorenstein_fano"] = sum(r["gorenstein"] for r in results)
        verdict["terminal"] = sum(r["terminal"] for r in results)
        verdict["all_verified"] = all(good)
        cert["failures"] = [[i, j] for (i, j), ok in
                            zip(((i, j) for i in range(k) for j in range(i, k)), good) if not ok]
    return verdict, cert


def cmd_census(args) -> tuple[dict, Any, dict]:
    d = args.d
    if d == 7 and not args.allow_seven:
        raise UsageError("d = 7 is slow; pass --allow-seven to run it")
    if not 2 <= d <= 7:
        raise UsageError("census supports 2 <= d <= 6 (7 with --allow-seven)")
    verdict, cert = census(d, deep=args.deep, jobs=args.jobs)
    return {"d": d, "deep": bool(args.deep or d <= 4)}, verdict, cert


COMMANDS = {
    "perfect": cmd_perfect,
    "stable-complex": cmd_stable_complex,
    "harmony": cmd_harmony,
    "toric-gb": cmd_toric_gb,
    "initial": cmd_initial,
    "compressed": cmd_compressed,
    "merge-check": cmd_merge_check,
    "theorem1": cmd_theorem1,
    "obstruction": cmd_obstruction,
    "census": cmd_census,
}

CACHED = {"census", "theorem1"}


# argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false", help="JSON report (default)")
    fmt.add_argument("--text", dest="text", action="store_true", help="human-readable report")
    common.set_defaults(text=False)
    common.add_argument("--degree-bound", type=int, default=4, help="degree for fiber oracles")
    common.add_argument("--deep", action="store_true", help="run the expensive checks")
    common.add_argument("--no-cache", action="store_true", help="ignore the result cache")

    parser = argparse.ArgumentParser(prog="reflexive-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perfect", parents=[common], help="perfection test with hole certificate")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("stable-complex", parents=[common], help="stable set complex and incidence matrix")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("harmony", parents=[common], help="harmony of two nonnegative blocks")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    for name, helptext in (("toric-gb", "reduced Gröbner basis of a toric ideal"),
                           ("initial", "initial ideal and squarefreeness")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--config", required=True)
        p.add_argument("--order", help="e.g. 'z,x2,x1,...' (smallest first) or 'x1 > x2 > z'")

    p = sub.add_parser("compressed", parents=[common], help="compressedness of a configuration")
    p.add_argument("--config")
    p.add_argument("--complex")
    p.add_argument("--graph")

    p = sub.add_parser("merge-check", parents=[common], help="reflexivity of conv(P u -P')")
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--c1")
    p.add_argument("--c2")

    p = sub.add_parser("theorem1", parents=[common], help="squarefree merged initial ideal check")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("obstruction", parents=[common], help="certify a non-Gorenstein merge")
    p.add_argument("--complex")
    p.add_argument("--graph")
    p.add_argument("--other", help="second complex (defaults to the first)")

    p = sub.add_parser("census", parents=[common], help="perfect graph census and pair sweep")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--allow-seven", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    return parser


# reports ----------------------------------------------------------------------

def _cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def _cache_key(command: str, args: argparse.Namespace) -> str:
    keep = {k: v for k, v in sorted(vars(args).items())
            if k not in {"text", "no_cache", "jobs", "command"}}
    for k, v in list(keep.items()):
        if isinstance(v, str) and Path(v).is_file():
            keep[k] = hashlib.sha256(Path(v).read_bytes()).hexdigest()
    blob = json.dumps([command, keep, __version__], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:32]


def _run_cached(command: str, args) -> dict:
    if command not in CACHED or args.no_cache:
        inputs, verdict, cert = COMMANDS[command](args)
        return {"command": command, "inputs": inputs, "verdict": verdict, "certificates": cert}
    path = _cache_dir() / f"{command}-{_cache_key(command, args)}.json"
    if path.is_file():
        try:
            log.info("using cached result %s", path)
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            log.warning("ignoring unreadable cache file %s", path)
    inputs, verdict, cert = COMMANDS[command](args)
    report = {"command": command, "inputs": inputs, "verdict": verdict, "certificates": cert}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report, sort_keys=True))
    except OSError:
        log.warning("could not write cache file %s", path)
    return report


def _verdict_ok(verdict: Any) -> bool:
    if isinstance(verdict, dict):
        return verdict.get("all_verified", True) is not False
    return verdict is not False


def format_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"verdict: {_short(report['verdict'])}"]
    for key, value in report["certificates"].items():
        if isinstance(value, list) and value and isinstance(value[0], (list, dict, str)):
            lines.append(f"{key}:")
            lines.extend(f"  {_short(v)}" for v in value)
        else:
            lines.append(f"{key}: {_short(value)}")
    lines.append(f"elapsed_ms: {report['elapsed_ms']}")
    return "\n".join(lines)


def _short(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def execute(argv: list[str] | None = None) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    start = time.perf_counter()
    try:
        report = _run_cached(args.command, args)
    except (UsageError, ToricError, PolytopeError) as exc:
        print(f"reflexive-forge {args.command}: {exc}", file=sys.stderr)
        return 2, None
    report["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if args.text:
        print(format_text(report))
    else:
        print(json.dumps(report, sort_keys=True, indent=2))
    return (0 if _verdict_ok(report["verdict"]) else 1), report


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    code, _ = execute(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
