"""Command-line entry point: `crystalkit <subcommand> ...`.

Every command prints one report (JSON by default, or aligned text) and exits
with 0 on success, 2 on invalid input, 3 when a cap is exceeded and 4 when two
independent computations disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import crystalkit
from crystalkit.errors import CapExceeded, CrystalkitError, InternalCheckFailure, InvalidInput, NotOrientable
from crystalkit.exactmath import matrices as mx
from crystalkit.crystal import (
    CrystalGroup,
    LatticeCatalog,
    abelianization,
    cohomology,
    fingerprint,
    minimal_dimension_search,
)
from crystalkit.crystal.cohomology import COHOMOLOGY_ORDER_CAP
from crystalkit.shell.catalog import catalog_entry, catalog_names, catalog_text, computed_invariants
from crystalkit.shell.groupfile import parse_group_file, parse_rational

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_INTERNAL = 0, 2, 3, 4
DEFAULT_SEED = 0


def current_seed() -> int:
    raw = os.environ.get("CRYSTALKIT_SEED")
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"CRYSTALKIT_SEED must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def load_group(ref: str) -> CrystalGroup:
    """A .grp path, or the name of a catalog entry."""
    p = Path(ref)
    if p.is_file():
        try:
            text = p.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            raise InvalidInput(f"{ref} is not UTF-8 text") from None
        return parse_group_file(text).to_crystal()
    name = ref[:-4] if ref.endswith(".grp") else ref
    if name in catalog_names():
        return catalog_entry(name).to_crystal()
    raise InvalidInput(f"{ref!r} is neither a readable file nor a catalog entry")


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{what}: {exc.msg} at column {exc.colno}") from None


def _int_matrix(text: str, n: int) -> list:
    M = _json_arg(text, "--matrix")
    if (not isinstance(M, list) or len(M) != n
            or any(not isinstance(r, list) or len(r) != n for r in M)
            or any(not isinstance(x, int) or isinstance(x, bool) for r in M for x in r)):
        raise InvalidInput(f"--matrix must be an {n}x{n} integer matrix")
    return M


def _vector(text: str | None, n: int) -> list | None:
    if text is None:
        return None
    v = _json_arg(text, "--vector")
    if not isinstance(v, list) or len(v) != n:
        raise InvalidInput(f"--vector must list {n} rationals")
    return [parse_rational(str(x)) for x in v]


# ---------------------------------------------------------------------------
# report sections
# ---------------------------------------------------------------------------

def _plain(x):
    """JSON-ready copy with rationals as strings and tuples as lists."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def invariants_section(G: CrystalGroup) -> dict:
    inv = computed_invariants(G, with_spin=False)
    inv["name"] = G.name
    inv["abelianization_text"] = str(abelianization(G))
    inv["fingerprint"] = list(fingerprint(G))
    return inv


def predicates_section(G: CrystalGroup, seed: int) -> dict:
    from crystalkit.repanalysis import calabi_yau_check, integral_rep, kahler_out_finite, mult_free_check, out_finite
    gens = [list(map(list, g)) for g in G.holonomy.generators] or [mx.identity(G.n)]
    rho = integral_rep(gens, degree=G.n)
    res = out_finite(rho, seed=seed)
    return {
        "out_finite": res.verdict,
        "out_finite_routes": {"checklist": res.checklist_verdict, "blocks": res.block_verdict},
        "kahler_out_finite": kahler_out_finite(rho, seed=seed),
        "mult_free": mult_free_check(rho, seed=seed),
        "calabi_yau": calabi_yau_check(rho) if G.n % 2 == 0 else None,
    }


def cohomology_section(G: CrystalGroup, degrees=(1, 2)) -> dict:
    out = {}
    for k in degrees:
        try:
            out[f"H{k}"] = cohomology(G.holonomy, k).divisors
        except CapExceeded as exc:
            out[f"H{k}"] = f"skipped: {exc}"
    return out


def spin_section(G: CrystalGroup, keep: int = 0) -> dict:
    from crystalkit.spin import spin_structures
    try:
        res = spin_structures(G, keep_lifts=keep)
    except NotOrientable:
        return {"status": "NotOrientable"}
    out = {"status": "Spin" if res.exists else "NotSpin", "count": res.count,
           "abelianization_count": res.expected, "relations": len(res.relations)}
    if keep:
        out["sign_assignments"] = [list(lift.signs) for lift in res.lifts]
    return out


def fixed_point_row(G, e) -> dict:
    from crystalkit.dynamics import fixed_point_data
    rep = fixed_point_data(G, e)
    return {"matrix": [list(r) for r in e.F], "translation": list(e.d), "theta": list(e.theta),
            "lefschetz": rep.lefschetz, "nielsen": rep.nielsen, "anosov": rep.anosov,
            "terms": list(rep.terms), "degenerate": rep.degenerate}


def scan_section(G: CrystalGroup, bound: int) -> dict:
    from crystalkit.dynamics import anosov_scan
    res = anosov_scan(G, bound)
    return {"summary": res.summary,
            "counterexamples": [fixed_point_row(G, e) for e, _ in res.counterexamples]}


def provenance(seed: int) -> dict:
    return {"tool": "crystalkit", "version": crystalkit.__version__, "seed": seed,
            "caps": {"cohomology_order": COHOMOLOGY_ORDER_CAP}}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_analyze(args, seed) -> dict:
    G = load_group(args.group)
    return {"invariants": invariants_section(G), "predicates": predicates_section(G, seed),
            "cohomology": cohomology_section(G), "spin": spin_section(G)}


def cmd_report(args, seed) -> dict:
    from crystalkit.dynamics import validate_endo
    G = load_group(args.group)
    out = cmd_analyze(args, seed)
    dyn = {"identity": fixed_point_row(G, validate_endo(G, mx.identity(G.n)))}
    if args.bound is not None:
        dyn["scan"] = scan_section(G, args.bound)
    out["dynamics"] = dyn
    return out


def cmd_cohomology(args, seed) -> dict:
    G = load_group(args.group)
    return {"cohomology": cohomology_section(G, (args.degree,))}


def cmd_search(args, seed) -> dict:
    try:
        data = json.loads(Path(args.holonomy).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidInput(f"cannot read {args.holonomy}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{args.holonomy}: {exc.msg} at line {exc.lineno}") from None
    try:
        cat = LatticeCatalog(data["group"], int(data["order"]), data["lattices"],
                             list(data.get("names", [])), bool(data.get("complete", False)))
    except (KeyError, TypeError, ValueError):
        raise InvalidInput("holonomy file needs group, order and lattices") from None
    res = minimal_dimension_search(cat, args.max_dim, "q_mult_free" if args.mult_free else "none", seed=seed)
    W = res.witness
    return {"search": {"group": cat.group_name, "dimension": res.dimension, "label": res.label,
                       "summands": res.summands, "candidates_examined": res.candidates_examined},
            "invariants": invariants_section(W)}


def cmd_ghw(args, seed) -> dict:
    from crystalkit.ghw import ghw_enumerate, is_rational_homology_sphere
    groups = ghw_enumerate(args.dim, args.orientable)
    by_fp: dict = {}
    for name in catalog_names():
        if catalog_entry(name).dimension == args.dim:
            by_fp.setdefault(fingerprint(catalog_entry(name).to_crystal()), []).append(name)
    rows = []
    for G in groups:
        fp = fingerprint(G)
        rows.append({"name": G.name, "fingerprint": list(fp),
                     "rational_homology_sphere": is_rational_homology_sphere(G),
                     "catalog_matches": by_fp.get(fp, [])})
    return {"ghw": {"dimension": args.dim, "orientable": args.orientable, "count": len(groups), "groups": rows}}


def cmd_fibonacci(args, seed) -> dict:
    from crystalkit.ghw import fibonacci_epimorphism_search, fibonacci_presentation
    P = fibonacci_presentation(args.r, args.n)
    out = {"r": args.r, "n": args.n, "abelianization": str(P.abelianization()),
           "abelianization_divisors": [P.abelianization().free_rank, list(P.abelianization().torsion)]}
    if args.check_epi:
        G = load_group(args.check_epi)
        found = fibonacci_epimorphism_search(args.r, args.n, G, limit=1)
        out["target"] = G.name
        out["epimorphism_found"] = bool(found)
        if found:
            rep = found[0]
            out["verdict"] = rep.verdict
            out["lattice_index"] = rep.lattice_index
            out["images"] = [{"matrix": [list(r) for r in g.h], "vector": list(g.t)} for g in rep.images]
    return {"fibonacci": out}


def cmd_dynamics(args, seed) -> dict:
    from crystalkit.dynamics import ec_check, validate_endo
    G = load_group(args.group)
    if args.action == "scan":
        return {"dynamics": scan_section(G, args.bound)}
    if args.matrix is None:
        raise InvalidInput("dynamics check needs --matrix")
    e = validate_endo(G, _int_matrix(args.matrix, G.n), _vector(args.vector, G.n))
    row = fixed_point_row(G, e)
    ec = ec_check(G, e)
    row.update({"translation_adjusted": e.d_adjusted, "entropy": ec.entropy.value,
                "log_spectral_radius": ec.log_sp.value, "ec_holds": ec.holds, "ec_equality": ec.equality,
                "note": ec.note})
    return {"dynamics": row}


def cmd_spin(args, seed) -> dict:
    G = load_group(args.group)
    from crystalkit.spin import spin_structures
    res = spin_structures(G, keep_lifts=args.keep)
    return {"spin": {"status": "Spin" if res.exists else "NotSpin", "count": res.count,
                     "abelianization_count": res.expected, "relations": len(res.relations),
                     "sign_assignments": [list(lift.signs) for lift in res.lifts]}}


def cmd_catalog(args, seed) -> dict:
    if args.action == "list":
        rows = []
        for name in catalog_names():
            gf = catalog_entry(name)
            rows.append({"name": name, "dimension": gf.dimension, "tags": gf.metadata.get("tags", []),
                         "betti1": gf.expected().get("betti1")})
        return {"catalog": rows}
    if not args.name:
        raise InvalidInput("catalog show needs an entry name")
    gf = catalog_entry(args.name)
    return {"catalog": {"name": gf.name, "file": json.loads(catalog_text(args.name))}}


# ---------------------------------------------------------------------------
# parser and output
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["json", "text"], default="json")
    p = _Parser(prog="crystalkit", description="Exact computations for crystallographic and Bieberbach groups.")
    p.add_argument("--version", action="version", version=f"crystalkit {crystalkit.__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[fmt], help="invariants, predicates, cohomology and spin")
    a.add_argument("group")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("report", parents=[fmt], help="analyze plus fixed-point data")
    r.add_argument("group")
    r.add_argument("--bound", type=int, default=None, help="also run an Anosov scan with this bound")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("cohomology", parents=[fmt], help="H^k(H, Z^n) of the holonomy action")
    c.add_argument("group")
    c.add_argument("--degree", type=int, choices=[1, 2], required=True)
    c.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("search", parents=[fmt], help="minimal dimension of a flat manifold with given holonomy")
    s.add_argument("--holonomy", required=True)
    s.add_argument("--max-dim", type=int, required=True)
    s.add_argument("--mult-free", action="store_true")
    s.set_defaults(func=cmd_search)

    g = sub.add_parser("ghw", parents=[fmt], help="generalized Hantzsche-Wendt groups")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ge = gsub.add_parser("enumerate", parents=[fmt])
    ge.add_argument("--dim", type=int, required=True)
    ge.add_argument("--orientable", action="store_true")
    ge.set_defaults(func=cmd_ghw)

    f = sub.add_parser("fibonacci", parents=[fmt], help="Fibonacci groups F(r, n)")
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--check-epi", default=None, metavar="GROUP")
    f.set_defaults(func=cmd_fibonacci)

    d = sub.add_parser("dynamics", parents=[fmt], help="affine self-maps")
    d.add_argument("action", choices=["check", "scan"])
    d.add_argument("--group", required=True)
    d.add_argument("--matrix", default=None, help="JSON integer matrix, e.g. [[3,0],[0,2]]")
    d.add_argument("--vector", default=None, help='JSON list of rationals, e.g. ["1/2","0"]')
    d.add_argument("--bound", type=int, default=2)
    d.set_defaults(func=cmd_dynamics)

    sp = sub.add_parser("spin", parents=[fmt], help="spin structures")
    sp.add_argument("group")
    sp.add_argument("--keep", type=int, default=8, help="sign assignments to list")
    sp.set_defaults(func=cmd_spin)

    k = sub.add_parser("catalog", parents=[fmt], help="built-in groups")
    k.add_argument("action", choices=["list", "show"])
    k.add_argument("name", nargs="?")
    k.set_defaults(func=cmd_catalog)
    return p


def _text_lines(obj, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_text_lines(v, f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list) and any(isinstance(v, dict) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out.extend(_text_lines(v, f"{prefix}[{i}]"))
        return out
    return [(prefix, json.dumps(obj))]


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    rows = _text_lines(report)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def run_command(argv: list[str]) -> tuple[int, dict]:
    report: dict = {"command": ["crystalkit", *argv]}
    code = EXIT_OK
    seed = DEFAULT_SEED
    try:
        seed = current_seed()
        args = build_parser().parse_args(argv)
        report.update(_plain(args.func(args, seed)))
    except InvalidInput as exc:
        code = EXIT_INVALID
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except CapExceeded as exc:
        code = EXIT_CAP
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except InternalCheckFailure as exc:
        code = EXIT_INTERNAL
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except CrystalkitError as exc:
        code = EXIT_INVALID
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    report["provenance"] = provenance(seed)
    return code, report


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help", "--version") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    fmt = "text" if "--format" in argv and argv[argv.index("--format") + 1:][:1] == ["text"] else "json"
    code, report = run_command(argv)
    sys.stdout.write(render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
