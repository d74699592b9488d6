"""Command-line front end: build objects into an on-disk catalog, run
verification pipelines, and emit certificates, diagrams, and graph6.

Commands: construct, certify, diagram, list, export. The catalog
directory comes from --catalog, else the GDDKIT_CATALOG environment
variable, else ./catalog. Exit codes: 0 all checks pass, 1 a check
failed (certificate still written), 2 usage or input error.

Check semantics (pass criteria):
  gdd       design axioms hold with the recipe's parameters
  dual      the dual is a GDD with the same parameters
  diagram   the six-cell partition is equitable at every vertex and
            matches the parameter formulas
  walkreg   2-walk-regular (or better) and all consistency cross-checks
  spectrum  numeric spectrum consistent with the exact eigenvalue
            count; family annihilator verified exactly when applicable
  scheme    the six-relation set satisfies the scheme axioms exactly
  eigenmatrices  numeric P, Q match the closed forms and P Q = |X| I
  dihedral  the recipe's natural group is dihedral and regular
  arc_transitivity  2-arc-transitive under the recipe's natural group
            (gamma_dq) or the full automorphism group (others)
  aut       automorphism group computed; records order and arc orbit
            counts (pass unless the computation itself fails)

Certificates are deterministic: identical recipe -> identical id ->
byte-identical certificate (no timestamps; floats rounded to 9 places).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, construct, design as dsg, graph6, scheme, spectral, symmetry
from .design import GDDParams
from .graph import Graph, check_equitable, diagram_to_ascii, diagram_to_dot, gdddp_diagram, metrics, six_cell_partition
from .symmetry import PermGroup

ALL_CHECKS = (
    "gdd", "dual", "diagram", "walkreg", "spectrum",
    "scheme", "eigenmatrices", "dihedral", "arc_transitivity", "aut",
)

KINDS = ("gamma_dq", "gamma_dqn", "rds_dihedrant", "bicoset", "raw_graph6", "raw_design")


class UsageError(Exception):
    pass


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def recipe_id(recipe: dict) -> str:
    return hashlib.sha256(_canonical_json(recipe).encode()).hexdigest()[:16]


def _round(x: float) -> float:
    r = round(float(x), 9)
    return 0.0 if r == 0 else r  # avoid -0.0


@dataclass
class Materialized:
    recipe: dict
    graph: Graph
    design: tuple | None          # (structure, groups, params)
    params: GDDParams | None
    natural_groups: dict          # name -> list of generator Permutations


def materialize(recipe: dict) -> Materialized:
    kind = recipe.get("kind")
    if kind not in KINDS:
        raise UsageError(f"unknown recipe kind {kind!r}; expected one of {KINDS}")
    try:
        if kind == "gamma_dq":
            d, q = int(recipe["d"]), int(recipe["q"])
            gamma = construct.graph_dq(d, q)
            triple = construct.design_dq(d, q)
            rho, phi = construct.singer_polarity(d, q)
            gl_perms = construct.gl_action_generators(d, q)
            return Materialized(
                recipe, gamma.graph, triple, triple[2],
                {"dihedral": [rho, phi], "two_arc": gl_perms + [phi]},
            )
        if kind == "gamma_dqn":
            d, q, n = int(recipe["d"]), int(recipe["q"]), int(recipe["n"])
            g = construct.graph_dqn(d, q, n)
            params = GDDParams(
                n=n, m=(q**d - 1) // (q - 1), k=q ** (d - 1),
                lambda1=0, lambda2=q ** (d - 2) * (q - 1) // n,
            )
            return Materialized(recipe, g, None, params, {})
        if kind == "rds_dihedrant":
            modulus, n = int(recipe["modulus"]), int(recipe["n"])
            if modulus % n:
                raise UsageError("modulus must be divisible by n")
            spec = construct.verify_rds(recipe["set"], modulus // n, n)
            g = construct.dihedrant_from_rds(spec)
            params = GDDParams(spec.n, spec.m, spec.k, 0, spec.lam)
            return Materialized(
                recipe, g, None, params,
                {"dihedral": construct.left_dihedral_generators(spec.modulus)},
            )
        if kind == "bicoset":
            d, q = int(recipe["d"]), int(recipe["q"])
            return Materialized(recipe, construct.bicoset_graph(d, q), None, None, {})
        if kind == "raw_graph6":
            return Materialized(recipe, graph6.decode(recipe["graph6"]), None, None, {})
        # raw_design
        structure = dsg.IncidenceStructure.from_blocks(
            int(recipe["points"]), [list(b) for b in recipe["blocks"]]
        )
        groups = tuple(frozenset(c) for c in recipe["groups"]) if "groups" in recipe else None
        params = None
        if "params" in recipe:
            pr = recipe["params"]
            params = GDDParams(pr["n"], pr["m"], pr["k"], pr["l1"], pr["l2"])
        triple = (structure, groups, params) if groups and params else None
        return Materialized(recipe, dsg.incidence_graph(structure), triple, params, {})
    except UsageError:
        raise
    except (KeyError, TypeError) as exc:
        raise UsageError(f"recipe for {kind} is missing or mistypes a field: {exc}")
    except ValueError as exc:
        raise UsageError(str(exc))


def _has_six_cell_shape(m: Materialized) -> bool:
    met = metrics(m.graph)
    return met.connected and met.bipartite and met.diameter == 4


def applicable_checks(m: Materialized) -> list[str]:
    kind = m.recipe["kind"]
    met = metrics(m.graph)
    out = []
    if m.design is not None or _has_six_cell_shape(m):
        out += ["gdd", "dual"]
    if _has_six_cell_shape(m):
        out += ["diagram", "scheme", "eigenmatrices"]
    if met.connected:
        out += ["walkreg", "spectrum"]
        if m.graph.n <= symmetry.DEGREE_CAP:
            out += ["arc_transitivity", "aut"]
    if "dihedral" in m.natural_groups:
        out.append("dihedral")
    return [c for c in ALL_CHECKS if c in out]


def _design_triple(m: Materialized):
    if m.design is not None and m.design[1] is not None and m.design[2] is not None:
        return m.design
    return construct.extract_gdddp_from_dihedrant(m.graph)


def _diagram_params(m: Materialized):
    structure, groups, params = _design_triple(m)
    return params.k, params.lambda2, params.n - 1


def run_check(name: str, m: Materialized) -> dict:
    try:
        if name == "gdd":
            structure, groups, params = _design_triple(m)
            if m.params is not None and tuple(params) != tuple(m.params):
                return {"pass": False, "error": f"extracted {tuple(params)} != recipe {tuple(m.params)}"}
            rep = dsg.verify_gdd(structure, groups, params)
            return {
                "pass": rep.passed,
                "degenerate": rep.degenerate,
                "params": dict(params._asdict()),
                **({"witness": list(map(str, rep.witness))} if rep.witness else {}),
            }
        if name == "dual":
            structure, groups, params = _design_triple(m)
            rep = dsg.verify_dual_property(structure, params)
            return {"pass": rep.passed,
                    **({"witness": list(map(str, rep.witness))} if rep.witness else {})}
        if name == "diagram":
            k, c2, k4 = _diagram_params(m)
            want = gdddp_diagram(k, c2, k4)
            for x in range(m.graph.n):
                rep = check_equitable(m.graph, six_cell_partition(m.graph, x))
                if not rep.equitable or rep.diagram != want:
                    return {"pass": False, "vertex": x,
                            "witness": str(rep.witness or rep.diagram)}
            return {"pass": True, "sizes": list(want.sizes),
                    "k": k, "c2": c2, "k4": k4}
        if name == "walkreg":
            rep = spectral.walk_regularity_consistency(m.graph)
            return {
                "pass": rep.max_t >= 2,
                "max_t": rep.max_t,
                "diameter": rep.diameter,
                "distinct_eigenvalues": rep.dim,
                "distance_regular": rep.distance_regular,
            }
        if name == "spectrum":
            summary = spectral.numeric_spectrum(m.graph)
            out = {
                "pass": summary.verified,
                "distinct_count": summary.distinct_count,
                "eigenvalues": [
                    {**spectral.eigenvalue_descriptor(v), "multiplicity": mult}
                    for v, mult in summary.eigenvalues
                ],
            }
            if _has_six_cell_shape(m):
                k, c2, k4 = _diagram_params(m)
                b2 = k - (k4 + 1) * c2
                squares = sorted({k * k, k, b2}, reverse=True)
                poly = spectral.poly_from_squares([s for s in squares if s > 0])
                verified = spectral.verify_annihilating_polynomial(m.graph, poly)
                dim = spectral.adjacency_algebra_dimension(m.graph)
                out["annihilator"] = {
                    "squares": [s for s in squares if s > 0],
                    "coefficients_low_first": poly,
                    "verified": verified,
                    "is_minimal": verified and len(poly) - 1 == dim,
                }
                out["pass"] = bool(out["pass"] and verified)
            return out
        if name == "scheme":
            rel = scheme.build_gdddp_scheme(m.graph)
            rep = scheme.verify_scheme_axioms(rel)
            return {
                "pass": rep.passed and rep.symmetric and rep.commutative,
                "symmetric": rep.symmetric,
                "commutative": rep.commutative,
                "valencies": list(rep.valencies) if rep.valencies else None,
                "p": [[list(r) for r in pi] for pi in rep.p] if rep.p else None,
                **({"witness": list(map(str, rep.witness))} if rep.witness else {}),
            }
        if name == "eigenmatrices":
            k, c2, k4 = _diagram_params(m)
            rel = scheme.build_gdddp_scheme(m.graph)
            computed = scheme.eigenmatrices(rel)
            closed = scheme.closed_form_eigenmatrices(k, k4, c2)
            rows = scheme.match_rows_by_eigenvalue(computed, closed)
            dev = max(
                float(np.abs(computed.p[i] - closed.p[rows[i]]).max())
                for i in range(len(rows))
            )
            dev_q = max(
                float(np.abs(computed.q[:, i] - closed.q[:, rows[i]]).max())
                for i in range(len(rows))
            )
            pq_gap = float(
                np.abs(computed.p @ computed.q - computed.size * np.eye(len(rows))).max()
            )
            return {
                "pass": dev <= 1e-9 and dev_q <= 1e-9 and pq_gap <= 1e-9 * computed.size,
                "P": [[_round(x) for x in row] for row in computed.p],
                "Q": [[_round(x) for x in row] for row in computed.q],
                "multiplicities": list(computed.multiplicities),
                "max_deviation_from_closed_form": _round(max(dev, dev_q)),
            }
        if name == "dihedral":
            gens = m.natural_groups["dihedral"]
            grp = PermGroup(gens, degree=m.graph.n)
            ok = symmetry.is_dihedral_regular(grp, m.graph)
            return {"pass": ok, "order": grp.order(), "vertices": m.graph.n}
        if name == "arc_transitivity":
            if "two_arc" in m.natural_groups:
                grp = PermGroup(m.natural_groups["two_arc"], degree=m.graph.n)
                under = "constructed"
            else:
                grp = symmetry.automorphism_group(m.graph)
                under = "automorphism"
            r1 = symmetry.is_t_arc_transitive_under(grp, m.graph, 1)
            r2 = symmetry.is_t_arc_transitive_under(grp, m.graph, 2)
            return {
                "pass": r2.transitive,
                "group": under,
                "group_order": grp.order(),
                "arcs": {"orbit": r1.orbit_size, "total": r1.total, "transitive": r1.transitive},
                "two_arcs": {"orbit": r2.orbit_size, "total": r2.total, "transitive": r2.transitive},
            }
        if name == "aut":
            grp = symmetry.automorphism_group(m.graph)
            arc_orbits = symmetry.arc_orbit_count(grp, m.graph, 1)
            r1 = symmetry.is_t_arc_transitive_under(grp, m.graph, 1)
            r2 = symmetry.is_t_arc_transitive_under(grp, m.graph, 2)
            return {
                "pass": True,
                "order": grp.order(),
                "vertex_transitive": grp.is_transitive(),
                "arc_orbits": arc_orbits,
                "one_arc_transitive": r1.transitive,
                "two_arc_transitive": r2.transitive,
            }
    except (ValueError, RuntimeError) as exc:
        return {"pass": False, "error": str(exc)}
    raise UsageError(f"unknown check {name!r}")


# ---------------------------------------------------------------------------
# catalog

def _catalog_dir(args) -> str:
    return args.catalog or os.environ.get("GDDKIT_CATALOG") or "catalog"


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _load_index(cat: str) -> dict:
    path = os.path.join(cat, "index.json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return {}


def _store(cat: str, oid: str, recipe: dict, g: Graph) -> None:
    os.makedirs(cat, exist_ok=True)
    _atomic_write(os.path.join(cat, f"{oid}.recipe.json"), _canonical_json(recipe) + "\n")
    _atomic_write(os.path.join(cat, f"{oid}.g6"), graph6.encode(g) + "\n")
    index = _load_index(cat)
    index[oid] = {"kind": recipe["kind"], "vertices": g.n}
    _atomic_write(os.path.join(cat, "index.json"), json.dumps(index, sort_keys=True, indent=1) + "\n")


def _load_object(cat: str, oid: str) -> Materialized:
    path = os.path.join(cat, f"{oid}.recipe.json")
    if not os.path.exists(path):
        raise UsageError(f"unknown id {oid!r} in catalog {cat!r}")
    with open(path) as fh:
        recipe = json.load(fh)
    m = materialize(recipe)
    g6path = os.path.join(cat, f"{oid}.g6")
    if os.path.exists(g6path):
        with open(g6path) as fh:
            stored = graph6.decode(fh.read())
        if stored.n != m.graph.n or stored.edge_count() != m.graph.edge_count():
            raise UsageError(f"stored graph for {oid} does not match its recipe")
    return m


# ---------------------------------------------------------------------------
# commands

def cmd_construct(args) -> int:
    if args.recipe is not None:
        text = args.recipe
    elif args.recipe_file is not None:
        with open(args.recipe_file) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    try:
        recipe = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"recipe is not valid JSON: {exc}")
    m = materialize(recipe)
    oid = recipe_id(recipe)
    _store(_catalog_dir(args), oid, recipe, m.graph)
    print(oid)
    return 0


def cmd_certify(args) -> int:
    cat = _catalog_dir(args)
    m = _load_object(cat, args.id)
    allowed = applicable_checks(m)
    if args.checks in (None, "all"):
        names = allowed
    else:
        names = [c.strip() for c in args.checks.split(",") if c.strip()]
        for c in names:
            if c not in ALL_CHECKS:
                raise UsageError(f"unknown check {c!r}")
            if c not in allowed:
                raise UsageError(
                    f"check {c!r} is not applicable to this object "
                    f"(applicable: {','.join(allowed)})"
                )
    results = {name: run_check(name, m) for name in names}
    cert = {
        "id": args.id,
        "tool": f"gddkit {__version__}",
        "recipe": m.recipe,
        "vertices": m.graph.n,
        "checks": results,
        "pass": all(r.get("pass") for r in results.values()),
    }
    text = json.dumps(cert, sort_keys=True, indent=1) + "\n"
    _atomic_write(os.path.join(cat, f"{args.id}.cert.json"), text)
    sys.stdout.write(text)
    return 0 if cert["pass"] else 1


def cmd_diagram(args) -> int:
    m = _load_object(_catalog_dir(args), args.id)
    g = m.graph
    met = metrics(g)
    if not met.connected:
        raise UsageError("diagram requires a connected graph")
    try:
        cells = six_cell_partition(g, 0)
    except ValueError:
        cells = None
    if cells is None:
        from .graph import distance_partition

        cells = distance_partition(g, 0)
    rep = check_equitable(g, cells)
    if not rep.equitable:
        print(f"partition is not equitable: witness {rep.witness}", file=sys.stderr)
        return 1
    print(diagram_to_dot(rep.diagram) if args.format == "dot" else diagram_to_ascii(rep.diagram))
    return 0


def cmd_list(args) -> int:
    index = _load_index(_catalog_dir(args))
    for oid in sorted(index):
        meta = index[oid]
        print(f"{oid}  {meta['kind']:14s}  {meta['vertices']:4d} vertices")
    return 0


def cmd_export(args) -> int:
    cat = _catalog_dir(args)
    m = _load_object(cat, args.id)
    if args.format == "graph6":
        print(graph6.encode(m.graph))
    else:
        print(json.dumps({"recipe": m.recipe, "graph6": graph6.encode(m.graph)}, sort_keys=True, indent=1))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gddkit",
        description="construct and certify group-divisible designs with the "
        "dual property and their incidence graphs",
    )
    parser.add_argument("--catalog", help="catalog directory (default $GDDKIT_CATALOG or ./catalog)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an object from a recipe and store it")
    p.add_argument("--recipe", help="recipe JSON string")
    p.add_argument("--recipe-file", help="path to a recipe JSON file (default: stdin)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="run checks and write a certificate")
    p.add_argument("id")
    p.add_argument("--checks", help="comma-separated check names, or 'all'")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("diagram", help="render the distribution diagram")
    p.add_argument("id")
    p.add_argument("--format", choices=("dot", "ascii"), default="ascii")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("list", help="list catalog contents")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("export", help="print a stored object")
    p.add_argument("id")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
