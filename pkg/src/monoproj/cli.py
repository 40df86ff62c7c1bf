"""Command-line front end.  One verb per operation; composition happens via
JSON files.  ``replay-acceptance`` re-runs the whole acceptance suite and, in
addition to a delimited results file, renders a timing figure.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size ceiling
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance
from . import polytope as pt
from .errors import CeilingExceededError, MonoprojError
from .newton_lemma import (check_xc_consequence, converse_construct,
                           main_lemma_extract, newton_polytope)
from .polynomial import Poly, gen_family
from .projection import (AffineProjectionMap, MonomialProjectionMap,
                         MonotoneFormula, ProjectionMap, affine_to_simple,
                         apply_affine, apply_monomial, apply_simple,
                         formula_to_perm_projection, search_monotone_projection)
from .semiring import by_tag
from .xc import rectangle_cover_lb, slack_matrix, xc_bounds

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CEILING = 3


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_gen(args):
    sr = by_tag(args.semiring)
    p = gen_family(args.family, args.n, args.q, sr)
    _emit(p.to_jsonable(), args.out)
    return EXIT_OK


def _cmd_eval(args):
    p = Poly.from_jsonable(_read_json(args.poly))
    point_raw = _read_json(args.point)
    point = {k: p.semiring.parse(v) for k, v in point_raw.items()}
    _emit({"value": p.semiring.format(p.evaluate(point))}, args.out)
    return EXIT_OK


def _cmd_project(args):
    g = Poly.from_jsonable(_read_json(args.poly))
    raw = _read_json(args.map)
    if args.kind == "simple":
        f = apply_simple(ProjectionMap.from_jsonable(raw), g)
    elif args.kind == "affine":
        f = apply_affine(AffineProjectionMap.from_jsonable(raw), g)
    else:
        f = apply_monomial(MonomialProjectionMap.from_jsonable(raw), g)
    _emit(f.to_jsonable(), args.out)
    return EXIT_OK


def _cmd_affine2simple(args):
    pi = AffineProjectionMap.from_jsonable(_read_json(args.map))
    big_m, sigma = affine_to_simple(pi, args.m)
    _emit({"M": big_m, "sigma": sigma.to_jsonable()}, args.out)
    return EXIT_OK


def _cmd_compile_formula(args):
    f = MonotoneFormula.from_jsonable(_read_json(args.formula))
    big_m, sigma = formula_to_perm_projection(f)
    _emit({"M": big_m, "sigma": sigma.to_jsonable()}, args.out)
    return EXIT_OK


def _cmd_search(args):
    f = Poly.from_jsonable(_read_json(args.poly))
    pi = search_monotone_projection(f, args.m, max_m=args.max_m)
    if pi is None:
        _emit({"found": False, "m": args.m}, args.out)
    else:
        _emit({"found": True, "m": args.m, "sigma": pi.to_jsonable()}, args.out)
    return EXIT_OK


def _cmd_newton(args):
    p = Poly.from_jsonable(_read_json(args.poly))
    _emit(newton_polytope(p).to_jsonable(), args.out)
    return EXIT_OK


def _cmd_hull(args):
    raw = _read_json(args.points)
    v = pt.hull_vertices([[Fraction(x) for x in p] for p in raw["points"]],
                         raw.get("dim"))
    _emit(v.to_jsonable(), args.out)
    return EXIT_OK


def _cmd_facets(args):
    v = pt.VPolytope.from_jsonable(_read_json(args.vpoly))
    _emit(pt.facet_enumeration(v).to_jsonable(), args.out)
    return EXIT_OK


def _cmd_vertices(args):
    h = pt.HPolytope.from_jsonable(_read_json(args.hpoly))
    _emit(pt.vertex_enumeration(h).to_jsonable(), args.out)
    return EXIT_OK


def _cmd_face(args):
    v = pt.VPolytope.from_jsonable(_read_json(args.vpoly))
    coords = [int(c) for c in args.coords.split(",")] if args.coords else []
    _emit(pt.coordinate_face(v, coords).to_jsonable(), args.out)
    return EXIT_OK


def _cmd_map(args):
    v = pt.VPolytope.from_jsonable(_read_json(args.vpoly))
    m = pt.AffineMapT.from_jsonable(_read_json(args.matrix))
    _emit(pt.image(m, v).to_jsonable(), args.out)
    return EXIT_OK


def _cmd_polytope(args):
    if args.action != "gen":
        raise MonoprojError(f"unknown polytope action {args.action!r}")
    if args.name == "birkhoff":
        v = pt.gen_cycle_cover_polytope(args.n)
    elif args.name == "tsp":
        v = pt.gen_tsp_polytope(args.n)
    elif args.name == "matching":
        v = pt.gen_pm_polytope(args.n)
    elif args.name == "cut":
        v = pt.gen_cut_polytope(args.n, args.q or 2)
    else:
        raise MonoprojError(f"unknown polytope name {args.name!r}")
    _emit(v.to_jsonable(), args.out)
    return EXIT_OK


def _cmd_slack(args):
    v = pt.VPolytope.from_jsonable(_read_json(args.vpoly))
    _emit(slack_matrix(v).to_jsonable(), args.out)
    return EXIT_OK


def _cmd_xc_bounds(args):
    v = pt.VPolytope.from_jsonable(_read_json(args.vpoly))
    lb, ub = xc_bounds(v)
    cover = rectangle_cover_lb(slack_matrix(v))
    _emit({"lb": lb, "ub": ub, "rectangle_cover": cover.value,
           "rectangle_cover_exact": cover.exact}, args.out)
    return EXIT_OK


def _cmd_lemma(args):
    g = Poly.from_jsonable(_read_json(args.g))
    pi = ProjectionMap.from_jsonable(_read_json(args.pi))
    cert = main_lemma_extract(pi, g)
    _emit(cert.to_jsonable(), args.out)
    return EXIT_OK if cert.image_ok else EXIT_VERIFY


def _cmd_converse(args):
    p = pt.VPolytope.from_jsonable(_read_json(args.vpoly))
    ell = pt.AffineMapT.from_jsonable(_read_json(args.map))
    f, pi_mono, (big_m, sigma) = converse_construct(p, args.m, ell,
                                                    degree_bound=args.degree_bound)
    _emit({"f": f.to_jsonable(), "pi_monomial": pi_mono.to_jsonable(),
           "M": big_m, "sigma": sigma.to_jsonable()}, args.out)
    return EXIT_OK


def _cmd_xc_consequence(args):
    f = Poly.from_jsonable(_read_json(args.f))
    g = Poly.from_jsonable(_read_json(args.g))
    rep = check_xc_consequence(f, g)
    _emit(rep.to_jsonable(), args.out)
    return EXIT_OK


def _render_report(results, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "acceptance.csv"
    with open(csv_path, "w") as fh:
        fh.write("criterion,status,seconds,message\n")
        for name, ok, secs, msg in results:
            fh.write(f"{name},{'pass' if ok else 'FAIL'},{secs:.3f},\"{msg}\"\n")

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r[0] for r in results]
    secs = [r[2] for r in results]
    colors = ["#2a9d4e" if r[1] else "#d62828" for r in results]
    fig, ax = plt.subplots(figsize=(9, 0.5 * max(4, len(results)) + 1))
    ax.barh(range(len(results)), secs, color=colors)
    ax.set_yticks(range(len(results)))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("acceptance criteria (green = pass, red = fail)")
    fig.tight_layout()
    fig.savefig(out_dir / "acceptance.png", dpi=120)
    plt.close(fig)
    return csv_path


def _cmd_replay(args):
    results = acceptance.replay(args.filter)
    width = max((len(r[0]) for r in results), default=10) + 2
    for name, ok, secs, msg in results:
        status = "pass" if ok else "FAIL"
        line = f"{name:<{width}} {status:<5} {secs:8.2f}s"
        if msg:
            line += f"  {msg}"
        print(line)
    if args.out:
        csv_path = _render_report(results, Path(args.out))
        print(f"report written to {csv_path.parent}")
    if not results:
        print("no criteria matched the filter", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if all(r[1] for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="monoproj",
        description="workbench for monotone projections, Newton polytopes, "
                    "and extension complexity at desk scale")
    ap.add_argument("--seed", type=int, default=0,
                    help="random seed (all verbs are deterministic; recorded "
                         "for provenance)")
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write the JSON artifact here instead of stdout")
        return p

    p = add("gen", _cmd_gen, help="generate a named polynomial family")
    p.add_argument("--family", required=True,
                   choices=["perm", "hc", "matching", "cut", "sat", "clow", "clique"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--semiring", default="real", choices=["real", "tropical", "bool"])

    p = add("eval", _cmd_eval, help="evaluate a polynomial at a point")
    p.add_argument("--poly", required=True)
    p.add_argument("--point", required=True)

    p = add("project", _cmd_project, help="apply a projection to a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--kind", default="simple", choices=["simple", "affine", "monomial"])

    p = add("affine2simple", _cmd_affine2simple,
            help="compile an affine projection of perm_m to a simple one")
    p.add_argument("--map", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("compile-formula", _cmd_compile_formula,
            help="compile a monotone formula to a permanent projection")
    p.add_argument("--formula", required=True)

    p = add("search", _cmd_search, help="exhaustive monotone projection search")
    p.add_argument("--poly", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-m", type=int, default=4, dest="max_m")

    p = add("newton", _cmd_newton, help="Newton polytope of a polynomial")
    p.add_argument("--poly", required=True)

    p = add("hull", _cmd_hull, help="vertex hull of a rational point set")
    p.add_argument("--points", required=True)

    p = add("facets", _cmd_facets, help="facet enumeration (V to H)")
    p.add_argument("--vpoly", required=True)

    p = add("vertices", _cmd_vertices, help="vertex enumeration (H to V)")
    p.add_argument("--hpoly", required=True)

    p = add("face", _cmd_face, help="coordinate face of a V-polytope")
    p.add_argument("--vpoly", required=True)
    p.add_argument("--coords", default="", help="comma-separated coordinate indices")

    p = add("map", _cmd_map, help="affine image of a V-polytope")
    p.add_argument("--vpoly", required=True)
    p.add_argument("--matrix", required=True)

    p = add("polytope", _cmd_polytope, help="generate a named polytope")
    p.add_argument("action", choices=["gen"])
    p.add_argument("--name", required=True,
                   choices=["birkhoff", "tsp", "matching", "cut"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)

    p = add("slack", _cmd_slack, help="slack matrix of a V-polytope")
    p.add_argument("--vpoly", required=True)

    p = add("xc-bounds", _cmd_xc_bounds, help="extension complexity bounds")
    p.add_argument("--vpoly", required=True)

    p = add("lemma", _cmd_lemma,
            help="extract a face-extension certificate from a projection")
    p.add_argument("--g", required=True)
    p.add_argument("--pi", required=True)

    p = add("converse", _cmd_converse,
            help="build a polynomial from a cycle-cover polytope extension")
    p.add_argument("--vpoly", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--degree-bound", type=int, default=24, dest="degree_bound")

    p = add("xc-consequence", _cmd_xc_consequence,
            help="check the xc(New(f)) <= c(New(g)) necessary condition")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)

    p = add("replay-acceptance", _cmd_replay, help="re-run the acceptance suite")
    p.add_argument("--filter", help="only run criteria whose name contains this")

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except CeilingExceededError as exc:
        print(f"ceiling exceeded: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (MonoprojError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
