"""Command-line surface.

Commands: classify, subgroup, verify, render, enumerate.  All documents are
JSON.  Exit codes: 0 pass (or expected counterexample), 1 violation of the
facet-count bound or a failing suite, 2 input error, 3 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import diagrams as _diagrams_mod
from . import engine as _engine_mod
from . import geometry as _geometry_mod
from . import tolerances as _tol_mod
from .diagrams import (
    ELLIPTIC,
    PARABOLIC_UNION,
    DiagramError,
    CoxeterDiagram,
    classify_diagram,
    diagram_art,
    gram_from_coxeter,
    matrix_from_doc,
    signature,
)
from .engine import (
    Bounds,
    EngineError,
    IndexBoundExceeded,
    SubgroupSpec,
    chamber_bfs,
    theorem_check,
)
from .geometry import GeometryError
from .harness import Corpus, enumerate_and_verify, run_suite
from .render import RenderSpec, render_svg

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


class InputError(ValueError):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_matrix(path: str):
    doc = _load_json(path)
    try:
        return matrix_from_doc(doc)
    except DiagramError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_subgroup(path: str) -> SubgroupSpec:
    doc = _load_json(path)
    try:
        return SubgroupSpec.from_doc(doc)
    except (EngineError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(doc, output: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _apply_tolerances(args):
    overrides = {}
    if args.tol_geo is not None:
        overrides["TOL_GEO"] = args.tol_geo
        overrides["TOL_SIG"] = args.tol_geo
    if args.tol_ang is not None:
        overrides["TOL_ANG"] = args.tol_ang
    for name, value in overrides.items():
        for mod in (_tol_mod, _diagrams_mod, _geometry_mod, _engine_mod):
            if hasattr(mod, name):
                setattr(mod, name, value)


def _bounds(args) -> Bounds:
    return Bounds(
        max_depth=args.max_depth,
        max_chambers=args.max_chambers,
        max_index=args.max_index,
    )


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    m = _load_matrix(args.group)
    g = gram_from_coxeter(m)
    sig = signature(g)
    cls = classify_diagram(CoxeterDiagram(m))
    if cls.kind == ELLIPTIC:
        kind = "elliptic"
    elif cls.kind == PARABOLIC_UNION:
        kind = "parabolic"
    elif sig == (m.rank - 1, 0, 1):
        kind = "hyperbolic"
    else:
        kind = "indefinite"
    print(diagram_art(CoxeterDiagram(m)))
    print(f"signature: ({sig[0]},{sig[1]},{sig[2]})")
    print(f"type: {kind}")
    print(f"components: [{', '.join(cls.components)}]")
    if args.output:
        _emit(
            {
                "signature": list(sig),
                "type": kind,
                "components": list(cls.components),
            },
            args.output,
        )
    return EXIT_OK


def cmd_subgroup(args) -> int:
    m = _load_matrix(args.group)
    h = _load_subgroup(args.subgroup)
    try:
        v = theorem_check(m, h, _bounds(args))
    except IndexBoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    _emit(v.to_doc(), args.output)
    if v.holds or not v.finite_volume:
        return EXIT_OK
    return EXIT_VIOLATION


def cmd_verify(args) -> int:
    corpus = Corpus(
        max_depth=args.max_depth,
        max_index=args.max_index,
        max_chambers=args.max_chambers,
    )
    names = (
        ["theorem", "lemma1", "lemma2", "lemma3", "remark2"]
        if args.suite == "all"
        else [args.suite]
    )
    if args.jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            futs = [
                ex.submit(run_suite, n, corpus, args.max_rank) for n in names
            ]
            reports = [r for f in futs for r in f.result()]
    else:
        reports = [
            r for n in names for r in run_suite(n, corpus, args.max_rank)
        ]
    doc = [r.to_doc() for r in reports]
    _emit(doc, args.output)
    failed = [r.suite for r in reports if not r.passed]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        print(
            f"{r.suite}: {status} ({r.cases} cases, "
            f"{len(r.violations)} violations, {r.wall_clock:.1f}s)",
            file=sys.stderr,
        )
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_render(args) -> int:
    m = _load_matrix(args.group)
    highlight = _load_subgroup(args.highlight) if args.highlight else None
    spec = RenderSpec(model=args.model, depth=args.depth, highlight=highlight)
    try:
        svg, count = render_svg(m, spec)
    except GeometryError as exc:
        print(f"render: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = args.output or "tiling.svg"
    with open(out, "w") as fh:
        fh.write(svg + "\n")
    expect = len(chamber_bfs(m, args.depth))
    print(f"{out}: {count} chambers", file=sys.stderr)
    return EXIT_OK if count == expect else EXIT_VIOLATION


def cmd_enumerate(args) -> int:
    corpus = Corpus(
        max_depth=args.max_depth,
        max_index=args.max_index,
        max_chambers=args.max_chambers,
    )
    rep = enumerate_and_verify(corpus)
    _emit(rep.to_doc(), args.output)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chambers",
        description="Reflection-group chambers, subgroups, and tilings.",
    )
    p.add_argument("--tol-geo", type=float, default=None)
    p.add_argument("--tol-ang", type=float, default=None)
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--max-chambers", type=int, default=20000)
    p.add_argument("--max-index", type=int, default=48)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="type a Coxeter matrix")
    c.add_argument("group", help="matrix document (JSON)")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("subgroup", help="facet-count verdict for a subgroup")
    s.add_argument("group")
    s.add_argument("subgroup", help="reflections document (JSON)")
    s.set_defaults(func=cmd_subgroup)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument(
        "--suite",
        choices=["theorem", "lemma1", "lemma2", "lemma3", "remark2", "all"],
        default="all",
    )
    v.add_argument("--max-rank", type=int, default=8)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG tiling figure")
    r.add_argument("group")
    r.add_argument("--depth", type=int, default=4)
    r.add_argument(
        "--model",
        choices=["auto", "poincare_disk", "euclidean_plane"],
        default="auto",
    )
    r.add_argument("--highlight", default=None, help="subgroup document")
    r.set_defaults(func=cmd_render)

    e = sub.add_parser("enumerate", help="enumerate subgroup corpus entries")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _apply_tolerances(args)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DiagramError, GeometryError, EngineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
