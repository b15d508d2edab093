"""Property suites: the facet-count theorem over an enumerated corpus of
finite-index reflection subgroups, splitting-line properties of Coxeter
polygons, the diagram property behind vertex-link sections, and the
infinite-volume strip regression.

Suites never abort on the first violation; each violation carries enough
input to reproduce it.  Reports are deterministic for fixed bounds (the
wall-clock field aside).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .diagrams import (
    ELLIPTIC,
    PARABOLIC_UNION,
    CoxeterMatrix,
    classify_diagram,
    coxeter_matrix,
    enumerate_parabolic_unions,
    matrix_to_doc,
    remove_node,
    triangle_matrix,
)
from .engine import (
    Bounds,
    EngineError,
    SubgroupSpec,
    _ctx,
    canonical_generators,
    chamber_bfs,
    chamber_polytope,
    theorem_check,
)
from .geometry import (
    GeometryError,
    Polytope,
    area2,
    euclidean_half_strip,
    has_finite_volume,
    hyperplane_through,
    is_acute_angled,
    is_coxeter_polytope,
    split_by_hyperplane,
)


def group_label(m: CoxeterMatrix) -> str:
    if m.rank == 3 and not m.weights:
        offs = sorted(
            m.entries[i][j] for i in range(3) for j in range(i + 1, 3)
        )
        if 0 not in offs:
            return f"triangle({offs[0]},{offs[1]},{offs[2]})"
    return f"rank{m.rank}:{matrix_to_doc(m)}"


DEFAULT_GROUPS = (
    triangle_matrix(3, 3, 3),
    triangle_matrix(2, 4, 4),
    triangle_matrix(2, 3, 6),
    triangle_matrix(2, 3, 7),
    triangle_matrix(2, 3, 8),
    triangle_matrix(2, 4, 5),
)

# half-strip groups: parallel walls 0, 1 and a perpendicular cap wall 2
HALF_STRIP_E2 = coxeter_matrix([[1, 0, 2], [0, 1, 2], [2, 2, 1]])
HALF_STRIP_H2 = coxeter_matrix(
    [[1, 0, 2], [0, 1, 2], [2, 2, 1]], weights=[(0, 1, -math.cosh(1.0))]
)

# rectangle group: two parallel pairs of walls at right angles
RECTANGLE = coxeter_matrix(
    [[1, 0, 2, 2], [0, 1, 2, 2], [2, 2, 1, 0], [2, 2, 0, 1]]
)


@dataclass(frozen=True)
class Corpus:
    groups: tuple = DEFAULT_GROUPS
    max_depth: int = 8
    max_index: int = 48
    max_chambers: int = 20000
    max_pool: int = 16  # reflections considered per group
    max_systems: int = 400  # canonical systems retained per level


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    violations: list = field(default_factory=list)
    expected_counterexamples: list = field(default_factory=list)
    skipped: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)
    wall_clock: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_doc(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "violations": self.violations,
            "expected_counterexamples": self.expected_counterexamples,
            "skipped": self.skipped,
            "entries": self.entries,
            "wall_clock": round(self.wall_clock, 3),
        }


# ---------------------------------------------------------------------------
# theorem suite


def _reflection_pool(m: CoxeterMatrix, depth: int, cap: int):
    """Distinct positive roots of reflections w s_i w^-1, |w| <= depth,
    ordered by mirror distance from the base probe (then by coordinates)."""
    ctx = _ctx(m)
    ctx.realize()
    cs = chamber_bfs(m, depth)
    roots = {}
    for ch in cs.chambers.values():
        for i in range(m.rank):
            root = ctx.make_positive(ch.matrix[:, i])
            roots.setdefault(ctx.root_key(root), root)
    ordered = sorted(
        roots.items(),
        key=lambda kv: (round(abs(ctx.eval_root(kv[1], ctx.probe)), 9), kv[0]),
    )
    return [r for _, r in ordered[:cap]]


def _system_closure(m: CoxeterMatrix, pool, max_size: int, max_systems: int):
    """All distinct canonical systems reachable by adjoining pool roots,
    one at a time, up to generating sets of max_size reflections."""
    systems = {}
    level = {}
    for r in pool:
        try:
            s = canonical_generators(m, SubgroupSpec(roots=(tuple(r),)))
        except EngineError:
            continue
        if s.key() not in systems:
            systems[s.key()] = s
            level[s.key()] = s
    skipped = 0
    for _ in range(max_size - 1):
        new = {}
        for key in sorted(level):
            for r in pool:
                try:
                    s = canonical_generators(
                        m,
                        SubgroupSpec(roots=level[key].roots + (tuple(r),)),
                    )
                except EngineError:
                    continue
                if s.key() in systems:
                    continue
                if len(new) >= max_systems:
                    skipped += 1
                    continue
                systems[s.key()] = s
                new[s.key()] = s
        level = new
    return systems, skipped


def enumerate_and_verify(c: Corpus = Corpus()) -> SuiteReport:
    """Theorem suite: every finite-covolume subgroup entry found within the
    corpus bounds must satisfy k_P >= k_F."""
    t0 = time.monotonic()
    rep = SuiteReport("theorem")
    rep.skipped = {"infinite_volume": 0, "index_bound": 0, "systems_cap": 0}
    bounds = Bounds(
        max_depth=c.max_depth,
        max_chambers=c.max_chambers,
        max_index=c.max_index,
    )
    for m in c.groups:
        label = group_label(m)
        ctx = _ctx(m)
        ctx.realize()
        area_f = area2(ctx.chamber) if has_finite_volume(ctx.chamber) else None
        pool = _reflection_pool(m, c.max_depth // 2, c.max_pool)
        systems, capped = _system_closure(m, pool, 4, c.max_systems)
        rep.skipped["systems_cap"] += capped
        for key in sorted(systems):
            sys = systems[key]
            if len(sys) < 3:
                # a 2D chamber needs at least 3 facets to have finite volume
                rep.skipped["infinite_volume"] += 1
                continue
            D = chamber_polytope(m, sys)
            if not has_finite_volume(D):
                rep.skipped["infinite_volume"] += 1
                continue
            if area_f is not None and area2(D) / area_f > c.max_index + 0.5:
                rep.skipped["index_bound"] += 1
                continue
            h = SubgroupSpec(roots=sys.roots)
            try:
                v = theorem_check(m, h, bounds)
            except EngineError:
                rep.skipped["index_bound"] += 1
                continue
            rep.cases += 1
            entry = {"group": label, "roots": _round_roots(sys.roots)}
            entry.update(v.to_doc())
            rep.entries.append(entry)
            if not v.holds:
                rep.violations.append(entry)
            if len(sys) != v.k_P:
                rep.violations.append(
                    {**entry, "error": "|canonical system| != facet count"}
                )
    rep.wall_clock = time.monotonic() - t0
    return rep


def _round_roots(roots) -> list:
    return [[round(float(x), 9) + 0.0 for x in r] for r in roots]


# ---------------------------------------------------------------------------
# splitting-line grids


def _boundary_samples(p: Polytope, per_edge: int):
    pts = []
    for f in p.facets:
        lo = f.lo if math.isfinite(f.lo) else -3.0
        hi = f.hi if math.isfinite(f.hi) else 3.0
        for k in range(1, per_edge + 1):
            t = lo + (hi - lo) * k / (per_edge + 1)
            pts.append((f.index, f.chart_at(t)))
    return pts


def splitting_grid(p: Polytope, per_edge: int = 24, max_lines: int = 150):
    """Deterministic grid of candidate splitting lines: lines through pairs
    of boundary samples on distinct facets, deduplicated and decimated."""
    samples = _boundary_samples(p, per_edge)
    lines = {}
    for a in range(len(samples)):
        fa, pa = samples[a]
        for b in range(a + 1, len(samples)):
            fb, pb = samples[b]
            if fa == fb:
                continue
            try:
                hp = hyperplane_through(p.space, pa, pb)
            except GeometryError:
                continue
            lines.setdefault(hp.locus_key(grid=1e-4), hp)
    ordered = [lines[k] for k in sorted(lines)]
    if len(ordered) > max_lines:
        stride = math.ceil(len(ordered) / max_lines)
        ordered = ordered[::stride]
    return ordered


def lemma1_suite(polygons=None, per_edge: int = 24,
                 max_lines: int = 150) -> SuiteReport:
    """Splitting suite: whenever both parts of a split have more facets than
    the whole, the splitting line meets every facet interior; and a split
    with a Coxeter part and full facet contact only occurs inside a Coxeter
    polygon."""
    t0 = time.monotonic()
    rep = SuiteReport("lemma1")
    if polygons is None:
        polygons = []
        for m in DEFAULT_GROUPS:
            ctx = _ctx(m)
            ctx.realize()
            polygons.append(ctx.chamber)
        polygons.append(_half_strip_chamber())
    for pi, p in enumerate(polygons):
        k = p.facet_count
        for hp in splitting_grid(p, per_edge, max_lines):
            try:
                s = split_by_hyperplane(p, hp)
            except GeometryError:
                continue
            rep.cases += 1
            repro = {"polygon": pi, "line": list(hp.locus_key())}
            if (
                s.p1.facet_count >= k + 1
                and s.p2.facet_count >= k + 1
                and not s.meets_every_facet_interior
            ):
                rep.violations.append(
                    {**repro, "error": "parts grew without full facet contact"}
                )
            if (
                s.meets_every_facet_interior
                and is_coxeter_polytope(s.p1)
                and not is_coxeter_polytope(p)
            ):
                rep.violations.append(
                    {**repro, "error": "Coxeter part inside non-Coxeter whole"}
                )
    rep.wall_clock = time.monotonic() - t0
    return rep


def lemma2_suite(max_rank: int = 8) -> SuiteReport:
    """Diagram suite: removing any node from a disjoint union of connected
    parabolic diagrams never leaves a parabolic union; removing a node from
    an elliptic diagram leaves an elliptic diagram."""
    t0 = time.monotonic()
    rep = SuiteReport("lemma2")
    rep.skipped = {"elliptic_cases": 0}
    # cases counts exactly the parabolic node removals (exhaustiveness check)
    for d in enumerate_parabolic_unions(max_rank):
        for v in d.nodes:
            rep.cases += 1
            sub = classify_diagram(remove_node(d, v))
            if sub.kind == PARABOLIC_UNION:
                rep.violations.append(
                    {"diagram": classify_diagram(d).components, "node": v}
                )
    # spherical half: elliptic stays elliptic under node removal
    for name in ("A3", "B3", "H3", "F4", "D4"):
        from .diagrams import family_diagram

        d = family_diagram(name)
        for v in d.nodes:
            rep.skipped["elliptic_cases"] += 1
            if classify_diagram(remove_node(d, v)).kind != ELLIPTIC:
                rep.violations.append({"diagram": (name,), "node": v})
    rep.wall_clock = time.monotonic() - t0
    return rep


def _half_strip_chamber() -> Polytope:
    return euclidean_half_strip(2.0)


def lemma3_suite(polygons=None, per_edge: int = 24,
                 max_lines: int = 150) -> SuiteReport:
    """Acute-angle suite: when a splitting line meets every facet interior
    and contains no vertex of a finite-volume polygon, neither part is
    acute-angled.  In dimension 2 a line crosses the boundary twice, so the
    hypothesis is satisfiable only on 2-facet strips, which finite volume
    excludes; the suite records the hypothesis count and the infinite-volume
    counterexample explicitly."""
    t0 = time.monotonic()
    rep = SuiteReport("lemma3")
    rep.skipped = {"hypothesis_cases": 0}
    if polygons is None:
        polygons = []
        for m in DEFAULT_GROUPS:
            ctx = _ctx(m)
            ctx.realize()
            polygons.append(ctx.chamber)
    for pi, p in enumerate(polygons):
        if not has_finite_volume(p):
            continue
        for hp in splitting_grid(p, per_edge, max_lines):
            try:
                s = split_by_hyperplane(p, hp)
            except GeometryError:
                continue
            rep.cases += 1
            if not (s.meets_every_facet_interior and not s.contains_vertex):
                continue
            rep.skipped["hypothesis_cases"] += 1
            repro = {"polygon": pi, "line": list(hp.locus_key())}
            if is_acute_angled(s.p1) or is_acute_angled(s.p2):
                rep.violations.append(
                    {**repro, "error": "acute-angled part under hypotheses"}
                )
    # infinite-volume strip: hypotheses hold yet the parts are acute-angled;
    # expected, since the statement assumes finite volume
    from .geometry import Hyperplane, euclidean_strip

    strip = euclidean_strip(2.0)
    mid = Hyperplane.euclidean([1.0, 0.0], 0.0)
    s = split_by_hyperplane(strip, mid)
    rep.cases += 1
    if (
        s.meets_every_facet_interior
        and not s.contains_vertex
        and is_acute_angled(s.p1)
    ):
        rep.expected_counterexamples.append(
            {
                "polygon": "euclidean strip",
                "note": "acute-angled part; finite volume is necessary",
            }
        )
    else:
        rep.violations.append({"error": "strip counterexample did not hold"})
    rep.wall_clock = time.monotonic() - t0
    return rep


# ---------------------------------------------------------------------------
# strip regression


def remark2_regression() -> SuiteReport:
    """Infinite-volume counterexample: the strip subgroup of the half-strip
    group has a 2-facet chamber although the group chamber has 3 facets."""
    t0 = time.monotonic()
    rep = SuiteReport("remark2")
    h = SubgroupSpec.from_words((0,), (1,))
    for label, m in (("E2", HALF_STRIP_E2), ("H2", HALF_STRIP_H2)):
        rep.cases += 1
        v = theorem_check(m, h)
        entry = {"config": label, **v.to_doc()}
        rep.entries.append(entry)
        ok = (
            not v.holds
            and not v.finite_volume
            and (v.k_F, v.k_P, v.index) == (3, 2, 2)
        )
        if ok:
            rep.expected_counterexamples.append(entry)
        else:
            rep.violations.append(entry)
    # sanity control: doubling a finite rectangle keeps 4 facets, so the
    # facet-count bound holds
    rep.cases += 1
    hv = SubgroupSpec.from_words((1,), (2,), (3,), (0, 1, 0))
    v = theorem_check(RECTANGLE, hv)
    entry = {"config": "rectangle", **v.to_doc()}
    rep.entries.append(entry)
    if not (v.holds and v.finite_volume and v.k_F == 4 and v.k_P == 4):
        rep.violations.append(entry)
    rep.wall_clock = time.monotonic() - t0
    return rep


def run_suite(name: str, corpus: Corpus = Corpus(),
              max_rank: int = 8) -> list[SuiteReport]:
    suites = {
        "theorem": lambda: enumerate_and_verify(corpus),
        "lemma1": lemma1_suite,
        "lemma2": lambda: lemma2_suite(max_rank),
        "lemma3": lemma3_suite,
        "remark2": remark2_regression,
    }
    if name == "all":
        return [suites[k]() for k in ("theorem", "lemma1", "lemma2", "lemma3", "remark2")]
    if name not in suites:
        raise EngineError(f"unknown suite {name!r}")
    return [suites[name]()]
