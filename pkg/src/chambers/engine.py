"""Group-theoretic core: geometric representation, chamber tilings, and
fundamental chambers of finite-index reflection subgroups.

Elements of the reflection group act on the span of the simple roots by
``s_i(v) = v - 2 B(a_i, v) a_i`` where B is the Gram form.  Element identity
is decided by rounding the representation matrix to a fixed grid; at the
depths and ranks this package targets, distinct elements differ by far more
than the grid step.

For rank-3 (and Euclidean rank-n) groups acting on E^2 or H^2, each element
also carries a concrete model-space isometry, which is what the subgroup
chamber search and the tiling verifier work with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .diagrams import CoxeterMatrix, gram_from_coxeter
from .geometry import (
    HYPERBOLIC,
    Hyperplane,
    Polytope,
    area2,
    has_finite_volume,
    mirror_angle_order,
    polytope_from_halfspaces,
    realize_polygon_group,
)
from .tolerances import ANGLE_DENOM_MAX, ID_GRID, TOL_ANG, TOL_GEO


class EngineError(ValueError):
    pass


class NonDiscretePair(EngineError):
    """Two reflections meet at an angle that is no rational part of pi."""


class BoundExceeded(EngineError):
    """A closure or replacement loop outgrew its configured bound."""


class IndexBoundExceeded(EngineError):
    """The subgroup chamber did not close within the configured bounds."""


class InvalidReflection(EngineError):
    """A subgroup entry is not a reflection of the group."""


@dataclass(frozen=True)
class Bounds:
    max_depth: int = 12
    max_chambers: int = 20000
    max_index: int = 64


DEFAULT_BOUNDS = Bounds()


# ---------------------------------------------------------------------------
# group context


def _round_key(mat: np.ndarray, grid: float = ID_GRID) -> bytes:
    return np.round(mat / grid).astype(np.int64).tobytes()


class _Context:
    """Cached per-matrix data: Gram form, representation matrices, and (for
    2D-realizable groups) the model realization."""

    def __init__(self, m: CoxeterMatrix):
        self.matrix = m
        self.rank = m.rank
        self.gram = gram_from_coxeter(m)
        self.simples = []
        for i in range(self.rank):
            s = np.eye(self.rank)
            s[i, :] -= 2 * self.gram[i, :]
            self.simples.append(s)
        self._realized = False

    # --- realization (lazy) ------------------------------------------------

    def realize(self):
        if self._realized:
            return
        chamber = realize_polygon_group(self.matrix)
        self.chamber = chamber
        self.space = chamber.space
        n = self.rank
        if self.space.kind == HYPERBOLIC:
            self.frame = np.column_stack([h.n for h in chamber.halfspaces])
            J = np.diag([1.0, 1.0, -1.0])
            self.model_reflections = [
                np.eye(3) - 2 * np.outer(h.n, J @ h.n)
                for h in chamber.halfspaces
            ]
        else:
            self.normals2 = np.vstack([h.n for h in chamber.halfspaces])
            self.offsets = np.array([h.offset for h in chamber.halfspaces])
            mats = []
            for h in chamber.halfspaces:
                u = h.n
                r = np.eye(3)
                r[:2, :2] = np.eye(2) - 2 * np.outer(u, u)
                r[:2, 2] = 2 * h.offset * u
                mats.append(r)
            self.model_reflections = mats
        self.probe = self._pick_probe()
        self._realized = True

    def _pick_probe(self) -> np.ndarray:
        c0 = np.asarray(self.chamber.interior, dtype=float)
        nudge = np.array([math.sqrt(2) - 1, math.sqrt(3) - 1])
        nudge = nudge / np.linalg.norm(nudge)
        chart = c0 + 0.01 * self.chamber.inradius * nudge
        if not self.chamber.contains_chart(chart, tol=-1e-12):
            chart = c0
        if self.space.kind == HYPERBOLIC:
            from .geometry import _klein_lift

            return _klein_lift(chart)
        return np.array([chart[0], chart[1], 1.0])

    # --- root algebra -------------------------------------------------------

    def b(self, x, y) -> float:
        return float(np.asarray(x) @ self.gram @ np.asarray(y))

    def reflect(self, root, by) -> np.ndarray:
        root = np.asarray(root, dtype=float)
        by = np.asarray(by, dtype=float)
        return root - 2 * self.b(by, root) * by

    def make_positive(self, root) -> np.ndarray:
        root = np.asarray(root, dtype=float)
        if root.min() >= -TOL_GEO * 100:
            return root
        if root.max() <= TOL_GEO * 100:
            return -root
        raise InvalidReflection(
            f"root {root} is neither positive nor negative"
        )

    def root_key(self, root) -> tuple:
        return tuple(int(round(float(v) / ID_GRID)) for v in root)

    def word_matrix(self, word) -> np.ndarray:
        m = np.eye(self.rank)
        for i in word:
            m = m @ self.simples[i]
        return m

    def root_of_word(self, word) -> np.ndarray:
        """Positive root of a reflection given as a word (odd length)."""
        word = tuple(word)
        if len(word) % 2 == 0:
            raise InvalidReflection("a reflection word must have odd length")
        k = len(word) // 2
        prefix, mid = word[:k], word[k]
        root = self.word_matrix(prefix) @ np.eye(self.rank)[mid]
        root = self.make_positive(root)
        # verify the word really is the reflection attached to this root
        r_mat = np.eye(self.rank) - 2 * np.outer(root, self.gram @ root)
        if not np.allclose(self.word_matrix(word), r_mat, atol=1e-8):
            raise InvalidReflection(f"word {word} is not a reflection")
        return root

    def root_hyperplane(self, root) -> Hyperplane:
        """Model hyperplane fixed by the reflection of a (unit) root."""
        self.realize()
        root = np.asarray(root, dtype=float)
        if self.space.kind == HYPERBOLIC:
            return Hyperplane.hyperbolic(self.frame @ root)
        return Hyperplane.euclidean(
            self.normals2.T @ root, float(self.offsets @ root)
        )

    def eval_root(self, root, point3) -> float:
        """Root functional at a model point (homogeneous for Euclidean)."""
        if self.space.kind == HYPERBOLIC:
            n = self.frame @ np.asarray(root)
            return float(n[0] * point3[0] + n[1] * point3[1] - n[2] * point3[2])
        u = self.normals2.T @ np.asarray(root)
        return float(u @ point3[:2]) - float(self.offsets @ root) * point3[2]


@lru_cache(maxsize=64)
def _ctx(m: CoxeterMatrix) -> _Context:
    return _Context(m)


# ---------------------------------------------------------------------------
# elements and chamber sets


@dataclass(frozen=True)
class GroupElement:
    word: tuple
    matrix: np.ndarray = field(compare=False, repr=False)
    key: bytes = field(compare=True)

    @staticmethod
    def from_word(m: CoxeterMatrix, word) -> "GroupElement":
        mat = _ctx(m).word_matrix(tuple(word))
        return GroupElement(tuple(word), mat, _round_key(mat))


def simple_reflections(m: CoxeterMatrix) -> list[GroupElement]:
    ctx = _ctx(m)
    return [
        GroupElement((i,), ctx.simples[i], _round_key(ctx.simples[i]))
        for i in range(m.rank)
    ]


def element_order(m: CoxeterMatrix, word, max_steps: int = 100) -> int | None:
    """Order of the element, or None if it exceeds max_steps."""
    ctx = _ctx(m)
    g = ctx.word_matrix(tuple(word))
    ident = np.eye(ctx.rank)
    p = g.copy()
    for k in range(1, max_steps + 1):
        if np.allclose(p, ident, atol=ID_GRID):
            return k
        p = p @ g
    return None


def reflect_root(m: CoxeterMatrix, root, by) -> np.ndarray:
    """Image of one unit root under the reflection of another."""
    return _ctx(m).reflect(root, by)


@dataclass(frozen=True)
class Chamber:
    word: tuple
    matrix: np.ndarray = field(compare=False, repr=False)
    key: bytes = field(compare=True)
    model: np.ndarray | None = field(default=None, compare=False, repr=False)
    probe: tuple | None = field(default=None, compare=False)


@dataclass
class ChamberSet:
    matrix: CoxeterMatrix
    chambers: dict  # key -> Chamber
    adjacency: dict  # (key, generator) -> neighbor key
    base: bytes
    truncated: bool = False

    def __len__(self):
        return len(self.chambers)


def chamber_bfs(
    m: CoxeterMatrix,
    max_depth: int,
    max_chambers: int = 100000,
    realized: bool = False,
) -> ChamberSet:
    """All group elements of word length <= max_depth, as tiling chambers."""
    if max_depth < 0 or max_chambers <= 0:
        raise EngineError("bounds must be positive")
    ctx = _ctx(m)
    if realized:
        ctx.realize()
    ident = np.eye(ctx.rank)
    base_model = np.eye(3) if realized else None
    base = Chamber(
        (),
        ident,
        _round_key(ident),
        base_model,
        tuple(ctx.probe) if realized else None,
    )
    chambers = {base.key: base}
    adjacency = {}
    frontier = [base]
    truncated = False
    for _ in range(max_depth):
        nxt = []
        for ch in frontier:
            for i in range(ctx.rank):
                mat = ch.matrix @ ctx.simples[i]
                key = _round_key(mat)
                adjacency[(ch.key, i)] = key
                if key in chambers:
                    continue
                if len(chambers) >= max_chambers:
                    truncated = True
                    continue
                model = (
                    ch.model @ ctx.model_reflections[i] if realized else None
                )
                probe = tuple(model @ ctx.probe) if realized else None
                new = Chamber(ch.word + (i,), mat, key, model, probe)
                chambers[key] = new
                nxt.append(new)
        frontier = nxt
        if truncated:
            break
    return ChamberSet(m, chambers, adjacency, base.key, truncated)


# ---------------------------------------------------------------------------
# subgroup specifications and canonical generators


@dataclass(frozen=True)
class SubgroupSpec:
    """Reflections given as words (odd length) or explicit positive roots."""

    words: tuple = ()
    roots: tuple = ()

    @staticmethod
    def from_words(*words) -> "SubgroupSpec":
        return SubgroupSpec(words=tuple(tuple(w) for w in words))

    @staticmethod
    def from_doc(doc: dict) -> "SubgroupSpec":
        words, roots = [], []
        for entry in doc["reflections"]:
            if "word" in entry:
                words.append(tuple(int(i) for i in entry["word"]))
            elif "root" in entry:
                roots.append(tuple(float(c) for c in entry["root"]))
            else:
                raise EngineError(f"bad reflection entry {entry!r}")
        return SubgroupSpec(tuple(words), tuple(roots))

    def to_doc(self) -> dict:
        return {
            "reflections": [{"word": list(w)} for w in self.words]
            + [{"root": list(r)} for r in self.roots]
        }


@dataclass(frozen=True)
class CanonicalSystem:
    """Simple system of a reflection subgroup: positive unit roots whose
    pairwise Gram values are each <= -1 or equal to -cos(pi/m)."""

    roots: tuple  # tuple of coordinate tuples, canonically sorted

    def __len__(self):
        return len(self.roots)

    def arrays(self):
        return [np.asarray(r, dtype=float) for r in self.roots]

    def key(self) -> tuple:
        return tuple(
            tuple(np.round(np.asarray(r) / 1e-6).astype(np.int64))
            for r in self.roots
        )


def _pair_ok(b: float) -> bool:
    if b <= -1 + TOL_GEO:
        return True
    if b > -1 and b <= TOL_ANG:
        # allowed values are -cos(pi/m); zero is m = 2
        theta = math.acos(max(-1.0, min(1.0, -b)))
        m = round(math.pi / theta) if theta > 0 else None
        return (
            m is not None
            and 2 <= m <= ANGLE_DENOM_MAX
            and abs(b + math.cos(math.pi / m)) <= TOL_ANG
        )
    if b < 1 - TOL_GEO:
        return False
    return False  # nested pair (b >= 1): must be replaced


def _spec_roots(ctx: _Context, h: SubgroupSpec) -> list[np.ndarray]:
    roots = [ctx.root_of_word(w) for w in h.words]
    for r in h.roots:
        arr = ctx.make_positive(np.asarray(r, dtype=float))
        nrm = ctx.b(arr, arr)
        if nrm <= TOL_GEO:
            raise InvalidReflection(f"root {r} is not spacelike")
        roots.append(arr / math.sqrt(nrm))
    if not roots:
        raise EngineError("subgroup spec is empty")
    return roots


def _dedupe(ctx: _Context, roots) -> list[np.ndarray]:
    seen, out = set(), []
    for r in sorted(roots, key=ctx.root_key):
        k = ctx.root_key(r)
        if k not in seen:
            seen.add(k)
            out.append(r)
    return out


def _dihedral_simple_pair(ctx: _Context, beta, gamma):
    """Simple pair of the finite dihedral subsystem generated by two roots
    whose Gram value lies strictly between -1 and 1."""
    b = ctx.b(beta, gamma)
    theta = math.acos(max(-1.0, min(1.0, abs(b))))
    km = mirror_angle_order(theta)
    if km is None:
        raise NonDiscretePair(
            f"mirror angle {theta:.12g} is no rational part of pi"
        )
    _, order = km
    # close {beta, gamma} under mutual reflection: the positive roots of I2(m)
    bound = 2 * order + 4
    roots, keys = [], set()
    for r in (beta, gamma):
        r = ctx.make_positive(r)
        k = ctx.root_key(r)
        if k not in keys:
            keys.add(k)
            roots.append(r)
    frontier = list(roots)
    while frontier:
        x = frontier.pop()
        for y in list(roots):
            for img in (ctx.reflect(x, y), ctx.reflect(y, x)):
                img = ctx.make_positive(img)
                k = ctx.root_key(img)
                if k not in keys:
                    keys.add(k)
                    roots.append(img)
                    frontier.append(img)
                    if len(roots) > bound:
                        raise BoundExceeded(
                            "dihedral closure exceeded its bound"
                        )
    roots = _dedupe(ctx, roots)
    best, best_b = None, math.inf
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            bij = ctx.b(roots[i], roots[j])
            if bij < best_b:
                best, best_b = (roots[i], roots[j]), bij
    if best is None or abs(best_b + math.cos(math.pi / order)) > TOL_ANG:
        raise NonDiscretePair(
            f"no simple pair with Gram value -cos(pi/{order}) found"
        )
    return best


def canonical_generators(m: CoxeterMatrix, h: SubgroupSpec,
                         max_iter: int = 10000) -> CanonicalSystem:
    """Canonical simple system of the reflection subgroup generated by h.

    Repeatedly replaces the (lexicographically first) violating pair by the
    simple pair of the rank-2 subsystem it generates; pairs with Gram value
    <= -1 are already canonical and kept as-is.
    """
    ctx = _ctx(m)
    roots = _dedupe(ctx, _spec_roots(ctx, h))
    for _ in range(max_iter):
        roots = _dedupe(ctx, roots)
        violating = None
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if not _pair_ok(ctx.b(roots[i], roots[j])):
                    violating = (i, j)
                    break
            if violating:
                break
        if violating is None:
            return CanonicalSystem(tuple(tuple(r) for r in roots))
        i, j = violating
        beta, gamma = roots[i], roots[j]
        b = ctx.b(beta, gamma)
        rest = [roots[k] for k in range(len(roots)) if k not in (i, j)]
        if b >= 1 - TOL_GEO:
            # nested pair: reflect one mirror across the other
            new = (ctx.make_positive(ctx.reflect(gamma, beta)), beta)
        else:
            new = _dihedral_simple_pair(ctx, beta, gamma)
        roots = rest + list(new)
    raise BoundExceeded("canonical generator loop did not terminate")


# ---------------------------------------------------------------------------
# subgroup chamber


@dataclass
class SubgroupChamber:
    system: CanonicalSystem
    chambers: ChamberSet
    index: int
    facet_count: int
    wall_roots: tuple  # canonical positive roots of the chamber walls


def subgroup_chamber(
    m: CoxeterMatrix, h: SubgroupSpec, bounds: Bounds = DEFAULT_BOUNDS
) -> SubgroupChamber:
    """Chamber of the subgroup containing the base chamber of the group.

    Breadth-first search over group chambers whose probe point satisfies all
    canonical-root inequalities; never expands through an outside chamber.
    """
    ctx = _ctx(m)
    ctx.realize()
    system = canonical_generators(m, h)
    deltas = system.arrays()

    def inside(probe) -> bool:
        return all(ctx.eval_root(d, probe) <= 100 * TOL_GEO for d in deltas)

    base = Chamber(
        (), np.eye(ctx.rank), _round_key(np.eye(ctx.rank)),
        np.eye(3), tuple(ctx.probe),
    )
    if not inside(ctx.probe):
        raise EngineError("base chamber lies outside the subgroup cone")
    chambers = {base.key: base}
    adjacency = {}
    walls = {}
    queue = [base]
    expansions = 0
    while queue:
        ch = queue.pop(0)
        for i in range(ctx.rank):
            expansions += 1
            if expansions > bounds.max_chambers:
                raise IndexBoundExceeded(
                    f"no closure within {bounds.max_chambers} expansions"
                )
            mat = ch.matrix @ ctx.simples[i]
            key = _round_key(mat)
            adjacency[(ch.key, i)] = key
            if key in chambers:
                continue
            model = ch.model @ ctx.model_reflections[i]
            probe = model @ ctx.probe
            if inside(probe):
                if len(chambers) >= bounds.max_index:
                    raise IndexBoundExceeded(
                        f"index exceeds bound {bounds.max_index}"
                    )
                new = Chamber(ch.word + (i,), mat, key, model, tuple(probe))
                chambers[key] = new
                queue.append(new)
            else:
                root = ctx.make_positive(ch.matrix[:, i])
                walls[ctx.root_key(root)] = tuple(root)
    tiling = ChamberSet(m, chambers, adjacency, base.key, False)
    return SubgroupChamber(
        system, tiling, len(chambers), len(walls), tuple(walls.values())
    )


def chamber_polytope(m: CoxeterMatrix, system: CanonicalSystem) -> Polytope:
    """Geometric chamber cut out by the canonical roots, in the model."""
    ctx = _ctx(m)
    ctx.realize()
    planes = [ctx.root_hyperplane(d) for d in system.arrays()]
    return polytope_from_halfspaces(planes, ctx.chamber.space)


# ---------------------------------------------------------------------------
# decomposition inspection


def _tile_polytope(ctx: _Context, ch: Chamber) -> Polytope:
    if ctx.space.kind == HYPERBOLIC:
        # image of the hyperplane <e,x>=0 under A in O(2,1) has normal A e
        planes = [
            Hyperplane.hyperbolic(ch.model @ h.n)
            for h in ctx.chamber.halfspaces
        ]
    else:
        planes = []
        for h in ctx.chamber.halfspaces:
            rot = ch.model[:2, :2]
            t = ch.model[:2, 2]
            u = rot @ h.n
            planes.append(Hyperplane.euclidean(u, h.offset + float(u @ t)))
    return polytope_from_halfspaces(planes, ctx.space)


def mirrors_of_decomposition(
    P: Polytope, tiling: ChamberSet, m: CoxeterMatrix
) -> list[Hyperplane]:
    """Hyperplanes carrying a wall interior to P but no facet of P."""
    ctx = _ctx(m)
    ctx.realize()
    for ch in tiling.chambers.values():
        if ch.probe is None:
            raise EngineError("tiling must carry model realizations")
        probe = np.asarray(ch.probe)
        chart = probe[:2] / probe[2]
        if not P.contains_chart(chart, tol=1e-9):
            raise EngineError("tile lies outside the decomposed polytope")
    facet_keys = {h.locus_key() for h in P.halfspaces}
    mirrors = {}
    for (key, i), nkey in tiling.adjacency.items():
        if key in tiling.chambers and nkey in tiling.chambers:
            ch = tiling.chambers[key]
            root = ctx.make_positive(ch.matrix[:, i])
            hp = ctx.root_hyperplane(root)
            lk = hp.locus_key()
            if lk not in facet_keys:
                mirrors[lk] = hp
    return list(mirrors.values())


def fundamental_angles(P: Polytope, mirrors) -> dict:
    """vertex -> True when no mirror passes through it."""
    out = {}
    for v in P.ordinary_vertices:
        pt = np.asarray(v.model)
        out[v] = all(abs(hp.eval(pt)) > 1e-7 for hp in mirrors)
    return out


@dataclass(frozen=True)
class DecompositionReport:
    tiles: int
    congruent: bool
    contained: bool
    area_residual: float
    mirror_symmetric: bool
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_decomposition(P: Polytope, F: Polytope, tiling) -> DecompositionReport:
    """Check that the tiles are congruent copies of F, cover P without
    overlap, and that wall-adjacent tiles are mirror images."""
    failures = []
    if isinstance(tiling, ChamberSet):
        ctx = _ctx(tiling.matrix)
        ctx.realize()
        tiles = [
            _tile_polytope(ctx, ch) for ch in tiling.chambers.values()
        ]
        mirror_ok = True
        for (key, i), nkey in tiling.adjacency.items():
            if key in tiling.chambers and nkey in tiling.chambers:
                ch, nb = tiling.chambers[key], tiling.chambers[nkey]
                root = ctx.make_positive(ch.matrix[:, i])
                hp = ctx.root_hyperplane(root)
                refl = _reflect_model_point(
                    ctx, hp, np.asarray(ch.probe)
                )
                if not np.allclose(
                    refl / refl[2], np.asarray(nb.probe) / nb.probe[2],
                    atol=1e-7,
                ):
                    mirror_ok = False
        if not mirror_ok:
            failures.append("adjacent tiles are not mirror images")
    else:
        tiles = list(tiling)
        mirror_ok = True  # no adjacency data for explicit tile lists

    area_f = area2(F)
    congruent = True
    for t in tiles:
        if abs(area2(t) - area_f) > 1e-9 or not _same_angles(t, F):
            congruent = False
    if not congruent:
        failures.append("tiles are not congruent to F")

    contained = all(_tile_inside(t, P) for t in tiles)
    if not contained:
        failures.append("a tile is not contained in P")

    residual = abs(area2(P) - len(tiles) * area_f)
    if residual > 1e-9:
        failures.append(f"area residual {residual:.3g}")

    return DecompositionReport(
        len(tiles), congruent, contained, residual, mirror_ok, tuple(failures)
    )


def _same_angles(a: Polytope, b: Polytope) -> bool:
    aa = sorted(a.vertex_angle(v) for v in a.ordinary_vertices)
    bb = sorted(b.vertex_angle(v) for v in b.ordinary_vertices)
    return len(aa) == len(bb) and all(
        abs(x - y) <= 1e-7 for x, y in zip(aa, bb)
    )


def _tile_inside(t: Polytope, P: Polytope) -> bool:
    pts = [np.asarray(v.chart) for v in t.ordinary_vertices]
    pts.append(np.asarray(t.interior))
    return all(P.contains_chart(p, tol=1e-7) for p in pts)


def _reflect_model_point(ctx: _Context, hp: Hyperplane, point3: np.ndarray):
    if ctx.space.kind == HYPERBOLIC:
        e = np.asarray(hp.n)
        val = point3[0] * e[0] + point3[1] * e[1] - point3[2] * e[2]
        return point3 - 2 * val * np.array([e[0], e[1], -e[2]])
    u, b = np.asarray(hp.n), hp.offset
    x = point3[:2] / point3[2]
    y = x - 2 * (float(u @ x) - b) * u
    return np.array([y[0], y[1], 1.0])


# ---------------------------------------------------------------------------
# the theorem verdict


@dataclass(frozen=True)
class TheoremVerdict:
    k_F: int
    k_P: int
    index: int
    finite_volume: bool
    holds: bool
    area_fund: float | None = None
    area_chamber: float | None = None
    area_residual: float | None = None

    def to_doc(self) -> dict:
        doc = {
            "k_F": self.k_F,
            "k_P": self.k_P,
            "index": self.index,
            "finite_volume": self.finite_volume,
            "holds": self.holds,
        }
        if self.area_residual is not None:
            doc["area_fund"] = float(self.area_fund)
            doc["area_chamber"] = float(self.area_chamber)
            doc["area_residual"] = float(self.area_residual)
        return doc


def theorem_check(
    m: CoxeterMatrix, h: SubgroupSpec, bounds: Bounds = DEFAULT_BOUNDS
) -> TheoremVerdict:
    """Compare facet counts of the group chamber and the subgroup chamber."""
    sc = subgroup_chamber(m, h, bounds)
    ctx = _ctx(m)
    D = chamber_polytope(m, sc.system)
    finite = has_finite_volume(D)
    k_f = m.rank
    k_p = sc.facet_count
    area_f = area_d = residual = None
    if finite and has_finite_volume(ctx.chamber):
        area_f = area2(ctx.chamber)
        area_d = area2(D)
        residual = abs(area_d - sc.index * area_f)
    return TheoremVerdict(
        k_F=k_f,
        k_P=k_p,
        index=sc.index,
        finite_volume=finite,
        holds=k_p >= k_f,
        area_fund=area_f,
        area_chamber=area_d,
        area_residual=residual,
    )
