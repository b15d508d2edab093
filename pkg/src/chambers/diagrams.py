"""Coxeter matrices, diagrams, Gram forms and their classification.

A Coxeter matrix records the pairwise products of the generating
reflections: ``m[i][j]`` is the order of ``s_i s_j`` (1 on the diagonal,
``INFINITE`` = 0 for infinite order).  Infinite pairs may carry a weight
``c <= -1``, the Gram entry of the corresponding pair of hyperplanes:
``-1`` for parallel hyperplanes, ``c < -1`` for divergent ones.

Classification (elliptic / union of connected parabolics / indefinite) is
done twice: by graph isomorphism against the standard tables and by the
signature of the Gram form.  The two must agree; disagreement raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx
import numpy as np

from .tolerances import TOL_SIG

INFINITE = 0  # m[i][j] encoding of an infinite product order


class DiagramError(ValueError):
    """Invalid Coxeter matrix or diagram data."""


# ---------------------------------------------------------------------------
# core types


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of product orders, with optional divergent weights."""

    entries: tuple[tuple[int, ...], ...]
    weights: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise DiagramError("entries must be square")
            if row[i] != 1:
                raise DiagramError("diagonal entries must be 1")
            for j, m in enumerate(row):
                if i == j:
                    continue
                if m != self.entries[j][i]:
                    raise DiagramError("entries must be symmetric")
                if m != INFINITE and m < 2:
                    raise DiagramError(
                        f"off-diagonal m[{i}][{j}]={m} must be >= 2 or infinite"
                    )
        seen = set()
        for i, j, c in self.weights:
            a, b = min(i, j), max(i, j)
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise DiagramError("weight indices out of range")
            if self.entries[a][b] != INFINITE:
                raise DiagramError("weights only allowed on infinite pairs")
            if c > -1:
                raise DiagramError(f"weight {c} must be <= -1")
            if (a, b) in seen:
                raise DiagramError("duplicate weight entry")
            seen.add((a, b))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def order(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def weight(self, i: int, j: int) -> float:
        """Gram entry of an infinite pair (default -1: parallel)."""
        a, b = min(i, j), max(i, j)
        for wi, wj, c in self.weights:
            if (min(wi, wj), max(wi, wj)) == (a, b):
                return c
        return -1.0

    def has_divergent_pair(self) -> bool:
        return any(c < -1 for _, _, c in self.weights)

    @staticmethod
    def from_orders(entries) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(int(m) for m in row) for row in entries))


def coxeter_matrix(entries, weights=()) -> CoxeterMatrix:
    """Convenience constructor accepting lists and ``math.inf`` entries."""
    rows = tuple(
        tuple(INFINITE if m in (INFINITE, math.inf) else int(m) for m in row)
        for row in entries
    )
    return CoxeterMatrix(rows, tuple((int(i), int(j), float(c)) for i, j, c in weights))


def triangle_matrix(p, q, r, weights=()) -> CoxeterMatrix:
    """Rank-3 matrix of the (p, q, r) triangle group; use ``math.inf`` freely."""
    return coxeter_matrix([[1, p, q], [p, 1, r], [q, r, 1]], weights)


@dataclass(frozen=True)
class CoxeterDiagram:
    """A Coxeter matrix together with stable node labels.

    Removing nodes keeps the surviving labels, so sub-diagrams remember where
    they came from.  Round-trips losslessly with :class:`CoxeterMatrix`.
    """

    matrix: CoxeterMatrix
    nodes: tuple = None

    def __post_init__(self):
        if self.nodes is None:
            object.__setattr__(self, "nodes", tuple(range(self.matrix.rank)))
        if len(self.nodes) != self.matrix.rank:
            raise DiagramError("node labels must match matrix rank")
        if len(set(self.nodes)) != len(self.nodes):
            raise DiagramError("node labels must be distinct")

    @property
    def rank(self) -> int:
        return self.matrix.rank

    def edges(self):
        """(label_i, label_j, m) for every pair with m != 2."""
        out = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.matrix.order(i, j)
                if m != 2:
                    out.append((self.nodes[i], self.nodes[j], m))
        return out

    def index_of(self, label) -> int:
        try:
            return self.nodes.index(label)
        except ValueError:
            raise DiagramError(f"unknown node {label!r}") from None


def diagram(entries, weights=()) -> CoxeterDiagram:
    return CoxeterDiagram(coxeter_matrix(entries, weights))


def path_diagram(labels) -> CoxeterDiagram:
    """Linear diagram with the given edge labels (n edges -> n+1 nodes)."""
    labels = list(labels)
    n = len(labels) + 1
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for i, lab in enumerate(labels):
        m[i][i + 1] = m[i + 1][i] = lab
    return diagram(m)


def remove_node(d: CoxeterDiagram, v) -> CoxeterDiagram:
    """Induced sub-diagram on nodes(d) minus v."""
    k = d.index_of(v)
    keep = [i for i in range(d.rank) if i != k]
    entries = tuple(tuple(d.matrix.entries[i][j] for j in keep) for i in keep)
    remap = {old: new for new, old in enumerate(keep)}
    weights = tuple(
        (remap[i], remap[j], c)
        for i, j, c in d.matrix.weights
        if i in remap and j in remap
    )
    return CoxeterDiagram(
        CoxeterMatrix(entries, weights), tuple(d.nodes[i] for i in keep)
    )


def disjoint_union(*diagrams: CoxeterDiagram) -> CoxeterDiagram:
    parts = [d.matrix for d in diagrams]
    n = sum(p.rank for p in parts)
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    weights = []
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                m[off + i][off + j] = p.entries[i][j]
        weights.extend((off + i, off + j, c) for i, j, c in p.weights)
        off += p.rank
    return CoxeterDiagram(
        CoxeterMatrix(tuple(tuple(row) for row in m), tuple(weights))
    )


# ---------------------------------------------------------------------------
# Gram matrix and signature


def gram_from_coxeter(m: CoxeterMatrix) -> np.ndarray:
    """Gram form of the geometric representation: G[i][j] = -cos(pi/m[i][j])."""
    n = m.rank
    g = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            mij = m.order(i, j)
            if mij == INFINITE:
                val = m.weight(i, j)
            elif mij == 2:
                val = 0.0  # cos(pi/2) exactly
            else:
                val = -math.cos(math.pi / mij)
            g[i, j] = g[j, i] = val
    return g


def signature(g: np.ndarray, tol: float = TOL_SIG) -> tuple[int, int, int]:
    """(n_plus, n_zero, n_minus) eigenvalue sign counts of a symmetric matrix."""
    g = np.asarray(g, dtype=float)
    if g.size == 0:
        return (0, 0, 0)
    if not np.allclose(g, g.T, atol=1e-12):
        raise DiagramError("signature requires a symmetric matrix")
    ev = np.linalg.eigvalsh(g)
    n_plus = int(np.sum(ev > tol))
    n_minus = int(np.sum(ev < -tol))
    return (n_plus, g.shape[0] - n_plus - n_minus, n_minus)


# ---------------------------------------------------------------------------
# standard family tables

# families are stored as plain order-matrices; weights never appear except in
# the affine A~1 (the single infinite edge with Gram entry -1)


def _path(labels):
    n = len(labels) + 1
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for i, lab in enumerate(labels):
        m[i][i + 1] = m[i + 1][i] = lab
    return m


def _attach(m, node, label=3):
    """Append one node joined to `node` by an edge with the given label."""
    n = len(m)
    out = [row[:] + [2] for row in m]
    out.append([2] * n + [1])
    out[node][n] = out[n][node] = label
    return out


def _family_A(n):
    return _path([3] * (n - 1))


def _family_B(n):
    return _path([4] + [3] * (n - 2))


def _family_D(n):
    m = _path([3] * (n - 3))  # chain of n-2 nodes
    m = _attach(m, len(m) - 1)
    m = _attach(m, len(m) - 2)
    return m


def _family_E(n):
    m = _path([3] * (n - 2))
    return _attach(m, 2)


def _affine_A(n):  # n >= 2: (n+1)-cycle
    k = n + 1
    m = _path([3] * (k - 1))
    m[0][k - 1] = m[k - 1][0] = 3
    return m


def _affine_B(n):  # n >= 3: 4-labeled end, forked end; n+1 nodes
    m = _path([4] + [3] * (n - 3))  # chain of n-1 nodes
    m = _attach(m, len(m) - 1)
    m = _attach(m, len(m) - 2)
    return m


def _affine_C(n):  # n >= 2: path with 4 at both ends; n+1 nodes
    return _path([4] + [3] * (n - 2) + [4])


def _affine_D(n):  # n >= 4: forks at both ends; n+1 nodes
    c = n - 3  # central chain length
    m = _path([3] * (c - 1)) if c > 1 else [[1]]
    m = _attach(m, 0)
    m = _attach(m, 0)
    m = _attach(m, c - 1)
    m = _attach(m, c - 1)
    return m


_ELLIPTIC_FAMILIES: dict[str, list[list[int]]] = {}
_AFFINE_FAMILIES: dict[str, tuple[list[list[int]], tuple]] = {}


def _build_tables(max_nodes=10):
    for n in range(1, max_nodes + 1):
        _ELLIPTIC_FAMILIES[f"A{n}"] = _family_A(n)
    for n in range(2, max_nodes + 1):
        _ELLIPTIC_FAMILIES[f"B{n}"] = _family_B(n)
    for n in range(4, max_nodes + 1):
        _ELLIPTIC_FAMILIES[f"D{n}"] = _family_D(n)
    for n in (6, 7, 8):
        _ELLIPTIC_FAMILIES[f"E{n}"] = _family_E(n)
    _ELLIPTIC_FAMILIES["F4"] = _path([3, 4, 3])
    _ELLIPTIC_FAMILIES["H3"] = _path([5, 3])
    _ELLIPTIC_FAMILIES["H4"] = _path([5, 3, 3])
    _ELLIPTIC_FAMILIES["G2"] = _path([6])

    _AFFINE_FAMILIES["A~1"] = (_path([INFINITE]), ())
    for n in range(2, max_nodes):
        _AFFINE_FAMILIES[f"A~{n}"] = (_affine_A(n), ())
    for n in range(3, max_nodes):
        _AFFINE_FAMILIES[f"B~{n}"] = (_affine_B(n), ())
    for n in range(2, max_nodes):
        _AFFINE_FAMILIES[f"C~{n}"] = (_affine_C(n), ())
    for n in range(4, max_nodes):
        _AFFINE_FAMILIES[f"D~{n}"] = (_affine_D(n), ())
    _AFFINE_FAMILIES["E~6"] = (_attach(_family_E(6), 8 - 3), ())
    _AFFINE_FAMILIES["E~7"] = (_attach(_family_E(7), 0), ())
    _AFFINE_FAMILIES["E~8"] = (_attach(_family_E(8), 7 - 1), ())
    _AFFINE_FAMILIES["F~4"] = (_path([3, 3, 4, 3]), ())
    _AFFINE_FAMILIES["G~2"] = (_path([3, 6]), ())


_build_tables()


def family_diagram(name: str) -> CoxeterDiagram:
    """Standard elliptic or affine diagram by table name (e.g. "B3", "C~2")."""
    if name in _ELLIPTIC_FAMILIES:
        return diagram(_ELLIPTIC_FAMILIES[name])
    if name in _AFFINE_FAMILIES:
        m, w = _AFFINE_FAMILIES[name]
        return diagram(m, w)
    if name.startswith("I2(") and name.endswith(")"):
        return path_diagram([int(name[3:-1])])
    raise DiagramError(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# isomorphism and table lookup


def _to_graph(d: CoxeterDiagram) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(d.rank))
    for i in range(d.rank):
        for j in range(i + 1, d.rank):
            m = d.matrix.order(i, j)
            if m != 2:
                g.add_edge(i, j, m=m)
    return g


def is_isomorphic(d1: CoxeterDiagram, d2: CoxeterDiagram) -> bool:
    """Label-preserving graph isomorphism of two diagrams (weights ignored)."""
    if d1.rank != d2.rank:
        return False
    return nx.is_isomorphic(
        _to_graph(d1), _to_graph(d2), edge_match=lambda a, b: a["m"] == b["m"]
    )


def _edge_label_multiset(d: CoxeterDiagram):
    return tuple(sorted(m for _, _, m in d.edges()))


def _lookup_name(d: CoxeterDiagram, table: dict) -> str | None:
    if d.rank == 1:
        return "A1" if "A1" in table or table is _ELLIPTIC_FAMILIES else None
    if table is _ELLIPTIC_FAMILIES and d.rank == 2:
        m = d.matrix.order(0, 1)
        return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    sig = _edge_label_multiset(d)
    for name, entry in table.items():
        fam = family_diagram(name)
        if fam.rank != d.rank or _edge_label_multiset(fam) != sig:
            continue
        if is_isomorphic(d, fam):
            return name
    return None


# ---------------------------------------------------------------------------
# classification


ELLIPTIC = "elliptic"
PARABOLIC_UNION = "parabolic_union"
INDEFINITE = "indefinite"


@dataclass(frozen=True)
class DiagramClass:
    kind: str  # ELLIPTIC | PARABOLIC_UNION | INDEFINITE
    components: tuple[str, ...] = ()

    def __str__(self):
        if self.kind == INDEFINITE:
            return "indefinite"
        return f"{self.kind}[{', '.join(self.components)}]"


def connected_components(d: CoxeterDiagram) -> list[CoxeterDiagram]:
    g = nx.Graph()
    g.add_nodes_from(range(d.rank))
    for i in range(d.rank):
        for j in range(i + 1, d.rank):
            if d.matrix.order(i, j) != 2:
                g.add_edge(i, j)
    comps = []
    for nodes in sorted(nx.connected_components(g), key=min):
        sub = d
        for label in [d.nodes[i] for i in range(d.rank) if i not in nodes]:
            sub = remove_node(sub, label)
        comps.append(sub)
    return comps


def classify_diagram(d: CoxeterDiagram) -> DiagramClass:
    """Elliptic / union-of-connected-parabolics / indefinite, with names.

    Divergent (weight < -1) edges are indefinite immediately.  A mixture of
    elliptic and parabolic components is not a parabolic union and is
    reported as indefinite (the catch-all for "neither of the two").
    """
    if d.matrix.has_divergent_pair():
        return DiagramClass(INDEFINITE)
    kinds, names = [], []
    for comp in connected_components(d):
        k = comp.rank
        sig = signature(gram_from_coxeter(comp.matrix))
        if sig == (k, 0, 0):
            kind = ELLIPTIC
            name = _lookup_name(comp, _ELLIPTIC_FAMILIES)
        elif sig == (k - 1, 1, 0):
            kind = PARABOLIC_UNION
            name = _lookup_name(comp, _AFFINE_FAMILIES)
        else:
            return DiagramClass(INDEFINITE)
        if name is None:
            raise DiagramError(
                f"component with signature {sig} not found in the {kind} tables"
            )
        kinds.append(kind)
        names.append(name)
    if all(k == ELLIPTIC for k in kinds):
        return DiagramClass(ELLIPTIC, tuple(names))
    if kinds and all(k == PARABOLIC_UNION for k in kinds):
        return DiagramClass(PARABOLIC_UNION, tuple(names))
    return DiagramClass(INDEFINITE)


# ---------------------------------------------------------------------------
# parabolic-union enumeration


@lru_cache(maxsize=None)
def _connected_parabolics(max_nodes: int):
    out = []
    for name in _AFFINE_FAMILIES:
        fam = family_diagram(name)
        if fam.rank <= max_nodes:
            out.append((fam.rank, name))
    out.sort()
    return tuple(out)


def enumerate_parabolic_unions(max_rank: int) -> list[CoxeterDiagram]:
    """All disjoint unions of connected parabolic diagrams with <= max_rank
    nodes, up to isomorphism (one representative per multiset of names)."""
    if max_rank > 10:
        raise DiagramError("enumeration supported up to rank 10")
    atoms = _connected_parabolics(max_rank)
    unions = []

    def rec(start, budget, chosen):
        if chosen:
            unions.append(tuple(chosen))
        for idx in range(start, len(atoms)):
            size, name = atoms[idx]
            if size <= budget:
                rec(idx, budget - size, chosen + [name])

    rec(0, max_rank, [])
    return [disjoint_union(*(family_diagram(n) for n in names)) for names in unions]


# ---------------------------------------------------------------------------
# documents and text art


def matrix_to_doc(m: CoxeterMatrix) -> dict:
    doc = {"rank": m.rank, "m": [list(row) for row in m.entries]}
    if m.weights:
        doc["weights"] = [{"i": i, "j": j, "c": c} for i, j, c in m.weights]
    return doc


def matrix_from_doc(doc: dict) -> CoxeterMatrix:
    try:
        rank = int(doc["rank"])
        rows = doc["m"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed matrix document: {exc}") from exc
    if len(rows) != rank:
        raise DiagramError(f"rank {rank} does not match {len(rows)} rows")
    weights = tuple(
        (int(w["i"]), int(w["j"]), float(w["c"])) for w in doc.get("weights", ())
    )
    return coxeter_matrix(rows, weights)


def diagram_to_doc(d: CoxeterDiagram) -> dict:
    return {
        "nodes": list(d.nodes),
        "edges": [
            {"a": a, "b": b, "m": ("inf" if m == INFINITE else m)}
            for a, b, m in d.edges()
        ],
        "weights": [
            {"a": d.nodes[i], "b": d.nodes[j], "c": c} for i, j, c in d.matrix.weights
        ],
    }


def diagram_art(d: CoxeterDiagram) -> str:
    """One line per edge, isolated nodes listed at the end."""
    lines = []
    touched = set()
    for a, b, m in d.edges():
        label = "inf" if m == INFINITE else str(m)
        lines.append(f"{a} --{label}-- {b}")
        touched.update((a, b))
    isolated = [str(v) for v in d.nodes if v not in touched]
    if isolated:
        lines.append("isolated: " + " ".join(isolated))
    return "\n".join(lines) if lines else "(empty)"
