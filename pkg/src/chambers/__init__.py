"""Reflection groups, Coxeter polytopes and chamber geometry in E^2 and H^2."""

from .diagrams import (
    CoxeterDiagram,
    CoxeterMatrix,
    classify_diagram,
    coxeter_matrix,
    diagram,
    enumerate_parabolic_unions,
    family_diagram,
    gram_from_coxeter,
    path_diagram,
    remove_node,
    signature,
    triangle_matrix,
)
from .engine import (
    Bounds,
    CanonicalSystem,
    SubgroupSpec,
    TheoremVerdict,
    canonical_generators,
    chamber_bfs,
    chamber_polytope,
    subgroup_chamber,
    theorem_check,
    verify_decomposition,
)
from .geometry import (
    Hyperplane,
    Polytope,
    andreev_verify,
    area2,
    dihedral_angle,
    has_finite_volume,
    polytope_from_halfspaces,
    realize_polygon_group,
    realize_triangle,
    split_by_hyperplane,
    vertex_link,
)
from .harness import (
    Corpus,
    SuiteReport,
    enumerate_and_verify,
    lemma1_suite,
    lemma2_suite,
    lemma3_suite,
    remark2_regression,
)

__all__ = [
    "Bounds",
    "CanonicalSystem",
    "Corpus",
    "CoxeterDiagram",
    "CoxeterMatrix",
    "Hyperplane",
    "Polytope",
    "SubgroupSpec",
    "SuiteReport",
    "TheoremVerdict",
    "andreev_verify",
    "area2",
    "canonical_generators",
    "chamber_bfs",
    "chamber_polytope",
    "classify_diagram",
    "coxeter_matrix",
    "diagram",
    "dihedral_angle",
    "enumerate_and_verify",
    "enumerate_parabolic_unions",
    "family_diagram",
    "gram_from_coxeter",
    "has_finite_volume",
    "lemma1_suite",
    "lemma2_suite",
    "lemma3_suite",
    "path_diagram",
    "polytope_from_halfspaces",
    "realize_polygon_group",
    "realize_triangle",
    "remark2_regression",
    "remove_node",
    "signature",
    "split_by_hyperplane",
    "subgroup_chamber",
    "theorem_check",
    "triangle_matrix",
    "verify_decomposition",
    "vertex_link",
]
