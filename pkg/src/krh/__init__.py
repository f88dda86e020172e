"""Exact Hopf algebra invariants of tangles, links and 3-manifolds.

The main entry points are re-exported here; see the submodules for more.
"""

from .field import CyclotomicField, FieldArray, Scalar, field
from .hopf import (
    AlgebraElement,
    AxiomReport,
    HopfAlgebra,
    check_hopf_axioms,
    check_quasitriangular,
    check_ribbon,
    right_integral,
    trace_functional,
)
from .algebra_io import load_algebra, dump_algebra, parse_element
from .builtins import builtin_algebra, builtin_names
from .tangle import TangleDiagram, parse_tangle, serialize_tangle, whitney_degree, linking_data
from .evaluator import evaluate, hennings_invariant, circle_morphisms, check_circle_identities
from .centrality import is_central, tangle_central_element, check_bead_push_identities, tree_bead_push

__version__ = "0.1.0"

__all__ = [
    "CyclotomicField",
    "FieldArray",
    "Scalar",
    "field",
    "AlgebraElement",
    "AxiomReport",
    "HopfAlgebra",
    "check_hopf_axioms",
    "check_quasitriangular",
    "check_ribbon",
    "right_integral",
    "trace_functional",
    "load_algebra",
    "dump_algebra",
    "parse_element",
    "builtin_algebra",
    "builtin_names",
    "TangleDiagram",
    "parse_tangle",
    "serialize_tangle",
    "whitney_degree",
    "linking_data",
    "evaluate",
    "hennings_invariant",
    "circle_morphisms",
    "check_circle_identities",
    "is_central",
    "tangle_central_element",
    "check_bead_push_identities",
    "tree_bead_push",
]
