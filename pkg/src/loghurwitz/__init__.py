"""Exact arithmetic for degree-p covers in characteristic p.

Subpackages: finite fields (ffield), rational functions and divisors on
the line (ratfunc), the twisted Cartier operator (cartier), Artin-Schreier
covers (ascover), enhanced level graphs with stratum dimension ledgers
(strata), exact and quasi-exact marked loci (loci), and a CLI (cli).
"""

from .ascover import ArtinSchreierCover, CoverError, TraceForm, isomorphic, moduli_dimension
from .cartier import (
    BivariantForm,
    Differential,
    PPowerDecomposition,
    TcMatrix,
    cartier,
    differential_of,
    global_tc_matrix,
    integrate,
    is_exact,
    is_quasi_exact,
    ppower_decompose,
    twisted_cartier,
)
from .expr import ExprError, parse_element, parse_expression
from .ffield import FieldElement, FieldSpec, field, parse_field
from .loci import (
    MarkingConfig,
    ZeroPolePattern,
    dimension_formula,
    locus_membership,
    locus_search,
    tangent_dimension,
    tangent_report,
)
from .mobius import Mobius
from .ratfunc import (
    INFINITY,
    NEG_INF,
    Divisor,
    Place,
    Polynomial,
    RationalFunction,
    partial_fractions,
)
from .strata import (
    GraphError,
    HurwitzData,
    LevelGraph,
    Marking,
    SourceEdge,
    SourceVertex,
    StratumLedger,
    TargetEdge,
    TargetVertex,
    ValidationReport,
    canonical_form,
    enumerate_components,
    generic_dimension,
    monoid_rank,
    stratum_dimension,
    validate,
)

__version__ = "1.0.0"
