"""Exact concordance invariants (V, H, nu+, d, tau) of combinatorial knot Floer complexes."""

from .algebra import dual, dual_family, tensor, tensor_family
from .checks import TheoremCheckResult
from .complex import (
    ComplexError,
    Generator,
    KnotComplex,
    KnotComplexFamily,
    SpinCStructure,
    ValidationError,
    ValidationReport,
    basis_change,
    direct_sum,
    flip,
    shift,
    single_label,
    validate,
)
from .homology import GradedUComplex, d_invariant, forget_alexander, homology_profile, localized_rank, reduce
from .invariants import (
    genus_report,
    h_invariant,
    is_locally_trivial,
    is_totally_locally_trivial,
    middle_grading,
    middle_spectrum,
    nu_plus,
    nu_plus_dual,
    nu_plus_s,
    tau,
    v_invariant,
)
from .serialization import ParseError, load_family, parse_family, save_family, serialize_family

__version__ = "0.1.0"
