"""Circulant cyclic lattices: construction, orthogonality-system solving,
exact short-vector enumeration, and center densities."""

from .core import (
    CirculantLattice,
    GeneratorVector,
    VietaCoefficients,
    build_lattice,
    pair_sum_plain,
    pair_sum_wrapped,
    rot,
    shift_inner,
    vieta,
)
from .density import (
    BEST_KNOWN_CENTER_DENSITY,
    LatticeReport,
    ReportMethod,
    TableRow,
    center_density,
    delta_closed_a4b,
    delta_closed_half,
    density_table,
    make_report,
    ref_An,
    ref_Dn,
)
from .determinants import (
    RELAXED_SINGULAR_RTOL,
    ClosedFormDet,
    DetReport,
    circulant_eigenvalues,
    det_closed_a4b,
    det_closed_vanishing,
    det_direct,
    det_eigen,
    is_singular,
    make_det_report,
    singularity_threshold,
)
from .enumeration import EnumResult, enumerate_short, kissing_by_qform, oracle_min
from .errors import (
    BudgetExceededError,
    DimensionError,
    IndexRangeError,
    NumericInconsistencyError,
    SingularLatticeError,
    SpecError,
)
from .norms import (
    DefinitenessCheck,
    FormKind,
    QuadForm,
    d_form_eval,
    form_eigenvalues,
    is_positive_definite,
    norm_full,
    norm_simplified,
    q_form_eval,
    singular_witness,
)
from .solver import SolveResult, SystemSpec, Variant, r0_optimal, residual, solve

__version__ = "0.1.0"

__all__ = [
    "BEST_KNOWN_CENTER_DENSITY",
    "BudgetExceededError",
    "CirculantLattice",
    "ClosedFormDet",
    "DefinitenessCheck",
    "DetReport",
    "DimensionError",
    "EnumResult",
    "FormKind",
    "GeneratorVector",
    "IndexRangeError",
    "LatticeReport",
    "NumericInconsistencyError",
    "QuadForm",
    "RELAXED_SINGULAR_RTOL",
    "ReportMethod",
    "SingularLatticeError",
    "SolveResult",
    "SpecError",
    "SystemSpec",
    "TableRow",
    "Variant",
    "VietaCoefficients",
    "build_lattice",
    "center_density",
    "circulant_eigenvalues",
    "d_form_eval",
    "delta_closed_a4b",
    "delta_closed_half",
    "density_table",
    "det_closed_a4b",
    "det_closed_vanishing",
    "det_direct",
    "det_eigen",
    "enumerate_short",
    "form_eigenvalues",
    "is_positive_definite",
    "is_singular",
    "kissing_by_qform",
    "make_det_report",
    "make_report",
    "norm_full",
    "norm_simplified",
    "oracle_min",
    "pair_sum_plain",
    "pair_sum_wrapped",
    "q_form_eval",
    "r0_optimal",
    "ref_An",
    "ref_Dn",
    "residual",
    "rot",
    "shift_inner",
    "singular_witness",
    "singularity_threshold",
    "solve",
    "vieta",
]
