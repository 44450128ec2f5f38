"""Symmetric sequence spaces: norms, dilation operators, Boyd-type indices.

The package is organized bottom-up:

    seq        finite sequences with rearrangement semantics
    spaces     l^p, l^{p,q}, Lorentz and Orlicz norms + fundamental functions
    operators  dilations, shifts, doubling, dyadic embedding/averaging
    lattices   dyadic-block lattices, shift exponents, equivalence reports
    indices    Boyd / fundamental indices with interval error reports
    spectral   residual scans and approximate-eigenvector witnesses
    verify     one end-to-end check per advertised guarantee
    cli        the `symseq` command-line front end

Everything a caller normally needs re-exports from here.
"""

from .indices import (
    FundamentalTypeEvidence,
    IndexReport,
    Interval,
    boyd_indices,
    f_interval,
    fundamental_indices,
    fundamental_type_check,
    index_report,
    lorentz_indices,
    orlicz_indices,
    report_to_json,
)
from .lattices import (
    EX,
    UN,
    EquivalenceReport,
    LatticeSpec,
    ShiftExponents,
    WeightedLq,
    WeightRatioCondition,
    block_weights_from_lorentz,
    dyadic_equivalence_report,
    lattice_from_json,
    lattice_norm,
    lattice_to_json,
    sandwich_ratio,
    shift_exponents,
    unit_norms,
    weight_ratio_condition,
)
from .operators import (
    AvgProject,
    AvgProjectN,
    BlockEmbed,
    DilateDown,
    DilateUp,
    Doubling,
    DoublingInverse,
    DoublingMinusLambda,
    OperatorSpec,
    Shift,
    ShiftMinusLambda,
    apply,
    apply_array,
    apply_list,
    lorentz_dilation_norm,
    operator_norm_lower,
    parse_operator,
    spectral_radius_estimate,
)
from .seq import (
    Seq,
    disjoint_sum,
    rearrange,
    same_ordered_distribution,
    seq_from_json,
    seq_to_json,
)
from .spaces import (
    Lorentz,
    Lp,
    LpQ,
    Orlicz,
    OrliczFn,
    SpaceSpec,
    WeightSeq,
    delta2_margin,
    fundamental_function,
    norm,
    orlicz_inverse,
    power_weights,
    space_from_json,
    space_to_json,
)
from .spectral import (
    BranchingReport,
    DisjointnessReport,
    ScanPoint,
    WitnessReport,
    branching_witness,
    check_disjoint_supports,
    doubling_orbit_witness,
    moment_functional,
    rational_dilation,
    residual_scan,
    shift_identity_check,
    solve_shift_minus_lambda,
)
from .verify import ALL_CHECKS, CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "ALL_CHECKS",
    "AvgProject",
    "AvgProjectN",
    "BlockEmbed",
    "BranchingReport",
    "CheckResult",
    "DilateDown",
    "DilateUp",
    "DisjointnessReport",
    "Doubling",
    "DoublingInverse",
    "DoublingMinusLambda",
    "EquivalenceReport",
    "EX",
    "FundamentalTypeEvidence",
    "IndexReport",
    "Interval",
    "LatticeSpec",
    "Lorentz",
    "Lp",
    "LpQ",
    "OperatorSpec",
    "Orlicz",
    "OrliczFn",
    "ScanPoint",
    "Seq",
    "Shift",
    "ShiftExponents",
    "ShiftMinusLambda",
    "SpaceSpec",
    "UN",
    "WeightRatioCondition",
    "WeightSeq",
    "WeightedLq",
    "WitnessReport",
    "apply",
    "apply_array",
    "apply_list",
    "block_weights_from_lorentz",
    "boyd_indices",
    "branching_witness",
    "check_disjoint_supports",
    "delta2_margin",
    "disjoint_sum",
    "doubling_orbit_witness",
    "dyadic_equivalence_report",
    "f_interval",
    "fundamental_function",
    "fundamental_indices",
    "fundamental_type_check",
    "index_report",
    "lattice_from_json",
    "lattice_norm",
    "lattice_to_json",
    "lorentz_dilation_norm",
    "lorentz_indices",
    "moment_functional",
    "norm",
    "operator_norm_lower",
    "orlicz_indices",
    "orlicz_inverse",
    "parse_operator",
    "power_weights",
    "rational_dilation",
    "rearrange",
    "report_to_json",
    "residual_scan",
    "run_checks",
    "same_ordered_distribution",
    "sandwich_ratio",
    "seq_from_json",
    "seq_to_json",
    "shift_exponents",
    "shift_identity_check",
    "solve_shift_minus_lambda",
    "space_from_json",
    "space_to_json",
    "spectral_radius_estimate",
    "unit_norms",
    "weight_ratio_condition",
]
