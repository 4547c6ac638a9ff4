"""Exact cones and Seshadri constants of flag bundles over a curve.

Given the Harder-Narasimhan data of a non-semistable vector bundle on a
smooth projective curve and a choice of quotient ranks from the
filtration profile, this package models the associated flag bundle:
generators of its nef cone and its cone of curves, the duality pairing
between them, and the Seshadri constants of nef divisor classes (exact
global value, two-sided bounds, value at the distinguished section, and
the very-general-point value when the divisibility condition decides
it).  All arithmetic is exact rational.
"""

from .bundles import (
    DEFAULT_ORACLE_CAP,
    CurveInfo,
    HNFiltration,
    HNStep,
    SemistablePiece,
    SplitBundle,
    hn_brute_force_oracle,
    hn_filtration,
    is_semistable,
    slope,
    validate_hn,
)
from .config import DivisorInput, ProblemConfig, SummandSpec, parse_config, parse_rational
from .errors import (
    BasisMismatch,
    CapExceeded,
    DivisibilityNotSatisfied,
    FlagconesError,
    InputError,
    InternalCheckFailure,
    NonDecreasingSlope,
    NonIncreasingRank,
    NotNef,
    NotStrictlyDecreasing,
    ParseError,
    PreconditionError,
    RankNotInHNProfile,
    SemistableBundle,
    ValidationError,
    ZeroMultiplicity,
)
from .flags import (
    Basis,
    CurveClass,
    CurvePosition,
    DivisorClass,
    FlagModel,
    FlagSpec,
    Positivity,
    build_model,
    classify_curve,
    classify_divisor,
    convert_basis,
    curve_generators,
    make_flag_spec,
    nef_generators,
    pairing,
    pairing_matrix,
    quotient_ranks,
    to_nef,
)
from .gallery import Digest, Fixture, builtin_examples, check_fixture, digest_of
from .report import (
    ReportDocument,
    parse_machine,
    render,
    render_human,
    render_machine,
    run,
    run_cones,
    run_hn,
)
from .seshadri import (
    DivisibilityStatus,
    GrassmannDivisor,
    SeshadriReport,
    Unknown,
    Witness,
    check_divisibility,
    degree_gaps,
    epsilon_at_section,
    epsilon_constant_case,
    epsilon_general_point,
    epsilon_global,
    full_report,
    grassmann_pseff_generators,
    seshadri_bounds,
    seshadri_ratio,
)

__version__ = "0.1.0"
