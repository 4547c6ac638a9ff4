"""Seshadri constants of nef divisor classes on the flag bundle.

For a nef class with nef-basis coordinates ``(a_1, ..., a_gamma, b)`` the
Seshadri constant at any point lies between ``min(a_1..a_gamma, b)`` and
``min(a_1..a_gamma)``.  The lower bound is the exact global value and is
attained at every point of the distinguished section.  The upper bound is
the exact value at very general points provided the *divisibility
condition* holds: every flagged quotient rank occurs as the rank of some
filtration step whose degree is an integer multiple of that rank.  When
the condition fails and ``b < min(a_1..a_gamma)``, whether the upper
bound is still attained is an open question and the value is reported as
unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DivisibilityNotSatisfied,
    NotNef,
    ValidationError,
    ZeroMultiplicity,
)
from .flags import (
    CurveClass,
    DivisorClass,
    FlagModel,
    Positivity,
    classify_divisor,
    pairing,
    to_nef,
)

NO_RANK_MATCH = "no_rank_match"
NOT_DIVISIBLE = "not_divisible"

NOTE_LOWER = (
    "lower bound min(a_1..a_g, b): fiber curves give at least min(a), "
    "curves dominating the base give at least b"
)
NOTE_UPPER = (
    "upper bound min(a_1..a_g): a line moved through the point has ratio a_i"
)
NOTE_GLOBAL = (
    "global value equals the lower bound; it is attained at points of the "
    "distinguished section"
)
NOTE_AT_SECTION = (
    "at a section point the section curve itself realizes the ratio b, and "
    "moved lines realize the a_i"
)
NOTE_GENERAL_CONSTANT = (
    "b >= min(a_1..a_g), so the value is min(a_1..a_g) at every point"
)
NOTE_GENERAL_DIVISIBILITY = (
    "divisibility condition holds, so the value at very general points is "
    "min(a_1..a_g)"
)
NOTE_GENERAL_OPEN = (
    "unknown: the divisibility condition fails and b < min(a_1..a_g); "
    "whether the very-general value still equals min(a_1..a_g) is open, "
    "only the two-sided bounds are known"
)

RULE_CONSTANT = "constant_case"
RULE_DIVISIBILITY = "divisibility_condition"
RULE_OPEN = "open"

UNIQUE_SECTION_NOTE = (
    "the linear system of this class contains exactly one effective divisor "
    "(one-dimensional space of sections)"
)


@dataclass(frozen=True)
class Witness:
    """Filtration step matching one flagged quotient rank.

    ``index`` is the 1-based position in the flag, ``hn_index`` the
    1-based filtration step whose rank equals ``flag_rank``, and
    ``subbundle_degree`` that step's degree.
    """

    index: int
    flag_rank: int
    hn_index: int
    subbundle_degree: int

    @property
    def divisible(self) -> bool:
        return self.subbundle_degree % self.flag_rank == 0


@dataclass(frozen=True)
class Failure:
    """Why the divisibility condition fails at one flag position."""

    index: int
    reason: str


@dataclass(frozen=True)
class DivisibilityStatus:
    """Outcome of the divisibility condition check.

    ``witnesses`` has one entry per flag position: the matching step when
    the rank occurs in the filtration (even if its degree fails the
    divisibility test), else ``None``.
    """

    holds: bool
    witnesses: tuple[Optional[Witness], ...]
    failures: tuple[Failure, ...]

    def subbundle_degrees(self) -> tuple[int, ...]:
        """Matched step degrees; only meaningful when the condition holds."""
        if not self.holds:
            raise DivisibilityNotSatisfied(
                "subbundle degrees are only defined when the condition holds"
            )
        return tuple(w.subbundle_degree for w in self.witnesses)


def check_divisibility(model: FlagModel) -> DivisibilityStatus:
    """Check the divisibility condition for every flagged quotient rank.

    For each flag position i the filtration is searched for a step of
    rank exactly ``r_i`` (unique when present, since ranks strictly
    increase); the condition at i holds when such a step exists and its
    degree is a multiple of ``r_i``.
    """
    witnesses: list[Optional[Witness]] = []
    failures: list[Failure] = []
    for i, r in enumerate(model.spec.quotient_ranks, start=1):
        match = None
        for c, step in enumerate(model.hn.steps, start=1):
            if step.rank == r:
                match = Witness(i, r, c, step.degree)
                break
        witnesses.append(match)
        if match is None:
            failures.append(Failure(i, NO_RANK_MATCH))
        elif not match.divisible:
            failures.append(Failure(i, NOT_DIVISIBLE))
    return DivisibilityStatus(not failures, tuple(witnesses), tuple(failures))


def _nef_coords(divisor: DivisorClass, model: FlagModel) -> tuple[Fraction, ...]:
    converted = to_nef(divisor, model)
    if classify_divisor(converted, model) is Positivity.NOT_NEF:
        raise NotNef(
            "Seshadri constants are defined here only for nef classes; "
            f"nef-basis coordinates {[str(c) for c in converted.coords]} "
            "have a negative entry"
        )
    return converted.coords


def seshadri_bounds(
    divisor: DivisorClass, model: FlagModel
) -> tuple[Fraction, Fraction]:
    """Two-sided bounds ``(min(a_1..a_g, b), min(a_1..a_g))`` for a nef class."""
    coords = _nef_coords(divisor, model)
    upper = min(coords[:-1])
    return min(upper, coords[-1]), upper


def epsilon_at_section(divisor: DivisorClass, model: FlagModel) -> Fraction:
    """Exact value at any point of the distinguished section: the lower bound."""
    return seshadri_bounds(divisor, model)[0]


def epsilon_global(divisor: DivisorClass, model: FlagModel) -> Fraction:
    """Exact global minimum over all points: ``min(a_1..a_g, b)``."""
    return seshadri_bounds(divisor, model)[0]


def epsilon_constant_case(
    divisor: DivisorClass, model: FlagModel
) -> Optional[Fraction]:
    """``min(a_1..a_g)``, valid at every point, when ``b >= min(a_1..a_g)``.

    Returns ``None`` when the hypothesis fails and the constant-value
    conclusion does not apply.
    """
    coords = _nef_coords(divisor, model)
    upper = min(coords[:-1])
    if coords[-1] >= upper:
        return upper
    return None


@dataclass(frozen=True)
class Unknown:
    """Open outcome for the very-general value, carrying the known bounds."""

    lower: Fraction
    upper: Fraction
    reason: str = NOTE_GENERAL_OPEN


def epsilon_general_point(
    divisor: DivisorClass, model: FlagModel
) -> Union[Fraction, Unknown]:
    """Value at very general points, or :class:`Unknown`.

    The unconditional constant case (``b >= min(a)``) is checked first so
    that it never reports unknown; otherwise the divisibility condition
    decides between the exact value ``min(a_1..a_g)`` and an open
    outcome carrying the two-sided bounds.
    """
    lower, upper = seshadri_bounds(divisor, model)
    if lower == upper:
        return upper
    if check_divisibility(model).holds:
        return upper
    return Unknown(lower, upper)


def seshadri_ratio(
    curve: CurveClass, divisor: DivisorClass, multiplicity: int
) -> Fraction:
    """One candidate ratio: intersection number over point multiplicity.

    The divisor must already be in nef-basis coordinates, since no model
    is available here to convert it.
    """
    if isinstance(multiplicity, bool) or not isinstance(multiplicity, int):
        raise ValidationError(
            f"multiplicity must be an integer, got {multiplicity!r}"
        )
    if multiplicity < 1:
        raise ZeroMultiplicity(
            f"multiplicity must be >= 1, got {multiplicity}"
        )
    return pairing(curve, divisor) / multiplicity


def degree_gaps(model: FlagModel, status: DivisibilityStatus) -> tuple[int, ...]:
    """Matched subbundle degree minus quotient degree, per flag position.

    Both bundles compared at position i have the same rank; each gap is
    at least 1 for valid non-semistable input (a property the test suite
    checks), which is what makes the very-general value exact.
    """
    if not status.holds:
        raise DivisibilityNotSatisfied(
            "degree gaps are only defined when the divisibility condition holds"
        )
    if len(status.witnesses) != model.gamma:
        raise ValidationError(
            "status does not match the model: "
            f"{len(status.witnesses)} witnesses for gamma {model.gamma}"
        )
    return tuple(
        w.subbundle_degree - t
        for w, t in zip(status.witnesses, model.quotient_degrees)
    )


@dataclass(frozen=True)
class GrassmannDivisor:
    """Divisor class on one Grassmannian factor, ``h*H + c*f`` shape."""

    label: str
    hyperplane_coeff: int
    base_coeff: int
    note: str = ""


def grassmann_pseff_generators(
    model: FlagModel, status: DivisibilityStatus, i: int
) -> tuple[GrassmannDivisor, GrassmannDivisor]:
    """Generators of the pseudo-effective cone of the i-th Grassmannian bundle.

    Under the divisibility condition the cone is spanned by
    ``H - z_i * f`` (with ``z_i`` the matched subbundle degree) and the
    fiber class ``f``; the first carries the uniqueness note for its
    linear system.
    """
    if not status.holds:
        raise DivisibilityNotSatisfied(
            "pseudo-effective generators are only described when the "
            "divisibility condition holds"
        )
    if not 1 <= i <= model.gamma:
        raise ValidationError(f"index {i} out of range 1..{model.gamma}")
    z = status.witnesses[i - 1].subbundle_degree
    if z == 0:
        sign = ""
        boundary_label = "H"
    else:
        sign = "-" if z > 0 else "+"
        boundary_label = f"H {sign} {abs(z)}*f"
    return (
        GrassmannDivisor(boundary_label, 1, -z, note=UNIQUE_SECTION_NOTE),
        GrassmannDivisor("f", 0, 1),
    )


@dataclass(frozen=True)
class SeshadriReport:
    """All Seshadri data for one nef divisor class.

    ``epsilon_general`` is ``None`` exactly when ``general_rule`` is
    ``"open"``; the bounds then say everything that is known.
    """

    divisor: DivisorClass
    lower: Fraction
    upper: Fraction
    epsilon_global: Fraction
    epsilon_at_section: Fraction
    epsilon_general: Optional[Fraction]
    general_rule: str
    assumption: DivisibilityStatus
    notes: dict[str, str]


def full_report(divisor: DivisorClass, model: FlagModel) -> SeshadriReport:
    """Assemble bounds, exact values, and the condition check for one class."""
    converted = to_nef(divisor, model)
    lower, upper = seshadri_bounds(converted, model)
    status = check_divisibility(model)
    notes = {
        "lower": NOTE_LOWER,
        "upper": NOTE_UPPER,
        "global": NOTE_GLOBAL,
        "at_section": NOTE_AT_SECTION,
    }
    if lower == upper:
        general: Optional[Fraction] = upper
        rule = RULE_CONSTANT
        notes["general"] = NOTE_GENERAL_CONSTANT
    elif status.holds:
        general = upper
        rule = RULE_DIVISIBILITY
        notes["general"] = NOTE_GENERAL_DIVISIBILITY
    else:
        general = None
        rule = RULE_OPEN
        notes["general"] = NOTE_GENERAL_OPEN
    return SeshadriReport(
        divisor=converted,
        lower=lower,
        upper=upper,
        epsilon_global=lower,
        epsilon_at_section=lower,
        epsilon_general=general,
        general_rule=rule,
        assumption=status,
        notes=notes,
    )
