"""Report pipeline: run a problem config, render and reparse documents.

Machine output is a single JSON document with top-level keys ``model``,
``cones``, ``assumption``, ``divisors`` plus a ``spec_version`` field.
Every number is an integer or an exact ``"p/q"`` string; rendering
followed by :func:`parse_machine` reproduces the document exactly, and
identical configs produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import seshadri as sesh
from .bundles import HNFiltration, SplitBundle, hn_filtration, validate_hn
from .config import ProblemConfig, parse_rational
from .errors import (
    EXIT_OK,
    FlagconesError,
    InternalCheckFailure,
    ParseError,
    exit_code_for,
)
from .flags import (
    Basis,
    DivisorClass,
    FlagModel,
    build_model,
    classify_divisor,
    convert_basis,
    curve_generators,
    make_flag_spec,
    nef_generators,
    pairing_matrix,
    quotient_ranks,
    to_nef,
)

SPEC_VERSION = 1

DIMENSION_NOTE = (
    "fiber and total dimension are derived from the subspace dimension "
    "pattern (standard flag combinatorics); they are bookkeeping, not part "
    "of the cone data"
)


@dataclass(frozen=True)
class ModelSummary:
    """Bundle, filtration and flag data; flag fields are None when only
    the filtration was requested."""

    curve_genus: int
    curve_label: str
    hn_steps: tuple[tuple[int, int], ...]
    rank: int
    degree: int
    slope: Fraction
    semistable: bool
    quotient_slopes: tuple[Fraction, ...]
    quotient_ranks: tuple[int, ...]
    flag_ranks: Optional[tuple[int, ...]]
    hn_indices: Optional[tuple[int, ...]]
    subspace_dims: Optional[tuple[int, ...]]
    quotient_degrees: Optional[tuple[int, ...]]
    picard_rank: Optional[int]
    fiber_dimension: Optional[int]
    total_dimension: Optional[int]
    notes: dict[str, str]


@dataclass(frozen=True)
class DivisorGeneratorInfo:
    name: str
    label: str
    nef_coords: tuple[Fraction, ...]
    pluecker_coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class CurveGeneratorInfo:
    name: str
    label: str
    coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class ConesSection:
    nef_generators: tuple[DivisorGeneratorInfo, ...]
    curve_generators: tuple[CurveGeneratorInfo, ...]
    pairing_matrix: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class WitnessInfo:
    """Per-position outcome of the divisibility check; matching step data
    is None when the flag rank does not occur in the filtration."""

    index: int
    flag_rank: int
    hn_index: Optional[int]
    subbundle_degree: Optional[int]
    divisible: Optional[bool]


@dataclass(frozen=True)
class FailureInfo:
    index: int
    reason: str


@dataclass(frozen=True)
class AssumptionSection:
    holds: bool
    witnesses: tuple[WitnessInfo, ...]
    failures: tuple[FailureInfo, ...]


@dataclass(frozen=True)
class SeshadriSummary:
    lower: Fraction
    upper: Fraction
    epsilon_global: Fraction
    epsilon_at_section: Fraction
    epsilon_general: Optional[Fraction]
    general_rule: str
    notes: dict[str, str]


@dataclass(frozen=True)
class ErrorInfo:
    type: str
    message: str


@dataclass(frozen=True)
class DivisorEntry:
    """Per-divisor result; ``error`` is set instead of ``seshadri`` when
    the class could not be evaluated, and the input is echoed back."""

    name: str
    basis: str
    coords: tuple[Fraction, ...]
    nef_coords: Optional[tuple[Fraction, ...]]
    classification: Optional[str]
    seshadri: Optional[SeshadriSummary]
    error: Optional[ErrorInfo]


@dataclass(frozen=True)
class ReportDocument:
    spec_version: int
    model: ModelSummary
    cones: Optional[ConesSection]
    assumption: Optional[AssumptionSection]
    divisors: Optional[tuple[DivisorEntry, ...]]


# ---------------------------------------------------------------------------
# pipeline


def filtration_from_config(config: ProblemConfig) -> HNFiltration:
    """Filtration of the configured bundle (computed or user-asserted)."""
    if config.summands is not None:
        return hn_filtration(SplitBundle(config.summand_degrees(), config.curve))
    return validate_hn(config.hn_steps)


def model_from_config(config: ProblemConfig) -> FlagModel:
    hn = filtration_from_config(config)
    return build_model(hn, make_flag_spec(hn, config.flag_ranks))


def assert_duality(model: FlagModel) -> tuple[tuple[Fraction, ...], ...]:
    """Recompute the pairing matrix and require it to be the identity."""
    matrix = pairing_matrix(model)
    size = model.gamma + 1
    for i in range(size):
        for j in range(size):
            expected = Fraction(1) if i == j else Fraction(0)
            if matrix[i][j] != expected:
                raise InternalCheckFailure(
                    f"pairing matrix is not the identity at ({i + 1}, {j + 1}): "
                    f"{matrix[i][j]}"
                )
    return matrix


def _model_summary(
    config: ProblemConfig, hn: HNFiltration, model: Optional[FlagModel]
) -> ModelSummary:
    if model is None:
        flag_fields = dict(
            flag_ranks=None,
            hn_indices=None,
            subspace_dims=None,
            quotient_degrees=None,
            picard_rank=None,
            fiber_dimension=None,
            total_dimension=None,
            notes={},
        )
    else:
        flag_fields = dict(
            flag_ranks=model.spec.quotient_ranks,
            hn_indices=model.spec.hn_indices,
            subspace_dims=model.spec.subspace_dims,
            quotient_degrees=model.quotient_degrees,
            picard_rank=model.picard_rank,
            fiber_dimension=model.fiber_dimension,
            total_dimension=model.total_dimension,
            notes={"dimensions": DIMENSION_NOTE},
        )
    return ModelSummary(
        curve_genus=config.curve.genus,
        curve_label=config.curve.label,
        hn_steps=hn.step_pairs(),
        rank=hn.n,
        degree=hn.degree,
        slope=hn.slope,
        semistable=hn.is_semistable,
        quotient_slopes=hn.quotient_slopes(),
        quotient_ranks=quotient_ranks(hn),
        **flag_fields,
    )


def _cones_section(model: FlagModel) -> ConesSection:
    matrix = assert_duality(model)
    divisor_infos = tuple(
        DivisorGeneratorInfo(
            name=g.name,
            label=g.label,
            nef_coords=g.coords,
            pluecker_coords=convert_basis(g, model).coords,
        )
        for g in nef_generators(model)
    )
    curve_infos = tuple(
        CurveGeneratorInfo(name=c.name, label=c.label, coords=c.coords)
        for c in curve_generators(model)
    )
    return ConesSection(divisor_infos, curve_infos, matrix)


def _assumption_section(status: sesh.DivisibilityStatus, model: FlagModel) -> AssumptionSection:
    witnesses = []
    for i, (r, w) in enumerate(
        zip(model.spec.quotient_ranks, status.witnesses), start=1
    ):
        if w is None:
            witnesses.append(WitnessInfo(i, r, None, None, None))
        else:
            witnesses.append(
                WitnessInfo(i, r, w.hn_index, w.subbundle_degree, w.divisible)
            )
    failures = tuple(FailureInfo(f.index, f.reason) for f in status.failures)
    return AssumptionSection(status.holds, tuple(witnesses), failures)


def _divisor_entry(spec, model: FlagModel) -> DivisorEntry:
    divisor = DivisorClass(spec.basis, spec.coords, name=spec.name)
    try:
        converted = to_nef(divisor, model)
    except FlagconesError as exc:
        return DivisorEntry(
            name=spec.name,
            basis=spec.basis.value,
            coords=spec.coords,
            nef_coords=None,
            classification=None,
            seshadri=None,
            error=ErrorInfo(type(exc).__name__, str(exc)),
        )
    classification = classify_divisor(converted, model)
    try:
        report = sesh.full_report(converted, model)
    except FlagconesError as exc:
        return DivisorEntry(
            name=spec.name,
            basis=spec.basis.value,
            coords=spec.coords,
            nef_coords=converted.coords,
            classification=classification.value,
            seshadri=None,
            error=ErrorInfo(type(exc).__name__, str(exc)),
        )
    summary = SeshadriSummary(
        lower=report.lower,
        upper=report.upper,
        epsilon_global=report.epsilon_global,
        epsilon_at_section=report.epsilon_at_section,
        epsilon_general=report.epsilon_general,
        general_rule=report.general_rule,
        notes=dict(report.notes),
    )
    return DivisorEntry(
        name=spec.name,
        basis=spec.basis.value,
        coords=spec.coords,
        nef_coords=converted.coords,
        classification=classification.value,
        seshadri=summary,
        error=None,
    )


def run_hn(config: ProblemConfig) -> ReportDocument:
    """Filtration-only report; the flag section of the config is ignored."""
    hn = filtration_from_config(config)
    return ReportDocument(SPEC_VERSION, _model_summary(config, hn, None), None, None, None)


def run_cones(config: ProblemConfig) -> ReportDocument:
    """Model plus cone generators and the (verified) pairing matrix."""
    hn = filtration_from_config(config)
    model = build_model(hn, make_flag_spec(hn, config.flag_ranks))
    return ReportDocument(
        SPEC_VERSION,
        _model_summary(config, hn, model),
        _cones_section(model),
        None,
        None,
    )


def run(config: ProblemConfig) -> ReportDocument:
    """Full report: model, cones, divisibility condition, per-divisor data.

    Per-divisor failures (non-nef class, wrong coordinate count) are
    recorded in the document instead of aborting, so the geometry
    sections are always present once the model builds.
    """
    hn = filtration_from_config(config)
    model = build_model(hn, make_flag_spec(hn, config.flag_ranks))
    status = sesh.check_divisibility(model)
    entries = tuple(_divisor_entry(spec, model) for spec in config.divisors)
    return ReportDocument(
        SPEC_VERSION,
        _model_summary(config, hn, model),
        _cones_section(model),
        _assumption_section(status, model),
        entries,
    )


def worst_exit_code(doc: ReportDocument) -> int:
    """Exit code implied by per-divisor errors recorded in the document."""
    code = EXIT_OK
    for entry in doc.divisors or ():
        if entry.error is not None:
            code = max(code, exit_code_for(entry.error.type))
    return code


# ---------------------------------------------------------------------------
# machine format


def _num(value: Fraction):
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def _nums(values) -> list:
    return [_num(v) for v in values]


def _rat(value, location: str) -> Fraction:
    return parse_rational(value, location)


def _rats(values, location: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise ParseError("expected an array of rationals", location)
    return tuple(_rat(v, f"{location}[{j}]") for j, v in enumerate(values))


def _model_to_json(m: ModelSummary) -> dict:
    return {
        "curve": {"genus": m.curve_genus, "label": m.curve_label},
        "hn_steps": [list(step) for step in m.hn_steps],
        "rank": m.rank,
        "degree": m.degree,
        "slope": _num(m.slope),
        "semistable": m.semistable,
        "quotient_slopes": _nums(m.quotient_slopes),
        "quotient_ranks": list(m.quotient_ranks),
        "flag_ranks": None if m.flag_ranks is None else list(m.flag_ranks),
        "hn_indices": None if m.hn_indices is None else list(m.hn_indices),
        "subspace_dims": None if m.subspace_dims is None else list(m.subspace_dims),
        "quotient_degrees": (
            None if m.quotient_degrees is None else list(m.quotient_degrees)
        ),
        "picard_rank": m.picard_rank,
        "fiber_dimension": m.fiber_dimension,
        "total_dimension": m.total_dimension,
        "notes": dict(m.notes),
    }


def _cones_to_json(c: Optional[ConesSection]):
    if c is None:
        return None
    return {
        "nef_generators": [
            {
                "name": g.name,
                "label": g.label,
                "nef": _nums(g.nef_coords),
                "pluecker": _nums(g.pluecker_coords),
            }
            for g in c.nef_generators
        ],
        "curve_generators": [
            {"name": g.name, "label": g.label, "coords": _nums(g.coords)}
            for g in c.curve_generators
        ],
        "pairing_matrix": [_nums(row) for row in c.pairing_matrix],
    }


def _assumption_to_json(a: Optional[AssumptionSection]):
    if a is None:
        return None
    return {
        "holds": a.holds,
        "witnesses": [
            {
                "index": w.index,
                "flag_rank": w.flag_rank,
                "hn_index": w.hn_index,
                "subbundle_degree": w.subbundle_degree,
                "divisible": w.divisible,
            }
            for w in a.witnesses
        ],
        "failures": [{"index": f.index, "reason": f.reason} for f in a.failures],
    }


def _divisors_to_json(entries: Optional[tuple[DivisorEntry, ...]]):
    if entries is None:
        return None
    out = []
    for e in entries:
        seshadri_json = None
        if e.seshadri is not None:
            s = e.seshadri
            seshadri_json = {
                "lower": _num(s.lower),
                "upper": _num(s.upper),
                "global": _num(s.epsilon_global),
                "at_section": _num(s.epsilon_at_section),
                "general": None if s.epsilon_general is None else _num(s.epsilon_general),
                "general_rule": s.general_rule,
                "notes": dict(s.notes),
            }
        out.append(
            {
                "name": e.name,
                "basis": e.basis,
                "coords": _nums(e.coords),
                "nef_coords": None if e.nef_coords is None else _nums(e.nef_coords),
                "classification": e.classification,
                "seshadri": seshadri_json,
                "error": (
                    None
                    if e.error is None
                    else {"type": e.error.type, "message": e.error.message}
                ),
            }
        )
    return out


def render_machine(doc: ReportDocument) -> str:
    """Deterministic JSON rendering of a report document."""
    payload = {
        "spec_version": doc.spec_version,
        "model": _model_to_json(doc.model),
        "cones": _cones_to_json(doc.cones),
        "assumption": _assumption_to_json(doc.assumption),
        "divisors": _divisors_to_json(doc.divisors),
    }
    return json.dumps(payload, indent=2) + "\n"


def _model_from_json(data) -> ModelSummary:
    curve = data["curve"]
    return ModelSummary(
        curve_genus=curve["genus"],
        curve_label=curve["label"],
        hn_steps=tuple((step[0], step[1]) for step in data["hn_steps"]),
        rank=data["rank"],
        degree=data["degree"],
        slope=_rat(data["slope"], "model.slope"),
        semistable=data["semistable"],
        quotient_slopes=_rats(data["quotient_slopes"], "model.quotient_slopes"),
        quotient_ranks=tuple(data["quotient_ranks"]),
        flag_ranks=None if data["flag_ranks"] is None else tuple(data["flag_ranks"]),
        hn_indices=None if data["hn_indices"] is None else tuple(data["hn_indices"]),
        subspace_dims=(
            None if data["subspace_dims"] is None else tuple(data["subspace_dims"])
        ),
        quotient_degrees=(
            None if data["quotient_degrees"] is None else tuple(data["quotient_degrees"])
        ),
        picard_rank=data["picard_rank"],
        fiber_dimension=data["fiber_dimension"],
        total_dimension=data["total_dimension"],
        notes=dict(data["notes"]),
    )


def _cones_from_json(data) -> Optional[ConesSection]:
    if data is None:
        return None
    return ConesSection(
        nef_generators=tuple(
            DivisorGeneratorInfo(
                name=g["name"],
                label=g["label"],
                nef_coords=_rats(g["nef"], "cones.nef"),
                pluecker_coords=_rats(g["pluecker"], "cones.pluecker"),
            )
            for g in data["nef_generators"]
        ),
        curve_generators=tuple(
            CurveGeneratorInfo(
                name=g["name"],
                label=g["label"],
                coords=_rats(g["coords"], "cones.coords"),
            )
            for g in data["curve_generators"]
        ),
        pairing_matrix=tuple(
            _rats(row, "cones.pairing_matrix") for row in data["pairing_matrix"]
        ),
    )


def _assumption_from_json(data) -> Optional[AssumptionSection]:
    if data is None:
        return None
    return AssumptionSection(
        holds=data["holds"],
        witnesses=tuple(
            WitnessInfo(
                index=w["index"],
                flag_rank=w["flag_rank"],
                hn_index=w["hn_index"],
                subbundle_degree=w["subbundle_degree"],
                divisible=w["divisible"],
            )
            for w in data["witnesses"]
        ),
        failures=tuple(
            FailureInfo(index=f["index"], reason=f["reason"]) for f in data["failures"]
        ),
    )


def _divisors_from_json(data) -> Optional[tuple[DivisorEntry, ...]]:
    if data is None:
        return None
    entries = []
    for e in data:
        seshadri_summary = None
        if e["seshadri"] is not None:
            s = e["seshadri"]
            seshadri_summary = SeshadriSummary(
                lower=_rat(s["lower"], "seshadri.lower"),
                upper=_rat(s["upper"], "seshadri.upper"),
                epsilon_global=_rat(s["global"], "seshadri.global"),
                epsilon_at_section=_rat(s["at_section"], "seshadri.at_section"),
                epsilon_general=(
                    None
                    if s["general"] is None
                    else _rat(s["general"], "seshadri.general")
                ),
                general_rule=s["general_rule"],
                notes=dict(s["notes"]),
            )
        entries.append(
            DivisorEntry(
                name=e["name"],
                basis=e["basis"],
                coords=_rats(e["coords"], "divisor.coords"),
                nef_coords=(
                    None
                    if e["nef_coords"] is None
                    else _rats(e["nef_coords"], "divisor.nef_coords")
                ),
                classification=e["classification"],
                seshadri=seshadri_summary,
                error=(
                    None
                    if e["error"] is None
                    else ErrorInfo(e["error"]["type"], e["error"]["message"])
                ),
            )
        )
    return tuple(entries)


def parse_machine(text: str) -> ReportDocument:
    """Inverse of :func:`render_machine`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    try:
        version = data["spec_version"]
        if version != SPEC_VERSION:
            raise ParseError(f"unsupported spec_version {version!r}")
        return ReportDocument(
            spec_version=version,
            model=_model_from_json(data["model"]),
            cones=_cones_from_json(data["cones"]),
            assumption=_assumption_from_json(data["assumption"]),
            divisors=_divisors_from_json(data["divisors"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed report document: {exc!r}") from None


# ---------------------------------------------------------------------------
# human format


def _fmt(value: Fraction) -> str:
    return str(value)


def _fmt_tuple(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _rows(pairs: list[tuple[str, str]], indent: str = "  ") -> list[str]:
    width = max((len(k) for k, _ in pairs), default=0)
    return [f"{indent}{k.ljust(width)}  {v}" for k, v in pairs]


def _render_model(m: ModelSummary) -> list[str]:
    pairs = [
        ("curve", f"{m.curve_label} (genus {m.curve_genus})"),
        ("rank / degree", f"{m.rank} / {m.degree}"),
        ("slope", _fmt(m.slope)),
        ("semistable", "yes" if m.semistable else "no"),
        ("hn steps", "  ".join(_fmt_tuple(s) for s in m.hn_steps)),
        ("quotient slopes", "  ".join(_fmt(s) for s in m.quotient_slopes)),
        ("quotient ranks", "  ".join(str(r) for r in m.quotient_ranks) or "(none)"),
    ]
    if m.flag_ranks is not None:
        flag = ", ".join(str(r) for r in m.flag_ranks)
        pairs += [
            ("flag", f"Fl({flag})"),
            ("hn indices", "  ".join(str(k) for k in m.hn_indices)),
            ("subspace dims", "  ".join(str(s) for s in m.subspace_dims)),
            ("quotient degrees", "  ".join(str(t) for t in m.quotient_degrees)),
            ("picard rank", str(m.picard_rank)),
            ("fiber / total dim", f"{m.fiber_dimension} / {m.total_dimension}"),
        ]
    lines = ["model", *_rows(pairs)]
    for note in m.notes.values():
        lines.append(f"  note: {note}")
    return lines


def _render_cones(c: ConesSection) -> list[str]:
    lines = ["cones", "  nef generators"]
    name_width = max(len(g.name) for g in c.nef_generators)
    for g in c.nef_generators:
        lines.append(
            f"    {g.name.ljust(name_width)}  nef {_fmt_tuple(g.nef_coords)}"
            f"  pluecker {_fmt_tuple(g.pluecker_coords)}  [{g.label}]"
        )
    lines.append("  curve generators")
    name_width = max(len(g.name) for g in c.curve_generators)
    for g in c.curve_generators:
        lines.append(
            f"    {g.name.ljust(name_width)}  {_fmt_tuple(g.coords)}  [{g.label}]"
        )
    lines.append("  pairing matrix (curve generators x nef generators)")
    for row in c.pairing_matrix:
        lines.append("    " + " ".join(_fmt(v) for v in row))
    return lines


def _render_assumption(a: AssumptionSection) -> list[str]:
    lines = [
        "divisibility condition",
        f"  holds: {'yes' if a.holds else 'no'}",
    ]
    for w in a.witnesses:
        if w.hn_index is None:
            detail = "no filtration step of this rank"
        else:
            verdict = "yes" if w.divisible else "no"
            detail = (
                f"step {w.hn_index} has degree {w.subbundle_degree}; "
                f"divisible by {w.flag_rank}: {verdict}"
            )
        lines.append(f"  i={w.index}  flag rank {w.flag_rank}  {detail}")
    for f in a.failures:
        lines.append(f"  failure at i={f.index}: {f.reason}")
    return lines


def _render_divisor(e: DivisorEntry) -> list[str]:
    head = f"  {e.name}  {e.basis} {_fmt_tuple(e.coords)}"
    if e.nef_coords is not None and e.basis != Basis.NEF.value:
        head += f"  = nef {_fmt_tuple(e.nef_coords)}"
    if e.classification is not None:
        head += f"  -> {e.classification}"
    lines = [head]
    if e.error is not None:
        lines.append(f"    error [{e.error.type}]: {e.error.message}")
        return lines
    s = e.seshadri
    general = "unknown" if s.epsilon_general is None else _fmt(s.epsilon_general)
    pairs = [
        ("bounds", f"{_fmt(s.lower)} <= eps <= {_fmt(s.upper)}"),
        ("eps global", _fmt(s.epsilon_global)),
        ("eps at section", _fmt(s.epsilon_at_section)),
        ("eps very general", general),
    ]
    lines.extend(_rows(pairs, indent="    "))
    lines.append(f"    note: {s.notes['general']}")
    return lines


def render_human(doc: ReportDocument) -> str:
    """Aligned plain-text rendering of a report document."""
    lines = _render_model(doc.model)
    if doc.cones is not None:
        lines.append("")
        lines.extend(_render_cones(doc.cones))
    if doc.assumption is not None:
        lines.append("")
        lines.extend(_render_assumption(doc.assumption))
    if doc.divisors is not None:
        lines.append("")
        lines.append("divisors" if doc.divisors else "divisors: (none)")
        for entry in doc.divisors:
            lines.extend(_render_divisor(entry))
    return "\n".join(lines) + "\n"


def render(doc: ReportDocument, machine: bool = False) -> str:
    """Render a document in human or machine mode."""
    return render_machine(doc) if machine else render_human(doc)
