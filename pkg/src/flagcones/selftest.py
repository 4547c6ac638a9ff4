"""Randomized self-checks: oracle equivalence and the invariant suite.

Everything here is deterministic given a seed.  The generators are also
used by the test suite; the CLI ``selftest`` subcommand runs the whole
list and reports one line per check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import seshadri as sesh
from .bundles import (
    DEFAULT_ORACLE_CAP,
    CurveInfo,
    HNFiltration,
    SplitBundle,
    hn_brute_force_oracle,
    hn_filtration,
    validate_hn,
)
from .config import DivisorInput, ProblemConfig, SummandSpec
from .errors import ValidationError
from .flags import (
    Basis,
    DivisorClass,
    FlagModel,
    build_model,
    convert_basis,
    curve_generators,
    make_flag_spec,
    pairing_matrix,
    quotient_ranks,
)
from .gallery import builtin_examples, check_fixture
from .report import parse_machine, render_machine, run


# ---------------------------------------------------------------------------
# random generators


def random_split_bundle(
    rng: random.Random, max_rank: int = 8, degree_bound: int = 5
) -> SplitBundle:
    rank = rng.randint(1, max_rank)
    degrees = tuple(rng.randint(-degree_bound, degree_bound) for _ in range(rank))
    return SplitBundle(degrees)


def random_nonsemistable_bundle(
    rng: random.Random, max_rank: int = 10, degree_bound: int = 6
) -> SplitBundle:
    while True:
        rank = rng.randint(2, max_rank)
        degrees = tuple(rng.randint(-degree_bound, degree_bound) for _ in range(rank))
        if len(set(degrees)) > 1:
            return SplitBundle(degrees)


def random_filtration(
    rng: random.Random, min_d: int = 2, max_d: int = 7, max_rank: int = 14
) -> HNFiltration:
    """Random valid filtration entered directly as cumulative steps."""
    d = rng.randint(min_d, min(max_d, max_rank))
    ranks = sorted(rng.sample(range(1, max_rank + 1), d))
    steps = []
    degree = 0
    previous_slope = None
    for j in range(d):
        piece_rank = ranks[j] - (ranks[j - 1] if j else 0)
        if previous_slope is None:
            piece_degree = rng.randint(-3, 8) * piece_rank + rng.randint(0, piece_rank - 1)
        else:
            # strictly below the previous slope
            ceiling = math.floor(previous_slope * piece_rank)
            if Fraction(ceiling, piece_rank) >= previous_slope:
                ceiling -= 1
            piece_degree = ceiling - rng.randint(0, 5)
        degree += piece_degree
        steps.append((ranks[j], degree))
        previous_slope = Fraction(piece_degree, piece_rank)
    return validate_hn(steps)


def random_model(rng: random.Random, max_gamma: int = 5) -> FlagModel:
    """Random flag model, mixing split bundles and raw filtration input."""
    while True:
        if rng.random() < 0.5:
            hn = hn_filtration(random_nonsemistable_bundle(rng))
        else:
            hn = random_filtration(rng)
        profile = quotient_ranks(hn)
        if profile:
            break
    gamma = rng.randint(1, min(max_gamma, len(profile)))
    chosen = tuple(sorted(rng.sample(profile, gamma), reverse=True))
    return build_model(hn, make_flag_spec(hn, chosen))


def random_nef_divisor(
    rng: random.Random, gamma: int, bound: int = 12
) -> DivisorClass:
    coords = tuple(
        Fraction(rng.randint(0, bound), rng.randint(1, 4)) for _ in range(gamma + 1)
    )
    return DivisorClass(Basis.NEF, coords)


def random_divisor(rng: random.Random, gamma: int, bound: int = 12) -> DivisorClass:
    basis = Basis.NEF if rng.random() < 0.5 else Basis.PLUECKER
    coords = tuple(
        Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
        for _ in range(gamma + 1)
    )
    return DivisorClass(basis, coords)


def random_divisibility_model(
    rng: random.Random, max_gamma: int = 5
) -> tuple[FlagModel, sesh.DivisibilityStatus]:
    """Random model for which the divisibility condition holds.

    Tries small split bundles first (keeping only flag positions whose
    quotient rank is matched by a step with divisible degree); falls back
    to a constructed filtration whose rank pattern is closed under
    complement and whose degrees are all multiples of their ranks, so
    that every flag choice satisfies the condition.
    """
    for _ in range(40):
        hn = hn_filtration(random_nonsemistable_bundle(rng, max_rank=9))
        profile = quotient_ranks(hn)
        ranks_present = {step.rank: step.degree for step in hn.steps}
        good = [
            r
            for r in profile
            if r in ranks_present and ranks_present[r] % r == 0
        ]
        if not good:
            continue
        gamma = rng.randint(1, min(max_gamma, len(good)))
        chosen = tuple(sorted(rng.sample(good, gamma), reverse=True))
        model = build_model(hn, make_flag_spec(hn, chosen))
        status = sesh.check_divisibility(model)
        if status.holds:
            return model, status
    while True:
        n = rng.randint(4, 12)
        pairs = rng.sample(range(1, n // 2 + 1), rng.randint(1, n // 2))
        ranks = sorted({a for p in pairs for a in (p, n - p)} - {0, n})
        if not ranks:
            continue
        ranks.append(n)
        scale = rng.randint(1, 3)
        degrees = [scale * r * (2 * n - r) + r * rng.randint(-2, 2) for r in ranks]
        try:
            hn = validate_hn(list(zip(ranks, degrees)))
        except ValidationError:
            continue
        profile = quotient_ranks(hn)
        gamma = rng.randint(1, min(max_gamma, len(profile)))
        chosen = tuple(sorted(rng.sample(profile, gamma), reverse=True))
        model = build_model(hn, make_flag_spec(hn, chosen))
        status = sesh.check_divisibility(model)
        if status.holds:
            return model, status


def random_config(rng: random.Random, max_divisors: int = 3) -> ProblemConfig:
    """Random full problem config, for end-to-end round-trip checks."""
    if rng.random() < 0.5:
        bundle = random_nonsemistable_bundle(rng)
        summands = tuple(SummandSpec(d, 1) for d in bundle.summand_degrees)
        hn = hn_filtration(bundle)
        kwargs = dict(summands=summands, hn_steps=None)
    else:
        hn = random_filtration(rng)
        kwargs = dict(summands=None, hn_steps=hn.step_pairs())
    profile = quotient_ranks(hn)
    gamma = rng.randint(1, min(4, len(profile)))
    flag = tuple(sorted(rng.sample(profile, gamma), reverse=True))
    divisors = []
    for j in range(rng.randint(0, max_divisors)):
        d = random_divisor(rng, gamma)
        divisors.append(DivisorInput(f"D{j + 1}", d.basis, d.coords))
    return ProblemConfig(
        curve=CurveInfo(rng.randint(0, 3), "X"),
        flag_ranks=flag,
        divisors=tuple(divisors),
        **kwargs,
    )


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    failures: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _identity(gamma: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(gamma + 1))
        for i in range(gamma + 1)
    )


def _check_oracle(rng, trials, cap) -> CheckResult:
    failures = 0
    detail = ""
    for _ in range(trials):
        bundle = random_split_bundle(rng, max_rank=min(8, cap))
        if hn_filtration(bundle) != hn_brute_force_oracle(bundle, cap=cap):
            failures += 1
            detail = detail or f"mismatch for degrees {bundle.summand_degrees}"
    return CheckResult("hn-oracle-equivalence", trials, failures, detail)


def _check_pairing(rng, trials) -> CheckResult:
    failures = 0
    detail = ""
    for _ in range(trials):
        model = random_model(rng)
        if pairing_matrix(model) != _identity(model.gamma):
            failures += 1
            detail = detail or f"non-identity for steps {model.hn.step_pairs()}"
    return CheckResult("pairing-identity", trials, failures, detail)


def _check_basis_roundtrip(rng, trials) -> CheckResult:
    failures = 0
    detail = ""
    for _ in range(trials):
        model = random_model(rng)
        divisor = random_divisor(rng, model.gamma)
        back = convert_basis(convert_basis(divisor, model), model)
        if back != divisor:
            failures += 1
            detail = detail or f"round trip moved {divisor.coords}"
    return CheckResult("basis-roundtrip", trials, failures, detail)


def _seshadri_invariants_hold(rng, model) -> str:
    """One randomized divisor check; returns a failure description or ''."""
    divisor = random_nef_divisor(rng, model.gamma)
    report = sesh.full_report(divisor, model)
    coords = report.divisor.coords
    if report.lower > report.upper:
        return "lower exceeds upper"
    if report.epsilon_global != report.lower or report.epsilon_at_section != report.lower:
        return "global/section value differs from the lower bound"
    ratios = [
        sesh.seshadri_ratio(curve, report.divisor, 1)
        for curve in curve_generators(model)
    ]
    if min(ratios) != report.epsilon_global:
        return "generator ratios do not attain the global value"
    if coords[-1] >= min(coords[:-1]) and report.lower != report.upper:
        return "constant case did not collapse the bounds"
    if report.epsilon_general is not None and report.epsilon_general != report.upper:
        return "known general value differs from the upper bound"
    # positive scaling
    t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    scaled = sesh.full_report(
        DivisorClass(Basis.NEF, tuple(t * a for a in coords)), model
    )
    if (scaled.lower, scaled.upper) != (t * report.lower, t * report.upper):
        return "bounds are not homogeneous under scaling"
    if (scaled.epsilon_general is None) != (report.epsilon_general is None):
        return "scaling changed the known/unknown status"
    # coordinatewise monotonicity
    j = rng.randrange(len(coords))
    bumped_coords = tuple(
        a + (Fraction(rng.randint(1, 5)) if i == j else 0)
        for i, a in enumerate(coords)
    )
    bumped = sesh.full_report(DivisorClass(Basis.NEF, bumped_coords), model)
    if bumped.lower < report.lower or bumped.upper < report.upper:
        return "bounds decreased after increasing a coordinate"
    return ""


def _check_seshadri(rng, trials) -> CheckResult:
    failures = 0
    detail = ""
    for _ in range(trials):
        model = random_model(rng)
        problem = _seshadri_invariants_hold(rng, model)
        if problem:
            failures += 1
            detail = detail or problem
    return CheckResult("seshadri-invariants", trials, failures, detail)


def _check_gaps(rng, trials) -> CheckResult:
    failures = 0
    detail = ""
    for _ in range(trials):
        model, status = random_divisibility_model(rng)
        gaps = sesh.degree_gaps(model, status)
        if any(g < 1 for g in gaps):
            failures += 1
            detail = detail or (
                f"gap below 1 for steps {model.hn.step_pairs()} "
                f"flag {model.spec.quotient_ranks}"
            )
    return CheckResult("divisibility-gap", trials, failures, detail)


def _check_machine_roundtrip(rng, trials) -> CheckResult:
    failures = 0
    detail = ""
    for _ in range(trials):
        doc = run(random_config(rng))
        text = render_machine(doc)
        if parse_machine(text) != doc or render_machine(parse_machine(text)) != text:
            failures += 1
            detail = detail or "document changed through render/parse"
    return CheckResult("machine-roundtrip", trials, failures, detail)


def _check_fixtures() -> CheckResult:
    fixtures = builtin_examples()
    failures = 0
    detail = ""
    for fixture in fixtures:
        _, actual, ok = check_fixture(fixture)
        if not ok:
            failures += 1
            detail = detail or f"{fixture.name}: got {actual}"
    return CheckResult("fixture-digests", len(fixtures), failures, detail)


def run_selftest(
    seed: int = 0,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    trials: int = 200,
) -> list[CheckResult]:
    """Run every check with its own seeded generator; deterministic."""
    results = [
        _check_oracle(random.Random(seed), trials, oracle_cap),
        _check_pairing(random.Random(seed + 1), trials),
        _check_basis_roundtrip(random.Random(seed + 2), trials),
        _check_seshadri(random.Random(seed + 3), trials),
        _check_gaps(random.Random(seed + 4), max(1, trials // 2)),
        _check_machine_roundtrip(random.Random(seed + 5), max(1, trials // 4)),
        _check_fixtures(),
    ]
    return results
