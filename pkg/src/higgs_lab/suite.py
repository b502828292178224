"""The machine-checkable theorem suite run by `verify` and `fuzz`.

Each check re-derives one proved statement on concrete objects and reports
pass, fail (with a counterexample), or skip (with the reason the statement
cannot be tested on that input).  Chain-built models should never fail;
failures arise from hand-built files whose declared families contradict the
statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .chern import bogomolov_discriminant, normalized_p, rank_p_residual
from .filtration import (
    AmbiguousMaximizerError,
    BrokenInvariantError,
    TooLargeError,
    all_harder_narasimhan,
    all_jordan_holder,
    grading,
    harder_narasimhan,
    verify_filtration,
)
from .hilbert import EventualOrder, format_rational
from .model import direct_sum_model
from .modelfile import LoadedObject
from .stability import (
    IncompleteTorsionClosureError,
    MorphismVerdict,
    StabilityClass,
    check_extension_semistability,
    gieseker_classify,
    gieseker_classify_by_quotients,
    gieseker_classify_tf_quotients,
    morphism_verdict,
    slope_classify,
)

PAIR_FAMILY_LIMIT = 600  # product families beyond this are skipped, not built


@dataclass(frozen=True)
class CheckResult:
    check: str
    subject: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def _result(check, subject, ok, detail="") -> CheckResult:
    return CheckResult(check, subject, "pass" if ok else "fail", detail)


def _skip(check, subject, why) -> CheckResult:
    return CheckResult(check, subject, "skip", why)


def check_ladder(obj: LoadedObject) -> CheckResult:
    """Slope stable implies polynomial stable; polynomial semistable implies slope semistable."""
    g = gieseker_classify(obj.model)
    s = slope_classify(obj.model)
    ok = True
    detail = f"gieseker={g.classification.value} slope={s.classification.value}"
    if s.classification is StabilityClass.STABLE and g.classification is not StabilityClass.STABLE:
        ok = False
    if g.semistable and not s.semistable:
        ok = False
    return _result("stability_ladder", obj.model.id, ok, detail)


def check_quotient_formulation(obj: LoadedObject) -> CheckResult:
    """Subobject-side and quotient-side classification agree, witness included."""
    by_sub = gieseker_classify(obj.model)
    by_quot = gieseker_classify_by_quotients(obj.model)
    ok = (
        by_sub.classification is by_quot.classification
        and by_sub.witness == by_quot.witness
    )
    return _result(
        "quotient_formulation",
        obj.model.id,
        ok,
        f"subobjects={by_sub.classification.value} quotients={by_quot.classification.value}",
    )


def check_torsion_free_formulation(obj: LoadedObject) -> CheckResult:
    """Restricting to torsion-free quotients never changes the classification."""
    full = gieseker_classify(obj.model)
    try:
        restricted = gieseker_classify_tf_quotients(obj.model)
    except IncompleteTorsionClosureError as exc:
        return _skip("torsion_free_formulation", obj.model.id, str(exc))
    ok = full.classification is restricted.classification
    return _result(
        "torsion_free_formulation",
        obj.model.id,
        ok,
        f"full={full.classification.value} torsion_free={restricted.classification.value}",
    )


def check_residuals(obj: LoadedObject) -> CheckResult:
    """The rank-weighted polynomial residual vanishes on every declared extension."""
    total = obj.model.data
    for e in obj.model.subobjects:
        if e.data.rank == 0 or e.quotient.rank == 0:
            continue
        residual = rank_p_residual(total, e.data, e.quotient)
        if not residual.is_zero:
            return _result(
                "rank_p_residual", obj.model.id, False, f"entry {e.id}: residual {residual}"
            )
    return _result("rank_p_residual", obj.model.id, True)


def check_dim1_coincidence(obj: LoadedObject) -> Optional[CheckResult]:
    """On curves the two notions give the same class."""
    if obj.model.ambient.n != 1:
        return None
    g = gieseker_classify(obj.model)
    s = slope_classify(obj.model)
    ok = g.classification is s.classification
    return _result(
        "dim1_coincidence",
        obj.model.id,
        ok,
        f"gieseker={g.classification.value} slope={s.classification.value}",
    )


def check_bogomolov(obj: LoadedObject) -> Optional[CheckResult]:
    """A semistable locally free surface object must have nonnegative discriminant."""
    if obj.model.ambient.n != 2 or obj.surface_chern is None:
        return None
    disc = bogomolov_discriminant(obj.model.ambient, obj.model.data.rank, obj.surface_chern)
    if not obj.locally_free:
        return _skip("bogomolov", obj.model.id, "object not claimed locally free")
    verdict = gieseker_classify(obj.model)
    contradiction = verdict.semistable and disc < 0
    return _result(
        "bogomolov",
        obj.model.id,
        not contradiction,
        f"discriminant={format_rational(disc)} class={verdict.classification.value}"
        + (" (semistable object violates the discriminant bound)" if contradiction else ""),
    )


def check_jh_invariance(obj: LoadedObject) -> CheckResult:
    """All Jordan-Holder chains of a semistable object share one grading."""
    verdict = gieseker_classify(obj.model)
    if not verdict.semistable:
        return _skip("jh_grading_invariance", obj.model.id, "object is unstable")
    try:
        chains = all_jordan_holder(obj.model)
    except TooLargeError as exc:
        return _skip("jh_grading_invariance", obj.model.id, str(exc))
    if not chains:
        return _result("jh_grading_invariance", obj.model.id, False, "no chain found")
    gradings = {grading(f) for f in chains}
    return _result(
        "jh_grading_invariance",
        obj.model.id,
        len(gradings) == 1,
        f"{len(chains)} chain(s), {len(gradings)} grading(s)",
    )


def check_hn_uniqueness(obj: LoadedObject) -> CheckResult:
    """Exhaustive search finds exactly the one chain the construction returns."""
    try:
        constructed = harder_narasimhan(obj.model)
    except AmbiguousMaximizerError as exc:
        return _skip("hn_uniqueness", obj.model.id, str(exc))
    except BrokenInvariantError as exc:
        return _result("hn_uniqueness", obj.model.id, False, str(exc))
    problems = verify_filtration(obj.model, constructed)
    if problems:
        return _result(
            "hn_uniqueness", obj.model.id, False, "; ".join(str(v) for v in problems)
        )
    try:
        every = all_harder_narasimhan(obj.model)
    except TooLargeError as exc:
        return _skip("hn_uniqueness", obj.model.id, str(exc))
    ok = len(every) == 1 and every[0] == constructed
    return _result(
        "hn_uniqueness", obj.model.id, ok, f"{len(every)} valid chain(s) by search"
    )


def _pair_too_big(a: LoadedObject, b: LoadedObject) -> bool:
    return (len(a.model.subobjects) + 2) * (len(b.model.subobjects) + 2) > PAIR_FAMILY_LIMIT


def check_direct_sum(a: LoadedObject, b: LoadedObject) -> CheckResult:
    """The sum is semistable exactly when both parts are, with equal polynomials."""
    subject = f"{a.model.id} (+) {b.model.id}"
    if a.model.ambient != b.model.ambient:
        return _skip("direct_sum", subject, "different ambient data")
    if _pair_too_big(a, b):
        return _skip("direct_sum", subject, "product family too large")
    total = direct_sum_model(a.model, b.model)
    lhs = gieseker_classify(total).semistable
    va, vb = gieseker_classify(a.model), gieseker_classify(b.model)
    rhs = (
        va.semistable
        and vb.semistable
        and normalized_p(a.model.data) == normalized_p(b.model.data)
    )
    return _result("direct_sum", subject, lhs == rhs, f"sum_semistable={lhs} parts={rhs}")


def check_morphism_table(a: LoadedObject, b: LoadedObject) -> Optional[CheckResult]:
    """The decision table is coherent for a map from a to b (both semistable)."""
    subject = f"{a.model.id} -> {b.model.id}"
    if a.model.ambient != b.model.ambient:
        return None
    va, vb = gieseker_classify(a.model), gieseker_classify(b.model)
    if not (va.semistable and vb.semistable):
        return None
    p_a, p_b = normalized_p(a.model.data), normalized_p(b.model.data)
    verdict = morphism_verdict(
        p_a,
        p_b,
        va.classification is StabilityClass.STABLE,
        vb.classification is StabilityClass.STABLE,
    )
    order = p_b.compare_eventual(p_a)
    if order is EventualOrder.PRECEDES:
        ok = verdict is MorphismVerdict.MUST_BE_ZERO
    elif order is EventualOrder.EQUAL and va.classification is StabilityClass.STABLE:
        ok = verdict is MorphismVerdict.ZERO_OR_INJECTIVE
    elif order is EventualOrder.EQUAL and vb.classification is StabilityClass.STABLE:
        ok = verdict is MorphismVerdict.ZERO_OR_GENERICALLY_SURJECTIVE
    else:
        ok = verdict is MorphismVerdict.NO_CONSTRAINT
    detail = f"verdict={verdict.value}"
    if (
        order is EventualOrder.EQUAL
        and va.classification is StabilityClass.STABLE
        and vb.classification is StabilityClass.STABLE
    ):
        detail += " (also generically surjective)"
    return _result("morphism_table", subject, ok, detail)


def check_extension(a: LoadedObject, b: LoadedObject) -> Optional[CheckResult]:
    """An extension of equal-p semistable pieces (here: their sum) is semistable."""
    subject = f"0 -> {a.model.id} -> E -> {b.model.id} -> 0"
    if a.model.ambient != b.model.ambient:
        return None
    va, vb = gieseker_classify(a.model), gieseker_classify(b.model)
    if not (va.semistable and vb.semistable):
        return None
    if normalized_p(a.model.data) != normalized_p(b.model.data):
        return None
    if _pair_too_big(a, b):
        return _skip("extension_semistable", subject, "product family too large")
    total = direct_sum_model(a.model, b.model)
    ok = check_extension_semistability(a.model, b.model, total)
    return _result("extension_semistable", subject, ok)


def run_suite(objects: Iterable[LoadedObject], all_pairs: bool = True) -> list[CheckResult]:
    """Run every theorem check; pairwise checks cover all same-ambient pairs,
    or only consecutive ones when all_pairs is off (fuzz batches)."""
    objs = list(objects)
    results: list[CheckResult] = []
    for obj in objs:
        results.append(check_ladder(obj))
        results.append(check_quotient_formulation(obj))
        results.append(check_torsion_free_formulation(obj))
        results.append(check_residuals(obj))
        for maybe in (check_dim1_coincidence(obj), check_bogomolov(obj)):
            if maybe is not None:
                results.append(maybe)
        results.append(check_jh_invariance(obj))
        results.append(check_hn_uniqueness(obj))
    if all_pairs:
        pairs = [
            (objs[i], objs[j]) for i in range(len(objs)) for j in range(len(objs)) if i < j
        ]
    else:
        pairs = list(zip(objs, objs[1:]))
    for a, b in pairs:
        results.append(check_direct_sum(a, b))
        for first, second in ((a, b), (b, a)):
            for maybe in (
                check_morphism_table(first, second),
                check_extension(first, second),
            ):
                if maybe is not None:
                    results.append(maybe)
    return results
