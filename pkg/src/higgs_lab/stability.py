"""Stability classification over a model's declared subobject family.

Both notions (normalized-polynomial and slope) come in the subobject,
quotient, and torsion-free-quotient formulations; all quantify over the
declared family only, skipping entries of rank zero or full rank.  Witnesses
are reported in lexicographic id order so verdicts are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .chern import normalized_p, slope
from .hilbert import EventualOrder, HilbertPolynomial
from .model import HiggsObjectModel, SubobjectEntry, validate


class InvalidModelError(ValueError):
    """The model fails validation or has no rank to classify."""


class IncompleteTorsionClosureError(ValueError):
    """A torsion quotient has no declared enlargement with torsion-free quotient."""


class PreconditionUnmetError(ValueError):
    """The inputs do not satisfy the hypothesis of the requested check."""


class Notion(Enum):
    GIESEKER = "gieseker"
    SLOPE = "slope"


class StabilityClass(Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"


class MorphismVerdict(Enum):
    """What a map between two semistable objects can be."""

    MUST_BE_ZERO = "must_be_zero"
    ZERO_OR_INJECTIVE = "zero_or_injective"
    ZERO_OR_GENERICALLY_SURJECTIVE = "zero_or_generically_surjective"
    NO_CONSTRAINT = "no_constraint"


@dataclass(frozen=True)
class StabilityVerdict:
    notion: Notion
    classification: StabilityClass
    witness: Optional[str] = None

    def __post_init__(self):
        has_witness = self.witness is not None
        if (self.classification is StabilityClass.STABLE) == has_witness:
            raise ValueError("witness present exactly when not stable")

    @property
    def semistable(self) -> bool:
        return self.classification is not StabilityClass.UNSTABLE


def _gate(model: HiggsObjectModel) -> None:
    violations = validate(model)
    if violations:
        raise InvalidModelError("; ".join(str(v) for v in violations))
    if model.data.rank == 0:
        raise InvalidModelError("cannot classify a rank-zero object")


def _proper(model: HiggsObjectModel):
    total = model.data.rank
    return [e for e in model.subobjects if 0 < e.data.rank < total]


def _classify(
    notion: Notion,
    entries: list[SubobjectEntry],
    offends: Callable[[SubobjectEntry], EventualOrder],
) -> StabilityVerdict:
    """offends reports the comparison of the entry against the whole object."""
    destabilizer = None
    equalizer = None
    for e in entries:  # already in id order
        order = offends(e)
        if order is EventualOrder.SUCCEEDS and destabilizer is None:
            destabilizer = e.id
        elif order is EventualOrder.EQUAL and equalizer is None:
            equalizer = e.id
    if destabilizer is not None:
        return StabilityVerdict(notion, StabilityClass.UNSTABLE, destabilizer)
    if equalizer is not None:
        return StabilityVerdict(notion, StabilityClass.STRICTLY_SEMISTABLE, equalizer)
    return StabilityVerdict(notion, StabilityClass.STABLE)


def gieseker_classify(model: HiggsObjectModel) -> StabilityVerdict:
    """Compare each proper subobject's normalized polynomial against the object's.

    Stable when all precede, strictly semistable when none succeed but some
    tie, unstable otherwise; rank-one objects are stable vacuously.
    """
    _gate(model)
    p_total = normalized_p(model.data)
    return _classify(
        Notion.GIESEKER,
        _proper(model),
        lambda e: normalized_p(e.data).compare_eventual(p_total),
    )


def slope_classify(model: HiggsObjectModel) -> StabilityVerdict:
    """Same quantifier with rational slope comparison."""
    _gate(model)
    mu_total = slope(model.data)
    return _classify(Notion.SLOPE, _proper(model), lambda e: _cmp(slope(e.data), mu_total))


def _cmp(x: Fraction, y: Fraction) -> EventualOrder:
    if x < y:
        return EventualOrder.PRECEDES
    if x > y:
        return EventualOrder.SUCCEEDS
    return EventualOrder.EQUAL


def gieseker_classify_by_quotients(model: HiggsObjectModel) -> StabilityVerdict:
    """Equivalent formulation from the quotient side.

    An entry offends when the object's polynomial fails to precede the
    quotient's; on consistent models this matches gieseker_classify entry by
    entry, witness included.
    """
    _gate(model)
    total = model.data
    p_total = normalized_p(total)
    entries = [e for e in model.subobjects if 0 < e.quotient.rank < total.rank]
    return _classify(
        Notion.GIESEKER,
        entries,
        lambda e: p_total.compare_eventual(normalized_p(e.quotient)),
    )


def _matches_enlargement(model: HiggsObjectModel, e: SubobjectEntry) -> bool:
    """Does the family declare the kernel of E -> Q/torsion for this entry?"""
    part = e.quotient_torsion_part
    if part is None:
        return False
    enlarged_chi = e.data.chi + part.chi
    for g in model.subobjects:
        if g.id == e.id:
            continue
        if (
            g.data.rank == e.data.rank
            and g.data.chi == enlarged_chi
            and g.quotient.torsion_free
        ):
            return True
    return False


def gieseker_classify_tf_quotients(model: HiggsObjectModel) -> StabilityVerdict:
    """Quantify only over entries whose quotient is torsion-free.

    Sound once every torsion-quotient entry has its enlargement declared;
    otherwise the restricted family could miss a destabilizer, so the missing
    closure is an error rather than a silent gap.
    """
    _gate(model)
    total = model.data
    p_total = normalized_p(total)
    kept = []
    for e in _proper(model):
        if e.quotient.torsion_free:
            kept.append(e)
        elif not _matches_enlargement(model, e):
            raise IncompleteTorsionClosureError(
                f"entry {e.id} has a torsion quotient and no declared enlargement"
            )
    return _classify(
        Notion.GIESEKER,
        kept,
        lambda e: normalized_p(e.data).compare_eventual(p_total),
    )


def morphism_verdict(
    p_source: HilbertPolynomial,
    p_target: HilbertPolynomial,
    source_stable: bool,
    target_stable: bool,
) -> MorphismVerdict:
    """Decision table for a map between two semistable objects.

    Semistability of both sides is the caller's obligation.  When both are
    stable with equal polynomials the injective conclusion is reported as the
    canonical one (the surjective conclusion holds as well).
    """
    order = p_target.compare_eventual(p_source)
    if order is EventualOrder.PRECEDES:
        return MorphismVerdict.MUST_BE_ZERO
    if order is EventualOrder.EQUAL:
        if source_stable:
            return MorphismVerdict.ZERO_OR_INJECTIVE
        if target_stable:
            return MorphismVerdict.ZERO_OR_GENERICALLY_SURJECTIVE
    return MorphismVerdict.NO_CONSTRAINT


def check_extension_semistability(
    sub: HiggsObjectModel, quotient: HiggsObjectModel, total: HiggsObjectModel
) -> bool:
    """Check that an extension of equal-p semistable pieces is semistable with that p.

    Used as a theorem check on a provided total object, never as a shortcut:
    the total is classified from its own declared family.
    """
    sub_verdict = gieseker_classify(sub)
    quot_verdict = gieseker_classify(quotient)
    if not (sub_verdict.semistable and quot_verdict.semistable):
        raise PreconditionUnmetError("both pieces must be Gieseker semistable")
    p = normalized_p(sub.data)
    if p != normalized_p(quotient.data):
        raise PreconditionUnmetError("the pieces must share one normalized polynomial")
    total_verdict = gieseker_classify(total)
    return total_verdict.semistable and normalized_p(total.data) == p
