"""Classifiers in all three formulations, the morphism table, and extensions."""

import random

import pytest

from higgs_lab import (
    HiggsObjectModel,
    IncompleteTorsionClosureError,
    InvalidModelError,
    KahlerData,
    MorphismVerdict,
    Notion,
    PreconditionUnmetError,
    StabilityClass,
    StabilityVerdict,
    SubobjectEntry,
    check_extension_semistability,
    chi_curve,
    direct_sum_model,
    gieseker_classify,
    gieseker_classify_by_quotients,
    gieseker_classify_tf_quotients,
    induced_submodel,
    interval_quotient_model,
    morphism_verdict,
    normalized_p,
    slope_classify,
)
from higgs_lab.fuzz import random_chain_spec
from higgs_lab.model import realize

from conftest import (
    ambiguous_model,
    curve_chain,
    poly,
    surface_entry,
    surface_model,
    torsion_closure_model,
)


class TestGiesekerClassify:
    def test_hitchin_pair_stable(self):
        v = gieseker_classify(curve_chain(2, 1, (1, -1), arrows={(1, 2)}))
        assert v.classification is StabilityClass.STABLE
        assert v.witness is None

    def test_strictly_semistable_witness(self):
        v = gieseker_classify(curve_chain(1, 1, (0, 0)))
        assert v.classification is StabilityClass.STRICTLY_SEMISTABLE
        assert v.witness == "{1}"

    def test_unstable_witness(self):
        v = gieseker_classify(curve_chain(0, 1, (2, 0)))
        assert v.classification is StabilityClass.UNSTABLE
        assert v.witness == "{1}"

    def test_rank_one_vacuously_stable(self):
        v = gieseker_classify(curve_chain(3, 2, (-4,)))
        assert v.classification is StabilityClass.STABLE

    def test_invalid_model_rejected(self):
        kd = KahlerData.curve(1, 1)
        bad = HiggsObjectModel(
            id="E",
            ambient=kd,
            data=chi_curve(kd, 2, 0),
            subobjects=(
                SubobjectEntry(
                    id="F", data=chi_curve(kd, 1, 1), quotient=chi_curve(kd, 1, 0)
                ),
            ),
        )
        with pytest.raises(InvalidModelError):
            gieseker_classify(bad)

    def test_witness_invariant_on_verdict_type(self):
        with pytest.raises(ValueError):
            StabilityVerdict(Notion.GIESEKER, StabilityClass.STABLE, witness="x")
        with pytest.raises(ValueError):
            StabilityVerdict(Notion.GIESEKER, StabilityClass.UNSTABLE, witness=None)


class TestSlopeClassify:
    def test_hitchin_pair(self):
        v = slope_classify(curve_chain(2, 1, (1, -1), arrows={(1, 2)}))
        assert v.classification is StabilityClass.STABLE

    def test_equal_slopes(self):
        v = slope_classify(curve_chain(1, 1, (0, 0)))
        assert v.classification is StabilityClass.STRICTLY_SEMISTABLE

    def test_unstable(self):
        v = slope_classify(curve_chain(0, 1, (2, 0)))
        assert v.classification is StabilityClass.UNSTABLE
        assert v.witness == "{1}"


class TestQuotientFormulation:
    def test_examples_agree(self):
        for model in (
            curve_chain(2, 1, (1, -1), arrows={(1, 2)}),
            curve_chain(1, 1, (0, 0)),
            curve_chain(0, 1, (2, 0)),
        ):
            direct = gieseker_classify(model)
            from_quotients = gieseker_classify_by_quotients(model)
            assert direct.classification is from_quotients.classification
            assert direct.witness == from_quotients.witness

    def test_fuzzed_agreement(self):
        rng = random.Random(21)
        for _ in range(300):
            model = realize(random_chain_spec(rng, 5, 3))
            direct = gieseker_classify(model)
            from_quotients = gieseker_classify_by_quotients(model)
            assert direct.classification is from_quotients.classification
            assert direct.witness == from_quotients.witness


class TestTorsionFreeFormulation:
    def test_chains_are_vacuous(self):
        model = curve_chain(0, 1, (2, 0))
        assert (
            gieseker_classify_tf_quotients(model).classification
            is gieseker_classify(model).classification
        )

    def test_destabilizing_enlargement(self):
        model = torsion_closure_model(strict=False)
        full = gieseker_classify(model)
        restricted = gieseker_classify_tf_quotients(model)
        assert full.classification is StabilityClass.UNSTABLE
        assert restricted.classification is StabilityClass.UNSTABLE
        assert restricted.witness == "Fp"

    def test_equalizing_enlargement(self):
        model = torsion_closure_model(strict=True)
        full = gieseker_classify(model)
        restricted = gieseker_classify_tf_quotients(model)
        assert full.classification is StabilityClass.STRICTLY_SEMISTABLE
        assert restricted.classification is StabilityClass.STRICTLY_SEMISTABLE
        assert restricted.witness == "Fp"

    def test_missing_closure_is_an_error(self):
        model = torsion_closure_model()
        only_f = HiggsObjectModel(
            id="E",
            ambient=model.ambient,
            data=model.data,
            subobjects=tuple(e for e in model.subobjects if e.id == "F"),
        )
        with pytest.raises(IncompleteTorsionClosureError):
            gieseker_classify_tf_quotients(only_f)


class TestLadder:
    def test_surface_slope_stable_implies_gieseker_stable(self):
        total = surface_model("S", 2, 0, 0)
        entry = surface_entry("F", total.data, 1, -1, 7)
        model = HiggsObjectModel(
            id="S", ambient=total.ambient, data=total.data, subobjects=(entry,)
        )
        assert slope_classify(model).classification is StabilityClass.STABLE
        assert gieseker_classify(model).classification is StabilityClass.STABLE

    def test_surface_gieseker_unstable_slope_semistable(self):
        # equal slopes but a bigger constant term: the notions split in dim 2
        total = surface_model("S", 2, 0, 0)
        entry = surface_entry("F", total.data, 1, 0, 3)
        model = HiggsObjectModel(
            id="S", ambient=total.ambient, data=total.data, subobjects=(entry,)
        )
        assert gieseker_classify(model).classification is StabilityClass.UNSTABLE
        assert (
            slope_classify(model).classification is StabilityClass.STRICTLY_SEMISTABLE
        )

    def test_fuzzed_ladder(self):
        rng = random.Random(22)
        for _ in range(300):
            model = realize(random_chain_spec(rng, 5, 3))
            g = gieseker_classify(model)
            s = slope_classify(model)
            if s.classification is StabilityClass.STABLE:
                assert g.classification is StabilityClass.STABLE
            if g.semistable:
                assert s.semistable


class TestDimensionOneCoincidence:
    def test_fuzzed_curves(self):
        rng = random.Random(23)
        for _ in range(400):
            model = realize(random_chain_spec(rng, 6, 3))
            assert (
                gieseker_classify(model).classification
                is slope_classify(model).classification
            )


class TestMorphismVerdict:
    def test_target_precedes_source(self):
        assert (
            morphism_verdict(poly(1, 1), poly(0, 1), False, False)
            is MorphismVerdict.MUST_BE_ZERO
        )

    def test_equal_with_stable_source(self):
        assert (
            morphism_verdict(poly(1, 1), poly(1, 1), True, False)
            is MorphismVerdict.ZERO_OR_INJECTIVE
        )

    def test_equal_with_stable_target(self):
        assert (
            morphism_verdict(poly(1, 1), poly(1, 1), False, True)
            is MorphismVerdict.ZERO_OR_GENERICALLY_SURJECTIVE
        )

    def test_both_stable_reports_injective(self):
        assert (
            morphism_verdict(poly(1, 1), poly(1, 1), True, True)
            is MorphismVerdict.ZERO_OR_INJECTIVE
        )

    def test_source_precedes_target(self):
        assert (
            morphism_verdict(poly(0, 1), poly(1, 1), False, False)
            is MorphismVerdict.NO_CONSTRAINT
        )

    def test_equal_neither_stable(self):
        assert (
            morphism_verdict(poly(1, 1), poly(1, 1), False, False)
            is MorphismVerdict.NO_CONSTRAINT
        )


class TestExtension:
    def test_direct_sum_of_equal_lines(self):
        kd = KahlerData.curve(1, 1)
        a = HiggsObjectModel(id="a", ambient=kd, data=chi_curve(kd, 1, 0), subobjects=())
        b = HiggsObjectModel(id="b", ambient=kd, data=chi_curve(kd, 1, 0), subobjects=())
        assert check_extension_semistability(a, b, direct_sum_model(a, b))

    def test_chain_extension(self):
        model = curve_chain(1, 1, (0, 0), arrows={(1, 2)})
        sub = induced_submodel(model, "{2}")
        quotient = interval_quotient_model(model, model.id, "{2}")
        assert normalized_p(sub.data) == normalized_p(quotient.data) == poly(0, 1)
        assert check_extension_semistability(sub, quotient, model)

    def test_unequal_p_rejected(self):
        kd = KahlerData.curve(1, 1)
        a = HiggsObjectModel(id="a", ambient=kd, data=chi_curve(kd, 1, 0), subobjects=())
        b = HiggsObjectModel(id="b", ambient=kd, data=chi_curve(kd, 1, 1), subobjects=())
        with pytest.raises(PreconditionUnmetError):
            check_extension_semistability(a, b, direct_sum_model(a, b))

    def test_unstable_piece_rejected(self):
        bad = curve_chain(0, 1, (2, 0))
        good = curve_chain(0, 1, (1, 1))
        with pytest.raises(PreconditionUnmetError):
            check_extension_semistability(bad, good, direct_sum_model(bad, good))


class TestStrictlySemistableWitness:
    def test_witness_has_equal_p_and_torsion_free_quotient(self):
        rng = random.Random(24)
        seen = 0
        for _ in range(400):
            model = realize(random_chain_spec(rng, 5, 2))
            v = gieseker_classify(model)
            if v.classification is not StabilityClass.STRICTLY_SEMISTABLE:
                continue
            seen += 1
            entry = model.entry(v.witness)
            assert normalized_p(entry.data) == normalized_p(model.data)
            assert entry.quotient.torsion_free
            # both sides of the witness split are semistable with the same p
            sub = induced_submodel(model, v.witness)
            quotient = interval_quotient_model(model, model.id, v.witness)
            assert gieseker_classify(sub).semistable
            assert gieseker_classify(quotient).semistable
            assert normalized_p(quotient.data) == normalized_p(model.data)
        assert seen > 5

    def test_closed_torsion_fixture_witness(self):
        model = torsion_closure_model(strict=True)
        v = gieseker_classify(model)
        assert v.classification is StabilityClass.STRICTLY_SEMISTABLE
        assert model.entry(v.witness).quotient.torsion_free


def test_ambiguous_model_still_classifies():
    # classification only needs the order, not a unique maximizer
    v = gieseker_classify(ambiguous_model())
    assert v.classification is StabilityClass.UNSTABLE
    assert v.witness == "A"
