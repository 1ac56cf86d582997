import pytest
from hypothesis import given, settings, strategies as st

from smti_asp.errors import InvalidInstanceError, MalformedMatchingError, UnacceptablePartnerError
from smti_asp.model import (
    Criterion,
    CriterionKind,
    Direction,
    Matching,
    PersonRef,
    PreferenceList,
    SmtiInstance,
    acceptable_set,
    block_report,
    blocking_individuals,
    blocking_pairs,
    is_weakly_stable,
    man,
    matching_cost,
    neutral_set,
    partner_cost,
    preferred_set,
    prefers_strictly,
    unacceptable_set,
    validate_instance,
    validate_matching,
    woman,
)
from smti_asp.instances import generate_instance
from smti_asp.oracle import all_matchings


def test_notation_sets_of_a_list_with_a_neutral_partner():
    plist = PreferenceList.of([1, 3], [4])
    assert acceptable_set(plist) == {1, 3, 4}
    assert preferred_set(plist) == {1, 3}
    assert neutral_set(plist) == {4}
    assert unacceptable_set(plist, 4) == {2}


def test_empty_groups_normalise_to_one_neutral_group():
    assert PreferenceList(()) == PreferenceList.of([])
    assert PreferenceList(()).self_rank == 0
    assert PreferenceList(()).acceptable() == frozenset()


def test_person_refs_parse_and_order():
    assert PersonRef.parse("m1") == man(1)
    assert PersonRef.parse("w_12") == woman(12)
    assert str(woman(3)) == "w3"
    assert man(2) < woman(1)
    with pytest.raises(ValueError):
        PersonRef.parse("x1")
    with pytest.raises(ValueError):
        PersonRef.parse("m0")


def test_strict_preference_includes_staying_single(example3):
    assert prefers_strictly(example3, man(1), woman(1), man(1))
    assert prefers_strictly(example3, man(1), woman(2), woman(1)) is False
    # w1 is tied with single for m2
    assert not prefers_strictly(example3, man(2), woman(1), man(2))
    assert not prefers_strictly(example3, man(2), man(2), woman(1))
    with pytest.raises(UnacceptablePartnerError):
        prefers_strictly(example3, woman(2), man(2), woman(2))


def test_cost_counts_strictly_better_options():
    instance = SmtiInstance([PreferenceList.of([1], [2, 3], [4])], [[], [], [], []])
    costs = [partner_cost(instance, man(1), woman(j)) for j in (1, 2, 3, 4)]
    assert costs == [1, 2, 2, 4]
    assert partner_cost(instance, man(1), man(1)) == 4


def test_example3_matchings_are_stable_and_others_not(example3, example3_matchings):
    for matching in example3_matchings.values():
        assert block_report(example3, matching).stable
    everyone_single = Matching.from_couples(2, 3, [])
    report = block_report(example3, everyone_single)
    assert (1, 1) in report.blocking_pairs
    assert not report.stable


def test_unacceptable_pairing_is_reported(example3):
    matching = Matching.from_couples(2, 3, [(2, 2), (1, 1)])
    report = block_report(example3, matching)
    assert report.unacceptable_pairings == {(2, 2)}
    assert woman(2) in report.blocking_individuals
    assert not is_weakly_stable(example3, matching)


def test_single_preferred_over_partner_blocks():
    instance = SmtiInstance([PreferenceList.of([1], [])], [PreferenceList.of([1])])
    # w1 is neutral about m1, so marrying him is fine for her
    assert is_weakly_stable(instance, Matching.from_couples(1, 1, [(1, 1)]))
    strict = SmtiInstance([PreferenceList.of([])], [PreferenceList.of([1])])
    matching = Matching.from_couples(1, 1, [(1, 1)])
    assert blocking_individuals(strict, matching) == {man(1)}
    assert blocking_pairs(strict, matching) == frozenset()


def test_malformed_matchings_are_rejected(example3):
    twice = Matching(frozenset({(man(1), woman(1)), (man(1), woman(2)), (man(2), man(2)), (woman(3), woman(3))}))
    assert any("occurs in 2 pairs" in v for v in validate_matching(example3, twice))
    with pytest.raises(MalformedMatchingError):
        block_report(example3, twice)
    missing = Matching.from_couples(2, 2, [(1, 1)])
    with pytest.raises(MalformedMatchingError):
        is_weakly_stable(example3, missing)


def test_instance_validation():
    bad = SmtiInstance([PreferenceList.of([1], [], [2])], [[], []])
    assert any("empty but is not the last" in v for v in validate_instance(bad))
    overlap = SmtiInstance([PreferenceList.of([1], [1])], [[]])
    assert any("not disjoint" in v for v in validate_instance(overlap))
    out_of_range = SmtiInstance([PreferenceList.of([3])], [[]])
    assert any("out of range" in v for v in validate_instance(out_of_range))
    with pytest.raises(InvalidInstanceError):
        from smti_asp.oracle import enumerate_stable
        enumerate_stable(out_of_range)


def test_example3_costs(example3, example3_matchings):
    reports = {k: matching_cost(example3, m) for k, m in example3_matchings.items()}
    assert [reports[k].regret for k in ("S1", "S2", "S3")] == [2, 3, 3]
    assert [reports[k].sexeq for k in ("S1", "S2", "S3")] == [1, 1, 3]
    assert [reports[k].weight for k in ("S1", "S2", "S3")] == [9, 9, 9]
    assert [reports[k].singles for k in ("S1", "S2", "S3")] == [1, 1, 3]
    s3 = reports["S3"]
    assert (s3.man_weight, s3.woman_weight) == (3, 6)


def test_criterion_parsing_and_direction():
    c = Criterion.parse("man-weight", "max")
    assert c.kind is CriterionKind.MAN_WEIGHT and c.direction is Direction.MAXIMIZE
    assert c.better(3, 2) and not c.better(2, 3)
    assert str(Criterion.parse("regret")) == "regret/min"
    with pytest.raises(ValueError):
        Criterion.parse("fairness")


def test_matching_text_forms(example3_matchings):
    s1 = example3_matchings["S1"]
    assert str(s1) == "(m1,w3) (m2,w1) (w2,w2)"
    assert s1.to_text() == "m1-w3,m2-w1"
    assert s1.singles == [woman(2)]
    assert s1.partner(woman(1)) == man(2)


instances = st.builds(
    generate_instance,
    st.integers(0, 3),
    st.integers(0, 3),
    st.sampled_from([0.0, 0.3, 0.7]),
    st.sampled_from([0.0, 0.3, 0.7]),
    st.integers(0, 10**6),
)


@settings(max_examples=60, deadline=None)
@given(instances)
def test_stability_is_the_absence_of_blockers(instance):
    for matching in all_matchings(instance):
        report = block_report(instance, matching)
        assert report.stable == (
            not report.blocking_pairs and not report.blocking_individuals and not report.unacceptable_pairings
        )
        assert is_weakly_stable(instance, matching) == report.stable


@settings(max_examples=60, deadline=None)
@given(instances)
def test_cost_report_is_consistent(instance):
    for matching in all_matchings(instance):
        if block_report(instance, matching).unacceptable_pairings:
            continue
        report = matching_cost(instance, matching)
        assert report.weight == report.man_weight + report.woman_weight
        assert report.sexeq == abs(report.man_weight - report.woman_weight)
        assert report.singles == len(matching.singles)
        assert report.regret == max(report.per_person_cost.values(), default=0)
