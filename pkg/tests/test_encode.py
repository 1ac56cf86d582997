import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_instance, rule_set, statements
from smti_asp import asp, encode, oracle
from smti_asp.errors import InvalidInstanceError
from smti_asp.instances import generate_instance
from smti_asp.model import Criterion, CriterionKind, Direction, PreferenceList, SmtiInstance, matching_cost


def test_example3_normal_program_has_three_answer_sets(example3, example3_matchings):
    found = asp.enumerate_answer_sets(encode.encode_smti(example3))
    assert sorted(encode.matching_from_answer_set(a) for a in found) == sorted(example3_matchings.values())


def test_answer_set_construction_matches_search(example3, example3_matchings):
    found = set(asp.enumerate_answer_sets(encode.encode_smti(example3)))
    assert {encode.matching_answer_set(example3, m) for m in example3_matchings.values()} == found


def test_stable_pair_is_brave_reasoning(example3):
    found = asp.enumerate_answer_sets(encode.encode_smti(example3))
    for i in (1, 2):
        for j in (1, 2, 3):
            brave = any(encode.accept(f"m{i}", f"w{j}") in a for a in found)
            assert brave == oracle.stable_pair(example3, i, j)


def test_rule_one_is_grounded_for_every_couple():
    instance = SmtiInstance([[]] * 2, [[]] * 3)
    program = encode.encode_smti(instance)
    assert sum(1 for r in program if r.head[0].predicate == "accept" and r.pos_body) == 6
    assert asp.enumerate_answer_sets(program) == [frozenset(encode.accept(x, x) for x in ["m1", "m2", "w1", "w2", "w3"])]


def test_neutral_partner_rule_mentions_staying_single(example3):
    text = encode.emit_dlv(encode.encode_smti(example3))
    assert "manpropose(m2,w1) :- not accept(m2,w2), not accept(m2,m2)." in text


def test_invalid_instances_are_rejected():
    bad = SmtiInstance([PreferenceList.of([2])], [[]])
    for build in (encode.encode_smti, encode.encode_smti_disjunctive, encode.encode_completion):
        with pytest.raises(InvalidInstanceError):
            build(bad)


def test_induced_programs_are_normal_and_tight(example3):
    program = encode.encode_smti(example3)
    assert program.is_normal and asp.is_tight(program)
    disjunctive = encode.encode_smti_disjunctive(example3)
    assert disjunctive.is_naf_free and not disjunctive.is_normal


def test_completion_is_emitted_as_guess_and_check(example3):
    text = encode.emit_dlv(encode.encode_completion(example3))
    program = asp.parse_program(text)
    found = [asp.project(a, "accept") for a in asp.enumerate_answer_sets(program, max_atoms=None)]
    expected = [asp.project(a, "accept") for a in asp.enumerate_answer_sets(encode.encode_smti(example3))]
    assert sorted(found, key=asp.interp_key) == sorted(expected, key=asp.interp_key)


def test_emitted_ground_programs_parse_back(example3):
    for program in (encode.encode_smti(example3), encode.encode_smti_disjunctive(example3)):
        assert asp.parse_program(encode.emit_dlv(program)) == program
    with pytest.raises(TypeError):
        encode.emit_dlv("not a program")


@pytest.mark.parametrize("kind", list(CriterionKind))
@pytest.mark.parametrize("direction", list(Direction))
def test_opt_programs_are_well_formed(example3, kind, direction):
    criterion = Criterion(kind, direction)
    text = encode.emit_opt_program(example3, criterion)
    rules = statements(text)
    assert ":- not sat" in rules
    name = {"egal": "weight", "man-weight": "manweight", "woman-weight": "womanweight"}.get(kind.value, kind.value)
    op = "<=" if direction is Direction.MINIMIZE else ">="
    assert f"sat :- {name}(X), {name}'(Y), X{op}Y" in rules
    lo, hi = encode.criterion_range(2, 3, kind)
    maxint = int(text.split("#maxint=")[1].split(".")[0])
    assert maxint >= hi and maxint >= 4
    # every value a stable matching takes lies inside the declared range
    for matching in oracle.enumerate_stable(example3):
        assert lo <= matching_cost(example3, matching).value(kind) <= hi
    assert encode.opt_grounded_size(example3, criterion) > len(rules) // 2


def test_weight_programs_follow_the_one_sided_remark(example3):
    man_only = encode.emit_opt_program(example3, Criterion.parse("man-weight"))
    assert "womanweight(" not in man_only and "womansum'" not in man_only
    assert "sat :- manweight(X), manweight'(Y), X<=Y." in man_only
    woman_only = encode.emit_opt_program(example3, Criterion.parse("woman-weight"))
    assert "\nmansum'" not in woman_only and "\nmanweight(" not in woman_only


def test_singles_program_counts_singles(example3):
    text = encode.emit_opt_program(example3, Criterion.parse("singles"))
    assert "singles(Z) :- #count{B : accept(B,B)} = Z, #int(Z)." in text
    assert "single'(4,1) :- accept'(m1,m1)." in text
    assert "single'(1,0) :- naccept'(w1,w1)." in text
    assert "mancost" not in text


def test_prime_suffix_is_configurable(example3):
    text = encode.emit_opt_program(example3, Criterion.parse("regret"), prime="_p")
    assert "'" not in text and "regret_p(Y)" in text


def test_empty_side_uses_zero_facts():
    instance = SmtiInstance([], [[], []])
    for name in ("sexeq", "regret", "singles"):
        text = encode.emit_opt_program(instance, Criterion.parse(name))
        assert "(1..0)" not in text
    assert "manweight'(0)." in encode.emit_opt_program(instance, Criterion.parse("sexeq"))
    assert "manregret'(0)." in encode.emit_opt_program(instance, Criterion.parse("regret"))


def test_ground_size_bounds_keep_shrinking_relative_to_k():
    previous = {}
    for k in range(2, 11):
        instance = generate_instance(k, k, 0.0, 0.0, k)
        for name in ("regret", "singles", "sexeq", "egal"):
            constant, exponent = encode.GROUND_SIZE_BOUNDS[name]
            ratio = encode.opt_grounded_size(instance, Criterion.parse(name)) / k**exponent
            assert ratio <= constant
            assert ratio <= previous.get(name, ratio)
            previous[name] = ratio


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_bijection_property(seed):
    instance = random_instance(seed, 3, 3)
    found = asp.enumerate_answer_sets(encode.encode_smti(instance), max_atoms=None)
    stable = oracle.enumerate_stable(instance)
    assert sorted(encode.matching_from_answer_set(a) for a in found) == stable
    for matching in stable:
        assert asp.is_answer_set(encode.encode_smti(instance), encode.matching_answer_set(instance, matching), max_size=100)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_completion_equals_generic_completion(seed):
    instance = random_instance(seed, 3, 3)
    assert encode.encode_completion(instance) == asp.completion(encode.encode_smti(instance))


def test_rule_set_normalisation_ignores_order():
    assert rule_set("a :- b, not c.") == rule_set("a :- not c,b .")
    assert rule_set("x v y.") == rule_set("y v x.")
