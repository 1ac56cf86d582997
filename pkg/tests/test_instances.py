import pytest
from hypothesis import given, settings, strategies as st

from conftest import GOLDEN
from smti_asp.errors import InvalidInstanceError, ParseError
from smti_asp.instances import format_instance, generate_instance, generate_instance_3d, parse_instance
from smti_asp.model import PreferenceList, SmtiInstance, validate_instance
from smti_asp.threedim import Smti3dInstance, validate_instance_3d

EXAMPLE_2 = """\
smti
men 2
women 4
m 1 : (1 3) (4)   # w4 is tied with staying single
m 2 : (2 3) ()
"""


def test_example3_file(example3):
    assert parse_instance((GOLDEN / "example3.smti").read_text()) == example3


def test_men_side_notation():
    instance = parse_instance(EXAMPLE_2)
    m1 = instance.men[0]
    assert m1.acceptable() == {1, 3, 4}
    assert m1.preferred() == {1, 3}
    assert m1.neutral() == {4}
    assert m1.unacceptable(4) == {2}
    assert instance.women == (PreferenceList(()),) * 4


def test_three_dimensional_file():
    text = "smti3\nmen 1\nwomen 1\nchildren 2\nm 1 : (1,2) (1,1) ()\nc 2 : (1,1)\n"
    instance = parse_instance(text)
    assert isinstance(instance, Smti3dInstance)
    assert instance.men[0] == PreferenceList.of([(1, 2)], [(1, 1)], [])
    assert instance.children[1].neutral() == {(1, 1)}
    assert parse_instance(format_instance(instance)) == instance


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("smtx\n", 1, 1),
        ("smti\nmen two\n", 2, 1),
        ("smti\nmen 1\n", 3, 1),
        ("smti\nmen 1\nwomen 1\nm 1 : (1) x\n", 4, 11),
        ("smti\nmen 1\nwomen 1\nm 1 : (1,1)\n", 4, 8),
        ("smti\nmen 1\nwomen 1\nm 2 : (1)\n", 4, 3),
        ("smti\nmen 1\nwomen 1\nm 1 : (1)\nm 1 : (1)\n", 5, 1),
        ("smti\nmen 1\nwomen 1\nc 1 : (1)\n", 4, 1),
        ("smti\nmen 1\nwomen 1\nm 1 :\n", 4, 6),
        ("smti\nmen 1\nwomen 1\nbogus\n", 4, 1),
        ("smti3\nmen 1\nwomen 1\nchildren 1\nm 1 : (1)\n", 5, 8),
    ],
)
def test_syntax_errors_have_locations(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_invariant_violations_are_reported():
    with pytest.raises(InvalidInstanceError) as info:
        parse_instance("smti\nmen 1\nwomen 2\nm 1 : (1) () (2)\n")
    assert "empty but is not the last" in str(info.value)
    with pytest.raises(InvalidInstanceError):
        parse_instance("smti\nmen 1\nwomen 2\nm 1 : (3)\n")


def test_generator_special_cases():
    strict = generate_instance(4, 4, 0.0, 0.0, 1)
    for plist in strict.men + strict.women:
        assert plist.neutral() == frozenset()
        assert all(len(g) == 1 for g in plist.groups[:-1])
        assert plist.acceptable() == {1, 2, 3, 4}
    empty = generate_instance(3, 2, 0.5, 1.0, 1)
    assert all(pl == PreferenceList(()) for pl in empty.men + empty.women)
    assert generate_instance(3, 3, 0.3, 0.3, 9) == generate_instance(3, 3, 0.3, 0.3, 9)
    with pytest.raises(ValueError):
        generate_instance(2, 2, 1.5, 0.0, 0)
    with pytest.raises(ValueError):
        generate_instance_3d(-1, 2, 2, 0.0, 0.0, 0)


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, 5),
    st.integers(0, 5),
    st.floats(0, 1),
    st.floats(0, 1),
    st.integers(0, 2**32),
)
def test_generated_instances_validate_and_round_trip(n, p, ties, incomplete, seed):
    instance = generate_instance(n, p, ties, incomplete, seed)
    assert validate_instance(instance) == []
    assert parse_instance(format_instance(instance)) == instance


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.floats(0, 1), st.integers(0, 2**32))
def test_generated_3d_instances_validate_and_round_trip(n, p, r, ties, seed):
    instance = generate_instance_3d(n, p, r, ties, 0.3, seed)
    assert validate_instance_3d(instance) == []
    assert parse_instance(format_instance(instance)) == instance


def test_format_is_canonical(example3):
    assert format_instance(example3) == (
        "smti\nmen 2\nwomen 3\n"
        "m 1 : (1) (2 3) ()\nm 2 : (2) (1)\n"
        "w 1 : (1 2) ()\nw 2 : (1) ()\nw 3 : (2) (1) ()\n"
    )
    assert isinstance(parse_instance(format_instance(SmtiInstance([], []))), SmtiInstance)
