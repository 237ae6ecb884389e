import pytest
from hypothesis import given, strategies as st

from oracles import euler_partition_counts, naive_partitions
from pshkit.partitions import (
    EMPTY, Partition, conjugate, contains, generate_partitions, hook, parse_partition, partitions_up_to, to_json,
    to_text,
)


def test_counts_match_euler_recurrence():
    p = euler_partition_counts(20)
    assert [len(generate_partitions(n)) for n in range(21)] == p
    assert p[8] == 22


@pytest.mark.parametrize("n", range(7))
def test_enumeration_matches_naive(n):
    assert [tuple(x) for x in generate_partitions(n)] == naive_partitions(n)


def test_partitions_up_to_grouped():
    labs = partitions_up_to(4)
    assert len(labs) == 1 + 1 + 2 + 3 + 5
    assert [l.size for l in labs] == sorted(l.size for l in labs)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(TypeError):
        Partition((True,))


@pytest.mark.parametrize("text,expected", [("3,1", (3, 1)), ("0", ()), ("", ()), ("[2,2]", (2, 2)), ([1], (1,))])
def test_parse(text, expected):
    assert parse_partition(text) == Partition(expected)


def test_text_and_json_forms():
    assert to_text(EMPTY) == "0" and to_json(EMPTY) == []
    assert to_text(Partition((3, 1))) == "3,1"


def test_hook():
    assert hook(4, 2) == Partition((2, 1, 1))
    with pytest.raises(ValueError):
        hook(3, 3)


partitions = st.integers(0, 12).flatmap(lambda n: st.sampled_from(generate_partitions(n)))


@given(partitions)
def test_conjugation_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


@given(partitions, partitions)
def test_containment_is_compatible_with_conjugation(lam, mu):
    assert contains(lam, mu) == contains(conjugate(lam), conjugate(mu))


@given(partitions)
def test_text_round_trip(lam):
    assert parse_partition(to_text(lam)) == lam
    assert parse_partition(to_json(lam)) == lam
