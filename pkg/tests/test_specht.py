import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import hook_length_dim
from pshkit import specht
from pshkit.partitions import Partition, generate_partitions
from pshkit.symfunc import lr_coefficient

P = Partition


@pytest.mark.parametrize("n", range(1, 7))
def test_dimensions_match_hook_length(n):
    for lam in generate_partitions(n):
        assert specht.dim(lam) == hook_length_dim(tuple(lam))


@pytest.mark.parametrize("lam", [P((2, 1)), P((3, 2)), P((2, 2, 1)), P((3, 1, 1))])
def test_coxeter_relations(lam):
    n = lam.size
    s = [None] + [specht.seminormal_generator(lam, i) for i in range(1, n)]
    one = specht.identity(specht.dim(lam))
    for i in range(1, n):
        assert s[i] * s[i] == one
        if i + 1 < n:
            assert s[i] * s[i + 1] * s[i] == s[i + 1] * s[i] * s[i + 1]
        for j in range(i + 2, n):
            assert s[i] * s[j] == s[j] * s[i]


def test_rep_perm_is_a_homomorphism():
    lam = P((2, 1, 1))
    perms = list(itertools.permutations(range(4)))
    for p in perms[::5]:
        for q in perms[::7]:
            pq = tuple(p[q[i]] for i in range(4))
            assert specht.rep_perm(lam, pq) == specht.rep_perm(lam, p) * specht.rep_perm(lam, q)


pairs = st.integers(1, 5).flatmap(lambda a: st.integers(1, 6 - a).flatmap(
    lambda b: st.tuples(st.sampled_from(generate_partitions(a)), st.sampled_from(generate_partitions(b)))))


@settings(max_examples=40, deadline=None)
@given(pairs)
def test_hom_space_dimension_is_lr(pair):
    mu, nu = pair
    for lam in generate_partitions(mu.size + nu.size):
        hs = specht.hom_space(lam, (mu, nu))
        assert len(hs) == lr_coefficient(lam, mu, nu)
        for k, x in enumerate(hs.basis):
            assert specht.is_intertwiner(x, lam, (mu, nu))
            assert hs.coords(x) == [int(j == k) for j in range(len(hs))]


def test_three_factor_hom_space():
    lam = P((3, 2, 1))
    parts = (P((1,)), P((2, 1)), P((1, 1)))
    hs = specht.hom_space(lam, parts)
    assert len(hs) > 0
    assert all(specht.is_intertwiner(x, lam, parts) for x in hs.basis)


def test_degenerate_cases():
    assert len(specht.hom_space(P(()), ())) == 1
    assert len(specht.hom_space(P((2,)), (P((2,)),))) == 1
    assert len(specht.hom_space(P((2,)), (P((1, 1)),))) == 0
    assert len(specht.hom_space(P((2,)), (P((1,)),))) == 0
