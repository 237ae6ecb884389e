import pytest
from hypothesis import given, settings, strategies as st

from pshkit import heisenberg as H
from pshkit.partitions import EMPTY, Partition
from pshkit.psh import symmetric_functions, tensor_psh
from pshkit.symfunc import SymTensor, schur

P = Partition
L6 = symmetric_functions(6)
ZERO = H.HeisElement(SymTensor(2))


def b(x, y):
    return H.HeisElement.basis(P(x), P(y))


def test_straightening_of_delta1_m1():
    # (1 ⊗ s1)(s1 ⊗ 1) = s1 ⊗ s1 + 1 ⊗ 1
    got = H.heis_product(b((), (1,)), b((1,), ()), L6)
    assert got == b((1,), (1,)) + b((), ())


def test_unit_is_two_sided():
    u = b((2,), (1,))
    one = H.HeisElement.unit(L6)
    assert H.heis_product(one, u, L6) == u == H.heis_product(u, one, L6)


def test_rejects_arity_and_mutant():
    with pytest.raises(ValueError):
        H.HeisElement(schur(1))
    with pytest.raises(ValueError):
        H.heis_product(b((), ()), b((), ()), L6, mutant="nope")


def test_fock_apply():
    assert H.fock_apply(b((1,), ()), schur(1), L6, 4) == schur(2) + schur(1, 1)
    assert H.fock_apply(b((), (1,)), schur(2, 1), L6, 4) == schur(2) + schur(1, 1)
    assert H.fock_apply(b((3,), ()), schur(2), L6, 4) == SymTensor(1)


def test_fock_domain_excludes_overflow():
    op = H.phi(b((2,), ()), L6, 3)
    assert P((1,)) in op.domain and P((2,)) not in op.domain
    with pytest.raises(ValueError):
        op.apply(schur(2))


def test_phi_rejects_degree_above_truncation():
    with pytest.raises(ValueError):
        H.phi(b((), ()), symmetric_functions(2), 3)


def test_relation_for_small_x():
    rep = H.verify_relation(L6, 6, 2)
    assert rep["ok"] and len(rep["rows"]) == 4


def test_phi_algebra_map_small():
    assert H.verify_phi_algebra(symmetric_functions(4), 4, 2)["ok"]


def test_phi_algebra_map_on_tensor_square():
    L = symmetric_functions(3)
    assert H.verify_phi_algebra(tensor_psh(L, L), 3, 1)["ok"]


def test_misroute_mutant_is_caught():
    rep = H.verify_phi_algebra(symmetric_functions(4), 4, 1, mutant="misroute")
    assert not rep["ok"] and rep["witness"]["u"] and rep["witness"]["composite"] != rep["witness"]["phi_of_product"]


def test_swapped_legs_are_invisible_for_cocommutative_algebra():
    assert H.verify_phi_algebra(symmetric_functions(3), 3, 1, mutant="swap_legs")["ok"]


def test_injectivity_small():
    rep = H.verify_injectivity(symmetric_functions(6), 3)
    assert rep["ok"] and rep["total_rank"] == rep["total_dim"]
    with pytest.raises(ValueError):
        H.verify_injectivity(symmetric_functions(4), 3)


def test_presentation_2_example():
    A = symmetric_functions(4)
    c2, cm2 = H.generator(2, "c", 2, A), H.generator(2, "c", -2, A)
    assert H.commutator(c2, cm2, A) == 2 * H.HeisElement.unit(A)


def test_presentation_3_example_swapped():
    A = symmetric_functions(6)
    a3, b2 = H.generator(3, "a", 3, A, "swapped"), H.generator(3, "b", 2, A, "swapped")
    rhs = H.heis_product(H.generator(3, "b", 1, A, "swapped"), H.generator(3, "a", 2, A, "swapped"), A)
    assert H.commutator(a3, b2, A) == rhs


def test_presentation_3_literal_differs_by_sign_and_shift():
    A = symmetric_functions(6)
    a, bb = H.generator(3, "a", 2, A), H.generator(3, "b", 2, A)
    got = H.commutator(a, bb, A)
    assert got == -1 * H.heis_product(H.generator(3, "a", 1, A), H.generator(3, "b", 1, A), A)


def test_presentation_1_is_report_only():
    rep = H.commutator_table(1, 2)
    assert rep["ok"] is None and len(rep["rows"]) == 4
    by = {(r["m"], r["n"]): r["computed"] for r in rep["rows"]}
    assert by[(1, 1)] == "-() ⊗ ()"


def test_generator_errors():
    with pytest.raises(ValueError):
        H.generator(2, "c", 0, L6)
    with pytest.raises(ValueError):
        H.commutator_table(4, 1)


left = st.sampled_from(symmetric_functions(3).labels())


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(left, left), min_size=3, max_size=3))
def test_associativity(triple):
    A = symmetric_functions(6)
    u, v, w = (H.HeisElement.basis(x, y) for x, y in triple)
    assert H.heis_product(H.heis_product(u, v, A), w, A) == H.heis_product(u, H.heis_product(v, w, A), A)


@settings(max_examples=40, deadline=None)
@given(left, left)
def test_same_side_commutators_vanish(x, y):
    A = symmetric_functions(6)
    assert H.commutator(H.HeisElement.basis(x, EMPTY), H.HeisElement.basis(y, EMPTY), A).is_zero()
    assert H.commutator(H.HeisElement.basis(EMPTY, x), H.HeisElement.basis(EMPTY, y), A).is_zero()


@settings(max_examples=30, deadline=None)
@given(left, left, st.sampled_from(symmetric_functions(3).labels()))
def test_phi_agrees_with_fock_apply(x, y, z):
    u = H.HeisElement.basis(x, y)
    op = H.phi(u, L6, 6)
    if z in op.domain:
        assert op.apply(SymTensor.basis(z)) == H.fock_apply(u, SymTensor.basis(z), L6, 6)
