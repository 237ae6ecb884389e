import json

import pytest
from hypothesis import given, settings, strategies as st

from pshkit.partitions import EMPTY, Partition
from pshkit.psh import (
    ActiveMap, NonActiveError, PshAlgebra, SetMap, all_set_maps, basis_tensors, check_psh_axioms, delta_a,
    fiber_product, is_cartesian, is_primitive, m_a, negate_constant, primitives, pullback_active_square,
    square_mate_check, symmetric_functions, tensor_power, tensor_psh,
)
from pshkit.symfunc import SymTensor, basis_element, inner

P = Partition
L6 = symmetric_functions(6)


def test_fiber_product_examples():
    n, pB, pC = fiber_product(SetMap((1, 1), 1), SetMap((1, 1), 1))
    assert n == 4 and pB.values == (1, 2, 1, 2) and pC.values == (1, 1, 2, 2)
    n, _, _ = fiber_product(SetMap((1, 2), 2), SetMap((1,), 2))
    assert n == 1


def test_active_map_requires_no_basepoint():
    with pytest.raises(NonActiveError):
        pullback_active_square([ActiveMap((0, 1), 1)], [ActiveMap((1,), 1)])
    (n, _, _), = pullback_active_square([ActiveMap((1, 1), 1)], [ActiveMap((1,), 1)])
    assert n == 2


def test_setmap_validation_and_compose():
    with pytest.raises(ValueError):
        SetMap((3,), 2)
    f = SetMap((2, 1, 2), 2)
    assert SetMap.collapse(2).compose(f) == SetMap.collapse(3)
    assert f.fiber(2) == [1, 3]


maps = st.tuples(st.integers(0, 3), st.integers(1, 3), st.integers(0, 3)).flatmap(
    lambda t: st.tuples(st.sampled_from(all_set_maps(t[0], t[1])), st.sampled_from(all_set_maps(t[2], t[1]))))


@given(maps)
def test_fiber_product_is_cartesian(pair):
    b, c = pair
    n, pB, pC = fiber_product(b, c)
    assert is_cartesian(pB, pC, c, b)
    assert n == sum(len(b.fiber(t)) * len(c.fiber(t)) for t in range(1, b.target_size + 1))


@settings(max_examples=40, deadline=None)
@given(maps)
def test_mate_square_holds_for_every_pullback(pair):
    b, c = pair
    _, pB, pC = fiber_product(b, c)
    ok, _, w = square_mate_check(symmetric_functions(3), pB, pC, c, b, 3)
    assert ok, w


def test_non_cartesian_square_fails():
    # the diagonal square over [2] -> [1] commutes but is not a pullback
    ident, c = SetMap.identity(2), SetMap.collapse(2)
    assert not is_cartesian(ident, ident, c, c)
    ok, _, w = square_mate_check(symmetric_functions(3), ident, ident, c, c, 3)
    assert not ok and w is not None


def test_lambda_axioms_pass():
    rep = check_psh_axioms(L6)
    assert rep["ok"], rep
    assert [a["axiom"] for a in rep["axioms"]] == [
        "positivity", "self_adjointness", "unit_associativity", "hopf_mate", "connectedness"]


def test_negated_constant_is_caught_with_witness():
    bad = negate_constant(symmetric_functions(4), P((1,)), P((1,)), P((2,)))
    rep = check_psh_axioms(bad)
    assert not rep["ok"]
    pos = rep["axioms"][0]
    assert pos["witness"] == {"a": "(1)", "b": "(1)", "c": "(2)", "coeff": -1}


def test_primitives_are_power_sums():
    for n in range(1, 7):
        (p,) = primitives(L6, n)
        assert p == basis_element("p", n) or p == -1 * basis_element("p", n)
        assert is_primitive(L6, p)


def test_tensor_square():
    L = symmetric_functions(4)
    A = tensor_psh(L, L)
    assert len(A.basis[2]) == 5
    assert check_psh_axioms(A)["ok"]
    assert [len(primitives(A, n)) for n in range(1, 5)] == [2, 2, 2, 2]


def test_tensor_power_one_is_identity():
    assert tensor_power(L6, 1) is L6
    with pytest.raises(ValueError):
        tensor_power(L6, 0)


def test_json_round_trip():
    A = symmetric_functions(3)
    B = PshAlgebra.from_json(json.loads(json.dumps(A.to_json())))
    assert B.basis == A.basis and B.mult == {k: v for k, v in A.mult.items() if v}
    L = symmetric_functions(2)
    T = tensor_psh(L, L)
    T2 = PshAlgebra.from_json(json.loads(json.dumps(T.to_json())))
    assert T2.labels() == T.labels()


def test_rejects_bad_construction():
    with pytest.raises(ValueError):
        PshAlgebra([[EMPTY]], {}, P((1,)), 0)
    with pytest.raises(ValueError):
        check_psh_axioms(symmetric_functions(2), 3)


labels = st.sampled_from(symmetric_functions(4).labels())


@settings(max_examples=50, deadline=None)
@given(st.lists(labels, min_size=1, max_size=3), st.integers(1, 3))
def test_m_and_delta_are_adjoint(legs, m):
    A = symmetric_functions(6)
    n = len(legs)
    a = SetMap(tuple((k % m) + 1 for k in range(n)), m)
    x = SymTensor.basis(*legs)
    for idx in basis_tensors(A, m, sum(A.degree[l] for l in legs)):
        y = SymTensor.basis(*idx)
        assert inner(m_a(a, x, A), y) == inner(x, delta_a(a, y, A))
