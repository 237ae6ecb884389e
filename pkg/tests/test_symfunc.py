import json

import pytest
from hypothesis import given, settings, strategies as st

from oracles import hook_length_dim, oracle_lr, oracle_product
from pshkit.partitions import EMPTY, Partition, conjugate, generate_partitions
from pshkit.symfunc import (
    SymTensor, basis_element, conjugate_element, coproduct, inner, lr_coefficient, multiply, op_delta, op_m, schur,
    schur_product, skew, tensor_product,
)

P = Partition


def test_product_of_boxes():
    assert multiply(schur(1), schur(1)).to_text() == "(2) + (1,1)"


def test_known_lr_coefficient():
    assert lr_coefficient(P((3, 2, 1)), P((2, 1)), P((2, 1))) == 2
    assert oracle_lr((3, 2, 1), (2, 1), (2, 1)) == 2


@pytest.mark.parametrize("mu,nu", [((2, 1), (1,)), ((2,), (2,)), ((1, 1), (2, 1)), ((3,), (1, 1, 1))])
def test_products_against_polynomial_oracle(mu, nu):
    ours = {tuple(k): v for k, v in schur_product(P(mu), P(nu)).items()}
    assert ours == oracle_product(mu, nu)


def test_coproduct_of_21():
    got = coproduct(schur(2, 1))
    assert len(got) == 6 and all(v == 1 for _, v in got.items())


def test_powersum_norm():
    # <p_n, p_n> = n
    for n in range(1, 8):
        p = basis_element("p", n)
        assert inner(p, p) == n


def test_basis_element_rejects():
    with pytest.raises(ValueError):
        basis_element("q", 2)
    with pytest.raises(ValueError):
        basis_element("e", 0)


def test_json_round_trip_and_schema():
    t = tensor_product(schur(3, 1), schur(2)) + (-2) * tensor_product(schur(1), schur())
    doc = t.to_json()
    assert doc["arity"] == 2
    assert {"index", "coeff"} == set(doc["terms"][0])
    assert SymTensor.from_json(json.loads(json.dumps(doc))) == t


def test_arity_mismatch():
    with pytest.raises(ValueError):
        inner(schur(1), coproduct(schur(1)))


partitions = st.integers(0, 5).flatmap(lambda n: st.sampled_from(generate_partitions(n)))


@settings(max_examples=60, deadline=None)
@given(partitions, partitions, partitions)
def test_associativity(a, b, c):
    x, y, z = SymTensor.basis(a), SymTensor.basis(b), SymTensor.basis(c)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@settings(max_examples=60, deadline=None)
@given(partitions, partitions)
def test_commutativity_and_conjugation(a, b):
    x, y = SymTensor.basis(a), SymTensor.basis(b)
    assert multiply(x, y) == multiply(y, x)
    assert conjugate_element(multiply(x, y)) == multiply(conjugate_element(x), conjugate_element(y))


@settings(max_examples=60, deadline=None)
@given(partitions, partitions, partitions)
def test_skewing_is_adjoint_to_multiplication(a, b, c):
    x, y, z = SymTensor.basis(a), SymTensor.basis(b), SymTensor.basis(c)
    assert inner(op_m(x, y), z) == inner(y, op_delta(x, z))


@settings(max_examples=40, deadline=None)
@given(partitions, partitions)
def test_coproduct_is_multiplicative(a, b):
    x, y = SymTensor.basis(a), SymTensor.basis(b)
    lhs = coproduct(multiply(x, y))
    dx, dy = coproduct(x), coproduct(y)
    rhs = SymTensor(2)
    for (x1, x2), u in dx.items():
        for (y1, y2), v in dy.items():
            rhs = rhs + (u * v) * tensor_product(multiply(SymTensor.basis(x1), SymTensor.basis(y1)),
                                                 multiply(SymTensor.basis(x2), SymTensor.basis(y2)))
    assert lhs == rhs


@given(st.integers(1, 7).flatmap(lambda n: st.sampled_from(generate_partitions(n))))
def test_dimension_from_repeated_skewing(lam):
    # skewing by s_1 |lam| times counts standard tableaux
    y = SymTensor.basis(lam)
    for _ in range(lam.size):
        y = skew(schur(1), y)
    assert y[(EMPTY,)] == hook_length_dim(tuple(lam))


@given(partitions, partitions)
def test_lr_symmetry(mu, nu):
    for lam in generate_partitions(mu.size + nu.size):
        c = lr_coefficient(lam, mu, nu)
        assert c == lr_coefficient(lam, nu, mu)
        assert c == lr_coefficient(conjugate(lam), conjugate(mu), conjugate(nu))


def test_truncation():
    assert multiply(schur(2), schur(1), max_degree=2) == SymTensor(1)
