import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiral_miura.bialg import (UNIT, TensorUVector, apply_counit, apply_delta, coassoc_and_counit_check,
                                delta_gen, delta_splitting_check, juxtapose, morphism_certificate)
from chiral_miura.coeffring import var
from chiral_miura.fock import FockVector
from chiral_miura.miura import umono

NU1, NU2, HBAR = var("nu1"), var("nu2"), var("hbar")


def test_delta_examples():
    assert delta_gen(1) == TensorUVector(2, {(umono(1), UNIT): 1, (UNIT, umono(1)): 1})
    assert delta_gen(2) == TensorUVector(2, {
        (umono(2), UNIT): 1,
        (umono(1), umono(1)): 1,
        (UNIT, umono(2)): 1,
        (UNIT, umono((1, 1))): NU1,
    })


def test_counit_examples():
    t = delta_gen(2)
    assert apply_counit(t, 0) == TensorUVector(1, {(umono(2),): 1})
    assert apply_counit(t, 1) == TensorUVector(1, {(umono(2),): 1})


@pytest.mark.parametrize("j", [1, 2, 3])
def test_coalgebra_identities(j):
    assert coassoc_and_counit_check(j).ok


def test_delta_twice_uses_sum_of_ranks():
    t = apply_delta(delta_gen(2), 0)
    # the derivative term of the last factor carries the rank of both earlier factors
    assert t.terms[(UNIT, UNIT, umono((1, 1)))] == NU1 + NU2


def test_juxtapose_shifts_bosons():
    a = FockVector.boson(1, 1)
    b = FockVector.boson(2, 2)
    assert juxtapose(a, b) == FockVector.monomial(3, [(1, 1), (3, 1)])


@settings(max_examples=12, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4))
def test_splitting(m, n2, j):
    if j > m + n2:
        return
    assert delta_splitting_check(m, n2, j).ok


def test_splitting_examples():
    assert delta_splitting_check(2, 2, 2).ok
    assert delta_splitting_check(3, 2, 4).ok


def test_morphism_heisenberg(main_table):
    rep = morphism_certificate(1, 1, 1, main_table, grid_min=2, grid_max=4)
    assert rep.ok
    assert rep.lhs == TensorUVector(2, {(UNIT, UNIT): (NU1 + NU2) * HBAR})


def test_morphism_weight_two(main_table):
    rep = morphism_certificate(2, 1, 2, main_table)
    assert rep.ok and not rep.pointwise_failures
    assert (6, 6) in rep.held_out
