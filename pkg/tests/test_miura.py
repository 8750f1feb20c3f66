import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiral_miura.coeffring import MultiPoly, var
from chiral_miura.fock import FockVector
from chiral_miura.miura import (ClosureFailure, RewriteSystem, UVector, miura_coefficient, miura_field,
                                miura_field_recursive, ope_entry, pbw_monomials, realize, render_umono,
                                rewrite_system, umono)
from oracles import mode_product

HBAR = var("hbar")


def oracle_product(n, i, s, j) -> FockVector:
    """``U_i (s) U_j`` through the mode-expansion oracle on the recursive fields."""
    a, b = miura_field_recursive(n, i), miura_field_recursive(n, j)
    out = FockVector(n)
    for (ma, ka), ca in a.terms.items():
        for (mb, kb), cb in b.terms.items():
            part = {(m, k + ka + kb): c * ca * cb for (m, k), c in mode_product(ma, s, mb).items()}
            out = out + FockVector(n, part)
    return out


def test_u1_is_sum_of_bosons():
    assert miura_field(3, 1) == FockVector(3, {(((i, 1),), 0): 1 for i in (1, 2, 3)})


def test_miura_coefficient_examples():
    assert miura_coefficient([1], [0]) == 1
    assert miura_coefficient([3], [2]) == 1
    assert miura_coefficient([1, 2], [1, 0]) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_closed_form_matches_recursion(n):
    for j in range(1, n + 1):
        assert miura_field(n, j) == miura_field_recursive(n, j)


def test_pbw_counts():
    # generators U_j^(d) of weight j + d; weight 3 monomials:
    # U_3, U_2', U_1'', U_2 U_1, U_1' U_1, U_1^3
    assert len(pbw_monomials(3)) == 6
    assert len(pbw_monomials(3, 2)) == 5
    assert render_umono(umono(1, 1, (2, 1))) == "U_2^(1)*U_1^2"


def test_heisenberg_entry():
    assert ope_entry(5, 1, 1, 1) == UVector({(): 5 * HBAR})


def test_weight_zero_entry_against_oracle():
    expected = 10 * HBAR ** 2 - 180 * HBAR
    assert ope_entry(5, 2, 3, 2) == UVector({(): expected})
    assert oracle_product(5, 2, 3, 2) == FockVector(5, {((), 2): 10, ((), 1): -180})


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 3))
def test_entries_realize_to_oracle_products(i, j, s):
    n = 4
    if i + j - s - 1 > n:
        return
    assert realize(ope_entry(n, i, s, j), n) == oracle_product(n, i, s, j)


@st.composite
def uvectors(draw, w):
    basis = pbw_monomials(w, 4)
    terms = {}
    for m in draw(st.lists(st.sampled_from(basis), max_size=4)):
        terms[m] = MultiPoly({(k,): draw(st.integers(-3, 3)) for k in range(2)}, ("hbar",))
    return UVector(terms)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda w: st.tuples(st.just(w), uvectors(w))))
def test_rewrite_round_trip(case):
    w, u = case
    assert rewrite_system(4, w).solve(realize(u, 4)) == u


def test_weight_above_rank_needs_truncation():
    with pytest.raises(ValueError):
        RewriteSystem(2, 3)
    with pytest.raises(ClosureFailure):
        # a bare boson is not in the W-algebra
        rewrite_system(2, 1).solve(FockVector.boson(2, 1))
