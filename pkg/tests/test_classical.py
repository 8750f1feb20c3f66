import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiral_miura.classical import (QuantizationFailure, antipode_classical_check, classical_limit,
                                    classical_miura_check, delta_classical_check, heisenberg_table,
                                    jacobi_defect, pva_bracket, skew_symmetry_defect, specialize_nu)
from chiral_miura.coeffring import MultiPoly, var
from chiral_miura.diffpoly import DiffPoly, d_total
from chiral_miura.miura import UVector

NU, LAM = var("nu"), var("lam")
U1 = DiffPoly.gen("U", 1)
HEIS = heisenberg_table(2)


@pytest.fixture(scope="module")
def limit(main_table):
    return classical_limit(main_table)


@st.composite
def boson_polys(draw):
    out = DiffPoly()
    for _ in range(draw(st.integers(1, 2))):
        term = DiffPoly.const(draw(st.integers(-2, 2)))
        for _ in range(draw(st.integers(1, 2))):
            term = term * DiffPoly.gen("I", draw(st.integers(1, 2)), draw(st.integers(0, 1)))
        out = out + term
    return out


def test_generator_brackets(limit):
    assert limit.gen_bracket(1, 1, LAM) == DiffPoly.const(NU * LAM)
    assert limit.covers(2, 3) and not limit.covers(3, 3)


def test_unit_is_central(limit):
    assert not pva_bracket(U1, DiffPoly.const(1), limit)
    assert not pva_bracket(DiffPoly.const(3), U1, limit)


def test_leibniz_on_square(limit):
    assert pva_bracket(U1, U1 * U1, limit) == U1 * (2 * NU * LAM)


def test_nonclassical_entry_rejected():
    from chiral_miura.lalg import StructureTable, TableConfig

    bad = StructureTable(TableConfig(pairs=2), {(1, 0, 1): UVector.gen(1, 0, MultiPoly.const(1))})
    with pytest.raises(QuantizationFailure):
        classical_limit(bad)


def test_pva_axioms_at_one_rank(limit):
    tab = specialize_nu(limit, 7)
    U2 = DiffPoly.gen("U", 2)
    assert not skew_symmetry_defect(U1, U2, tab)
    assert not skew_symmetry_defect(U2, U2, tab)
    assert not jacobi_defect(U1, U1, U2, tab)


@pytest.mark.parametrize("n", [4, 5])
def test_classical_miura_small(limit, n):
    check = classical_miura_check(n, 1, 1, limit)
    assert check.ok
    assert check.free_side == {1: UVector({(): n})}


def test_classical_miura_uncovered_pair(limit):
    with pytest.raises(KeyError):
        classical_miura_check(4, 3, 3, limit)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_delta_mod_hbar_is_psido_product(j):
    ok, ours, ref = delta_classical_check(j)
    assert ok, (ours, ref)


def test_antipode_is_anti_morphism(limit):
    rep = antipode_classical_check(limit, 3)
    assert rep.convention == "minus"
    assert rep.results["plus"]


@settings(max_examples=30, deadline=None)
@given(boson_polys(), boson_polys())
def test_heisenberg_sesquilinearity(a, b):
    br = pva_bracket(a, b, HEIS)
    assert pva_bracket(d_total(a), b, HEIS) == br * (-LAM)
    assert pva_bracket(a, d_total(b), HEIS) == br * LAM + d_total(br)


@settings(max_examples=30, deadline=None)
@given(boson_polys(), boson_polys(), boson_polys())
def test_heisenberg_leibniz(a, b, c):
    assert pva_bracket(a, b * c, HEIS) == pva_bracket(a, b, HEIS) * c + b * pva_bracket(a, c, HEIS)


@settings(max_examples=30, deadline=None)
@given(boson_polys(), boson_polys())
def test_heisenberg_skew_symmetry(a, b):
    assert not skew_symmetry_defect(a, b, HEIS)


@settings(max_examples=15, deadline=None)
@given(boson_polys(), boson_polys(), boson_polys())
def test_heisenberg_jacobi(a, b, c):
    assert not jacobi_defect(a, b, c, HEIS)
