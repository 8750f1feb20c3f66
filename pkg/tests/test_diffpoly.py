from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from chiral_miura.coeffring import var
from chiral_miura.diffpoly import (DiffGen, DiffPoly, SymFun, conjugate, d_total, elementary_in_monomial,
                                   expand_elementary_poly, partial, partitions, render_elementary,
                                   sym_to_elementary)

U1, U2 = DiffPoly.gen("U", 1), DiffPoly.gen("U", 2)


@st.composite
def diffpolys(draw, families=("U", "W"), max_terms=3):
    out = DiffPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        term = DiffPoly.const(draw(st.integers(-4, 4)))
        for _ in range(draw(st.integers(0, 3))):
            term = term * DiffPoly.gen(draw(st.sampled_from(families)), draw(st.integers(1, 3)),
                                       draw(st.integers(0, 2)))
        out = out + term
    return out


def test_d_total_examples():
    assert d_total(U1 * U1) == 2 * U1 * DiffPoly.gen("U", 1, 1)
    assert d_total(U2, 2) == DiffPoly.gen("U", 2, 2)
    assert d_total(DiffPoly.const(7)) == DiffPoly()


def test_weights_and_render():
    p = U1 * DiffPoly.gen("U", 2, 1) + 3 * DiffPoly.gen("U", 4)
    assert p.weight() == 4
    assert str(U1 * U1 * var("lam") - U2) == "lam*U_1^2 - U_2"
    assert str(DiffGen("W", 3, 2)) == "W_3^(2)"


def test_substitute_differentiates_images():
    # U_1 -> W_1 + W_2, so U_1' -> W_1' + W_2'
    p = DiffPoly.gen("U", 1, 1) * U2
    img = p.substitute({("U", 1): DiffPoly.gen("W", 1) + DiffPoly.gen("W", 2)})
    assert img == (DiffPoly.gen("W", 1, 1) + DiffPoly.gen("W", 2, 1)) * U2


def test_partitions_and_conjugate():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(5, max_len=2)) == [(5,), (4, 1), (3, 2)]
    assert conjugate((3, 1)) == (2, 1, 1)


def test_elementary_in_monomial():
    # e1^2 = m_2 + 2 m_11
    assert elementary_in_monomial((1, 1), 3) == {(2,): 1, (1, 1): 2}
    assert elementary_in_monomial((2, 1), 3) == {(2, 1): 1, (1, 1, 1): 3}


def test_power_sums_to_elementary():
    # Newton: p2 = e1^2 - 2 e2, p3 = e1^3 - 3 e1 e2 + 3 e3
    assert sym_to_elementary(SymFun.power_sum(2, 3)) == {(1, 1): 1, (2,): -2}
    assert sym_to_elementary(SymFun.power_sum(3, 3)) == {(1, 1, 1): 1, (2, 1): -3, (3,): 3}
    assert render_elementary({(1, 1): 1, (2,): -2}) == "e1^2 - 2*e2"


@settings(max_examples=60, deadline=None)
@given(diffpolys(), diffpolys())
def test_leibniz(a, b):
    assert d_total(a * b) == d_total(a) * b + a * d_total(b)
    assert d_total(a + b) == d_total(a) + d_total(b)


@settings(max_examples=40, deadline=None)
@given(diffpolys(), st.integers(1, 3))
def test_derivation_raises_weight(a, k):
    for w in d_total(a, k).weights():
        assert w - k in a.weights()


@settings(max_examples=40, deadline=None)
@given(diffpolys(), diffpolys(), st.sampled_from([DiffGen("U", 1), DiffGen("W", 2, 1)]))
def test_partial_is_derivation(a, b, g):
    assert partial(a * b, g) == partial(a, g) * b + a * partial(b, g)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.sampled_from([(3,), (2, 1), (1, 1, 1), (2,), (1, 1), (4,), (2, 2)]),
                       st.integers(-3, 3), max_size=4), st.integers(3, 4))
def test_symmetric_round_trip(mono_coeffs, nvars):
    f = SymFun(mono_coeffs, nvars)
    assert expand_elementary_poly(sym_to_elementary(f), nvars) == f.expand()


def test_symfun_expand_brute():
    # m_21 in 3 variables evaluated at (1, 2, 3) directly
    f = SymFun.monomial((2, 1), 3)
    x = (1, 2, 3)
    value = sum(c * x[0] ** e[0] * x[1] ** e[1] * x[2] ** e[2] for e, c in f.expand().items())
    brute = sum(x[i] ** 2 * x[j] for i, j in product(range(3), repeat=2) if i != j)
    assert value == brute == 48
    assert SymFun({(1, 1, 1, 1): Fraction(1, 2)}, 3).terms == {}
