from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiral_miura.fock import FockVector, mode_apply, mono_product, nth_product, translate, weight_zero_part
from oracles import mode_product

RANK = 2


@st.composite
def monos(draw, max_len=3, max_mode=3):
    k = draw(st.integers(0, max_len))
    return tuple(sorted(draw(st.tuples(st.integers(1, RANK), st.integers(1, max_mode))) for _ in range(k)))


@st.composite
def vectors(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        terms[(draw(monos()), 0)] = draw(st.integers(-3, 3))
    return FockVector(RANK, terms)


def as_dict(pairs):
    return {key: c for key, c in pairs if c}


def test_heisenberg_ope():
    I1 = FockVector.boson(RANK, 1)
    assert weight_zero_part(nth_product(I1, 1, I1)) == weight_zero_part(FockVector.vacuum(RANK).scale(1, 1))
    assert not nth_product(I1, 1, FockVector.boson(RANK, 2))
    assert not nth_product(I1, 0, I1)
    assert nth_product(I1, -1, I1) == FockVector.monomial(RANK, [(1, 1), (1, 1)])


def test_vacuum_is_identity():
    v = FockVector.monomial(RANK, [(1, 2), (2, 1)], 3)
    vac = FockVector.vacuum(RANK)
    assert nth_product(vac, -1, v) == v
    assert not nth_product(vac, 0, v)
    assert nth_product(v, -1, vac) == v


def test_boson_rejects_bad_index():
    with pytest.raises(ValueError):
        FockVector.boson(RANK, 3)
    with pytest.raises(ValueError):
        mode_apply(0, 1, FockVector.vacuum(RANK))


@settings(max_examples=300, deadline=None)
@given(monos(), st.integers(-2, 4), monos())
def test_wick_matches_mode_expansion(a, s, b):
    assert as_dict(mono_product(a, s, b)) == mode_product(a, s, b)


@settings(max_examples=60, deadline=None)
@given(vectors(), st.integers(-1, 3), vectors())
def test_translation_is_derivation(a, s, b):
    # T(a_(s) b) = (Ta)_(s) b + a_(s) T b
    assert translate(nth_product(a, s, b)) == nth_product(translate(a), s, b) + nth_product(a, s, translate(b))


@settings(max_examples=60, deadline=None)
@given(vectors(), st.integers(1, 4), vectors())
def test_translation_lowers_mode(a, s, b):
    # (Ta)_(s) b = -s a_(s-1) b
    assert nth_product(translate(a), s, b) == nth_product(a, s - 1, b).scale(-s)


@settings(max_examples=60, deadline=None)
@given(vectors(), st.integers(0, 3), vectors())
def test_skew_symmetry(a, s, b):
    # b_(s) a = sum_k (-1)^(s+k+1) T^k/k! (a_(s+k) b); products vanish past total weight
    top = max(a.weights(), default=0) + max(b.weights(), default=0)
    rhs = FockVector(RANK)
    for k in range(max(top - s, 0) + 1):
        rhs = rhs + translate(nth_product(a, s + k, b), k).scale(Fraction((-1) ** (s + k + 1), factorial(k)))
    assert nth_product(b, s, a) == rhs


@settings(max_examples=40, deadline=None)
@given(st.integers(1, RANK), st.integers(1, 3), st.integers(1, RANK), st.integers(1, 3), monos())
def test_mode_commutator(i, p, j, q, m):
    # [I_i,(p), I_j,(q)] = p delta_ij delta_{p+q,0} hbar; zero for positive modes
    v = FockVector(RANK, {(m, 0): 1})
    for pp, qq in ((p, -q), (-p, q), (p, q)):
        lhs = mode_apply(i, pp, mode_apply(j, qq, v)) - mode_apply(j, qq, mode_apply(i, pp, v))
        expect = v.scale(pp, 1) if (i == j and pp + qq == 0) else FockVector(RANK)
        assert lhs == expect
