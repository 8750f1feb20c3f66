"""The twelve acceptance criteria, one test each, all comparisons exact.

Every test records a one-line PASS/FAIL verdict (printed with ``-s`` and
collected in the terminal summary).
"""
from fractions import Fraction
from itertools import product

import pytest

from chiral_miura.bialg import coassoc_and_counit_check, delta_splitting_check, morphism_certificate
from chiral_miura.classical import (antipode_classical_check, classical_limit, classical_miura_check,
                                    delta_classical_check, pva_axioms)
from chiral_miura.coeffring import iterated_power_sum, var
from chiral_miura.diffpoly import DiffPoly
from chiral_miura.fock import nth_product
from chiral_miura.lalg import (e3_bracket_er, lambda_nu, parameter_maps, specialize_and_compare,
                               structure_poly, u3_check, u_tilde_leading, virasoro_check,
                               weight_zero_divisibility)
from chiral_miura.miura import UVector, miura_field, miura_field_recursive, ope_entry, realize
from chiral_miura.psido import PsiDOSymbol, psido_inv, psido_mul
from conftest import record

NU, HBAR, LAM = var("nu"), var("hbar"), var("lam")


def test_criterion_01_psido_group_laws():
    W, U = PsiDOSymbol.generic("W", LAM, 2), PsiDOSymbol.generic("U", var("mu"), 2)
    P = psido_mul(W, U, 2)
    g = DiffPoly.gen
    p1_ok = P.coeff(1) == g("W", 1) + g("U", 1)
    p2_ok = P.coeff(2) == g("W", 2) + g("W", 1) * g("U", 1) + LAM * g("U", 1, 1) + g("U", 2)
    A, B, C = (PsiDOSymbol.generic(f, var(o), 6) for f, o in (("A", "lam"), ("B", "mu"), ("C", "rho")))
    assoc = psido_mul(psido_mul(A, B, 6), C, 6).same_as(psido_mul(A, psido_mul(B, C, 6), 6))
    X = PsiDOSymbol.generic("U", NU, 8)
    inverse = psido_mul(X, psido_inv(X, 8), 8).same_as(PsiDOSymbol.identity(8))
    ok = p1_ok and p2_ok and assoc and inverse
    record(1, ok, f"P1 {p1_ok}, P2 {p2_ok}, associativity(6) {assoc}, A*A^-1(8) {inverse}")
    assert ok


def test_criterion_02_miura_cross_construction():
    bad = [(n, j) for n in range(1, 7) for j in range(1, n + 1) if miura_field(n, j) != miura_field_recursive(n, j)]
    record(2, not bad, f"{sum(range(1, 7))} fields compared, mismatches {bad}")
    assert not bad


def test_criterion_03_closure_at_rank_5():
    n, count, bad = 5, 0, []
    for i, j in product(range(1, 5), repeat=2):
        for s in range(0, i + j):
            w = i + j - s - 1
            if w > 6:
                continue
            count += 1
            entry = ope_entry(n, i, s, j, truncate=w > n)
            # the PBW expansion must reproduce the Fock product exactly
            if realize(entry, n) != nth_product(miura_field(n, i), s, miura_field(n, j)):
                bad.append((i, s, j))
    record(3, not bad, f"{count} products rewritten with zero residual")
    assert not bad


def test_criterion_04_heisenberg_central_term():
    r = structure_poly(1, 1, 1)
    ok = r.poly == UVector({(): NU * HBAR}) and r.fit_points == [2, 3, 4] and r.validation_points == [5, 6]
    record(4, ok, f"(U_1)_(1)(U_1) = {r.poly}, fit {r.fit_points}, held out {r.validation_points}")
    assert ok


def test_criterion_05_weight_zero_divisibility(main_table):
    quotients = weight_zero_divisibility(main_table)
    bad = []
    for k in range(1, 5):
        for a in product(range(4), repeat=k):
            p = iterated_power_sum(a)
            if any(p.subs({"n": m}) for m in range(k)):
                bad.append(a)
    covered = all(i + j <= 5 for i, _, j in quotients)
    ok = not bad and covered and len(quotients) > 0
    record(5, ok, f"{len(quotients)} entries divisible by nu; iterated power sums bad {bad}")
    assert ok


def test_criterion_06_specialization(main_table):
    notes, ok = [], True
    for n in (4, 5):
        rep = specialize_and_compare(main_table, n)
        ok = ok and not rep["mismatches"] and bool(rep["checked"])
        notes.append(f"nu={n}: {len(rep['checked'])} + {len(rep['truncated'])} truncated")
    record(6, ok, "; ".join(notes))
    assert ok


def test_criterion_07_virasoro():
    reports = [virasoro_check(n) for n in range(3, 7)]
    kappas = {r.kappa for r in reports}
    ok = all(r.ok for r in reports) and kappas == {(Fraction(-1), -1)}
    record(7, ok, "n = 3..6, kappa = -1/hbar for every rank; central charge (n-1)(1-n(n+1)/hbar)")
    assert ok, [r.failures for r in reports]


def test_criterion_08_u3_tilde():
    kappa = virasoro_check(4).kappa
    reports = [u3_check(n, kappa) for n in range(4, 7)]
    sigmas = {r.sigma for r in reports}
    ok = all(r.ok for r in reports) and len(sigmas) == 1
    record(8, ok, f"n = 4..6, sigma = {sigmas}")
    assert ok, [r.failures for r in reports]


def test_criterion_09_symmetric_function_identity():
    """Everything in the criterion that holds: the leading coefficients and the
    three-term formula with its first coefficient corrected.  The displayed
    formula itself is checked (and fails) in the strict xfail test below."""
    e3 = [e3_bracket_er(r, r + 2) for r in range(3, 7)]
    leads = [u_tilde_leading(r, r + 2) for r in (4, 5)]
    lead_ok = all(rep.leading == -(rep.r + 1) for rep in e3) and all(l.leading == l.expected for l in leads)
    corrected_ok = all(rep.matches_corrected for rep in e3)
    printed_ok = all(rep.matches_printed for rep in e3)
    record(9, lead_ok and corrected_ok and printed_ok,
           f"leading coefficients {lead_ok}; displayed m-basis formula {printed_ok}; "
           f"with e_(r+1) coefficient C(r+1,2)(n-r-1) {corrected_ok}")
    assert lead_ok and corrected_ok


@pytest.mark.xfail(strict=True, reason="displayed e_(r+1) coefficient disagrees with the computation")
def test_criterion_09_displayed_formula():
    for r in range(3, 7):
        rep = e3_bracket_er(r, r + 2)
        assert rep.computed == rep.printed


def test_criterion_10_bialgebra(main_table):
    split_bad = [(m, n2, j) for m, n2 in product((2, 3, 4), repeat=2) for j in range(1, min(5, m + n2) + 1)
                 if not delta_splitting_check(m, n2, j).ok]
    morph = [morphism_certificate(i, s, j, main_table)
             for i in range(1, 4) for j in range(1, 5 - i) for s in range(0, i + j)]
    morph_bad = [(r.i, r.s, r.j) for r in morph if not r.ok]
    grown = sorted({r.grid[0] for r in morph})
    coalg_bad = [j for j in range(1, 6) if not coassoc_and_counit_check(j).ok]
    ok = not split_bad and not morph_bad and not coalg_bad
    record(10, ok, f"splitting bad {split_bad}; {len(morph)} morphism certificates (grids {grown}) bad {morph_bad}; "
                   f"coalgebra bad {coalg_bad}")
    assert ok


@pytest.mark.slow
def test_criterion_11_classical(main_table, classical_table):
    lim = classical_limit(classical_table)
    classical_limit(main_table)
    axioms = pva_axioms(lim, max_pair=5, max_triple=6, seed=0)
    miura_bad = [(n, i, j) for n in (4, 5) for i in range(1, 4) for j in range(1, 4)
                 if not classical_miura_check(n, i, j, lim).ok]
    delta_bad = [j for j in range(1, 6) if not delta_classical_check(j)[0]]
    antipode = antipode_classical_check(lim, 3)
    ok = axioms.ok and not miura_bad and not delta_bad and antipode.ok
    record(11, ok, f"PVA axioms at nu {axioms.nus}; Miura bad {miura_bad}; Δ mod hbar bad {delta_bad}; "
                   f"antipode sign {antipode.convention}")
    assert ok, axioms.failures[:3]


def test_criterion_12_parameter_maps():
    rep = parameter_maps()
    ok = rep.ok and rep.substituted == lambda_nu()
    record(12, ok, f"lambda = {rep.substituted}")
    assert ok
