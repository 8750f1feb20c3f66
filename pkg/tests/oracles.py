"""Independent reference implementations used only by the tests.

``mode_product`` computes ``a_(s) b`` for Fock monomials straight from the
mode expansion of a normally ordered product of free fields: the field of
``x_{i,m}`` is ``∂^(m-1) I_i / (m-1)!`` whose ``(n)``-mode is
``(-1)^(m-1) binom(n, m-1) I_(n-m+1)``.  Annihilation modes act first.
No contraction bookkeeping is shared with the package.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

import sympy


def gen_binomial(n: int, k: int) -> Fraction:
    out = Fraction(1)
    for t in range(k):
        out *= n - t
    return out / factorial(k)


def _apply_mode(state: dict, i: int, p: int) -> dict:
    """``I_{i,(p)}`` on ``{(sorted mono, hbar power): coeff}``."""
    out: dict = {}
    for (mono, k), c in state.items():
        if p < 0:
            key = (tuple(sorted(mono + ((i, -p),))), k)
            out[key] = out.get(key, 0) + c
        elif p > 0:
            cnt = mono.count((i, p))
            if cnt:
                lst = list(mono)
                lst.remove((i, p))
                key = (tuple(lst), k + 1)
                out[key] = out.get(key, 0) + c * cnt * p
    return {k: v for k, v in out.items() if v}


def mode_product(a: tuple, s: int, b: tuple) -> dict:
    wa = sum(m for _, m in a)
    wb = sum(m for _, m in b)
    W = wa + wb - s - 1
    if W < 0:
        return {}
    k = len(a)
    if k == 0:
        # the vacuum field is the identity: 1_(s) b = δ_{s,-1} b
        return {(b, 0): 1} if s == -1 else {}
    target = s - k + 1  # sum of the field modes n_t
    result: dict = {}

    def walk(t, chosen, total):
        if t == k:
            if total != target:
                return
            coeff = Fraction(1)
            for (i, m), p in zip(a, chosen):
                coeff *= (-1) ** (m - 1) * gen_binomial(p + m - 1, m - 1)
            if not coeff:
                return
            state = {(b, 0): coeff}
            order = sorted(range(k), key=lambda u: -chosen[u])  # annihilators first
            for u in order:
                state = _apply_mode(state, a[u][0], chosen[u])
                if not state:
                    return
            for key, v in state.items():
                result[key] = result.get(key, 0) + v
            return
        i, m = a[t]
        for p in range(-W, wb + 1):
            if p:
                walk(t + 1, chosen + [p], total + p + m - 1)

    walk(0, [], 0)
    return {key: v for key, v in result.items() if v}


def sympy_poly_eval(p, values: dict):
    """Evaluate a package polynomial via sympy as a cross-check of arithmetic."""
    syms = {v: sympy.Symbol(v) for v in p.vars}
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[syms[v] ** e for v, e in zip(p.vars, ex)])
               for ex, c in p.terms.items())
    return sympy.nsimplify(sympy.sympify(expr).subs({syms[k]: v for k, v in values.items() if k in syms}))
