"""Quantum Miura fields and exact rewriting of their products in the PBW basis.

``(∂ + I_1)(∂ + I_2)...(∂ + I_n) = sum_j U_j ∂^(n-j)`` defines weight-j fields
``U_j`` in the rank-n Heisenberg algebra.  A PBW monomial in the ``U_j^(d)``
is realized as the right-nested normally ordered product of its factors,
taken in the canonical order (j ascending, then d descending); so the
monomial ``U_1^(1) U_1`` means ``:U_1' U_1:`` and ``U_1 U_2`` means ``:U_1 U_2:``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Mapping

from .coeffring import MultiPoly, RatFunc, as_fraction, format_rational
from .diffpoly import DiffPoly, d_total
from .fock import FockVector, mono_weight, nth_product, translate
from .linalg import bareiss_inverse, independent_rows


class ClosureFailure(ArithmeticError):
    """A Fock vector that is not in the span of the PBW realizations."""


# ---------------------------------------------------------------------------
# Miura fields


def miura_coefficient(indices: Iterable[int], derivs: Iterable[int]) -> int:
    """``prod_t binom(i_t - t - m_1 - ... - m_{t-1}, m_t)`` (t counted from 1)."""
    out, used = 1, 0
    for t, (i, m) in enumerate(zip(indices, derivs), start=1):
        out *= comb(i - t - used, m) if i - t - used >= 0 else 0
        used += m
        if not out:
            return 0
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def miura_field(n: int, j: int) -> FockVector:
    """``U_j`` of rank ``n`` from the closed binomial formula."""
    if not 1 <= j <= n:
        raise ValueError(f"U_{j} does not exist at rank {n}")
    terms: dict = {}
    for a in range(1, j + 1):
        for derivs in _compositions(j - a, a):
            for idx in combinations(range(1, n + 1), a):
                c = miura_coefficient(idx, derivs)
                if not c:
                    continue
                mono = tuple(sorted((i, m + 1) for i, m in zip(idx, derivs)))
                for m in derivs:
                    c *= factorial(m)  # state of I^(m) is m! x_{m+1}
                terms[(mono, 0)] = terms.get((mono, 0), 0) + c
    return FockVector(n, terms)


def diffpoly_to_fock(p: DiffPoly, rank: int) -> FockVector:
    """Normally ordered product of free bosons ``I_i^(d)`` written as a Fock state."""
    terms: dict = {}
    for mono, c in p.terms.items():
        c = as_fraction(c) if not isinstance(c, int) else c
        fock = []
        for g in mono:
            if g.family != "I":
                raise ValueError(f"not a boson: {g}")
            fock.append((g.index, g.d + 1))
            c *= factorial(g.d)
        key = (tuple(sorted(fock)), 0)
        terms[key] = terms.get(key, 0) + c
    return FockVector(rank, terms)


@lru_cache(maxsize=None)
def _miura_operator(n: int) -> dict:
    """Coefficients of ``(∂+I_1)...(∂+I_n)``: ``{power of ∂: DiffPoly}``."""
    ops = {0: DiffPoly.const(1)}
    for k in range(n, 0, -1):
        new: dict = {}
        ik = DiffPoly.gen("I", k)
        for r, c in ops.items():
            # (∂ + I_k) c ∂^r = c' ∂^r + c ∂^(r+1) + I_k c ∂^r
            for key, val in ((r, d_total(c) + ik * c), (r + 1, c)):
                new[key] = new[key] + val if key in new else val
        ops = new
    return ops


def miura_field_recursive(n: int, j: int) -> FockVector:
    """``U_j`` read off from the expanded operator product."""
    if not 1 <= j <= n:
        raise ValueError(f"U_{j} does not exist at rank {n}")
    return diffpoly_to_fock(_miura_operator(n)[n - j], n)


# ---------------------------------------------------------------------------
# PBW monomials


def umono(*factors) -> tuple:
    """Canonical PBW monomial from ``(j, d)`` pairs (or bare ints for d = 0)."""
    pairs = [(f, 0) if isinstance(f, int) else tuple(f) for f in factors]
    for j, d in pairs:
        if j < 1 or d < 0:
            raise ValueError(f"bad generator U_{j}^({d})")
    return tuple(sorted(pairs, key=lambda g: (g[0], -g[1])))


def umono_weight(mono: tuple) -> int:
    return sum(j + d for j, d in mono)


def render_umono(mono: tuple) -> str:
    if not mono:
        return "1"
    out = []
    for (j, d), k in sorted(Counter(mono).items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
        g = f"U_{j}" + (f"^({d})" if d else "")
        out.append(g if k == 1 else (f"{g}^{k}" if not d else f"({g})^{k}"))
    return "*".join(out)


def _basis_key(mono: tuple):
    return (len(mono), tuple((-j, -d) for j, d in mono))


@lru_cache(maxsize=None)
def pbw_monomials(w: int, max_index: int | None = None) -> tuple:
    """All PBW monomials of weight ``w`` using ``U_j`` with ``j <= max_index``."""
    gens = [(j, k - j) for k in range(1, w + 1) for j in range(1, k + 1)
            if max_index is None or j <= max_index]
    out = []

    def walk(start, left, acc):
        if left == 0:
            out.append(umono(*acc))
            return
        for idx in range(start, len(gens)):
            g = gens[idx]
            if g[0] + g[1] <= left:
                walk(idx, left - g[0] - g[1], acc + [g])

    walk(0, w, [])
    return tuple(sorted(set(out), key=_basis_key))


def generator_state(n: int, j: int, d: int) -> FockVector:
    v = miura_field(n, j)
    return translate(v, d) if d else v


@lru_cache(maxsize=4096)
def realize_umono(n: int, mono: tuple) -> FockVector:
    """Right-nested normally ordered product ``:g_1 :g_2 ... g_k::`` in Fock space."""
    if not mono:
        return FockVector.vacuum(n)
    (j, d), rest = mono[0], mono[1:]
    head = generator_state(n, j, d)
    if not rest:
        return head
    return nth_product(head, -1, realize_umono(n, rest))


class UVector:
    """Linear combination of PBW monomials; coefficients in any exact ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = umono(*m)
                    v = self.terms.get(m)
                    v = c if v is None else v + c
                    if v:
                        self.terms[m] = v
                    else:
                        self.terms.pop(m)

    @classmethod
    def gen(cls, j: int, d: int = 0, coeff=1) -> "UVector":
        return cls({((j, d),): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UVector):
            return NotImplemented
        return not (self - other).terms

    def __add__(self, other: "UVector") -> "UVector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        res = UVector()
        res.terms = out
        return res

    def __neg__(self):
        res = UVector()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        res = UVector()
        res.terms = {m: v * c for m, v in self.terms.items() if v * c}
        return res

    __rmul__ = __mul__

    def map_coeffs(self, fn) -> "UVector":
        return UVector({m: fn(c) for m, c in self.terms.items()})

    def coeff(self, mono, default=0):
        return self.terms.get(umono(*mono), default)

    def weights(self) -> set:
        return {umono_weight(m) for m in self.terms}

    def max_index(self) -> int:
        return max((j for m in self.terms for j, _ in m), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_basis_key):
            c = self.terms[m]
            text = str(c) if not isinstance(c, (int, Fraction)) else format_rational(c)
            if isinstance(c, RatFunc) or (isinstance(c, MultiPoly) and len(c.terms) > 1):
                text = f"({text})"
            parts.append(f"{text}*{render_umono(m)}" if m else text)
        return " + ".join(parts)

    def __repr__(self):
        return f"UVector({self})"


def realize(u: UVector, n: int) -> FockVector:
    """Fock realization of a UVector whose coefficients are rationals or polynomials in hbar."""
    out = FockVector(n)
    for m, c in u.terms.items():
        out = out + realize_umono(n, m) * c
    return out


# ---------------------------------------------------------------------------
# rewriting


class ExactRewriter:
    """Unique expansion of Fock vectors in a family of realized basis vectors.

    ``columns[c]`` is the Fock realization (terms dict) of ``basis[c]``.  Only
    the hbar^0 block is inverted: a pivot set of Fock monomials is chosen mod p
    and inverted exactly, then higher hbar orders are peeled off one at a time.
    """

    def __init__(self, rank: int, w: int, basis, columns: list, label: str = ""):
        self.n, self.w = rank, w
        self.basis = tuple(basis)
        self.columns = columns
        self.label = label or f"rank {rank}, weight {w}"
        lead_rows = sorted({mono for col in self.columns for (mono, k) in col if k == 0})
        self.rows = lead_rows
        dense = [[0] * len(self.basis) for _ in lead_rows]
        index = {m: r for r, m in enumerate(lead_rows)}
        for c, col in enumerate(self.columns):
            for (mono, k), val in col.items():
                if k == 0:
                    dense[index[mono]][c] = val
        piv = independent_rows(dense, len(self.basis))
        if len(piv) < len(self.basis):
            raise ClosureFailure(
                f"basis realizations at {self.label} have rank {len(piv)} < {len(self.basis)}"
            )
        self.pivot_monos = [lead_rows[r] for r in piv]
        if self.basis:
            self.det, self.adj = bareiss_inverse([dense[r] for r in piv])
        else:
            self.det, self.adj = 1, []

    def solve_terms(self, v: FockVector, cap: int | None = None) -> dict:
        """``{basis element: MultiPoly in hbar}`` with ``sum coeff * column = v``."""
        if v.rank != self.n:
            raise ValueError("rank mismatch")
        resid = dict(v.terms)
        if not resid:
            return {}
        bad = {m for m, _ in resid if mono_weight(m) != self.w}
        if bad:
            raise ClosureFailure(f"vector is not homogeneous of weight {self.w}")
        kmin = min(k for _, k in resid)
        top = max(k for _, k in resid)
        cap = top + self.w + 2 if cap is None else cap
        sol: list[dict] = [dict() for _ in self.basis]
        k = kmin
        while resid:
            if k > cap:
                raise ClosureFailure(f"residual persists beyond hbar^{cap}: {FockVector._raw(self.n, resid)}")
            if any(kk < k for _, kk in resid):
                raise ClosureFailure(self._diagnose(resid, k))
            rhs = [resid.get((m, k), 0) for m in self.pivot_monos]
            if any(rhs):
                for c, row in enumerate(self.adj):
                    val = sum(a * b for a, b in zip(row, rhs) if a and b)
                    if val:
                        val = Fraction(val) / self.det
                        if val.denominator == 1:
                            val = val.numerator
                        sol[c][k] = val
                        for (mono, kk), a in self.columns[c].items():
                            key = (mono, kk + k)
                            nv = resid.get(key, 0) - a * val
                            if nv:
                                resid[key] = nv
                            else:
                                resid.pop(key, None)
            if any(kk == k for _, kk in resid):
                raise ClosureFailure(self._diagnose(resid, k + 1))
            k += 1
        terms = {}
        for m, parts in zip(self.basis, sol):
            if parts:
                if min(parts) < 0:
                    raise ClosureFailure("negative hbar power in a rewrite of a polynomial vector")
                terms[m] = MultiPoly({(kk,): c for kk, c in parts.items()}, ("hbar",))
        return terms

    def solve_classical_terms(self, v: FockVector) -> dict:
        """Rewrite an hbar-free vector with the hbar^0 parts of the columns only.

        This is rewriting in the commutative (quasiclassical) algebra; the
        result has rational coefficients.
        """
        if v.rank != self.n:
            raise ValueError("rank mismatch")
        if any(k != 0 for _, k in v.terms):
            raise ValueError("classical rewriting expects an hbar-free vector")
        if any(mono_weight(m) != self.w for m, _ in v.terms):
            raise ClosureFailure(f"vector is not homogeneous of weight {self.w}")
        rhs = [v.terms.get((m, 0), 0) for m in self.pivot_monos]
        terms, resid = {}, dict(v.terms)
        for c, row in enumerate(self.adj):
            val = sum(a * b for a, b in zip(row, rhs) if a and b)
            if not val:
                continue
            val = Fraction(val) / self.det
            terms[self.basis[c]] = val.numerator if val.denominator == 1 else val
            for (mono, kk), a in self.columns[c].items():
                if kk == 0:
                    _drop_add(resid, (mono, 0), -a * val)
        if resid:
            raise ClosureFailure(self._diagnose(resid, 1))
        return terms

    def _diagnose(self, resid, k) -> str:
        left = {key: c for key, c in resid.items() if key[1] < k}
        return (
            f"closure failure at {self.label}: "
            f"unresolved part {FockVector._raw(self.n, left)}"
        )


class RewriteSystem(ExactRewriter):
    """Columns = Fock realizations of the weight-``w`` PBW monomials at rank ``n``."""

    def __init__(self, n: int, w: int, truncate: bool = False):
        if w > n and not truncate:
            raise ValueError(
                f"weight {w} exceeds rank {n}: PBW monomials may be dependent; "
                "pass truncate=True to use only U_j with j <= n"
            )
        basis = pbw_monomials(w, n if truncate else None)
        super().__init__(n, w, basis, [realize_umono(n, m).terms for m in basis],
                         f"rank {n}, weight {w}")

    def solve(self, v: FockVector, cap: int | None = None) -> UVector:
        """Unique ``x`` in Q[hbar]^basis with ``realize(x) = v``."""
        return UVector(self.solve_terms(v, cap))

    def solve_classical(self, v: FockVector) -> UVector:
        """Rewriting in the commutative (quasiclassical) algebra: rational coefficients."""
        return UVector(self.solve_classical_terms(v))


def _drop_add(d: dict, key, c) -> None:
    v = d.get(key, 0) + c
    if v:
        d[key] = v
    else:
        d.pop(key, None)


@lru_cache(maxsize=256)
def rewrite_system(n: int, w: int, truncate: bool = False) -> RewriteSystem:
    return RewriteSystem(n, w, truncate)


def wn_basis(n: int, w: int, truncate: bool = False) -> list:
    """PBW monomials of weight ``w`` (full column rank is checked on construction)."""
    return list(rewrite_system(n, w, truncate).basis)


def rewrite_in_U_basis(v: FockVector, n: int, w: int, truncate: bool = False) -> UVector:
    if w < 0:
        return UVector()
    if w == 0:
        const = {k: c for (m, k), c in v.terms.items() if not m}
        if len(const) != len(v.terms):
            raise ClosureFailure("weight-0 rewrite of a vector with nonvacuum terms")
        if not const:
            return UVector()
        if min(const) < 0:
            raise ClosureFailure("negative hbar power in a weight-0 rewrite")
        return UVector({(): MultiPoly({(k,): c for k, c in const.items()}, ("hbar",))})
    return rewrite_system(n, w, truncate).solve(v)


def ope_entry(n: int, i: int, s: int, j: int, truncate: bool = False) -> UVector:
    """``(U_i)_(s)(U_j)`` at rank ``n`` written in the PBW basis."""
    w = i + j - s - 1
    if w < 0:
        return UVector()
    v = nth_product(miura_field(n, i), s, miura_field(n, j))
    return rewrite_in_U_basis(v, n, w, truncate)
