"""Monic pseudo-differential symbols of symbolic order.

A symbol of order ``a`` is ``∂^a + A_1 ∂^(a-1) + A_2 ∂^(a-2) + ...`` with
differential-polynomial coefficients ``A_j``.  Products are computed by
pushing ``∂^s`` through coefficients with

    ∂^s f = sum_k binom(s, k) f^(k) ∂^(s-k),

which makes sense for any symbolic exponent ``s``.  Everything is truncated
at an explicit depth ``J``: only ``A_1..A_J`` are known.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .coeffring import MultiPoly, ZERO, symbolic_binomial, var
from .diffpoly import DiffPoly, d_total


def _poly(x) -> MultiPoly:
    return MultiPoly.coerce(x)


@dataclass(frozen=True)
class PsiDOSymbol:
    order: MultiPoly
    coeffs: Mapping[int, DiffPoly] = field(default_factory=dict)
    truncation: int = 0

    def __post_init__(self):
        object.__setattr__(self, "order", _poly(self.order))
        clean = {}
        for j, c in dict(self.coeffs).items():
            if j == 0:
                if DiffPoly.coerce(c) != DiffPoly.const(1):
                    raise ValueError("symbols are monic: the leading coefficient must be 1")
                continue
            if j < 0:
                raise ValueError(f"negative coefficient index {j}")
            if j > self.truncation:
                raise ValueError(f"coefficient {j} lies beyond truncation {self.truncation}")
            c = DiffPoly.coerce(c)
            if c:
                clean[j] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def generic(cls, family: str, order, truncation: int) -> "PsiDOSymbol":
        """``∂^order + F_1 ∂^(order-1) + ... + F_J ∂^(order-J)``."""
        return cls(order, {j: DiffPoly.gen(family, j) for j in range(1, truncation + 1)}, truncation)

    @classmethod
    def identity(cls, truncation: int) -> "PsiDOSymbol":
        return cls(ZERO, {}, truncation)

    @classmethod
    def power(cls, order, truncation: int) -> "PsiDOSymbol":
        return cls(order, {}, truncation)

    def coeff(self, j: int) -> DiffPoly:
        if j > self.truncation:
            raise ValueError(f"coefficient {j} is beyond truncation {self.truncation}")
        if j == 0:
            return DiffPoly.const(1)
        return self.coeffs.get(j, DiffPoly())

    def truncate(self, J: int) -> "PsiDOSymbol":
        if J > self.truncation:
            raise ValueError(f"cannot extend truncation {self.truncation} to {J}")
        return PsiDOSymbol(self.order, {j: c for j, c in self.coeffs.items() if j <= J}, J)

    def same_as(self, other: "PsiDOSymbol") -> bool:
        J = min(self.truncation, other.truncation)
        return self.order == other.order and all(self.coeff(j) == other.coeff(j) for j in range(1, J + 1))

    def __str__(self):
        def power(shift):
            o = self.order - shift
            return "∂^(0)" if not o else f"∂^({o})" if len(o.terms) > 1 or shift else f"∂^{o}"

        parts = [power(0)]
        for j in sorted(self.coeffs):
            parts.append(f"({self.coeffs[j]}) {power(j)}")
        parts.append("…")
        return " + ".join(parts)


# A "series" is a list of (coefficient, order) pairs: sum c ∂^order.


def _series_mul(left, right, depth: int, base_order: MultiPoly):
    """Product of two series, keeping terms with order >= base_order - depth."""
    out: dict = {}
    for c1, o1 in left:
        for c2, o2 in right:
            # c1 ∂^o1 c2 ∂^o2 = sum_k binom(o1, k) c1 c2^(k) ∂^(o1+o2-k)
            top = o1 + o2
            room = top - base_order
            if not room.is_constant():
                raise ValueError("orders of the factors are not comparable")
            room = depth + room.constant_term()
            if room < 0:
                continue
            deriv = c2
            for k in range(int(room) + 1):
                if not deriv:
                    break
                term = c1 * deriv * symbolic_binomial(o1, k)
                if term:
                    key = top - k
                    out[key] = out[key] + term if key in out else term
                deriv = d_total(deriv)
    return [(c, o) for o, c in out.items() if c]


def _as_series(A: PsiDOSymbol):
    return [(A.coeff(j), A.order - j) for j in range(A.truncation + 1) if A.coeff(j)]


def _collect(series, order: MultiPoly, J: int) -> PsiDOSymbol:
    coeffs: dict = {}
    for c, o in series:
        shift = order - o
        if not shift.is_constant() or shift.constant_term().denominator != 1:
            raise ValueError(f"stray order {o} in a symbol of order {order}")
        j = int(shift.constant_term())
        if 0 <= j <= J:
            coeffs[j] = coeffs.get(j, DiffPoly()) + c
    if coeffs.get(0, DiffPoly.const(1)) != DiffPoly.const(1):
        raise ArithmeticError("product lost monicity")
    coeffs.pop(0, None)
    return PsiDOSymbol(order, coeffs, J)


def psido_mul(A: PsiDOSymbol, B: PsiDOSymbol, J: int) -> PsiDOSymbol:
    """Product ``A B`` with coefficients ``P_1..P_J``."""
    if J > A.truncation or J > B.truncation:
        raise ValueError(f"truncation {J} exceeds inputs ({A.truncation}, {B.truncation})")
    order = A.order + B.order
    return _collect(_series_mul(_as_series(A), _as_series(B), J, order), order, J)


def psido_inv(A: PsiDOSymbol, J: int) -> PsiDOSymbol:
    """Inverse via ``∂^(-a) sum_n (-X)^n`` where ``A = (1 + X) ∂^a``."""
    if J > A.truncation:
        raise ValueError(f"truncation {J} exceeds input truncation {A.truncation}")
    minus_x = [(-A.coeff(j), _poly(-j)) for j in range(1, J + 1) if A.coeff(j)]
    total = [(DiffPoly.const(1), ZERO)]
    power = [(DiffPoly.const(1), ZERO)]
    for _ in range(J):
        power = _series_mul(power, minus_x, J, ZERO)
        if not power:
            break
        total = total + power
    total = _series_mul([(DiffPoly.const(1), ZERO)], total, J, ZERO)  # merge equal orders
    order = -A.order
    return _collect(_series_mul([(DiffPoly.const(1), order)], total, J, order), order, J)


def classical_coproduct_coeff(j: int, left: str = "W", right: str = "U",
                              left_order="lam") -> DiffPoly:
    """Closed form of ``P_j`` for generic left (order ``left_order``) times generic right symbol."""
    if j < 1:
        raise ValueError("j must be at least 1")
    lam = var(left_order) if isinstance(left_order, str) else _poly(left_order)
    out = DiffPoly()
    for a in range(j + 1):
        wa = DiffPoly.const(1) if a == 0 else DiffPoly.gen(left, a)
        for b in range(j - a + 1):
            k = j - a - b
            if b == 0:
                if k:
                    continue  # derivatives of the unit vanish
                ub = DiffPoly.const(1)
            else:
                ub = DiffPoly.gen(right, b, k)
            out = out + wa * ub * symbolic_binomial(lam - a, k)
    return out


def counit_apply(p: DiffPoly, order_vars=("lam",)):
    """Set the order variables and every generator to zero; return the constant."""
    c = DiffPoly.coerce(p).constant_term()
    if isinstance(c, MultiPoly):
        c = c.subs({v: 0 for v in order_vars})
        return c.constant_term() if c.is_constant() else c
    return c
