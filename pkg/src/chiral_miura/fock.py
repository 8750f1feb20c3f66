"""Rank-n Heisenberg vertex algebra over Q[hbar] on its Fock space.

States are polynomials in creation variables ``x_{i,m} = I_{i,(-m)}`` (m >= 1)
applied to the vacuum.  Modes satisfy ``[I_{i,(p)}, I_{j,(q)}] = p hbar δ_ij δ_{p+q,0}``,
so an annihilation mode ``I_{i,(p)}`` (p > 0) acts as ``p hbar ∂/∂x_{i,p}``.

A monomial is a sorted tuple of ``(i, m)`` pairs.  Internally a vector is a
dict ``(monomial, hbar_power) -> coefficient`` with int/Fraction coefficients;
negative hbar powers are allowed so that rescaled fields stay representable.

The field of a monomial state is the normally ordered product of the free
fields ``∂^(m-1) I_i / (m-1)!``.  Its ``s``-th product with another monomial is
computed in one go by Wick's theorem:

* every factor ``x_{i,m}`` of ``a`` either contracts with one factor
  ``x_{i,p}`` of ``b`` (weight ``(-1)^(m-1) binom(p+m-1, m-1) p hbar``)
  or survives through its creation part;
* the surviving creation parts act as ``exp(zT)`` on the leftover of ``a``,
  and the ``z``-power bookkeeping fixes how many divided powers of ``T`` enter.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .coeffring import MultiPoly, as_fraction, format_rational

VACUUM = ()


def mono_weight(mono: tuple) -> int:
    return sum(m for _, m in mono)


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def render_mono(mono: tuple) -> str:
    return " ".join(f"I{i}({-m})" for i, m in mono) + (" |0>" if mono else "|0>")


def _add_into(out: dict, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class FockVector:
    """Exact finite linear combination of Fock monomials with Laurent-in-hbar coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping | None = None):
        self.rank = rank
        clean: dict = {}
        if terms:
            for (mono, k), c in terms.items():
                for i, m in mono:
                    if not 1 <= i <= rank:
                        raise ValueError(f"generator index {i} outside rank {rank}")
                    if m < 1:
                        raise ValueError(f"creation mode must be negative, got {-m}")
                _add_into(clean, (tuple(sorted(mono)), k), c)
        self.terms = clean

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "FockVector":
        v = cls.__new__(cls)
        v.rank = rank
        v.terms = terms
        return v

    # -- constructors -----------------------------------------------------
    @classmethod
    def vacuum(cls, rank: int) -> "FockVector":
        return cls._raw(rank, {(VACUUM, 0): 1})

    @classmethod
    def monomial(cls, rank: int, mono: Iterable, coeff=1, hbar_power: int = 0) -> "FockVector":
        return cls(rank, {(tuple(sorted(mono)), hbar_power): coeff})

    @classmethod
    def boson(cls, rank: int, i: int, d: int = 0) -> "FockVector":
        """State of the field ``I_i^(d)``, namely ``d! x_{i,d+1}``."""
        return cls.monomial(rank, [(i, d + 1)], factorial(d))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "FockVector"):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add_into(out, key, c)
        return FockVector._raw(self.rank, out)

    def __neg__(self):
        return FockVector._raw(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c, hbar_shift: int = 0) -> "FockVector":
        if not c:
            return FockVector._raw(self.rank, {})
        return FockVector._raw(
            self.rank, {(m, k + hbar_shift): v * c for (m, k), v in self.terms.items()}
        )

    def __mul__(self, c):
        """Multiply by a rational or by a polynomial in ``hbar``."""
        if isinstance(c, MultiPoly):
            extra = set(c.vars) - {"hbar"}
            if extra:
                raise ValueError(f"Fock coefficients live in Q[hbar], got variables {extra}")
            out = FockVector._raw(self.rank, {})
            for k, part in c.coefficients_in("hbar").items():
                out = out + self.scale(part.constant_term(), k)
            return out
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- queries ------------------------------------------------------------
    def monomials(self) -> list:
        return sorted({m for m, _ in self.terms})

    def coeff(self, mono: tuple) -> MultiPoly:
        """Coefficient of a monomial as a polynomial in hbar (non-negative powers)."""
        mono = tuple(sorted(mono))
        parts = {k: c for (m, k), c in self.terms.items() if m == mono}
        if any(k < 0 for k in parts):
            raise ValueError("coefficient has negative hbar powers; use hbar_parts")
        return MultiPoly({(k,): c for k, c in parts.items()}, ("hbar",))

    def hbar_parts(self) -> dict:
        """``{k: FockVector}`` splitting by powers of hbar (the inner vectors have k = 0)."""
        out: dict = {}
        for (m, k), c in self.terms.items():
            out.setdefault(k, {})[(m, 0)] = c
        return {k: FockVector._raw(self.rank, t) for k, t in out.items()}

    def weights(self) -> set:
        return {mono_weight(m) for m, _ in self.terms}

    def weight(self) -> int:
        ws = self.weights()
        if len(ws) > 1:
            raise ValueError(f"not homogeneous: weights {sorted(ws)}")
        return ws.pop() if ws else 0

    def project_weight(self, w: int) -> "FockVector":
        return FockVector._raw(self.rank, {k: c for k, c in self.terms.items() if mono_weight(k[0]) == w})

    def __str__(self):
        if not self.terms:
            return "0"
        by_mono: dict = {}
        for (m, k), c in self.terms.items():
            by_mono.setdefault(m, {})[k] = c
        parts = []
        for m in sorted(by_mono, key=lambda t: (mono_weight(t), t)):
            coeff = by_mono[m]
            if all(k >= 0 for k in coeff):
                text = str(MultiPoly({(k,): c for k, c in coeff.items()}, ("hbar",)))
            else:
                text = " + ".join(f"{format_rational(as_fraction(c))}*hbar^{k}" for k, c in sorted(coeff.items()))
            if text == "1":
                parts.append(render_mono(m))
            else:
                parts.append(f"({text}) {render_mono(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FockVector(rank={self.rank}, {self})"


# ---------------------------------------------------------------------------
# modes and translation


def mode_apply(i: int, p: int, v: FockVector) -> FockVector:
    """Apply ``I_{i,(p)}``."""
    if not 1 <= i <= v.rank:
        raise ValueError(f"generator index {i} outside rank {v.rank}")
    out: dict = {}
    if p == 0:
        return FockVector._raw(v.rank, out)
    if p < 0:
        for (m, k), c in v.terms.items():
            _add_into(out, (mono_mul(m, ((i, -p),)), k), c)
        return FockVector._raw(v.rank, out)
    factor = (i, p)
    for (m, k), c in v.terms.items():
        mult = m.count(factor)
        if mult:
            j = m.index(factor)
            _add_into(out, (m[:j] + m[j + 1:], k + 1), c * mult * p)
    return FockVector._raw(v.rank, out)


@lru_cache(maxsize=200_000)
def divided_translate(mono: tuple, K: int) -> tuple:
    """``T^K / K!`` of a monomial, as a tuple of (monomial, int coefficient)."""
    if K == 0:
        return ((mono, 1),)
    if not mono:
        return ()
    (i, m), rest = mono[0], mono[1:]
    out: dict = {}
    for k in range(K + 1):
        head = ((i, m + k),)
        c_head = comb(m + k - 1, k)
        for tail, c_tail in divided_translate(rest, K - k):
            _add_into(out, mono_mul(head, tail), c_head * c_tail)
    return tuple(out.items())


def translate(v: FockVector, times: int = 1) -> FockVector:
    """``T^times`` (not divided)."""
    out: dict = {}
    scale = factorial(times)
    for (m, k), c in v.terms.items():
        for mono, d in divided_translate(m, times):
            _add_into(out, (mono, k), c * d * scale)
    return FockVector._raw(v.rank, out)


# ---------------------------------------------------------------------------
# n-th products


@lru_cache(maxsize=200_000)
def _contractions(a: tuple, b: tuple) -> tuple:
    """All Wick contraction patterns between monomials ``a`` and ``b``.

    Returns tuples ``(coeff, n_contractions, shift, rest_of_a, rest_of_b)`` where
    ``shift`` is the total ``p + m`` over contracted pairs.
    """
    b_counts: dict = {}
    for f in b:
        b_counts[f] = b_counts.get(f, 0) + 1
    results: dict = {}

    def walk(pos, coeff, ncon, shift, rest_a):
        if pos == len(a):
            rest_b = []
            for f, cnt in sorted(b_counts.items()):
                rest_b.extend([f] * cnt)
            key = (ncon, shift, tuple(rest_a), tuple(rest_b))
            _add_into(results, key, coeff)
            return
        i, m = a[pos]
        walk(pos + 1, coeff, ncon, shift, rest_a + [(i, m)])
        sign = -1 if (m - 1) % 2 else 1
        for (bi, p), cnt in list(b_counts.items()):
            if bi != i or cnt == 0:
                continue
            b_counts[(bi, p)] = cnt - 1
            walk(pos + 1, coeff * cnt * sign * comb(p + m - 1, m - 1) * p, ncon + 1, shift + p + m, rest_a)
            b_counts[(bi, p)] = cnt

    walk(0, 1, 0, 0, [])
    return tuple((c,) + key for key, c in results.items())


@lru_cache(maxsize=100_000)
def mono_product(a: tuple, s: int, b: tuple) -> tuple:
    """``a_(s) b`` for monomials: tuple of ((monomial, hbar power), int coefficient)."""
    out: dict = {}
    for coeff, ncon, shift, rest_a, rest_b in _contractions(a, b):
        K = shift - s - 1
        if K < 0:
            continue
        for mono, d in divided_translate(rest_a, K):
            _add_into(out, (mono_mul(mono, rest_b), ncon), coeff * d)
    return tuple(out.items())


def nth_product(a: FockVector, s: int, b: FockVector) -> FockVector:
    """The ``s``-th product ``a_(s) b``."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    out: dict = {}
    wb = max(b.weights(), default=0)
    for (ma, ka), ca in a.terms.items():
        if mono_weight(ma) + wb - s - 1 < 0:
            continue
        for (mb, kb), cb in b.terms.items():
            c = ca * cb
            for (mono, k), d in mono_product(ma, s, mb):
                _add_into(out, (mono, k + ka + kb), c * d)
    return FockVector._raw(a.rank, out)


def weight_zero_part(v: FockVector) -> MultiPoly:
    """Coefficient of the vacuum, as a polynomial in hbar."""
    return MultiPoly({(k,): c for (m, k), c in v.terms.items() if not m}, ("hbar",))


def clear_caches() -> None:
    for f in (divided_translate, _contractions, mono_product):
        f.cache_clear()
