"""Commutative differential polynomials and symmetric functions.

A :class:`DiffPoly` is a sparse map from monomials (sorted tuples of
:class:`DiffGen`) to coefficients.  Coefficients may be any exact ring
element supporting ``+``, ``*`` and truth testing: ints, Fractions,
:class:`MultiPoly` or :class:`RatFunc`.
"""
from __future__ import annotations

from collections import Counter, namedtuple
from functools import lru_cache
from itertools import combinations, permutations
from typing import Mapping

from .coeffring import MultiPoly, RatFunc, as_fraction, format_rational


class DiffGen(namedtuple("DiffGen", "family index d")):
    """Generator ``family_index`` differentiated ``d`` times."""

    __slots__ = ()

    def __new__(cls, family: str, index: int, d: int = 0):
        if index < 1:
            raise ValueError(f"generator index must be positive, got {index}")
        if d < 0:
            raise ValueError("derivative order must be natural")
        return super().__new__(cls, family, index, d)

    def weight(self) -> int:
        # bosons I_i have weight 1, everything else weight = index
        base = 1 if self.family == "I" else self.index
        return base + self.d

    def derived(self, k: int = 1) -> "DiffGen":
        return DiffGen(self.family, self.index, self.d + k)

    def __str__(self):
        s = f"{self.family}_{self.index}"
        return s + (f"^({self.d})" if self.d else "")


def _render_coeff(c) -> tuple:
    """Split a coefficient into (sign, text) for rendering."""
    if isinstance(c, RatFunc) and c.is_polynomial():
        c = c.as_poly()
    if isinstance(c, MultiPoly):
        if c.is_constant():
            c = c.constant_term()
        elif len(c.terms) == 1:
            text = str(c)
            return ("-", text[1:]) if text.startswith("-") else ("+", text)
        else:
            return "+", f"({c})"
    if isinstance(c, RatFunc):
        return "+", f"({c})"
    q = as_fraction(c)
    return ("-" if q < 0 else "+"), format_rational(abs(q))


def _join_signed(parts) -> str:
    out = ""
    for k, (sign, body) in enumerate(parts):
        if k == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


class DiffPoly:
    """Commutative polynomial in generators ``U_j^(d)`` with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean: dict = {}
        if terms:
            for mono, c in terms.items():
                if not c:
                    continue
                key = tuple(sorted(mono))
                v = clean.get(key)
                v = c if v is None else v + c
                if v:
                    clean[key] = v
                else:
                    clean.pop(key, None)
        self.terms = clean

    @classmethod
    def gen(cls, family: str, index: int, d: int = 0, coeff=1) -> "DiffPoly":
        return cls({(DiffGen(family, index, d),): coeff})

    @classmethod
    def const(cls, c) -> "DiffPoly":
        return cls({(): c})

    @classmethod
    def coerce(cls, x) -> "DiffPoly":
        if isinstance(x, DiffPoly):
            return x
        return cls.const(x)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            try:
                other = DiffPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = DiffPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        res = DiffPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = DiffPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-DiffPoly.coerce(other))

    def __rsub__(self, other):
        return DiffPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, DiffPoly):
            if not other:
                return DiffPoly()
            res = DiffPoly()
            res.terms = {m: c * other for m, c in self.terms.items() if c * other}
            return res
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                v = out.get(key)
                prod = c1 * c2
                v = prod if v is None else v + prod
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        res = DiffPoly()
        res.terms = out
        return res

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = DiffPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def map_coeffs(self, fn) -> "DiffPoly":
        return DiffPoly({m: fn(c) for m, c in self.terms.items()})

    def generators(self) -> set:
        return {g for m in self.terms for g in m}

    def constant_term(self):
        return self.terms.get((), 0)

    def weights(self) -> set:
        return {sum(g.weight() for g in m) for m in self.terms}

    def weight(self) -> int:
        """Weight of a homogeneous element (ValueError otherwise)."""
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError(f"not homogeneous: weights {sorted(ws)}")
        return ws.pop()

    def substitute(self, images: Mapping[tuple, "DiffPoly"]) -> "DiffPoly":
        """Replace generators ``(family, index)`` by differential polynomials.

        Derivatives of a replaced generator become total derivatives of the image.
        """
        cache: dict = {}

        def image(g: DiffGen):
            key = (g.family, g.index)
            if key not in images:
                return DiffPoly({(g,): 1})
            if g not in cache:
                cache[g] = d_total(DiffPoly.coerce(images[key]), g.d)
            return cache[g]

        out = DiffPoly()
        for m, c in self.terms.items():
            term = DiffPoly.const(c)
            for g in m:
                term = term * image(g)
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(g.weight() for g in m), render_monomial(m))):
            sign, text = _render_coeff(self.terms[mono])
            body = render_monomial(mono)
            if not mono:
                parts.append((sign, text))
            elif text == "1":
                parts.append((sign, body))
            else:
                parts.append((sign, f"{text}*{body}"))
        return _join_signed(parts)

    def __repr__(self):
        return f"DiffPoly({self})"


def render_monomial(mono: tuple) -> str:
    counts = Counter(mono)
    # higher generators first, matching the usual way of writing U_2^(1)*U_1
    items = sorted(counts.items(), key=lambda kv: (kv[0].family, -kv[0].index, -kv[0].d))
    out = []
    for g, k in items:
        out.append(str(g) if k == 1 else f"{g}^{k}" if not g.d else f"({g})^{k}")
    return "*".join(out)


def d_total(p: DiffPoly, times: int = 1) -> DiffPoly:
    """The canonical derivation ``∂`` applied ``times`` times (Leibniz rule)."""
    p = DiffPoly.coerce(p)
    for _ in range(times):
        out: dict = {}
        for mono, c in p.terms.items():
            for k, g in enumerate(mono):
                if k and mono[k - 1] == g:
                    continue  # handled together with its equal neighbours
                mult = mono.count(g)
                new = tuple(sorted(mono[:k] + (g.derived(),) + mono[k + mult:] + (g,) * (mult - 1)))
                term = c * mult
                v = out.get(new)
                v = term if v is None else v + term
                if v:
                    out[new] = v
                else:
                    out.pop(new, None)
        p = DiffPoly()
        p.terms = out
    return p


def partial(p: DiffPoly, g: DiffGen) -> DiffPoly:
    """Partial derivative with respect to a single jet variable."""
    out: dict = {}
    for mono, c in p.terms.items():
        k = mono.count(g)
        if not k:
            continue
        i = mono.index(g)
        rest = mono[:i] + mono[i + 1:]
        out[rest] = out.get(rest, 0) + c * k
    return DiffPoly(out)


# ---------------------------------------------------------------------------
# symmetric functions


def partitions(total: int, max_part: int | None = None, max_len: int | None = None):
    """Partitions of ``total`` as non-increasing tuples."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def conjugate(part: tuple) -> tuple:
    if not part:
        return ()
    return tuple(sum(1 for p in part if p > k) for k in range(part[0]))


@lru_cache(maxsize=None)
def _zero_one_count(rows: tuple, cols: tuple) -> int:
    """Number of 0-1 matrices with the given row and column sums."""
    if not rows:
        return 1 if all(c == 0 for c in cols) else 0
    first, rest = rows[0], rows[1:]
    live = [k for k, c in enumerate(cols) if c > 0]
    total = 0
    for chosen in combinations(live, first):
        new = list(cols)
        for k in chosen:
            new[k] -= 1
        total += _zero_one_count(rest, tuple(sorted(new, reverse=True)))
    return total


def elementary_in_monomial(mu: tuple, nvars: int) -> dict:
    """``e_mu`` expanded in the monomial basis ``{lambda: coeff}``."""
    size = sum(mu)
    out = {}
    for lam in partitions(size, max_len=nvars):
        c = _zero_one_count(tuple(sorted(mu, reverse=True)), lam)
        if c:
            out[lam] = c
    return out


class SymFun:
    """Symmetric polynomial in ``nvars`` variables, stored in the monomial basis."""

    def __init__(self, mono_coeffs: Mapping[tuple, object], nvars: int):
        self.nvars = nvars
        self.terms = {}
        for lam, c in mono_coeffs.items():
            lam = tuple(sorted((p for p in lam if p), reverse=True))
            if len(lam) > nvars or not c:
                continue  # m_lambda vanishes with too few variables
            self.terms[lam] = self.terms.get(lam, 0) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def monomial(cls, lam: tuple, nvars: int) -> "SymFun":
        return cls({tuple(lam): 1}, nvars)

    @classmethod
    def power_sum(cls, k: int, nvars: int) -> "SymFun":
        return cls({(k,): 1}, nvars)

    @classmethod
    def elementary(cls, r: int, nvars: int) -> "SymFun":
        return cls({(1,) * r: 1}, nvars)

    def expand(self) -> dict:
        """Explicit polynomial in x_1..x_n: ``{exponent tuple: coeff}``."""
        out = {}
        for lam, c in self.terms.items():
            padded = lam + (0,) * (self.nvars - len(lam))
            for e in set(permutations(padded)):
                out[e] = out.get(e, 0) + c
        return {e: c for e, c in out.items() if c}


def sym_to_elementary(f: SymFun, nvars: int | None = None) -> dict:
    """Write ``f`` as a polynomial in ``e_1..e_n``.

    Returns ``{mu: coeff}`` meaning ``sum coeff * e_mu1 * e_mu2 * ...`` with
    ``mu`` a non-increasing tuple of indices.
    """
    n = f.nvars if nvars is None else nvars
    rest = dict(SymFun(f.terms, n).terms)
    out: dict = {}
    while rest:
        lead = max(rest)  # dominance-compatible: lex largest partition
        c = rest[lead]
        mu = conjugate(lead)  # e_{lead'} = m_lead + lower
        out[mu] = out.get(mu, 0) + c
        for lam, k in elementary_in_monomial(mu, n).items():
            v = rest.get(lam, 0) - c * k
            if v:
                rest[lam] = v
            else:
                rest.pop(lam, None)
    return {mu: c for mu, c in out.items() if c}


def expand_elementary_poly(poly: Mapping[tuple, object], nvars: int) -> dict:
    """Explicit x-polynomial of ``sum coeff * e_mu``; used for round-trip checks."""
    total: dict = {}
    for mu, c in poly.items():
        term = {(0,) * nvars: 1}
        for r in mu:
            term = _poly_mul(term, SymFun.elementary(r, nvars).expand())
        for e, k in term.items():
            total[e] = total.get(e, 0) + c * k
    return {e: c for e, c in total.items() if c}


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


def render_elementary(poly: Mapping[tuple, object]) -> str:
    if not poly:
        return "0"
    parts = []
    for mu in sorted(poly, key=lambda m: (-len(m), m)):
        c = poly[mu]
        body = "*".join(f"e{r}" if k == 1 else f"e{r}^{k}" for r, k in sorted(Counter(mu).items()))
        body = body or "1"
        parts.append(body if c == 1 else f"{format_rational(as_fraction(c))}*{body}")
    return " + ".join(parts).replace("+ -", "- ")
