"""Exact scalar layer: rationals, sparse multivariate polynomials, rational functions.

Everything here is exact; there is no floating point anywhere in the package.
Polynomials carry their own variable alphabet, always the minimal set of
variables that actually occur, ordered by :data:`VAR_ORDER`.  Terms are kept
in graded-lexicographic order so that rendering is byte-stable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Mapping, Sequence

# canonical alphabet order; unknown names sort after these, alphabetically
VAR_ORDER = ("nu", "nu1", "nu2", "nu3", "hbar", "n", "lam", "mu", "rho", "c", "t")

Scalar = Rational  # int or Fraction


def _var_key(name: str):
    try:
        return (0, VAR_ORDER.index(name), name)
    except ValueError:
        return (1, 0, name)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(q) -> str:
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


class MultiPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    :class:`~fractions.Fraction` coefficients.  Instances are immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: Sequence[str] = ()):
        vars = tuple(vars)
        clean = {}
        if terms:
            nv = len(vars)
            for e, c in terms.items():
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match alphabet {vars}")
                if c:
                    clean[tuple(e)] = as_fraction(c)
        self.vars, self.terms = _canonical(vars, clean)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(): c}, ())

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({(1,): 1}, (name,))

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to MultiPoly")

    @classmethod
    def from_univariate(cls, var: str, coeffs: Sequence) -> "MultiPoly":
        """``coeffs[k]`` is the coefficient of ``var**k`` (rational or MultiPoly)."""
        out = ZERO
        x = cls.var(var)
        p = ONE
        for c in coeffs:
            if c:
                out = out + p * c
            p = p * x
        return out

    # -- basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.vars

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        k = self.vars.index(var)
        return max(e[k] for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    # -- arithmetic ---------------------------------------------------------
    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        alphabet = tuple(sorted(set(self.vars) | set(other.vars), key=_var_key))
        return alphabet, _embed(self, alphabet), _embed(other, alphabet)

    def __add__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        vars_, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _make(vars_, out)

    __radd__ = __add__

    def __neg__(self):
        return _make(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return ZERO
            other = as_fraction(other)
            return _make(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        if not other.vars:
            return self * other.constant_term()
        if not self.vars:
            return other * self.constant_term()
        vars_, a, b = self._aligned(other)
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return _make(vars_, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (Fraction(1) / as_fraction(other))
        if isinstance(other, MultiPoly) and other.is_constant():
            return self * (Fraction(1) / other.constant_term())
        if isinstance(other, MultiPoly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        return RatFunc(MultiPoly.coerce(other), self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only natural powers")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- substitution / structure ---------------------------------------------
    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute variables by rationals or polynomials."""
        if not any(v in values for v in self.vars):
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        kept_vars = tuple(self.vars[i] for i in keep)
        repl = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        if all(isinstance(val, Rational) for _, val in repl):
            out: dict = {}
            for e, c in self.terms.items():
                for i, val in repl:
                    c = c * as_fraction(val) ** e[i]
                if not c:
                    continue
                ke = tuple(e[i] for i in keep)
                v = out.get(ke, 0) + c
                if v:
                    out[ke] = v
                else:
                    out.pop(ke, None)
            return MultiPoly(out, kept_vars)
        total = ZERO
        powers: dict = {}
        for e, c in self.terms.items():
            term = MultiPoly({tuple(e[i] for i in keep): c}, kept_vars)
            for i, val in repl:
                if e[i]:
                    key = (i, e[i])
                    if key not in powers:
                        powers[key] = MultiPoly.coerce(val) ** e[i]
                    term = term * powers[key]
            total = total + term
        return total

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        out = self.subs(values)
        if out.vars:
            raise ValueError(f"unassigned variables {out.vars}")
        return out.constant_term()

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return self.subs({a: MultiPoly.var(b) for a, b in mapping.items() if a in self.vars})

    def coefficients_in(self, var: str) -> dict:
        """Split as ``sum_k var**k * c_k``; returns ``{k: c_k}``."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        k = self.vars.index(var)
        rest = self.vars[:k] + self.vars[k + 1:]
        parts: dict = {}
        for e, c in self.terms.items():
            parts.setdefault(e[k], {})[e[:k] + e[k + 1:]] = c
        return {p: MultiPoly(t, rest) for p, t in parts.items()}

    def diff(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return ZERO
        k = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                out[ne] = c * e[k]
        return MultiPoly(out, self.vars)

    def divide_by_var(self, var: str) -> "MultiPoly | None":
        """Exact quotient by ``var`` or ``None`` when not divisible."""
        if not self.terms:
            return ZERO
        if var not in self.vars:
            return None
        k = self.vars.index(var)
        if any(e[k] == 0 for e in self.terms):
            return None
        return MultiPoly({e[:k] + (e[k] - 1,) + e[k + 1:]: c for e, c in self.terms.items()}, self.vars)

    # -- rendering ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(self.vars, e) if p
            )
            if not mono:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(c))}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), format_rational(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls({tuple(e): parse_rational(c) for e, c in data["terms"]}, data["vars"])


def _embed(p: MultiPoly, alphabet: tuple) -> dict:
    idx = [alphabet.index(v) for v in p.vars]
    n = len(alphabet)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for i, x in zip(idx, e):
            ne[i] = x
        out[tuple(ne)] = c
    return out


def _canonical(vars_: tuple, terms: dict):
    if len(set(vars_)) != len(vars_):
        raise ValueError(f"repeated variable in alphabet {vars_}")
    order = sorted(range(len(vars_)), key=lambda i: _var_key(vars_[i]))
    used = [i for i in order if any(e[i] for e in terms)]
    if used == list(range(len(vars_))):
        return vars_, terms
    new_vars = tuple(vars_[i] for i in used)
    return new_vars, {tuple(e[i] for i in used): c for e, c in terms.items()}


def _make(vars_: tuple, terms: dict) -> MultiPoly:
    p = MultiPoly.__new__(MultiPoly)
    p.vars, p.terms = _canonical(vars_, terms)
    p._hash = None
    return p


ZERO = MultiPoly()
ONE = MultiPoly.const(1)


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


# ---------------------------------------------------------------------------
# gcd via sympy's sparse polynomial rings


def _to_sympy(polys: Sequence[MultiPoly]):
    from sympy import QQ
    from sympy.polys.rings import ring

    names = sorted({v for p in polys for v in p.vars}, key=_var_key) or ["_x"]
    R, *_ = ring(",".join(names), QQ)
    out = []
    for p in polys:
        d = {}
        for e, c in p.terms.items():
            full = [0] * len(names)
            for v, x in zip(p.vars, e):
                full[names.index(v)] = x
            d[tuple(full)] = QQ(c.numerator, c.denominator)
        out.append(R.from_dict(d) if d else R.zero)
    return names, out


def _from_sympy(names, f) -> MultiPoly:
    terms = {}
    for e, c in f.to_dict().items():
        terms[tuple(e)] = Fraction(int(c.numerator), int(c.denominator))
    return MultiPoly(terms, names) if terms else ZERO


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if not a:
        return b
    if not b:
        return a
    if a.is_constant() or b.is_constant():
        return ONE
    names, (fa, fb) = _to_sympy([a, b])
    return _from_sympy(names, fa.gcd(fb))


def poly_divexact(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if b.is_constant():
        return a / b.constant_term()
    names, (fa, fb) = _to_sympy([a, b])
    q, r = fa.div(fb)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return _from_sympy(names, q)


class RatFunc:
    """Quotient of polynomials in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized: bool = False):
        num = MultiPoly.coerce(num)
        den = ONE if den is None else MultiPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            if not num:
                den = ONE
            elif not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num, den = poly_divexact(num, g), poly_divexact(den, g)
            lc = den.leading_coefficient()
            num, den = num / lc, den / lc
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(MultiPoly.coerce(x), ONE, _normalized=True)

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num / self.den.constant_term()

    def __eq__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k, _normalized=True)

    def subs(self, values: Mapping[str, object]) -> "RatFunc":
        num = self.num.subs({k: _as_poly_or_scalar(v) for k, v in values.items() if not isinstance(v, RatFunc)})
        den = self.den.subs({k: _as_poly_or_scalar(v) for k, v in values.items() if not isinstance(v, RatFunc)})
        rat = {k: v for k, v in values.items() if isinstance(v, RatFunc)}
        if rat:
            return _subs_rat(self.num, rat, values) / _subs_rat(self.den, rat, values)
        return RatFunc(num, den)

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(values)
        if not d:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {dict(values)}")
        return self.num.evaluate(values) / d

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        return cls(MultiPoly.from_json(data["num"]), MultiPoly.from_json(data["den"]))


def _as_poly_or_scalar(v):
    return v if isinstance(v, (MultiPoly, Rational)) else MultiPoly.coerce(v)


def _subs_rat(p: MultiPoly, rat: Mapping[str, RatFunc], values) -> RatFunc:
    plain = {k: v for k, v in values.items() if not isinstance(v, RatFunc)}
    total = RatFunc.coerce(0)
    for e, c in p.terms.items():
        term = RatFunc.coerce(MultiPoly({e: c}, p.vars).subs(dict(plain, **{k: 1 for k in rat if k in p.vars})))
        for k, val in rat.items():
            if k in p.vars:
                term = term * val ** e[p.vars.index(k)]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# combinatorial helpers


def symbolic_binomial(e, j: int) -> MultiPoly:
    """``e (e-1) ... (e-j+1) / j!`` for a polynomial upper entry ``e``."""
    if j < 0:
        raise ValueError("j must be a natural number")
    e = MultiPoly.coerce(e)
    out = ONE
    for k in range(j):
        out = out * (e - k)
    fact = 1
    for k in range(2, j + 1):
        fact *= k
    return out / fact


def binomial(x, k: int):
    """Generalized binomial coefficient for a rational top entry."""
    if k < 0:
        return 0
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    out = num / den
    return out.numerator if out.denominator == 1 else out


def newton_coefficients(xs: Sequence, ys: Sequence) -> list:
    """Divided differences; values may be rationals or polynomials."""
    xs = [as_fraction(x) for x in xs]
    seen = set()
    for x in xs:
        if x in seen:
            raise ValueError(f"duplicate sample point {format_rational(x)}")
        seen.add(x)
    table = list(ys)
    coeffs = [table[0]]
    for level in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) * (Fraction(1) / (xs[i + level] - xs[i]))
            for i in range(len(table) - 1)
        ]
        coeffs.append(table[0])
    return coeffs


def interpolate_univariate(xs: Sequence, ys: Sequence) -> list[Fraction]:
    """Monomial coefficients (low to high) of the interpolant through scalar samples."""
    if not xs:
        raise ValueError("at least one sample is required")
    dd = newton_coefficients(xs, [as_fraction(y) for y in ys])
    xs = [as_fraction(x) for x in xs]
    coeffs = [Fraction(0)]
    for k in range(len(dd) - 1, -1, -1):
        # coeffs <- coeffs * (t - xs[k]) + dd[k]
        shifted = [Fraction(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= xs[k] * c
        shifted[0] += dd[k]
        coeffs = shifted
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def lagrange_interpolate(var: str, samples: Sequence[tuple]) -> MultiPoly:
    """Unique polynomial in ``var`` of degree < len(samples) through ``samples``.

    Sample values may be rationals or polynomials in other variables.
    """
    if not samples:
        raise ValueError("at least one sample is required")
    xs = [x for x, _ in samples]
    values = [MultiPoly.coerce(y) for _, y in samples]
    for v in values:
        if var in v.vars:
            raise ValueError(f"sample value {v} already depends on {var}")
    dd = newton_coefficients(xs, values)
    t = MultiPoly.var(var)
    out = ZERO
    for k in range(len(dd) - 1, -1, -1):
        out = out * (t - as_fraction(xs[k])) + dd[k]
    return out


@lru_cache(maxsize=None)
def power_sum_poly(k: int) -> MultiPoly:
    """``sum_{i=1}^n i^k`` as a polynomial in ``n``.

    Uses the telescoping identity ``n^(k+1) = sum_j (-1)^j C(k+1, j+1) S_{k-j}``
    solved for the top term.
    """
    n = MultiPoly.var("n")
    if k == 0:
        return n
    acc = n ** (k + 1)
    for j in range(1, k + 1):
        sign = 1 if j % 2 else -1  # move (-1)^j C(k+1,j+1) S_{k-j} to the other side
        acc = acc + power_sum_poly(k - j) * (sign * binomial(k + 1, j + 1))
    return acc / (k + 1)


def indefinite_sum(p: MultiPoly, var: str = "n") -> MultiPoly:
    """``q(n) = sum_{i=1}^{n} p(i)`` for a polynomial ``p`` in ``var``."""
    out = ZERO
    for k, c in p.coefficients_in(var).items():
        out = out + power_sum_poly(k).rename({"n": var}) * c
    return out


def iterated_power_sum(a: Sequence[int], var: str = "n") -> MultiPoly:
    """Closed form of ``sum_{1<=i_1<...<i_k<=n} i_1^a_1 ... i_k^a_k``."""
    if not a:
        raise ValueError("need at least one exponent")
    t = MultiPoly.var("_i")
    inner = indefinite_sum(MultiPoly.var("_i") ** a[0], "_i")  # S_1(i)
    for exp in a[1:]:
        # S_k(m) = sum_{i=1}^m i^a_k S_{k-1}(i-1); extends to i=1 since S_{k-1} vanishes there
        shifted = inner.subs({"_i": t - 1})
        inner = indefinite_sum(shifted * t ** exp, "_i")
    return inner.rename({"_i": var})


def brute_iterated_power_sum(a: Sequence[int], n: int) -> int:
    from itertools import combinations

    total = 0
    for idx in combinations(range(1, n + 1), len(a)):
        term = 1
        for i, e in zip(idx, a):
            term *= i ** e
        total += term
    return total
