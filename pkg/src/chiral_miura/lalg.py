"""The two-parameter algebra L(nu, hbar) as an interpolated structure table.

Entries ``(i, s, j) -> (U_i)_(s)(U_j)`` are computed at integer ranks n in the
Fock realization, rewritten in the PBW basis, and every PBW coefficient is
interpolated in n.  The interpolant is accepted only when two further ranks
(held out of the fit) are reproduced exactly; then n is renamed to nu.

The second half of the module holds the derived elements used to compare with
the W(lambda, c) picture: the Virasoro element, the weight-3 primary, the
recursively generated higher fields and the parameter maps.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import __version__
from .coeffring import MultiPoly, RatFunc, ZERO, lagrange_interpolate, var
from .diffpoly import SymFun, sym_to_elementary
from .fock import FockVector, nth_product, translate, weight_zero_part
from .miura import UVector, miura_field, ope_entry, realize, rewrite_in_U_basis, umono

SCHEMA = "chiral-miura-table/1"

NU = var("nu")
HBAR = var("hbar")


class InterpolationFailure(RuntimeError):
    """Held-out validation never succeeded within the sampling budget."""


@dataclass
class TableConfig:
    pairs: int = 5          # entries with i + j <= pairs
    weight: int = 5         # entries with result weight <= weight
    s_min: int = 0          # smallest mode index tabulated
    budget: int = 10        # maximal number of sampled ranks per entry
    min_fit: int = 3        # smallest number of fitting points
    held_out: int = 2

    def entries(self) -> list:
        out = []
        for i in range(1, self.pairs):
            for j in range(1, self.pairs - i + 1):
                for s in range(self.s_min, i + j):
                    w = i + j - s - 1
                    if 0 <= w <= self.weight:
                        out.append((i, s, j))
        return out

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("pairs", "weight", "s_min", "budget", "min_fit", "held_out")}


def first_rank(i: int, s: int, j: int) -> int:
    """Smallest sampled rank: the PBW basis must be independent and both fields must exist."""
    w = i + j - s - 1
    return max(w + 1, i + j)


def fit_samples(samples: list, held_out: int = 2) -> tuple:
    """Fit on all but the last ``held_out`` samples; return (poly UVector or None, degree).

    ``samples`` is a list of ``(n, UVector over Q[hbar])``.  The polynomial
    coefficients are in (n, hbar).
    """
    fit, check = samples[:-held_out], samples[-held_out:]
    monos = set()
    for _, u in samples:
        monos.update(u.terms)
    terms = {}
    degree = 0
    for m in monos:
        poly = lagrange_interpolate("n", [(n, u.terms.get(m, ZERO)) for n, u in fit])
        degree = max(degree, poly.degree("n"))
        for n, u in check:
            if poly.subs({"n": n}) != u.terms.get(m, ZERO):
                return None, None
        terms[m] = poly
    return UVector(terms), degree


@dataclass
class EntryResult:
    poly: UVector             # coefficients in (nu, hbar)
    degree: int
    fit_points: list
    validation_points: list


def structure_poly(i: int, s: int, j: int, config: TableConfig | None = None,
                   sampler: Callable | None = None) -> EntryResult:
    """Interpolate ``(U_i)_(s)(U_j)`` in the rank with held-out validation."""
    config = config or TableConfig()
    sampler = sampler or ope_entry
    n0 = first_rank(i, s, j)
    samples = []
    n = n0
    while len(samples) < config.budget:
        samples.append((n, sampler(n, i, s, j)))
        n += 1
        if len(samples) < config.min_fit + config.held_out:
            continue
        poly, degree = fit_samples(samples, config.held_out)
        if poly is not None:
            return _finish(poly, degree, samples, config.held_out)
    raise InterpolationFailure(
        f"entry ({i},{s},{j}) did not stabilize with {len(samples)} samples: "
        + "; ".join(f"n={n}: {u}" for n, u in samples)
    )


def _finish(poly: UVector, degree: int, samples: list, held_out: int) -> EntryResult:
    poly = poly.map_coeffs(lambda c: c.rename({"n": "nu"}))
    pts = [n for n, _ in samples]
    return EntryResult(poly, degree, pts[:-held_out], pts[-held_out:])


@dataclass
class StructureTable:
    config: TableConfig
    entries: dict = field(default_factory=dict)        # (i, s, j) -> UVector over (nu, hbar)
    degrees: dict = field(default_factory=dict)
    fit_points: dict = field(default_factory=dict)
    validation_points: dict = field(default_factory=dict)
    ledger: dict = field(default_factory=dict)

    def entry(self, i: int, s: int, j: int) -> UVector:
        if i + j - s - 1 < 0:
            return UVector()
        try:
            return self.entries[(i, s, j)]
        except KeyError:
            raise KeyError(f"entry ({i},{s},{j}) is not covered by this table") from None

    def specialize(self, nu: int) -> dict:
        """All entries with nu replaced by an integer; coefficients in Q[hbar]."""
        return {k: u.map_coeffs(lambda c: c.subs({"nu": nu})) for k, u in self.entries.items()}

    # -- serialization ------------------------------------------------------
    def entries_json(self) -> list:
        out = []
        for (i, s, j) in sorted(self.entries):
            u = self.entries[(i, s, j)]
            terms = []
            for m in sorted(u.terms, key=_mono_sort_key):
                terms.append({"monomial": mono_to_json(m), "coeff": u.terms[m].to_json()})
            out.append({"i": i, "s": s, "j": j, "terms": terms})
        return out

    def to_json(self) -> dict:
        entries = self.entries_json()
        meta = {
            "cutoffs": self.config.to_json(),
            "degrees": {_key(k): v for k, v in sorted(self.degrees.items())},
            "validation_points": {_key(k): v for k, v in sorted(self.validation_points.items())},
            "fit_points": {_key(k): v for k, v in sorted(self.fit_points.items())},
            "ledger": self.ledger,
            "version": __version__,
            "hash": content_hash(entries),
        }
        return {"schema": SCHEMA, "meta": meta, "entries": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict, check_version: bool = True) -> "StructureTable":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unknown table schema {data.get('schema')!r}")
        meta = data["meta"]
        if check_version and meta.get("version") != __version__:
            raise ValueError(f"table written by version {meta.get('version')}, this is {__version__}")
        if content_hash(data["entries"]) != meta.get("hash"):
            raise ValueError("table content hash mismatch (file corrupted or edited)")
        cfg = TableConfig(**meta["cutoffs"])
        table = cls(cfg, ledger=meta.get("ledger", {}))
        for e in data["entries"]:
            key = (e["i"], e["s"], e["j"])
            table.entries[key] = UVector({mono_from_json(t["monomial"]): MultiPoly.from_json(t["coeff"])
                                          for t in e["terms"]})
        for name, target in (("degrees", table.degrees), ("validation_points", table.validation_points),
                             ("fit_points", table.fit_points)):
            for k, v in meta.get(name, {}).items():
                target[tuple(int(x) for x in k.split(","))] = v
        return table


def _key(k) -> str:
    return ",".join(str(x) for x in k)


def _mono_sort_key(m):
    return (len(m), m)


def mono_to_json(m: tuple) -> list:
    counts: dict = {}
    for g in m:
        counts[g] = counts.get(g, 0) + 1
    return [[j, d, k] for (j, d), k in sorted(counts.items())]


def mono_from_json(data) -> tuple:
    return umono(*[(j, d) for j, d, k in data for _ in range(k)])


def content_hash(entries: list) -> str:
    blob = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def build_table(config: TableConfig | None = None, progress: Callable | None = None,
                sampler: Callable | None = None) -> StructureTable:
    """Build every entry of the configured range, sharing work rank by rank."""
    config = config or TableConfig()
    sampler = sampler or ope_entry
    pending = {k: [] for k in config.entries()}
    table = StructureTable(config)
    n = min(first_rank(*k) for k in pending) if pending else 0
    while pending:
        for key in sorted(pending):
            if first_rank(*key) > n:
                continue
            samples = pending[key]
            samples.append((n, sampler(n, *key)))
            if len(samples) >= config.min_fit + config.held_out:
                poly, degree = fit_samples(samples, config.held_out)
                if poly is not None:
                    res = _finish(poly, degree, samples, config.held_out)
                    table.entries[key] = res.poly
                    table.degrees[key] = res.degree
                    table.fit_points[key] = res.fit_points
                    table.validation_points[key] = res.validation_points
                    del pending[key]
                    continue
            if len(samples) >= config.budget:
                raise InterpolationFailure(
                    f"entry {key} did not stabilize within {config.budget} samples: "
                    + "; ".join(f"n={m}: {u}" for m, u in samples)
                )
        if progress:
            progress(n, len(pending))
        n += 1
    return table


def direct_table(n: int, keys: Iterable, truncate: bool = False) -> dict:
    """Rank-n table computed straight from the Fock realization."""
    return {k: ope_entry(n, *k, truncate=truncate) for k in keys}


# ---------------------------------------------------------------------------
# structural checks on a table


def weight_zero_divisibility(table: StructureTable) -> dict:
    """Quotients ``<entry>/nu`` for all s >= 0 entries; raises listing failures."""
    quotients, failures = {}, []
    for (i, s, j), u in sorted(table.entries.items()):
        if s < 0:
            continue
        c = u.terms.get((), ZERO)
        q = c.divide_by_var("nu") if c else ZERO
        if q is None:
            failures.append(((i, s, j), str(c)))
        else:
            quotients[(i, s, j)] = q
    if failures:
        raise AssertionError("weight-zero part not divisible by nu: " + ", ".join(f"{k}: {c}" for k, c in failures))
    return quotients


def specialize_and_compare(table: StructureTable, n: int, max_weight: int | None = None) -> dict:
    """Compare ``table|nu=n`` with the direct rank-n computation.

    Entries whose weight exceeds n are compared in the truncated basis
    (generators U_j with j <= n; higher ones are set to zero in the table).
    Returns ``{"checked": [...], "truncated": [...], "mismatches": [...]}``.
    """
    spec = table.specialize(n)
    report = {"checked": [], "truncated": [], "mismatches": []}
    for key in sorted(spec):
        i, s, j = key
        w = i + j - s - 1
        if max(i, j) > n or (max_weight is not None and w > max_weight):
            continue
        truncated = w > n
        ours = spec[key]
        if truncated:
            ours = UVector({m: c for m, c in ours.terms.items() if all(g[0] <= n for g in m)})
        direct = ope_entry(n, i, s, j, truncate=truncated)
        (report["truncated"] if truncated else report["checked"]).append(key)
        if ours != direct:
            report["mismatches"].append((key, str(ours), str(direct)))
    return report


# ---------------------------------------------------------------------------
# derived elements


def rf(num, den=1) -> RatFunc:
    return RatFunc(MultiPoly.coerce(num), MultiPoly.coerce(den))


def specialize_uvector(u: UVector, values: dict) -> UVector:
    """Substitute scalars into RatFunc/MultiPoly coefficients, returning Q[hbar] coefficients."""
    def one(c):
        c = RatFunc.coerce(c).subs(values)
        if not c.is_polynomial():
            raise ValueError(f"coefficient {c} is not polynomial after substitution")
        return c.as_poly()
    return u.map_coeffs(one)


def realize_symbolic(u: UVector, n: int) -> FockVector:
    return realize(specialize_uvector(u, {"nu": n}), n)


def virasoro_candidate(quadratic=None, derivative=None) -> UVector:
    """``U_2 - a :U_1 U_1: - b U_1'`` with default a = (nu-1)/nu, b = (nu-1)/2 as printed."""
    a = rf(NU - 1, NU) if quadratic is None else quadratic
    b = rf(NU - 1, 2) if derivative is None else derivative
    return UVector({umono(2): rf(1), umono(1, 1): -a, umono((1, 1)): -b})


def u1_commutant_defect(u: UVector, n: int, weight: int) -> dict:
    """``{s: (U_1)_(s) u}`` for the s >= 0 that do not vanish, rewritten in the PBW basis."""
    v = realize_symbolic(u, n)
    u1 = miura_field(n, 1)
    out = {}
    for s in range(0, weight + 1):
        prod = nth_product(u1, s, v)
        if prod:
            out[s] = rewrite_in_U_basis(prod, n, weight - s, truncate=weight - s > n)
    return out


def solve_virasoro_coefficients(n: int) -> tuple:
    """Coefficients (a, b) making ``U_2 - a :U_1U_1: - b U_1'`` commute with U_1 at rank n.

    The conditions (U_1)_(1) and (U_1)_(2) are affine in (a, b); each touches one unknown.
    """
    u1 = miura_field(n, 1)
    pieces = {
        "U2": realize(UVector.gen(2), n),
        "U1U1": realize(UVector({umono(1, 1): 1}), n),
        "dU1": realize(UVector.gen(1, 1), n),
    }

    def scalar(vec, target):
        # vec is a multiple of target (a Fock vector); return the ratio
        if not vec:
            return Fraction(0)
        (key, val), = list(target.terms.items())[:1]
        ratio = Fraction(vec.terms.get(key, 0)) / val
        if vec != target.scale(ratio):
            raise ArithmeticError("commutant condition is not a multiple of the expected vector")
        return ratio

    hbar_u1 = u1.scale(1, 1)
    # s = 1: U2 -> c2 hbar U1, U1U1 -> c11 hbar U1, dU1 -> 0
    c2 = scalar(nth_product(u1, 1, pieces["U2"]), hbar_u1)
    c11 = scalar(nth_product(u1, 1, pieces["U1U1"]), hbar_u1)
    a = c2 / c11
    vac_h = FockVector.vacuum(n).scale(1, 1)
    d2 = scalar(nth_product(u1, 2, pieces["U2"]), vac_h)
    dd = scalar(nth_product(u1, 2, pieces["dU1"]), vac_h)
    b = d2 / dd
    return a, b


def virasoro_element() -> UVector:
    """L with the quadratic coefficient fixed by the U_1-commutant condition: (nu-1)/(2 nu)."""
    return virasoro_candidate(quadratic=rf(NU - 1, 2 * NU))


def u3_tilde() -> UVector:
    """The displayed weight-3 element with n replaced by nu."""
    return UVector({
        umono(3): rf(1),
        umono((2, 1)): rf(-(NU - 2), 2),
        umono((1, 2)): rf((NU - 1) * (NU - 2), 12),
        umono((1, 1), 1): rf((NU - 1) * (NU - 2), 2 * NU),
        umono(1, 2): rf(-(NU - 2), NU),
        umono(1, 1, 1): rf((NU - 1) * (NU - 2), 3 * NU * NU),
    })


def monomial_ratio(a: FockVector, b: FockVector):
    """Return ``(c, k)`` with ``a = c * hbar^k * b`` for a rational c, or None."""
    if not a or not b:
        return None
    (mb, kb), vb = next(iter(sorted(b.terms.items())))
    for (ma, ka), va in a.terms.items():
        if ma == mb:
            k = ka - kb
            c = Fraction(va) / vb
            if a == b.scale(c, k):
                return c, k
    return None


@dataclass
class VirasoroReport:
    n: int
    kappa: tuple                 # (c, k): kappa = c * hbar^k
    commutant_defect: dict
    products: dict               # s -> Fock vector of (kL)_(s)(kL)
    central_charge: RatFunc
    expected_charge: RatFunc
    ok: bool
    failures: list


def virasoro_check(n: int, element: UVector | None = None) -> VirasoroReport:
    """Determine kappa from (kL)_(1)(kL) = 2 kL and test the Virasoro axioms at rank n."""
    element = element or virasoro_element()
    L = realize_symbolic(element, n)
    failures = []
    defect = u1_commutant_defect(element, n, 2)
    if defect:
        failures.append(f"U_1 does not commute with L: {dict((s, str(v)) for s, v in defect.items())}")
    raw1 = nth_product(L, 1, L)
    ratio = monomial_ratio(raw1, L)  # L_(1)L = r L  =>  kappa = 2/r
    if ratio is None:
        failures.append("L_(1)L is not a multiple of L")
        return VirasoroReport(n, None, defect, {}, None, None, False, failures)
    c, k = ratio
    kappa = (Fraction(2) / c, -k)
    Lh = L.scale(kappa[0], kappa[1])
    prods = {s: nth_product(Lh, s, Lh) for s in range(0, 4)}
    if prods[1] != Lh.scale(2):
        failures.append("normalized L_(1)L != 2L")
    if prods[2]:
        failures.append(f"L_(2)L = {prods[2]}")
    if prods[0] != translate(Lh):
        failures.append("L_(0)L != T L")
    for s in range(4, 6):
        if nth_product(Lh, s, Lh):
            failures.append(f"L_({s})L != 0")
    # T-action on the commutant generators L and U3~
    u3 = realize_symbolic(u3_tilde(), n) if n >= 3 else None
    if u3 is not None and nth_product(Lh, 0, u3) != translate(u3):
        failures.append("L_(0) U3~ != T U3~")
    central = prods[3]
    if any(m for m, _ in central.terms):
        failures.append("L_(3)L is not a multiple of the vacuum")
    charge_poly = 2 * weight_zero_laurent(central)
    expected = rf((n - 1) * (HBAR - n * (n + 1)), HBAR)
    if charge_poly != expected:
        failures.append(f"central charge {charge_poly} != {expected}")
    return VirasoroReport(n, kappa, defect, prods, charge_poly, expected, not failures, failures)


def weight_zero_laurent(v: FockVector) -> RatFunc:
    """Vacuum coefficient as a rational function of hbar (negative powers allowed)."""
    out = RatFunc.coerce(0)
    for (m, k), c in v.terms.items():
        if not m:
            out = out + (rf(HBAR ** k) * c if k >= 0 else rf(c, HBAR ** (-k)))
    return out


@dataclass
class U3Report:
    n: int
    sigma: tuple | None
    raw_fifth: MultiPoly
    expected: RatFunc
    ok: bool
    failures: list


def u3_check(n: int, kappa: tuple) -> U3Report:
    """Commutant, primarity and the (5)-product of U3~ at rank n."""
    failures = []
    el = u3_tilde()
    defect = u1_commutant_defect(el, n, 3)
    if defect:
        failures.append(f"U_1 does not commute with U3~: {dict((s, str(v)) for s, v in defect.items())}")
    u3 = realize_symbolic(el, n)
    Lh = realize_symbolic(virasoro_element(), n).scale(*kappa)
    if nth_product(Lh, 2, u3):
        failures.append("L_(2) U3~ != 0")
    if nth_product(Lh, 1, u3) != u3.scale(3):
        failures.append("L_(1) U3~ != 3 U3~")
    if nth_product(Lh, 0, u3) != translate(u3):
        failures.append("L_(0) U3~ != T U3~")
    for s in range(3, 5):
        if nth_product(Lh, s, u3):
            failures.append(f"L_({s}) U3~ != 0")
    fifth = nth_product(u3, 5, u3)
    raw = weight_zero_part(fifth)
    expected = rf((n - 1) * (n - 2) * (HBAR - n - n * n) * (4 * HBAR - 2 * n - n * n), 6 * n * HBAR ** 2)
    sigma = None
    # expected = sigma * raw with sigma = c * hbar^k
    ratio = expected / rf(raw) if raw else None
    if ratio is not None and ratio.num.is_constant() and len(ratio.den.terms) == 1:
        (e, coef), = ratio.den.terms.items()
        k = -(e[0] if e else 0)
        sigma = (ratio.num.constant_term() / coef, k)
    if sigma is None:
        failures.append(f"U3~_(5)U3~ = {raw} is not a monomial multiple of {expected}")
    return U3Report(n, sigma, raw, expected, not failures, failures)


# ---------------------------------------------------------------------------
# leading symbols and the e3 bracket


def derivative_free_symmetric(v: FockVector, hbar_power: int) -> SymFun:
    """The hbar^k, derivative-free part of a Fock vector as a symmetric function.

    Only monomials built from weight-one modes are kept; each is read as
    x_1^a_1 ... x_n^a_n.  Symmetry is checked: every monomial of an orbit must
    carry the same coefficient.
    """
    n = v.rank
    coeffs: dict = {}
    for (m, k), c in v.terms.items():
        if k != hbar_power or any(mode != 1 for _, mode in m):
            continue
        expo = [0] * n
        for i, _ in m:
            expo[i - 1] += 1
        lam = tuple(sorted((e for e in expo if e), reverse=True))
        if lam in coeffs and coeffs[lam][1] != c:
            raise ArithmeticError(f"derivative-free part is not symmetric at {lam}")
        coeffs.setdefault(lam, [0, c])
        coeffs[lam][0] += 1
    f = SymFun({lam: c for lam, (cnt, c) in coeffs.items()}, n)
    # orbit sizes must be complete
    for lam, (cnt, c) in coeffs.items():
        if cnt != _orbit_size(lam, n):
            raise ArithmeticError(f"incomplete symmetric orbit for {lam}")
    return f


def _orbit_size(lam: tuple, n: int) -> int:
    from math import factorial
    from collections import Counter
    padded = list(lam) + [0] * (n - len(lam))
    out = factorial(n)
    for k in Counter(padded).values():
        out //= factorial(k)
    return out


def elementary_state(r: int, n: int) -> FockVector:
    """``e_r(I_1, ..., I_n)`` as a derivative-free Fock state."""
    from itertools import combinations
    return FockVector(n, {(tuple((i, 1) for i in idx), 0): 1 for idx in combinations(range(1, n + 1), r)})


def e3_formula(r: int, n: int, e_coeff: Callable | None = None) -> dict:
    """The displayed three-term m-basis expansion of e3_(1)e_r (as {partition: coeff})."""
    from math import comb
    e_coeff = e_coeff or (lambda r, n: comb(r + 1, 2) * (n - r + 1))
    out = {(1,) * (r + 1): e_coeff(r, n),
           (2,) + (1,) * (r - 1): (r - 1) * (n - r),
           (2, 2) + (1,) * (r - 3): n - r + 1}
    return {k: v for k, v in out.items() if v}


@dataclass
class E3Report:
    r: int
    n: int
    computed: dict           # m-basis coefficients
    printed: dict            # displayed formula
    corrected: dict          # formula with (n - r - 1) in the e_{r+1} coefficient
    elementary: dict         # computed value in the e-basis
    leading: Fraction
    matches_printed: bool
    matches_corrected: bool


def e3_bracket_er(r: int, n: int) -> E3Report:
    """Compute ``e3_(1) e_r`` by Wick's theorem and compare with the displayed identity."""
    from math import comb
    if not 3 <= r <= n - 1:
        raise ValueError("need 3 <= r <= n - 1")
    prod = nth_product(elementary_state(3, n), 1, elementary_state(r, n))
    sym = derivative_free_symmetric(prod, 1)
    computed = dict(sym.terms)
    printed = e3_formula(r, n)
    corrected = e3_formula(r, n, lambda r, n: comb(r + 1, 2) * (n - r - 1))
    elem = sym_to_elementary(sym)
    lead = elem.get((r + 1,), 0)
    return E3Report(r, n, computed, printed, corrected, elem, Fraction(lead),
                    computed == printed, computed == corrected)


@dataclass
class LeadingReport:
    r: int
    n: int
    hbar_power: int
    elementary: dict
    leading: Fraction
    expected: Fraction


def u_tilde_leading(r: int, n: int) -> LeadingReport:
    """Leading e_r coefficient of U~_r = U3~_(1) U~_(r-1) at rank n.

    Each (1)-product carries one hbar from its single contraction, so the
    derivative-free leading symbol of U~_r sits at hbar^(r-3).
    """
    from math import factorial
    if r < 3:
        raise ValueError("r >= 3")
    u3 = realize_symbolic(u3_tilde(), n)
    cur = u3
    for _ in range(r - 3):
        cur = nth_product(u3, 1, cur)
    sym = derivative_free_symmetric(cur, r - 3)
    elem = sym_to_elementary(sym)
    expected = Fraction((-1) ** (r + 1) * factorial(r), 6)
    return LeadingReport(r, n, r - 3, elem, Fraction(elem.get((r,), 0)), expected)


# ---------------------------------------------------------------------------
# parameter maps


def central_charge_nu() -> RatFunc:
    return rf((NU - 1) * (HBAR - NU - NU ** 2), HBAR)


def lambda_nu() -> RatFunc:
    return rf(HBAR, (NU - 2) * (4 * HBAR - 2 * NU - NU ** 2))


def lambda_wsln() -> RatFunc:
    n = var("n")
    return rf((n - 1) * (n + 1), (n - 2) * localization_denominator())


def localization_denominator() -> MultiPoly:
    n, c = var("n"), var("c")
    return -2 + 2 * c - n + c * n + 3 * n ** 2


@dataclass
class ParameterMapReport:
    central_charge: RatFunc
    lam: RatFunc
    substituted: RatFunc
    difference: RatFunc
    t: MultiPoly
    ok: bool


def parameter_maps() -> ParameterMapReport:
    """Substitute n = nu, c = c(nu, hbar) into the W(sl_n) lambda-formula."""
    sub = lambda_wsln().subs({"n": NU, "c": central_charge_nu()})
    diff = sub - lambda_nu()
    return ParameterMapReport(central_charge_nu(), lambda_nu(), sub, diff, localization_denominator(), not diff)
