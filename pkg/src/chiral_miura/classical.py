"""Quasiclassical limit: lambda-brackets on differential polynomials.

The classical bracket of generators is read off the structure table:
``{U_i λ U_j} = sum_s λ^s / s! * c_s`` where ``c_s`` is the hbar-linear part of
entry ``(i, s, j)``.  Brackets of arbitrary differential polynomials follow
from the master formula

    {f λ g} = sum ∂g/∂u_j^(n) (λ+∂)^n {u_i_(λ+∂) u_j}_→ (-λ-∂)^m ∂f/∂u_i^(m).

Spectral parameters are ordinary polynomial variables (``lam``, ``mu``, ...)
in the coefficient ring of :class:`DiffPoly`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .coeffring import MultiPoly, var
from .diffpoly import DiffGen, DiffPoly, d_total, partial
from .miura import UVector, _miura_operator, diffpoly_to_fock, rewrite_system
from .psido import PsiDOSymbol, classical_coproduct_coeff, psido_inv


class QuantizationFailure(AssertionError):
    """An s >= 0 table entry with a nonzero hbar^0 part."""


# ---------------------------------------------------------------------------
# conversions between PBW vectors and differential polynomials


def uvector_to_diffpoly(u: UVector, family: str = "U") -> DiffPoly:
    return DiffPoly({tuple(DiffGen(family, j, d) for j, d in m): c for m, c in u.terms.items()})


def diffpoly_to_uvector(p: DiffPoly) -> UVector:
    return UVector({tuple((g.index, g.d) for g in m): c for m, c in p.terms.items()})


def _mul_coeff(p: DiffPoly, c) -> DiffPoly:
    return p * c if c != 1 else p


# ---------------------------------------------------------------------------
# generator brackets


@dataclass
class PVABracketTable:
    """``brackets[(i, j)] = {s: DiffPoly}``; the family of the generators is ``family``."""

    brackets: dict = field(default_factory=dict)
    family: str = "U"

    def gen_bracket(self, i: int, j: int, lam: MultiPoly) -> DiffPoly:
        """``{u_i λ u_j}`` with ``λ`` given as a polynomial."""
        if (i, j) not in self.brackets:
            raise KeyError(f"bracket of generators {i}, {j} not covered")
        out = DiffPoly()
        for s, c in self.brackets[(i, j)].items():
            out = out + c * (lam ** s / factorial(s))
        return out

    def covers(self, i: int, j: int) -> bool:
        return (i, j) in self.brackets

    def to_json(self) -> dict:
        """Structure-table layout with an hbar-order tag (coefficients are the hbar^1 parts)."""
        from .lalg import SCHEMA, content_hash, mono_to_json

        entries = []
        for (i, j), by_s in sorted(self.brackets.items()):
            for s, c in sorted(by_s.items()):
                u = diffpoly_to_uvector(c)
                terms = [{"monomial": mono_to_json(m), "coeff": MultiPoly.coerce(v).to_json()}
                         for m, v in sorted(u.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]
                entries.append({"i": i, "s": s, "j": j, "terms": terms})
        return {"schema": SCHEMA, "hbar_order": 1, "meta": {"hash": content_hash(entries)}, "entries": entries}

    def map_coeffs(self, fn) -> "PVABracketTable":
        return PVABracketTable({k: {s: c.map_coeffs(fn) for s, c in v.items()} for k, v in self.brackets.items()},
                               self.family)


def classical_limit(table) -> PVABracketTable:
    """hbar-linear parts of the s >= 0 entries; the hbar^0 parts must vanish."""
    out: dict = {}
    bad = []
    for (i, s, j), u in sorted(table.entries.items()):
        if s < 0:
            continue
        lin = {}
        for m, c in u.terms.items():
            parts = c.coefficients_in("hbar")
            if parts.get(0):
                bad.append(((i, s, j), str(u)))
                break
            if parts.get(1):
                lin[m] = parts[1]
        out.setdefault((i, j), {})
        if lin:
            out[(i, j)][s] = uvector_to_diffpoly(UVector(lin))
    if bad:
        raise QuantizationFailure("entries not vanishing mod hbar: " + "; ".join(f"{k}: {v}" for k, v in bad))
    return PVABracketTable(out)


def heisenberg_table(rank: int) -> PVABracketTable:
    """``{I_a λ I_b} = δ_ab λ``."""
    return PVABracketTable({(a, b): ({1: DiffPoly.const(1)} if a == b else {})
                            for a in range(1, rank + 1) for b in range(1, rank + 1)}, "I")


# ---------------------------------------------------------------------------
# master formula


def _apply_shift(p: DiffPoly, lam: MultiPoly, k: int, sign: int = 1) -> DiffPoly:
    """``(sign*(λ + ∂))^k p`` with ∂ the total derivative."""
    out = DiffPoly()
    deriv = p
    for t in range(k + 1):
        if not deriv:
            break
        coeff = lam ** (k - t) * comb(k, t) * (sign ** k)
        out = out + deriv * coeff
        deriv = d_total(deriv)
    return out


def _jet_variables(p: DiffPoly, family: str) -> list:
    return sorted(g for g in p.generators() if g.family == family)


def pva_bracket(f, g, table: PVABracketTable, lam: str | MultiPoly = "lam") -> DiffPoly:
    """``{f λ g}`` by the master formula; the result has ``λ`` in its coefficients."""
    f, g = DiffPoly.coerce(f), DiffPoly.coerce(g)
    lam = var(lam) if isinstance(lam, str) else lam
    fam = table.family
    out = DiffPoly()
    g_vars = _jet_variables(g, fam)
    for ui in _jet_variables(f, fam):
        F = partial(f, ui)
        Y = _apply_shift(F, lam, ui.d, sign=-1)
        for uj in g_vars:
            if not table.covers(ui.index, uj.index):
                raise KeyError(f"bracket {{{ui.family}_{ui.index} λ {uj.family}_{uj.index}}} not covered by the table")
            G = partial(g, uj)
            Z = DiffPoly()
            for s, c in table.brackets[(ui.index, uj.index)].items():
                Z = Z + c * _apply_shift(Y, lam, s) * Fraction(1, factorial(s))
            out = out + G * _apply_shift(Z, lam, uj.d)
    return out


def substitute_spectral(p: DiffPoly, name: str, value: MultiPoly) -> DiffPoly:
    return p.map_coeffs(lambda c: MultiPoly.coerce(c).subs({name: value}))


def spectral_to_operator(p: DiffPoly, name: str, lam: MultiPoly, sign: int = -1) -> DiffPoly:
    """Replace ``name^k`` by ``(sign*(lam + ∂))^k`` acting on the coefficient."""
    out = DiffPoly()
    for mono, c in p.terms.items():
        c = MultiPoly.coerce(c)
        for k, rest in c.coefficients_in(name).items():
            out = out + _apply_shift(DiffPoly({mono: rest}), lam, k, sign)
    return out


def skew_symmetry_defect(a, b, table: PVABracketTable) -> DiffPoly:
    """``{b λ a} + {a (-λ-∂) b}``; zero for a skew-symmetric bracket."""
    lhs = pva_bracket(b, a, table, "lam")
    ab = pva_bracket(a, b, table, "lam")
    rhs = spectral_to_operator(substitute_spectral(ab, "lam", var("tmp")), "tmp", var("lam"), -1)
    return lhs + rhs


def jacobi_defect(a, b, c, table: PVABracketTable) -> DiffPoly:
    """``{a λ {b μ c}} - {b μ {a λ c}} - {{a λ b} λ+μ c}``."""
    lam, mu = var("lam"), var("mu")
    t1 = pva_bracket(a, pva_bracket(b, c, table, "mu"), table, "lam")
    t2 = pva_bracket(b, pva_bracket(a, c, table, "lam"), table, "mu")
    ab = pva_bracket(a, b, table, "lam")
    t3 = DiffPoly()
    for mono, coeff in ab.terms.items():
        # coefficients of {a λ b} are scalars for the outer bracket
        inner = pva_bracket(DiffPoly({mono: 1}), c, table, "tmp")
        inner = substitute_spectral(inner, "tmp", lam + mu)
        t3 = t3 + inner * coeff
    return t1 - t2 - t3


def specialize_nu(table: PVABracketTable, nu: int) -> PVABracketTable:
    return table.map_coeffs(lambda c: MultiPoly.coerce(c).subs({"nu": nu}))


@dataclass
class PVAAxiomReport:
    nus: list
    skew_checked: int
    jacobi_checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def pva_axioms(table: PVABracketTable, max_pair: int = 5, max_triple: int = 6,
               nus: list | None = None, seed: int = 0) -> PVAAxiomReport:
    """Skew-symmetry for i+j <= max_pair and Jacobi for i+j+k <= max_triple at integer nu."""
    if nus is None:
        rng = random.Random(seed)
        nus = sorted(rng.sample(range(3, 40), 3))
    failures, nskew, njac = [], 0, 0
    for nu in nus:
        tab = specialize_nu(table, nu)
        gen = lambda k: DiffPoly.gen("U", k)
        for i in range(1, max_pair):
            for j in range(1, max_pair - i + 1):
                nskew += 1
                d = skew_symmetry_defect(gen(i), gen(j), tab)
                if d:
                    failures.append(f"skew-symmetry ({i},{j}) at nu={nu}: {d}")
        for i in range(1, max_triple):
            for j in range(1, max_triple - i):
                for k in range(1, max_triple - i - j + 1):
                    njac += 1
                    d = jacobi_defect(gen(i), gen(j), gen(k), tab)
                    if d:
                        failures.append(f"Jacobi ({i},{j},{k}) at nu={nu}: {d}")
    return PVAAxiomReport(nus, nskew, njac, failures)


# ---------------------------------------------------------------------------
# classical Miura realization


def classical_miura_field(n: int, j: int) -> DiffPoly:
    """Coefficient of ∂^(n-j) in (∂+I_1)...(∂+I_n), a differential polynomial in the I's."""
    return _miura_operator(n)[n - j]


def classical_rewrite(p: DiffPoly, n: int, w: int) -> UVector:
    """Express a weight-w differential polynomial in the I's through classical U-monomials."""
    if not p:
        return UVector()
    if w == 0:
        return UVector({(): p.constant_term()})
    system = rewrite_system(n, w, truncate=w > n)
    return system.solve_classical(diffpoly_to_fock(p, n))


@dataclass
class MiuraCheck:
    n: int
    i: int
    j: int
    free_side: dict          # s -> UVector (from the I-bracket)
    table_side: dict         # s -> UVector (from the classical limit at nu = n)
    ok: bool


def classical_miura_check(n: int, i: int, j: int, limit: PVABracketTable) -> MiuraCheck:
    """``{U_i λ U_j}`` via the free bosons vs the classical limit of the table at nu = n."""
    if not limit.covers(i, j):
        raise KeyError(f"classical limit does not cover the pair ({i}, {j})")
    heis = heisenberg_table(n)
    br = pva_bracket(classical_miura_field(n, i), classical_miura_field(n, j), heis)
    free_side = {}
    by_power: dict = {}
    for mono, c in br.terms.items():
        for k, rest in MultiPoly.coerce(c).coefficients_in("lam").items():
            by_power.setdefault(k, {})
            by_power[k][mono] = rest.constant_term()
    for k, terms in by_power.items():
        # {a λ b} = sum λ^s/s! c_s, so c_s = s! * [λ^s]
        poly = DiffPoly(terms) * factorial(k)
        free_side[k] = classical_rewrite(poly, n, i + j - k - 1)
    table_side = {}
    for s, c in limit.brackets.get((i, j), {}).items():
        spec = diffpoly_to_uvector(c.map_coeffs(lambda x: MultiPoly.coerce(x).subs({"nu": n})))
        # generators beyond the rank vanish in W_n
        spec = UVector({m: v for m, v in spec.terms.items() if all(g[0] <= n for g in m)})
        spec = spec.map_coeffs(lambda x: MultiPoly.coerce(x).constant_term())
        if spec:
            table_side[s] = spec
    free_side = {s: u for s, u in free_side.items() if u}
    ok = set(free_side) == set(table_side) and all(free_side[s] == table_side[s] for s in free_side)
    return MiuraCheck(n, i, j, free_side, table_side, ok)


# ---------------------------------------------------------------------------
# comultiplication mod hbar and the antipode


def delta_classical_check(j: int) -> tuple:
    """Compare Δ(U_j) (read as a W ⊗ U differential polynomial) with the ΨDO coefficient P_j."""
    from .bialg import delta_gen, tensor_to_diffpoly

    ours = tensor_to_diffpoly(delta_gen(j), left="W", right="U", rename={"nu1": "lam"})
    ref = classical_coproduct_coeff(j, "W", "U", "lam")
    return ours == ref, ours, ref


def antipode_images(max_index: int) -> dict:
    """``S(U_j) = V_j`` with the order variable read as nu."""
    inv = psido_inv(PsiDOSymbol.generic("U", var("nu"), max_index), max_index)
    return {j: inv.coeff(j) for j in range(1, max_index + 1)}


def apply_antipode(p: DiffPoly, images: Mapping[int, DiffPoly]) -> DiffPoly:
    """Algebra map with U_j -> V_j (derivatives follow) and nu -> -nu on coefficients."""
    flipped = p.map_coeffs(lambda c: MultiPoly.coerce(c).subs({"nu": -var("nu")}))
    return flipped.substitute({("U", j): v for j, v in images.items()})


@dataclass
class AntipodeReport:
    pairs: list
    convention: str | None
    results: dict            # convention -> list of failing pairs

    @property
    def ok(self):
        return self.convention is not None


ANTIPODE_CONVENTIONS = ("minus", "plus")


def antipode_classical_check(limit: PVABracketTable, cutoff: int = 3) -> AntipodeReport:
    """Test ``{S a λ S b} = ∓ S{a λ b}`` on generators with i + j <= cutoff.

    Both signs are tried; the report names the one that holds for every pair.
    """
    images = antipode_images(cutoff)
    pairs = [(i, j) for i in range(1, cutoff) for j in range(1, cutoff - i + 1)]
    results = {c: [] for c in ANTIPODE_CONVENTIONS}
    for i, j in pairs:
        lhs = pva_bracket(images[i], images[j], limit)
        rhs = apply_antipode(pva_bracket(DiffPoly.gen("U", i), DiffPoly.gen("U", j), limit), images)
        if lhs != -rhs:
            results["minus"].append((i, j))
        if lhs != rhs:
            results["plus"].append((i, j))
    convention = next((c for c in ANTIPODE_CONVENTIONS if not results[c]), None)
    return AntipodeReport(pairs, convention, results)
