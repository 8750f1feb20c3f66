"""Comultiplication and counit on the two-parameter algebra, with Fock certificates.

``Δ(U_j) = sum_{a+b<=j} binom(ν⊗1 - a, j-a-b) U_a ⊗ U_b^(j-a-b)`` with
``U_0`` the unit.  In a tensor product the rank parameter of factor ``k`` is
the variable ``nu<k>``; ``Δ(ν) = ν⊗1 + 1⊗ν`` becomes ``nu -> nu1 + nu2``.

At integer ranks ``(m, n')`` a tensor of PBW monomials is realized inside the
rank ``m + n'`` Fock space: the left factor on bosons ``1..m`` and the right
one on bosons ``m+1..m+n'``.  Products of states living on disjoint bosons
are plain juxtapositions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .coeffring import MultiPoly, ZERO, lagrange_interpolate, symbolic_binomial, var
from .diffpoly import DiffGen, DiffPoly
from .fock import FockVector, nth_product, translate
from .miura import (ExactRewriter, UVector, miura_field, pbw_monomials,
                    realize_umono, render_umono, umono, umono_weight)

UNIT = ()


def nu_name(k: int) -> str:
    return f"nu{k}"


class TensorUVector:
    """Sparse map from tuples of PBW monomials (one per factor) to coefficients."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict | None = None):
        self.arity = arity
        self.terms = {}
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise ValueError(f"key {key} does not have {arity} factors")
            self._add(tuple(umono(*m) for m in key), c)

    def _add(self, key, c):
        if not c:
            return
        v = self.terms.get(key)
        v = c if v is None else v + c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key)

    def __add__(self, other: "TensorUVector") -> "TensorUVector":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out = TensorUVector(self.arity)
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def __neg__(self):
        out = TensorUVector(self.arity)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        out = TensorUVector(self.arity)
        for k, v in self.terms.items():
            out._add(k, v * c)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorUVector):
            return NotImplemented
        return self.arity == other.arity and not (self - other).terms

    def __bool__(self):
        return bool(self.terms)

    def map_coeffs(self, fn) -> "TensorUVector":
        out = TensorUVector(self.arity)
        for k, c in self.terms.items():
            out._add(k, fn(c))
        return out

    def specialize(self, values: dict) -> "TensorUVector":
        return self.map_coeffs(lambda c: MultiPoly.coerce(c).subs(values))

    def weights(self) -> set:
        return {sum(umono_weight(m) for m in k) for k in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=_tensor_key):
            c = MultiPoly.coerce(self.terms[key])
            body = "⊗".join(render_umono(m) for m in key)
            text = str(c)
            if len(c.terms) > 1:
                text = f"({text})"
            parts.append(body if text == "1" else f"{text}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorUVector({self})"

    def to_json(self) -> list:
        from .lalg import mono_to_json

        return [{"factors": [mono_to_json(m) for m in key], "coeff": MultiPoly.coerce(c).to_json()}
                for key, c in sorted(self.terms.items(), key=lambda kv: _tensor_key(kv[0]))]


def _tensor_key(key):
    return tuple((umono_weight(m), len(m), tuple((-j, -d) for j, d in m)) for m in key)


# ---------------------------------------------------------------------------
# Δ and η


def delta_gen(j: int) -> TensorUVector:
    """``Δ(U_j)`` with coefficients polynomial in ``nu1``."""
    if j < 1:
        raise ValueError("j must be at least 1")
    nu1 = var("nu1")
    out = TensorUVector(2)
    for a in range(j + 1):
        for b in range(j - a + 1):
            k = j - a - b
            if b == 0 and k:
                continue  # derivatives of the unit vanish
            left = umono((a, 0)) if a else UNIT
            right = umono((b, k)) if b else UNIT
            out._add((left, right), symbolic_binomial(nu1 - a, k))
    return out


def _slot_derivative(t: TensorUVector) -> TensorUVector:
    """Total derivative on tensors whose factors are single generators or units."""
    out = TensorUVector(t.arity)
    for key, c in t.terms.items():
        for pos, m in enumerate(key):
            if not m:
                continue
            if len(m) != 1:
                raise ValueError("slot derivative expects single-generator factors")
            (g, d), = m
            out._add(key[:pos] + (((g, d + 1),),) + key[pos + 1:], c)
    return out


def apply_delta(t: TensorUVector, slot: int) -> TensorUVector:
    """Apply Δ to factor ``slot`` (0-based) of a tensor with single-generator factors.

    Rank variables of later factors shift up by one and ``nu<slot+1>``
    becomes ``nu<slot+1> + nu<slot+2>`` in the incoming coefficients.
    """
    k = t.arity
    renames = {nu_name(s + 1): var(nu_name(s + 2)) for s in range(slot + 1, k)}
    renames[nu_name(slot + 1)] = var(nu_name(slot + 1)) + var(nu_name(slot + 2))
    own = {"nu1": var(nu_name(slot + 1))}
    out = TensorUVector(k + 1)
    for key, c in t.terms.items():
        c = MultiPoly.coerce(c).subs(renames)
        m = key[slot]
        if not m:
            piece = TensorUVector(2, {(UNIT, UNIT): 1})
        else:
            (g, d), = m
            piece = delta_gen(g).specialize(own)
            for _ in range(d):
                piece = _slot_derivative(piece)
        for (l, r), pc in piece.terms.items():
            out._add(key[:slot] + (l, r) + key[slot + 1:], c * pc)
    return out


def apply_counit(t: TensorUVector, slot: int) -> TensorUVector:
    """``η`` on factor ``slot``: generators vanish, the unit maps to 1, its rank variable to 0."""
    k = t.arity
    renames = {nu_name(s + 1): var(nu_name(s)) for s in range(slot + 1, k)}
    renames[nu_name(slot + 1)] = 0
    out = TensorUVector(k - 1)
    for key, c in t.terms.items():
        if key[slot]:
            continue
        out._add(key[:slot] + key[slot + 1:], MultiPoly.coerce(c).subs(renames))
    return out


def tensor_to_uvector(t: TensorUVector) -> UVector:
    """A one-factor tensor as a UVector with ``nu1`` renamed to ``nu``."""
    if t.arity != 1:
        raise ValueError("expected a single tensor factor")
    return UVector({k[0]: MultiPoly.coerce(c).subs({"nu1": var("nu")}) for k, c in t.terms.items()})


def tensor_to_diffpoly(t: TensorUVector, left: str = "W", right: str = "U", rename=None) -> DiffPoly:
    """Two-factor tensor as a differential polynomial in two generator families."""
    if t.arity != 2:
        raise ValueError("expected two tensor factors")
    rename = rename or {}
    out = {}
    for (l, r), c in t.terms.items():
        mono = tuple(DiffGen(left, j, d) for j, d in l) + tuple(DiffGen(right, j, d) for j, d in r)
        c = MultiPoly.coerce(c).subs({k: var(v) for k, v in rename.items()})
        out[mono] = out.get(mono, 0) + c
    return DiffPoly(out)


@dataclass
class CoalgebraReport:
    j: int
    coassociative: bool
    left_counit: bool
    right_counit: bool
    detail: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.coassociative and self.left_counit and self.right_counit


def coassoc_and_counit_check(j: int) -> CoalgebraReport:
    d = delta_gen(j)
    left = apply_delta(d, 0)
    right = apply_delta(d, 1)
    target = UVector.gen(j)
    eta_left = tensor_to_uvector(apply_counit(d, 0))
    eta_right = tensor_to_uvector(apply_counit(d, 1))
    detail = {}
    if left != right:
        detail["coassociativity defect"] = str(left - right)
    if eta_left != target:
        detail["(η⊗id)Δ"] = str(eta_left)
    if eta_right != target:
        detail["(id⊗η)Δ"] = str(eta_right)
    return CoalgebraReport(j, left == right, eta_left == target, eta_right == target, detail)


# ---------------------------------------------------------------------------
# Fock realizations of tensors


def juxtapose(a: FockVector, b: FockVector) -> FockVector:
    """``a ⊗ b`` in the rank ``a.rank + b.rank`` Fock space (b's bosons shifted)."""
    shift = a.rank
    out: dict = {}
    for (ma, ka), ca in a.terms.items():
        for (mb, kb), cb in b.terms.items():
            key = (tuple(sorted(ma + tuple((i + shift, p) for i, p in mb))), ka + kb)
            out[key] = out.get(key, 0) + ca * cb
    return FockVector(a.rank + b.rank, out)


@lru_cache(maxsize=8192)
def realize_pair(m: int, n2: int, left: tuple, right: tuple) -> FockVector:
    return juxtapose(realize_umono(m, left), realize_umono(n2, right))


def realize_tensor(t: TensorUVector, m: int, n2: int) -> FockVector:
    """Realization of a tensor whose coefficients are polynomials in hbar only."""
    out = FockVector(m + n2)
    for (l, r), c in t.terms.items():
        out = out + realize_pair(m, n2, l, r) * MultiPoly.coerce(c)
    return out


def at_ranks(t: TensorUVector, m: int, n2: int) -> TensorUVector:
    """Specialize ``nu1 = m, nu2 = n2`` and drop generators that vanish at these ranks."""
    t = t.specialize({"nu1": m, "nu2": n2})
    keep = {}
    for (l, r), c in t.terms.items():
        if all(j <= m for j, _ in l) and all(j <= n2 for j, _ in r):
            keep[(l, r)] = c
    return TensorUVector(2, keep)


@lru_cache(maxsize=256)
def tensor_rewriter(m: int, n2: int, w: int) -> ExactRewriter:
    """Tensor PBW basis of weight ``w`` at ranks ``(m, n2)`` (generators U_j, j <= rank)."""
    basis = []
    for wl in range(w + 1):
        for l in pbw_monomials(wl, m):
            for r in pbw_monomials(w - wl, n2):
                basis.append((l, r))
    columns = [realize_pair(m, n2, l, r).terms for l, r in basis]
    return ExactRewriter(m + n2, w, basis, columns, f"ranks ({m}, {n2}), weight {w}")


def rewrite_in_tensor_basis(v: FockVector, m: int, n2: int, w: int) -> TensorUVector:
    if w < 0 or not v:
        return TensorUVector(2)
    return TensorUVector(2, tensor_rewriter(m, n2, w).solve_terms(v))


@dataclass
class SplittingReport:
    m: int
    n2: int
    j: int
    expansion: TensorUVector
    predicted: TensorUVector

    @property
    def ok(self):
        return self.expansion == self.predicted


def delta_splitting_check(m: int, n2: int, j: int) -> SplittingReport:
    """Expand the rank ``m+n2`` field ``U_j`` in the tensor basis and compare with ``Δ(U_j)``."""
    v = miura_field(m + n2, j)
    expansion = rewrite_in_tensor_basis(v, m, n2, j)
    predicted = at_ranks(delta_gen(j), m, n2)
    return SplittingReport(m, n2, j, expansion, predicted)


# ---------------------------------------------------------------------------
# morphism certificates


@lru_cache(maxsize=1024)
def delta_state(m: int, n2: int, j: int, d: int = 0) -> FockVector:
    """Split realization of ``T^d Δ(U_j)``."""
    v = realize_tensor(at_ranks(delta_gen(j), m, n2), m, n2)
    return translate(v, d) if d else v


def push_through_delta(u: UVector, m: int, n2: int) -> FockVector:
    """``Δ(u)`` at ranks (m, n2): PBW monomials as right-nested products of ``Δ`` of generators."""
    out = FockVector(m + n2)
    for mono, c in u.terms.items():
        if not mono:
            state = FockVector.vacuum(m + n2)
        else:
            state = delta_state(m, n2, *mono[-1])
            for g in reversed(mono[:-1]):
                state = nth_product(delta_state(m, n2, *g), -1, state)
        out = out + state * MultiPoly.coerce(c)
    return out


def interpolate_grid(samples: dict, xs: list, ys: list) -> dict:
    """Tensor-product Lagrange interpolation of per-key values over ``xs × ys``."""
    keys = set()
    for t in samples.values():
        keys.update(t.terms)
    out = {}
    for key in keys:
        rows = []
        for y in ys:
            col = [(x, samples[(x, y)].terms.get(key, ZERO)) for x in xs]
            rows.append((y, lagrange_interpolate("nu1", col)))
        out[key] = lagrange_interpolate("nu2", rows)
    return out


def _grid_matches(poly: dict, samples: dict, points) -> bool:
    for p in points:
        t = samples[p]
        keys = set(poly) | set(t.terms)
        for key in keys:
            val = poly.get(key, ZERO).subs({"nu1": p[0], "nu2": p[1]})
            if val != MultiPoly.coerce(t.terms.get(key, ZERO)):
                return False
    return True


@dataclass
class MorphismReport:
    i: int
    s: int
    j: int
    grid: list
    held_out: list
    pointwise_failures: list
    lhs: TensorUVector | None
    rhs: TensorUVector | None
    validated: bool

    @property
    def ok(self):
        return not self.pointwise_failures and self.validated and self.lhs == self.rhs


def morphism_certificate(i: int, s: int, j: int, table, grid_min: int = 3, grid_max: int = 5,
                         max_grid: int = 9) -> MorphismReport:
    """``Δ(U_i (s) U_j) = Δ(U_i) (s) Δ(U_j)`` on a grid, then as polynomials in (nu1, nu2).

    The left side pushes the table entry through Δ; the right side multiplies
    the split states in Fock space.  The grid grows (keeping its lower corner)
    until the interpolants reproduce the held-out points ``(K+1, K+1)`` and
    ``(K+1, grid_min)``.
    """
    entry = table.entry(i, s, j)
    w = i + j - s - 1
    lhs_s, rhs_s = {}, {}
    failures = []

    def sample(m, n2):
        if (m, n2) in lhs_s:
            return
        spec = entry.map_coeffs(lambda c: MultiPoly.coerce(c).subs({"nu": m + n2}))
        lhs = rewrite_in_tensor_basis(push_through_delta(spec, m, n2), m, n2, w)
        rhs_v = nth_product(delta_state(m, n2, i), s, delta_state(m, n2, j))
        rhs = rewrite_in_tensor_basis(rhs_v, m, n2, w)
        lhs_s[(m, n2)], rhs_s[(m, n2)] = lhs, rhs
        if lhs != rhs:
            failures.append((m, n2))

    K = grid_max
    while True:
        xs = list(range(grid_min, K + 1))
        held = [(K + 1, K + 1), (K + 1, grid_min)]
        for p in list(product(xs, xs)) + held:
            sample(*p)
        grid_pts = {p: None for p in product(xs, xs)}
        lp = interpolate_grid({p: lhs_s[p] for p in grid_pts}, xs, xs)
        rp = interpolate_grid({p: rhs_s[p] for p in grid_pts}, xs, xs)
        validated = _grid_matches(lp, lhs_s, held) and _grid_matches(rp, rhs_s, held)
        if validated or K >= max_grid:
            break
        K += 1
    lhs_t = TensorUVector(2, lp) if validated else None
    rhs_t = TensorUVector(2, rp) if validated else None
    return MorphismReport(i, s, j, [(grid_min, K)], held, failures, lhs_t, rhs_t, validated)
