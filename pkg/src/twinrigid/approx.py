"""Trace maps, minimal approximations and the membership tests Fac, Sub and Cok.

Every query takes a :class:`~twinrigid.catalog.Catalog`, a basic summand set
(a frozenset of catalog ids) and a catalog id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .catalog import Catalog, SummandSet
from .errors import UsageError
from .linalg import QQ, Field, Matrix, rank
from .representation import (
    Morphism,
    Representation,
    hom_basis,
    morphism_parts,
    stack_morphisms_from,
    stack_morphisms_to,
)


def _span_dim(vectors: list, field: Field) -> int:
    if not vectors:
        return 0
    return rank(Matrix(len(vectors), len(vectors[0]), tuple(vectors), field))


def _trace_surjective(maps: list[Morphism], dims, field: Field) -> bool:
    for v, d in enumerate(dims):
        if d and _span_dim([col for g in maps for col in g.comps[v].columns()], field) < d:
            return False
    return True


def _cotrace_injective(maps: list[Morphism], dims, field: Field) -> bool:
    for v, d in enumerate(dims):
        if d and _span_dim([row for g in maps for row in g.comps[v].data], field) < d:
            return False
    return True


def fac_contains(c: Catalog, mset: Iterable[int], x: int, field: Field = QQ) -> bool:
    """True iff indecomposable ``x`` is a quotient of a module in add(mset)."""
    mset = frozenset(mset)
    key = ("fac", mset, x, field)
    if key not in c.memo:
        maps = [g for u in sorted(mset) for g in c.hom_basis(u, x, field)]
        c.memo[key] = _trace_surjective(maps, c.dims[x], field)
    return c.memo[key]


def sub_contains(c: Catalog, iset: Iterable[int], x: int, field: Field = QQ) -> bool:
    """True iff indecomposable ``x`` embeds into a module in add(iset)."""
    iset = frozenset(iset)
    key = ("sub", iset, x, field)
    if key not in c.memo:
        maps = [g for u in sorted(iset) for g in c.hom_basis(x, u, field)]
        c.memo[key] = _cotrace_injective(maps, c.dims[x], field)
    return c.memo[key]


def fac_contains_module(c: Catalog, mset: Iterable[int], m: Representation) -> bool:
    """Fac membership for an arbitrary representation; the zero module is always in."""
    maps = [g for u in sorted(frozenset(mset)) for g in hom_basis(c.rep(u, m.field), m)]
    return _trace_surjective(maps, m.dims, m.field)


def sub_contains_module(c: Catalog, iset: Iterable[int], m: Representation) -> bool:
    maps = [g for u in sorted(frozenset(iset)) for g in hom_basis(m, c.rep(u, m.field))]
    return _cotrace_injective(maps, m.dims, m.field)


def fac_set(c: Catalog, mset: Iterable[int], field: Field = QQ) -> SummandSet:
    mset = frozenset(mset)
    return frozenset(x for x in c.ids if fac_contains(c, mset, x, field))


def sub_set(c: Catalog, iset: Iterable[int], field: Field = QQ) -> SummandSet:
    iset = frozenset(iset)
    return frozenset(x for x in c.ids if sub_contains(c, iset, x, field))


@dataclass(frozen=True)
class Approximation:
    """A map between ``x`` and a direct sum of catalog entries.

    ``summands`` lists the ids of the sum's blocks in order, with repeats.
    """

    x: int
    summands: tuple[int, ...]
    morphism: Morphism

    @property
    def is_injective(self) -> bool:
        return self.morphism.is_injective()

    @property
    def is_surjective(self) -> bool:
        return self.morphism.is_surjective()


def _left_property(c: Catalog, x: int, comps: list[tuple[int, Morphism]], mset: SummandSet, field: Field) -> bool:
    for w in mset:
        composed = [(b @ g).flat() for u, g in comps for b in c.hom_basis(u, w, field)]
        if _span_dim(composed, field) != c.hom_table[x][w]:
            return False
    return True


def _right_property(c: Catalog, x: int, comps: list[tuple[int, Morphism]], mset: SummandSet, field: Field) -> bool:
    for w in mset:
        composed = [(g @ b).flat() for u, g in comps for b in c.hom_basis(w, u, field)]
        if _span_dim(composed, field) != c.hom_table[w][x]:
            return False
    return True


def _minimize(c, x, comps, mset, field, prop):
    # one pass suffices: dropping more blocks can only break the property
    j = 0
    while j < len(comps):
        trial = comps[:j] + comps[j + 1:]
        if prop(c, x, trial, mset, field):
            comps = trial
        else:
            j += 1
    return comps


def minimal_left_approx(c: Catalog, x: int, mset: Iterable[int], field: Field = QQ) -> Approximation:
    """Left-minimal add(mset)-approximation ``x -> M'``.

    Starts from the universal map into ``⊕ U^{dim Hom(x, U)}`` and greedily
    drops blocks while the approximation property survives.
    """
    mset = frozenset(mset)
    key = ("lapprox", x, mset, field)
    if key in c.memo:
        return c.memo[key]
    comps = [(u, g) for u in sorted(mset) for g in c.hom_basis(x, u, field)]
    comps = _minimize(c, x, comps, mset, field, _left_property)
    mor = stack_morphisms_from(c.rep(x, field), [g for _, g in comps])
    out = Approximation(x, tuple(u for u, _ in comps), mor)
    c.memo[key] = out
    return out


def minimal_right_approx(c: Catalog, mset: Iterable[int], x: int, field: Field = QQ) -> Approximation:
    """Right-minimal add(mset)-approximation ``M' -> x``."""
    mset = frozenset(mset)
    key = ("rapprox", x, mset, field)
    if key in c.memo:
        return c.memo[key]
    comps = [(u, g) for u in sorted(mset) for g in c.hom_basis(u, x, field)]
    comps = _minimize(c, x, comps, mset, field, _right_property)
    mor = stack_morphisms_to(c.rep(x, field), [g for _, g in comps])
    out = Approximation(x, tuple(u for u, _ in comps), mor)
    c.memo[key] = out
    return out


def is_left_approximation(c: Catalog, appr: Approximation, mset: Iterable[int], field: Field = QQ) -> bool:
    """Check the factorisation property of ``appr`` directly on its blocks."""
    comps = _blocks(appr, c, field, left=True)
    return _left_property(c, appr.x, comps, frozenset(mset), field)


def is_right_approximation(c: Catalog, appr: Approximation, mset: Iterable[int], field: Field = QQ) -> bool:
    comps = _blocks(appr, c, field, left=False)
    return _right_property(c, appr.x, comps, frozenset(mset), field)


def _blocks(appr: Approximation, c: Catalog, field: Field, left: bool) -> list[tuple[int, Morphism]]:
    """Split an approximation back into its per-summand components."""
    xr = c.rep(appr.x, field)
    out = []
    offs = [0] * c.quiver.n
    for u in appr.summands:
        ur = c.rep(u, field)
        comps = []
        for v in range(c.quiver.n):
            m = appr.morphism.comps[v]
            d = ur.dims[v]
            if left:
                comps.append(m.submatrix(range(offs[v], offs[v] + d), range(xr.dims[v])))
            else:
                comps.append(m.submatrix(range(xr.dims[v]), range(offs[v], offs[v] + d)))
            offs[v] += d
        out.append((u, Morphism(xr, ur, tuple(comps)) if left else Morphism(ur, xr, tuple(comps))))
    return out


def is_rigid_set(c: Catalog, s: Iterable[int]) -> bool:
    s = list(s)
    return all(c.ext_table[i][j] == 0 for i in s for j in s)


def cok_contains(c: Catalog, pset: Iterable[int], x: int) -> bool:
    """True iff there is a short exact sequence 0 -> P1 -> P0 -> x -> 0 with P0, P1 in add(pset).

    Decided by the kernel of the minimal right add(pset)-approximation of ``x``
    lying in add(pset). ``pset`` must be rigid.
    """
    pset = frozenset(pset)
    key = ("cok", pset, x)
    if key in c.memo:
        return c.memo[key]
    if not is_rigid_set(c, pset):
        raise UsageError(f"Cok is only defined here for rigid sets; {c.label(pset)} is not rigid")
    ok = False
    if fac_contains(c, pset, x):
        appr = minimal_right_approx(c, pset, x)
        kernel = morphism_parts(appr.morphism).kernel
        ok = set(c.decompose(kernel)) <= pset
    c.memo[key] = ok
    return ok


def cok_set(c: Catalog, pset: Iterable[int]) -> SummandSet:
    pset = frozenset(pset)
    return frozenset(x for x in c.ids if cok_contains(c, pset, x))
