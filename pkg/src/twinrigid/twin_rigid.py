"""Rigid, tilting and twin rigid modules; mutation and the mutation quiver.

A twin rigid pair ``(P, I)`` is stored as two basic summand sets. For rigid
``P`` the pair is twin rigid exactly when ``I`` is rigid, every summand of
``I`` lies in Cok P, and ``|I| = |P|``.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable

from .approx import cok_contains, cok_set, fac_set, is_rigid_set, minimal_left_approx
from .catalog import Catalog, SummandSet
from .errors import UsageError, VerificationError
from .representation import morphism_parts


class NotMutableError(UsageError):
    """The minimal left approximation at the chosen summand is not injective."""


@dataclass(frozen=True, order=True)
class TwinRigidPair:
    p: SummandSet
    i: SummandSet

    def key(self) -> tuple:
        return (len(self.p), tuple(sorted(self.p)), tuple(sorted(self.i)))

    def describe(self, c: Catalog) -> str:
        return f"({c.label(self.p) or '0'}, {c.label(self.i) or '0'})"


@dataclass(frozen=True)
class ExchangeArrow:
    """Arrow of the mutation quiver with its exchange sequence 0 -> x -> middle -> y -> 0."""

    source: int
    target: int
    x: int
    y: int
    middle: tuple[int, ...]  # ids with multiplicity, sorted


@dataclass
class MutationQuiver:
    pivot: SummandSet
    vertices: list[TwinRigidPair] = field(default_factory=list)
    arrows: list[ExchangeArrow] = field(default_factory=list)

    def index(self, pair: TwinRigidPair) -> int:
        return self.vertices.index(pair)

    def coideals(self) -> set[SummandSet]:
        return {v.i for v in self.vertices}

    def arrow_pairs(self) -> set[tuple[SummandSet, SummandSet]]:
        return {(self.vertices[a.source].i, self.vertices[a.target].i) for a in self.arrows}

    def multiplicities(self) -> Counter:
        """Number of recorded arrows per ordered pair of vertices."""
        return Counter((a.source, a.target) for a in self.arrows)


def is_rigid(c: Catalog, s: Iterable[int]) -> bool:
    return is_rigid_set(c, s)


def enumerate_rigid(c: Catalog) -> list[SummandSet]:
    """Every basic rigid module, the zero module included, ordered by size then ids."""
    key = ("rigid",)
    if key in c.memo:
        return c.memo[key]
    n = len(c)
    compatible = [frozenset(j for j in range(n) if c.ext_table[i][j] == 0 and c.ext_table[j][i] == 0) for i in range(n)]
    out: list[SummandSet] = []

    def extend(chosen: tuple[int, ...], allowed: frozenset):
        out.append(frozenset(chosen))
        for j in sorted(allowed):
            if not chosen or j > chosen[-1]:
                extend(chosen + (j,), allowed & compatible[j])

    extend((), frozenset(range(n)))
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    c.memo[key] = out
    return out


def _need_rigid(c: Catalog, p: SummandSet) -> None:
    if not is_rigid_set(c, p):
        raise UsageError(f"{c.label(p)} is not rigid")


def is_twin_rigid(c: Catalog, p: Iterable[int], i: Iterable[int]) -> bool:
    p, i = frozenset(p), frozenset(i)
    _need_rigid(c, p)
    return len(i) == len(p) and is_rigid_set(c, i) and all(cok_contains(c, p, u) for u in i)


def twin_rigid_coideals(c: Catalog, p: Iterable[int]) -> list[SummandSet]:
    """Exhaustive ``{I : (p, I) twin rigid}`` by filtering rigid sets; no mutation involved."""
    p = frozenset(p)
    _need_rigid(c, p)
    cok = cok_set(c, p)
    return [s for s in enumerate_rigid(c) if len(s) == len(p) and s <= cok]


def enumerate_twin_rigid(c: Catalog) -> list[TwinRigidPair]:
    out = [TwinRigidPair(p, i) for p in enumerate_rigid(c) for i in twin_rigid_coideals(c, p)]
    return sorted(out, key=TwinRigidPair.key)


def mutation_step(c: Catalog, pair: TwinRigidPair, x: int) -> tuple[TwinRigidPair, int, tuple[int, ...]]:
    """Mutate at ``x`` and return (new pair, y, middle) for the sequence 0 -> x -> middle -> y -> 0."""
    if x not in pair.i:
        raise UsageError(f"{c.labels[x]} is not a summand of {c.label(pair.i) or '0'}")
    rest = pair.i - {x}
    appr = minimal_left_approx(c, x, rest)
    if not appr.is_injective:
        raise NotMutableError(f"not mutable at {c.labels[x]}: the minimal left add-approximation is not injective")
    coker = morphism_parts(appr.morphism).cokernel
    parts = c.decompose(coker)
    if sum(parts.values()) != 1:
        raise VerificationError(f"cokernel of the approximation at {c.labels[x]} is not indecomposable")
    (y,) = parts
    new = TwinRigidPair(pair.p, rest | {y})
    if y in rest or not is_twin_rigid(c, new.p, new.i):
        raise VerificationError(f"mutation of {pair.describe(c)} at {c.labels[x]} is not twin rigid")
    return new, y, tuple(sorted(appr.summands))


def mutate(c: Catalog, pair: TwinRigidPair, x: int) -> TwinRigidPair:
    """Replace summand ``x`` of ``pair.i`` by the cokernel of its minimal left approximation."""
    return mutation_step(c, pair, x)[0]


def mutation_quiver(c: Catalog, p: Iterable[int]) -> MutationQuiver:
    """Breadth-first closure of ``(p, p)`` under mutation."""
    p = frozenset(p)
    _need_rigid(c, p)
    key = ("kp", p)
    if key in c.memo:
        return c.memo[key]
    start = TwinRigidPair(p, p)
    mq = MutationQuiver(p, [start])
    seen = {start: 0}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        for x in sorted(pair.i):
            try:
                new, y, middle = mutation_step(c, pair, x)
            except NotMutableError:
                continue
            if new not in seen:
                seen[new] = len(mq.vertices)
                mq.vertices.append(new)
                queue.append(new)
            mq.arrows.append(ExchangeArrow(seen[pair], seen[new], x, y, middle))
    _check_exchange_arrows(c, mq)
    c.memo[key] = mq
    return mq


def _check_exchange_arrows(c: Catalog, mq: MutationQuiver) -> None:
    for a in mq.arrows:
        if a.x == a.y or c.ext_table[a.y][a.x] == 0:
            raise VerificationError(f"exchange sequence {c.labels[a.x]} -> {c.labels[a.y]} splits")
        shared = mq.vertices[a.source].i - {a.x}
        if not set(a.middle) <= shared:
            raise VerificationError("exchange middle term leaves the shared summands")


def complete(c: Catalog, p: Iterable[int], partial: Iterable[int]) -> TwinRigidPair:
    """First twin rigid ``(p, partial ∪ extra)`` in catalog order."""
    p, partial = frozenset(p), frozenset(partial)
    _need_rigid(c, p)
    if not is_rigid_set(c, partial):
        raise UsageError(f"{c.label(partial)} is not rigid")
    cok = cok_set(c, p)
    if not partial <= cok:
        raise UsageError(f"{c.label(partial - cok)} not in Cok {c.label(p) or '0'}")
    need = len(p) - len(partial)
    if need < 0:
        raise UsageError("partial module already has more summands than the pivot")
    candidates = [u for u in sorted(cok) if u not in partial]
    for extra in itertools.combinations(candidates, need):
        i = partial | frozenset(extra)
        if is_rigid_set(c, i):
            return TwinRigidPair(p, i)
    raise VerificationError(f"no completion of {c.label(partial)} over pivot {c.label(p)}")


# tilting layer ---------------------------------------------------------------


def enumerate_tilting(c: Catalog) -> list[SummandSet]:
    return twin_rigid_coideals(c, c.projectives)


def _hasse_pairs(c: Catalog, tilts: list[SummandSet]) -> set[tuple[SummandSet, SummandSet]]:
    fac = {t: fac_set(c, t) for t in tilts}
    covers = set()
    for t in tilts:
        for u in tilts:
            if fac[t] > fac[u] and not any(fac[t] > fac[w] > fac[u] for w in tilts):
                covers.add((t, u))
    return covers


def tilting_hasse(c: Catalog) -> MutationQuiver:
    """Mutation quiver at pivot Λ, checked against the Fac-inclusion order on tilting modules."""
    mq = mutation_quiver(c, c.projectives)
    tilts = enumerate_tilting(c)
    if set(tilts) != mq.coideals():
        raise VerificationError("mutation from Λ does not reach every tilting module")
    for t1, t2 in mq.arrow_pairs():
        if not fac_set(c, t1) > fac_set(c, t2):
            raise VerificationError(f"tilting arrow {c.label(t1)} -> {c.label(t2)} does not shrink Fac")
    if mq.arrow_pairs() != _hasse_pairs(c, tilts):
        raise VerificationError("exchange-sequence arrows differ from the Hasse quiver of tilt")
    return mq


def bongartz_completion(c: Catalog, m: Iterable[int]) -> SummandSet:
    """The tilting module ``T ⊇ m`` whose torsion class is ``{X : Ext^1(m, X) = 0}``."""
    m = frozenset(m)
    _need_rigid(c, m)
    perp = frozenset(x for x in c.ids if all(c.ext_table[u][x] == 0 for u in m))
    hits = [t for t in enumerate_tilting(c) if m <= t and fac_set(c, t) == perp]
    if len(hits) != 1:
        raise VerificationError(f"expected one Bongartz completion of {c.label(m)}, found {len(hits)}")
    return hits[0]
