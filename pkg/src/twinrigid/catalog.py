"""The indecomposable representations of a Dynkin quiver and their Hom/Ext tables.

Indecomposables are built from simples with BGP reflection functors along a
sink-adapted Coxeter word, one per positive root. Arbitrary representations
are identified by their Hom-profile against the catalog.
"""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import UsageError, VerificationError
from .linalg import F2, QQ, Field, Matrix, complement_basis, image_basis, inverse, vstack
from .quiver import Quiver
from .representation import (
    Morphism,
    Representation,
    dim_label,
    euler_form,
    hom_basis,
    hom_dim,
)

log = logging.getLogger(__name__)

SummandSet = frozenset

_MUL_LIMIT = 10_000


def _reflect_root(q: Quiver, d: tuple[int, ...], i: int) -> tuple[int, ...]:
    neighbours = [t if s == i else s for s, t in q.arrows if i in (s, t)]
    out = list(d)
    out[i - 1] = sum(d[j - 1] for j in neighbours) - d[i - 1]
    return tuple(out)


def root_order_key(d: Sequence[int]) -> tuple:
    """Ascending total dimension, then vertex 1 before vertex 2 and so on."""
    return (sum(d), tuple(-x for x in d))


def positive_roots(q: Quiver) -> list[tuple[int, ...]]:
    """Positive roots of the underlying Dynkin diagram, in catalog order."""
    n = q.n
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for d in frontier:
            for i in q.vertices:
                r = _reflect_root(q, d, i)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
        if len(seen) > _MUL_LIMIT:
            raise VerificationError("root closure did not terminate; quiver is not Dynkin")
    return sorted((d for d in seen if all(x >= 0 for x in d)), key=root_order_key)


def _cokernel_projection(a: Matrix) -> Matrix:
    """A matrix whose kernel is exactly the column space of ``a``."""
    f, d = a.field, a.nrows
    im = image_basis(a)
    extra = complement_basis(im, d, f)
    cols = list(im) + [tuple(f(1) if i == j else f(0) for i in range(d)) for j in extra]
    if not cols:
        return Matrix.zeros(0, d, f)
    full = Matrix.from_columns(cols, d, f)
    return inverse(full).submatrix(range(len(im), d), range(d))


def reflect_at_source(rep: Representation, i: int) -> Representation:
    """BGP functor S_i^- at a source i: cokernel of ``rep_i -> ⊕_{i->j} rep_j``."""
    q, f = rep.quiver, rep.field
    if not q.is_source(i):
        raise UsageError(f"vertex {i} is not a source")
    incident = [a for a, (s, _) in enumerate(q.arrows) if s == i]
    targets = [q.arrows[a][1] for a in incident]
    total = sum(rep.dim(j) for j in targets)
    stacked = vstack([rep.maps[a] for a in incident], rep.dim(i), f)
    proj = _cokernel_projection(stacked) if total else Matrix.zeros(0, 0, f)
    new_q = q.reflect(i)
    dims = list(rep.dims)
    dims[i - 1] = proj.nrows
    maps = list(rep.maps)
    off = 0
    for a, j in zip(incident, targets):
        maps[a] = proj.submatrix(range(proj.nrows), range(off, off + rep.dim(j)))
        off += rep.dim(j)
    return Representation(new_q, tuple(dims), tuple(maps), f)


def construct_indecomposables(q: Quiver, field: Field = QQ) -> dict[tuple[int, ...], Representation]:
    """One indecomposable per positive root, keyed by dimension vector."""
    roots = positive_roots(q)
    word = q.sink_order()
    quivers = [q]  # quivers[k] = quiver after reflecting at the first k letters
    found: dict[tuple[int, ...], Representation] = {}
    k = 0
    while len(found) < len(roots):
        if k > 2 * len(roots) * q.n + q.n:
            raise VerificationError("reflection functors failed to produce every positive root")
        letter = word[k % q.n]
        qk = quivers[k]
        if not qk.is_sink(letter):
            raise VerificationError("sink order is not adapted")
        quivers.append(qk.reflect(letter))
        rep = Representation.simple(qk, letter, field)
        for j in range(k - 1, -1, -1):
            rep = reflect_at_source(rep, word[j % q.n])
            if rep.is_zero():
                break
        if not rep.is_zero() and rep.quiver != q:
            raise VerificationError("reflection chain ended on the wrong orientation")
        if not rep.is_zero() and rep.dims not in found:
            found[rep.dims] = rep
        k += 1
    return found


class Catalog:
    """All indecomposables of a Dynkin quiver with Hom and Ext tables.

    Treat instances as read-only; the per-field representation lists and the
    Hom-basis cache are filled lazily.
    """

    def __init__(self, quiver: Quiver, verify_field: Field | None = F2):
        self.quiver = quiver
        self.roots = positive_roots(quiver)
        self._reps: dict[Field, list[Representation]] = {}
        self._basis_cache: dict[tuple, list[Morphism]] = {}
        # derived-query memo shared by approx / twin_rigid / subcat
        self.memo: dict = {}
        reps = self.reps(QQ)
        self.indecs: tuple[Representation, ...] = tuple(reps)
        self.dims: tuple[tuple[int, ...], ...] = tuple(r.dims for r in reps)
        self.labels: tuple[str, ...] = tuple(dim_label(d) for d in self.dims)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.hom_table = self._hom_table(QQ)
        self.ext_table = tuple(
            tuple(self.hom_table[i][j] - euler_form(quiver, self.dims[i], self.dims[j]) for j in range(len(self)))
            for i in range(len(self))
        )
        pc = quiver.path_counts
        n = quiver.n
        self.proj_ids = tuple(self.index[dim_label(pc[v])] for v in range(n))
        self.inj_ids = tuple(self.index[dim_label([pc[w][v] for w in range(n)])] for v in range(n))
        self.verify(verify_field)

    def __len__(self) -> int:
        return len(self.indecs)

    def __repr__(self) -> str:
        return f"Catalog({self.quiver}, {len(self)} indecomposables)"

    @property
    def ids(self) -> range:
        return range(len(self))

    def reps(self, field: Field = QQ) -> list[Representation]:
        if field not in self._reps:
            built = construct_indecomposables(self.quiver, field)
            self._reps[field] = [built[d] for d in self.roots]
        return self._reps[field]

    def rep(self, i: int, field: Field = QQ) -> Representation:
        return self.reps(field)[i]

    def _hom_table(self, field: Field) -> tuple[tuple[int, ...], ...]:
        reps = self.reps(field)
        return tuple(tuple(hom_dim(a, b) for b in reps) for a in reps)

    def hom_basis(self, i: int, j: int, field: Field = QQ) -> list[Morphism]:
        key = (i, j, field)
        if key not in self._basis_cache:
            reps = self.reps(field)
            self._basis_cache[key] = hom_basis(reps[i], reps[j])
        return self._basis_cache[key]

    def verify(self, other_field: Field | None = F2) -> None:
        """Raise VerificationError unless every catalog invariant holds."""
        if list(self.dims) != self.roots:
            raise VerificationError("catalog dimension vectors differ from the positive roots")
        for i in self.ids:
            if self.hom_table[i][i] != 1:
                raise VerificationError(f"{self.labels[i]} is not a brick")
            if self.ext_table[i][i] != 0:
                raise VerificationError(f"{self.labels[i]} has self-extensions")
            if any(x < 0 for x in self.ext_table[i]):
                raise VerificationError("negative Ext dimension in catalog")
        if other_field is not None:
            other = self._hom_table(other_field)
            if other != self.hom_table:
                bad = [(self.labels[i], self.labels[j]) for i in self.ids for j in self.ids if other[i][j] != self.hom_table[i][j]]
                raise VerificationError(f"Hom tables over {QQ} and {other_field} disagree at {bad[:3]}")
            log.debug("Hom tables over QQ and %s agree for %s", other_field, self.quiver)

    @cached_property
    def _hom_inverse(self) -> Matrix:
        return inverse(Matrix.from_rows(self.hom_table, QQ))

    def decompose(self, m: Representation) -> Counter:
        """Multiplicities of catalog indecomposables in ``m`` (a Counter of ids)."""
        if m.quiver != self.quiver:
            raise UsageError("representation is over a different quiver")
        if m.is_zero():
            return Counter()
        reps = self.reps(m.field)
        profile = [hom_dim(x, m) for x in reps]
        mult = self._hom_inverse.apply([Fraction(h) for h in profile])
        out = Counter()
        for i, x in enumerate(mult):
            if x.denominator != 1 or x < 0:
                raise VerificationError(f"Hom-profile of {m.label} does not decompose: {list(map(str, mult))}")
            if x:
                out[i] = int(x)
        dims = tuple(sum(out[i] * self.dims[i][v] for i in out) for v in range(self.quiver.n))
        if dims != m.dims:
            raise VerificationError(f"decomposition of {m.label} has the wrong dimension vector")
        return out

    # labels ----------------------------------------------------------------

    def label(self, ids: Iterable[int]) -> str:
        return "+".join(self.labels[i] for i in sorted(ids))

    def label_list(self, ids: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in sorted(ids)]

    def parse_ids(self, text: str) -> SummandSet:
        """``"010+110+111"`` to a SummandSet; ``""`` or ``"0"`` is the zero module."""
        text = text.strip()
        if text in ("", "0"):
            return frozenset()
        out = set()
        for part in text.split("+"):
            part = part.strip()
            if part not in self.index:
                raise UsageError(f"{part!r} is not the dimension vector of an indecomposable of {self.quiver}")
            if self.index[part] in out:
                raise UsageError(f"{part} repeated; summand sets are basic")
            out.add(self.index[part])
        return frozenset(out)

    @property
    def projectives(self) -> SummandSet:
        return frozenset(self.proj_ids)

    @property
    def injectives(self) -> SummandSet:
        return frozenset(self.inj_ids)

    def summand_sum(self, ids: Iterable[int] | Counter, field: Field = QQ) -> Representation:
        """Direct sum of catalog entries (an iterable of ids, or a Counter of multiplicities)."""
        from .representation import direct_sum

        if isinstance(ids, Counter):
            seq = [i for i in sorted(ids) for _ in range(ids[i])]
        else:
            seq = list(ids)
        return direct_sum([self.rep(i, field) for i in seq], self.quiver, field)

    def to_json(self) -> dict:
        proj_at = {i: v + 1 for v, i in enumerate(self.proj_ids)}
        inj_at = {i: v + 1 for v, i in enumerate(self.inj_ids)}
        return {
            "quiver": self.quiver.to_json(),
            "indecomposables": [
                {
                    "id": i,
                    "dim_vector": self.labels[i],
                    "projective_at": proj_at.get(i),
                    "injective_at": inj_at.get(i),
                }
                for i in self.ids
            ],
            "hom": [list(r) for r in self.hom_table],
            "ext": [list(r) for r in self.ext_table],
        }


def build_catalog(q: Quiver) -> Catalog:
    return Catalog(q)


def decompose(m: Representation, c: Catalog) -> Counter:
    return c.decompose(m)


__all__ = [
    "Catalog",
    "SummandSet",
    "build_catalog",
    "construct_indecomposables",
    "decompose",
    "positive_roots",
    "reflect_at_source",
    "root_order_key",
]
