"""Representations of a quiver over an exact field, and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import UsageError, VerificationError
from .linalg import (
    QQ,
    Field,
    Matrix,
    block_diag,
    complement_basis,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    rank,
    solve,
    vstack,
)
from .quiver import Quiver


@dataclass(frozen=True)
class Representation:
    """A vector space per vertex and a matrix per arrow.

    The matrix of arrow ``a = (s, t)`` has ``dims[t-1]`` rows and
    ``dims[s-1]`` columns.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    field: Field = QQ

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.n or any(d < 0 for d in self.dims):
            raise UsageError(f"dimension vector {self.dims} does not fit {q.n} vertices")
        if len(self.maps) != len(q.arrows):
            raise UsageError("need exactly one matrix per arrow")
        for (s, t), m in zip(q.arrows, self.maps):
            if m.shape != (self.dims[t - 1], self.dims[s - 1]):
                raise UsageError(f"matrix for arrow {s}->{t} has shape {m.shape}")

    @classmethod
    def zero(cls, quiver: Quiver, field: Field = QQ) -> "Representation":
        return cls(quiver, (0,) * quiver.n, tuple(Matrix.zeros(0, 0, field) for _ in quiver.arrows), field)

    @classmethod
    def simple(cls, quiver: Quiver, v: int, field: Field = QQ) -> "Representation":
        dims = tuple(1 if w == v else 0 for w in quiver.vertices)
        return cls(quiver, dims, tuple(Matrix.zeros(dims[t - 1], dims[s - 1], field) for s, t in quiver.arrows), field)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def label(self) -> str:
        return dim_label(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim(self, v: int) -> int:
        return self.dims[v - 1]


def dim_label(dims: Sequence[int]) -> str:
    return "".join(str(d) for d in dims)


@dataclass(frozen=True)
class Morphism:
    """One matrix per vertex; ``comps[v-1]`` maps ``source`` at v to ``target`` at v."""

    source: Representation
    target: Representation
    comps: tuple[Matrix, ...]

    def check(self) -> None:
        """Raise VerificationError unless the intertwining relations hold."""
        for a, (s, t) in enumerate(self.source.quiver.arrows):
            lhs = self.comps[t - 1] @ self.source.maps[a]
            rhs = self.target.maps[a] @ self.comps[s - 1]
            if lhs != rhs:
                raise VerificationError(f"morphism does not commute with arrow {s}->{t}")

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self ∘ other``."""
        return Morphism(other.source, self.target, tuple(g @ f for g, f in zip(self.comps, other.comps)))

    def flat(self) -> tuple:
        return tuple(x for m in self.comps for x in m.entries)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps)

    def is_injective(self) -> bool:
        return all(rank(m) == m.ncols for m in self.comps)

    def is_surjective(self) -> bool:
        return all(rank(m) == m.nrows for m in self.comps)

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()


def identity(m: Representation) -> Morphism:
    return Morphism(m, m, tuple(Matrix.identity(d, m.field) for d in m.dims))


def zero_morphism(m: Representation, n: Representation) -> Morphism:
    return Morphism(m, n, tuple(Matrix.zeros(b, a, m.field) for a, b in zip(m.dims, n.dims)))


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """``sum_i d_i e_i - sum_{a: i -> j} d_i e_j``."""
    if len(d) != q.n or len(e) != q.n:
        raise UsageError("dimension vectors must have one entry per vertex")
    return sum(x * y for x, y in zip(d, e)) - sum(d[s - 1] * e[t - 1] for s, t in q.arrows)


def _same_setting(m: Representation, n: Representation) -> None:
    if m.quiver != n.quiver:
        raise UsageError("representations live on different quivers")
    if m.field != n.field:
        raise UsageError("representations live over different fields")


def hom_system(m: Representation, n: Representation) -> tuple[Matrix, list[int]]:
    """Linear system whose kernel is Hom(m, n), and the per-vertex offsets of the unknowns."""
    _same_setting(m, n)
    q, f = m.quiver, m.field
    offsets, total = [], 0
    for v in q.vertices:
        offsets.append(total)
        total += n.dim(v) * m.dim(v)
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        ma, na = m.maps[a], n.maps[a]
        mt, ms, ns = m.dim(t), m.dim(s), n.dim(s)
        for r in range(n.dim(t)):
            for c in range(ms):
                row = [f(0)] * total
                # (phi_t M_a)[r, c]
                for k in range(mt):
                    x = ma[k, c]
                    if x:
                        row[offsets[t - 1] + r * mt + k] += x
                # - (N_a phi_s)[r, c]
                for k in range(ns):
                    x = na[r, k]
                    if x:
                        row[offsets[s - 1] + k * ms + c] -= x
                rows.append([f(x) for x in row])
    return Matrix.from_rows(rows, f, ncols=total), offsets


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    """A deterministic basis of Hom(m, n)."""
    system, offsets = hom_system(m, n)
    q = m.quiver
    basis = []
    for vec in kernel_basis(system):
        comps = []
        for v in q.vertices:
            rows, cols = n.dim(v), m.dim(v)
            o = offsets[v - 1]
            comps.append(Matrix(rows, cols, tuple(tuple(vec[o + r * cols + c] for c in range(cols)) for r in range(rows)), m.field))
        basis.append(Morphism(m, n, tuple(comps)))
    return basis


def hom_dim(m: Representation, n: Representation) -> int:
    system, _ = hom_system(m, n)
    return system.ncols - rank(system)


def ext_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(m, n), via dim Hom minus the Euler form (hereditary algebras)."""
    e = hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims)
    if e < 0:
        raise VerificationError(f"negative Ext dimension between {m.label} and {n.label}")
    return e


def direct_sum(reps: Sequence[Representation], quiver: Quiver | None = None, field: Field | None = None) -> Representation:
    """Block-diagonal sum; the empty sum needs ``quiver`` (and optionally ``field``)."""
    if not reps:
        if quiver is None:
            raise UsageError("the empty direct sum needs a quiver")
        return Representation.zero(quiver, field or QQ)
    first = reps[0]
    for r in reps[1:]:
        _same_setting(first, r)
    q, f = first.quiver, first.field
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(q.n))
    maps = tuple(block_diag([r.maps[a] for r in reps], f) for a in range(len(q.arrows)))
    return Representation(q, dims, maps, f)


def dualize(m: Representation) -> Representation:
    """The dual representation over the opposite quiver (transpose every arrow matrix)."""
    return Representation(m.quiver.opposite(), m.dims, tuple(a.T for a in m.maps), m.field)


def dualize_morphism(f: Morphism) -> Morphism:
    return Morphism(dualize(f.target), dualize(f.source), tuple(c.T for c in f.comps))


@dataclass(frozen=True)
class MorphismParts:
    kernel: Representation
    image: Representation
    cokernel: Representation
    kernel_inclusion: Morphism
    image_inclusion: Morphism  # image -> target
    coimage_projection: Morphism  # source -> image
    cokernel_projection: Morphism  # target -> cokernel


def _columns(vectors: Sequence, nrows: int, field: Field) -> Matrix:
    return Matrix.from_columns(vectors, nrows, field)


def _coords(basis: Matrix, vector) -> tuple:
    x = solve(basis, vector)
    if x is None:
        raise VerificationError("vector is not in the expected subspace")
    return x


def subrepresentation(m: Representation, bases: Sequence[Matrix]) -> tuple[Representation, Morphism]:
    """The subrepresentation spanned vertex-wise by the columns of ``bases``.

    Raises VerificationError if the spaces are not stable under the arrows.
    """
    q, f = m.quiver, m.field
    dims = tuple(b.ncols for b in bases)
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        bs, bt = bases[s - 1], bases[t - 1]
        cols = [_coords(bt, m.maps[a].apply(col)) for col in bs.columns()]
        maps.append(_columns(cols, dims[t - 1], f))
    sub = Representation(q, dims, tuple(maps), f)
    return sub, Morphism(sub, m, tuple(bases))


def quotient_representation(m: Representation, bases: Sequence[Matrix]) -> tuple[Representation, Morphism]:
    """Quotient of ``m`` by the subrepresentation spanned by ``bases``, with its projection."""
    q, f = m.quiver, m.field
    projections, lifts = [], []
    for v in q.vertices:
        d = m.dim(v)
        b = bases[v - 1]
        extra = complement_basis(b.columns(), d, f)
        full = hstack([b, Matrix.from_columns([tuple(f(1) if i == j else f(0) for i in range(d)) for j in extra], d, f)], d, f)
        inv = inverse(full) if d else Matrix.zeros(0, 0, f)
        proj = inv.submatrix(range(b.ncols, d), range(d))
        lift = full.submatrix(range(d), range(b.ncols, d))
        projections.append(proj)
        lifts.append(lift)
    dims = tuple(p.nrows for p in projections)
    maps = tuple(projections[t - 1] @ m.maps[a] @ lifts[s - 1] for a, (s, t) in enumerate(q.arrows))
    quot = Representation(q, dims, maps, f)
    return quot, Morphism(m, quot, tuple(projections))


def morphism_parts(phi: Morphism) -> MorphismParts:
    """Kernel, image and cokernel of ``phi`` with their canonical maps."""
    src, tgt = phi.source, phi.target
    q, f = src.quiver, src.field
    ker_bases, im_bases = [], []
    for v in q.vertices:
        c = phi.comps[v - 1]
        ker_bases.append(_columns(kernel_basis(c), src.dim(v), f))
        im_bases.append(_columns(image_basis(c), tgt.dim(v), f))
    kernel, kin = subrepresentation(src, ker_bases)
    image, iin = subrepresentation(tgt, im_bases)
    cokernel, cproj = quotient_representation(tgt, im_bases)
    coim = []
    for v in q.vertices:
        b = im_bases[v - 1]
        c = phi.comps[v - 1]
        cols = [_coords(b, col) for col in c.columns()]
        coim.append(_columns(cols, b.ncols, f))
    coimage = Morphism(src, image, tuple(coim))
    return MorphismParts(kernel, image, cokernel, kin, iin, coimage, cproj)


def stack_morphisms_from(x: Representation, targets: Sequence[Morphism]) -> Morphism:
    """The map ``x -> ⊕ targets[k].target`` whose components are ``targets``."""
    if not targets:
        return zero_morphism(x, Representation.zero(x.quiver, x.field))
    tgt = direct_sum([g.target for g in targets])
    comps = tuple(vstack([g.comps[v] for g in targets], x.dims[v], x.field) for v in range(x.quiver.n))
    return Morphism(x, tgt, comps)


def stack_morphisms_to(x: Representation, sources: Sequence[Morphism]) -> Morphism:
    """The map ``⊕ sources[k].source -> x`` whose components are ``sources``."""
    if not sources:
        return zero_morphism(Representation.zero(x.quiver, x.field), x)
    src = direct_sum([g.source for g in sources])
    comps = tuple(hstack([g.comps[v] for g in sources], x.dims[v], x.field) for v in range(x.quiver.n))
    return Morphism(src, x, comps)
