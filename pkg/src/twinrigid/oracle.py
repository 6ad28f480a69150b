"""Brute-force ground truth over a finite field.

Nothing here uses twin rigid modules, approximations or mutation. Closure
properties are decided from their definitions:

* quotient/submodule closure of ``add s``: every indecomposable quotient of a
  module in ``add s`` (equivalently, every member of Fac s) lies in ``s``;
* image closure: ``Fac s ∩ Sub s ⊆ s``, since images are exactly the modules
  that are both quotients and submodules of modules in ``add s``;
* extension closure: for each ``x ∈ s`` every extension of ``x`` by
  ``⊕ A_j^{dim Ext(x, A_j)}`` (``A_j ∈ s``) has its middle term in ``add s``.
  Larger multiplicities only add split summands, and longer extensions are
  iterated one-indecomposable extensions, so this decides closure exactly.

Extension classes are enumerated as cocycle representatives, and every middle
term is identified through its Hom-profile.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .catalog import Catalog, build_catalog
from .errors import InstanceTooLargeError, UsageError, VerificationError
from .linalg import F2, Field, Matrix, complement_basis, hstack, image_basis, rank
from .quiver import Quiver
from .representation import Morphism, Representation, direct_sum, hom_basis, quotient_representation, subrepresentation
from .subcat import Subcat

log = logging.getLogger(__name__)

DEFAULT_MAX_SUBSET_BITS = 24
DEFAULT_MAX_CLASS_BITS = 16


def f2_hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(m, n) over F2, with each linear equation packed into one Python int."""
    q = m.quiver
    off, total = [], 0
    for v in q.vertices:
        off.append(total)
        total += n.dim(v) * m.dim(v)
    pivots: dict[int, int] = {}
    for a, (s, t) in enumerate(q.arrows):
        ms, mt, ns, nt = m.dim(s), m.dim(t), n.dim(s), n.dim(t)
        ma, na = m.maps[a].data, n.maps[a].data
        os_, ot = off[s - 1], off[t - 1]
        for i in range(nt):
            for j in range(ms):
                eq = 0
                for k in range(ns):
                    if na[i][k]:
                        eq ^= 1 << (os_ + k * ms + j)
                for l in range(mt):
                    if ma[l][j]:
                        eq ^= 1 << (ot + i * mt + l)
                while eq:
                    top = eq.bit_length() - 1
                    if top not in pivots:
                        pivots[top] = eq
                        break
                    eq ^= pivots[top]
    return total - len(pivots)


def subspaces(d: int, field: Field) -> list[Matrix]:
    """Every subspace of field^d, as a d x r matrix whose columns are an RREF basis."""
    elems = field.elements()
    out = []
    for r in range(d + 1):
        for pivots in itertools.combinations(range(d), r):
            free = [(i, j) for i in range(r) for j in range(d) if j > pivots[i] and j not in pivots]
            for values in itertools.product(elems, repeat=len(free)):
                rows = [[0] * d for _ in range(r)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), val in zip(free, values):
                    rows[i][j] = val
                out.append(Matrix.from_rows(rows, field, ncols=d).T if r else Matrix.zeros(d, 0, field))
    return out


def _contained(m: Matrix, basis: Matrix) -> bool:
    if m.ncols == 0:
        return True
    return rank(hstack([basis, m], basis.nrows, basis.field)) == basis.ncols


def subrepresentations(rep: Representation) -> Iterator[tuple[Matrix, ...]]:
    """Yield vertex-wise bases of every subrepresentation of ``rep`` (finite field only)."""
    q, f = rep.quiver, rep.field
    spaces = [subspaces(d, f) for d in rep.dims]
    n = q.n

    def rec(v: int, chosen: list[Matrix]):
        if v == n:
            yield tuple(chosen)
            return
        for sp in spaces[v]:
            ok = True
            for a, (s, t) in enumerate(q.arrows):
                s0, t0 = s - 1, t - 1
                if max(s0, t0) != v:
                    continue
                src = sp if s0 == v else chosen[s0]
                tgt = sp if t0 == v else chosen[t0]
                if not _contained(rep.maps[a] @ src, tgt):
                    ok = False
                    break
            if ok:
                chosen.append(sp)
                yield from rec(v + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def _cocycle_space(quot: Representation, sub: Representation) -> tuple[list[int], list[int], int]:
    """Coordinates spanning a complement of the coboundaries in C^1, arrow offsets and dim C^1.

    C^0 = ⊕_v Hom(quot_v, sub_v) and C^1 = ⊕_{a: s->t} Hom(quot_s, sub_t), both
    stored row-major; the coboundary of ``phi`` at arrow ``a`` is ``sub_a phi_s - phi_t quot_a``.
    """
    q, f = quot.quiver, quot.field
    off1, n1 = [], 0
    for s, t in q.arrows:
        off1.append(n1)
        n1 += sub.dim(t) * quot.dim(s)
    cols = []
    for v in q.vertices:
        for r in range(sub.dim(v)):
            for c in range(quot.dim(v)):
                col = [0] * n1
                for a, (s, t) in enumerate(q.arrows):
                    qs = quot.dim(s)
                    if s == v:
                        for i in range(sub.dim(t)):
                            x = sub.maps[a][i, r]
                            if x:
                                col[off1[a] + i * qs + c] += x
                    if t == v:
                        for j in range(qs):
                            x = quot.maps[a][c, j]
                            if x:
                                col[off1[a] + r * qs + j] -= x
                cols.append(tuple(f(x) for x in col))
    boundaries = image_basis(Matrix.from_columns(cols, n1, f)) if cols and n1 else []
    return complement_basis(boundaries, n1, f), off1, n1


def ext_dimension_by_cocycles(quot: Representation, sub: Representation) -> int:
    """dim Ext^1(quot, sub) as dim C^1 minus the rank of the coboundary map."""
    return len(_cocycle_space(quot, sub)[0])


def extension_middles(quot: Representation, sub: Representation, max_class_bits: int = DEFAULT_MAX_CLASS_BITS) -> Iterator[Representation]:
    """Middle terms E of ``0 -> sub -> E -> quot -> 0``, one per class of Ext^1(quot, sub).

    The split class comes first.
    """
    f = quot.field
    if f.is_rational:
        raise UsageError("extension classes can only be listed over a finite field")
    reps, off1, n1 = _cocycle_space(quot, sub)
    if len(reps) > max_class_bits:
        raise InstanceTooLargeError(f"Ext space of dimension {len(reps)} exceeds the class guard")
    for coeffs in itertools.product(f.elements(), repeat=len(reps)):
        cocycle = [f(0)] * n1
        for k, cval in zip(reps, coeffs):
            cocycle[k] = f(cval)
        yield _glue(quot, sub, cocycle, off1)


def _glue(quot: Representation, sub: Representation, cocycle, off1) -> Representation:
    q, f = quot.quiver, quot.field
    dims = tuple(a + b for a, b in zip(sub.dims, quot.dims))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        ss, st, qs, qt = sub.dim(s), sub.dim(t), quot.dim(s), quot.dim(t)
        rows = []
        for i in range(st):
            rows.append(list(sub.maps[a].data[i]) + [cocycle[off1[a] + i * qs + j] for j in range(qs)])
        for i in range(qt):
            rows.append([0] * ss + list(quot.maps[a].data[i]))
        maps.append(Matrix.from_rows(rows, f, ncols=ss + qs))
    return Representation(q, dims, tuple(maps), f)


@dataclass(frozen=True)
class ExtensionWitness:
    sub: tuple[int, ...]
    quot: tuple[int, ...]
    middle: tuple[int, ...]


class Oracle:
    """Exhaustive checker for one quiver over a prime field (F2 by default)."""

    def __init__(self, catalog: Catalog, field: Field = F2, max_subset_bits: int = DEFAULT_MAX_SUBSET_BITS,
                 max_class_bits: int = DEFAULT_MAX_CLASS_BITS):
        if field.is_rational:
            raise UsageError("the oracle needs a finite field")
        self.c = catalog
        self.field = field
        self.max_subset_bits = max_subset_bits
        self.max_class_bits = max_class_bits
        self.reps = catalog.reps(field)
        n = len(catalog)
        self.n = n
        self.full = (1 << n) - 1
        self._hom = {}
        # vertex-wise images of every map u -> x, and row spaces of every map x -> u
        self._gen_cols = [[self._cols(u, x) for x in range(n)] for u in range(n)]
        self._cogen_rows = [[self._rows(x, u) for u in range(n)] for x in range(n)]
        self._fac_rel = [sum(1 << u for u in range(n) if any(self._gen_cols[u][x])) for x in range(n)]
        self._sub_rel = [sum(1 << u for u in range(n) if any(self._cogen_rows[x][u])) for x in range(n)]
        self._trace_memo: dict = {}
        self._middle_memo: dict = {}
        self._profile_memo: dict = {}  # target summands -> (sub, quotient) decompositions
        self.ext = [[self._ext_dim(x, a) for a in range(n)] for x in range(n)]

    # Hom data over the oracle field -------------------------------------------

    def hom(self, i: int, j: int) -> list[Morphism]:
        if (i, j) not in self._hom:
            self._hom[i, j] = hom_basis(self.reps[i], self.reps[j])
        return self._hom[i, j]

    def _cols(self, u, x):
        return [[col for g in self.hom(u, x) for col in g.comps[v].columns()] for v in range(self.c.quiver.n)]

    def _rows(self, x, u):
        return [[row for g in self.hom(x, u) for row in g.comps[v].data] for v in range(self.c.quiver.n)]

    def _ext_dim(self, x: int, a: int) -> int:
        # cocycle count, independent of the Euler form used by the main path
        return ext_dimension_by_cocycles(self.reps[x], self.reps[a])

    def _span_full(self, vecs_per_vertex, x: int) -> bool:
        for v, d in enumerate(self.c.dims[x]):
            if d == 0:
                continue
            vecs = vecs_per_vertex[v]
            if len(vecs) < d or rank(Matrix(len(vecs), len(vecs[0]), tuple(vecs), self.field)) < d:
                return False
        return True

    def in_fac(self, mask: int, x: int) -> bool:
        """x is a quotient of a module in add(mask)."""
        key = ("f", mask & self._fac_rel[x], x)
        if key not in self._trace_memo:
            m = key[1]
            vecs = [[c for u in range(self.n) if m >> u & 1 for c in self._gen_cols[u][x][v]] for v in range(self.c.quiver.n)]
            self._trace_memo[key] = self._span_full(vecs, x)
        return self._trace_memo[key]

    def in_sub(self, mask: int, x: int) -> bool:
        """x is a submodule of a module in add(mask)."""
        key = ("s", mask & self._sub_rel[x], x)
        if key not in self._trace_memo:
            m = key[1]
            vecs = [[r for u in range(self.n) if m >> u & 1 for r in self._cogen_rows[x][u][v]] for v in range(self.c.quiver.n)]
            self._trace_memo[key] = self._span_full(vecs, x)
        return self._trace_memo[key]

    def fac_mask(self, mask: int) -> int:
        return sum(1 << x for x in range(self.n) if self.in_fac(mask, x))

    def sub_mask(self, mask: int) -> int:
        return sum(1 << x for x in range(self.n) if self.in_sub(mask, x))

    def decompose(self, rep: Representation) -> tuple[int, ...]:
        """Sorted ids with multiplicity, read off from the Hom-profile against the catalog."""
        if rep.is_zero():
            return ()
        if self.field.p != 2:
            out = self.c.decompose(rep)
            return tuple(i for i in sorted(out) for _ in range(out[i]))
        profile = [Fraction(f2_hom_dim(x, rep)) for x in self.reps]
        mult = self.c._hom_inverse.apply(profile)
        if any(x.denominator != 1 or x < 0 for x in mult):
            raise VerificationError(f"Hom-profile of {rep.label} is not a nonnegative integer combination")
        ids = tuple(i for i, x in enumerate(mult) for _ in range(int(x)))
        if tuple(map(sum, zip(*(self.c.dims[i] for i in ids)))) != rep.dims:
            raise VerificationError(f"decomposition of {rep.label} has the wrong dimension vector")
        return ids

    # extensions ----------------------------------------------------------------

    def all_extensions(self, quot: int, sub: int) -> list[tuple[int, ...]]:
        """Distinct middle terms (as sorted id tuples) of extensions of ``quot`` by ``sub``; split first."""
        seen = []
        for e in extension_middles(self.reps[quot], self.reps[sub], self.max_class_bits):
            m = self.decompose(e)
            if m not in seen:
                seen.append(m)
        return seen

    def middles(self, x: int, mask: int) -> int:
        """Bitmask of indecomposables occurring in middles of extensions of x by ⊕ A^{ext(x, A)}, A in mask."""
        rel = mask & sum(1 << a for a in range(self.n) if self.ext[x][a])
        key = (x, rel)
        if key in self._middle_memo:
            return self._middle_memo[key]
        summands = [a for a in range(self.n) if rel >> a & 1 for _ in range(self.ext[x][a])]
        out = 0
        if summands:
            sub = direct_sum([self.reps[a] for a in summands])
            for e in extension_middles(self.reps[x], sub, self.max_class_bits):
                for i in self.decompose(e):
                    out |= 1 << i
        self._middle_memo[key] = out
        return out

    def extension_witness(self, mask: int) -> ExtensionWitness | None:
        """A nonsplit extension leaving ``add(mask)``, or None."""
        for x in range(self.n):
            if not mask >> x & 1:
                continue
            esc = self.middles(x, mask) & ~mask
            if esc:
                rel = mask & sum(1 << a for a in range(self.n) if self.ext[x][a])
                summands = tuple(a for a in range(self.n) if rel >> a & 1 for _ in range(self.ext[x][a]))
                sub = direct_sum([self.reps[a] for a in summands])
                for e in extension_middles(self.reps[x], sub, self.max_class_bits):
                    mid = self.decompose(e)
                    if any(not mask >> i & 1 for i in mid):
                        return ExtensionWitness(summands, (x,), mid)
        return None

    # closure tests on bitmasks ------------------------------------------------

    def is_extension_closed(self, s: Subcat | int) -> bool:
        mask = _mask(s)
        return all(self.middles(x, mask) & ~mask == 0 for x in range(self.n) if mask >> x & 1)

    def is_image_closed(self, s: Subcat | int) -> bool:
        mask = _mask(s)
        return self.fac_mask(mask) & self.sub_mask(mask) & ~mask == 0

    def is_quotient_closed(self, s: Subcat | int) -> bool:
        mask = _mask(s)
        return self.fac_mask(mask) & ~mask == 0

    def is_submodule_closed(self, s: Subcat | int) -> bool:
        mask = _mask(s)
        return self.sub_mask(mask) & ~mask == 0

    def is_cokernel_closed(self, s: Subcat | int, max_summands: int = 2) -> bool:
        """Cokernels of maps A -> B with A, B in add s stay in add s, for B with at most ``max_summands`` summands.

        A submodule U of B is an image of some A in add s exactly when U lies
        in Fac s, so it is enough to run over those U.
        """
        mask = _mask(s)
        members = [x for x in range(self.n) if mask >> x & 1]
        for k in range(1, max_summands + 1):
            for target in itertools.combinations_with_replacement(members, k):
                for sub, quot in self._sub_quot_pairs(target):
                    if all(self.in_fac(mask, y) for y in sub) and any(not mask >> y & 1 for y in quot):
                        return False
        return True

    def _sub_quot_pairs(self, target: tuple[int, ...]) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Decompositions (U, B/U) over all subrepresentations U of B = ⊕ target."""
        if target not in self._profile_memo:
            b = direct_sum([self.reps[x] for x in target], self.c.quiver, self.field)
            pairs = set()
            for bases in subrepresentations(b):
                u, _ = subrepresentation(b, bases)
                quot, _ = quotient_representation(b, bases)
                pairs.add((self.decompose(u), self.decompose(quot)))
            self._profile_memo[target] = pairs
        return self._profile_memo[target]

    # enumerations ---------------------------------------------------------------

    def _guard(self) -> None:
        if self.n > self.max_subset_bits:
            raise InstanceTooLargeError(
                f"{self.n} indecomposables exceed the subset guard of {self.max_subset_bits} bits"
            )

    def _filter(self, test, threads: int = 1) -> list[Subcat]:
        self._guard()
        if threads > 1:
            return _parallel_filter(self, test, threads)
        return [Subcat(m) for m in range(self.full + 1) if getattr(self, test)(m)]

    def _ie(self, m: int) -> bool:
        return self.is_image_closed(m) and self.is_extension_closed(m)

    def _torsion(self, m: int) -> bool:
        return self.is_quotient_closed(m) and self.is_extension_closed(m)

    def _torsionfree(self, m: int) -> bool:
        return self.is_submodule_closed(m) and self.is_extension_closed(m)

    def enumerate_ie(self, threads: int = 1) -> list[Subcat]:
        return self._filter("_ie", threads)

    def enumerate_torsion_classes(self, threads: int = 1) -> list[Subcat]:
        return self._filter("_torsion", threads)

    def enumerate_torsionfree_classes(self, threads: int = 1) -> list[Subcat]:
        return self._filter("_torsionfree", threads)

    def perp(self, mask: int) -> int:
        """``{x : Hom(u, x) = 0 for all u in mask}``."""
        return sum(
            1 << x for x in range(self.n)
            if all(not self.hom(u, x) for u in range(self.n) if mask >> u & 1)
        )

    def enumerate_torsion_hearts(self, torsion: list[Subcat] | None = None) -> list[Subcat]:
        torsion = torsion if torsion is not None else self.enumerate_torsion_classes()
        out = set()
        for u in torsion:
            pu = self.perp(u.mask)
            for t in torsion:
                if u <= t:
                    out.add(Subcat(pu & t.mask))
        return sorted(out, key=Subcat.sort_key)

    def cok_by_presentation(self, pset: Iterable[int], x: int, max_map_bits: int = 14) -> bool:
        """Search every 0 -> P1 -> P0 -> x -> 0 over the oracle field with P0, P1 in add(pset).

        P0 ranges over sums with multiplicities at most dim Hom(u, x); P1 is
        any sum of members of ``pset`` with the complementary dimension vector.
        """
        pset = sorted(set(pset))
        target = self.c.dims[x]
        nq = self.c.quiver.n
        bounds = [len(self.hom(u, x)) for u in pset]
        p1_bound = max(sum(target) + sum(sum(self.c.dims[u]) * b for u, b in zip(pset, bounds)), 1)
        for m0 in itertools.product(*[range(b + 1) for b in bounds]):
            d0 = [sum(k * self.c.dims[u][v] for k, u in zip(m0, pset)) for v in range(nq)]
            d1 = [a - b for a, b in zip(d0, target)]
            if any(d < 0 for d in d1):
                continue
            for m1 in _multisets_with_dims(pset, self.c.dims, d1, p1_bound):
                if self._search_maps(pset, m1, m0, x, max_map_bits):
                    return True
        return False

    def _search_maps(self, pset, m1, m0, x, max_map_bits) -> bool:
        blocks0 = [u for u, k in zip(pset, m0) for _ in range(k)]
        blocks1 = [u for u, k in zip(pset, m1) for _ in range(k)]
        p0 = direct_sum([self.reps[u] for u in blocks0], self.c.quiver, self.field)
        p1 = direct_sum([self.reps[u] for u in blocks1], self.c.quiver, self.field)
        basis = hom_basis(p1, p0)
        if len(basis) > max_map_bits:
            raise InstanceTooLargeError(f"Hom space of dimension {len(basis)} exceeds the presentation guard")
        f = self.field
        for coeffs in itertools.product(f.elements(), repeat=len(basis)):
            comps = []
            for v in range(self.c.quiver.n):
                acc = Matrix.zeros(p0.dims[v], p1.dims[v], f)
                for k, g in zip(coeffs, basis):
                    if k:
                        acc = acc + g.comps[v].scale(k)
                comps.append(acc)
            phi = Morphism(p1, p0, tuple(comps))
            if not phi.is_injective():
                continue
            bases = [Matrix.from_columns(image_basis(m), m.nrows, f) if m.ncols else Matrix.zeros(m.nrows, 0, f) for m in comps]
            quot, _ = quotient_representation(p0, bases)
            if self.decompose(quot) == (x,):
                return True
        return False

    def smallest_containing(self, mask: int, classes: list[Subcat]) -> Subcat:
        out = self.full
        for t in classes:
            if mask & ~t.mask == 0:
                out &= t.mask
        return Subcat(out)

    def quotients_of(self, x: int) -> set[tuple[int, ...]]:
        """Decompositions of every quotient of the indecomposable ``x``."""
        rep = self.reps[x]
        out = set()
        for bases in subrepresentations(rep):
            quot, _ = quotient_representation(rep, bases)
            out.add(self.decompose(quot))
        return out

    def submodules_of(self, x: int) -> set[tuple[int, ...]]:
        rep = self.reps[x]
        out = set()
        for bases in subrepresentations(rep):
            sub, _ = subrepresentation(rep, bases)
            out.add(self.decompose(sub))
        return out

    def report(self, threads: int = 1) -> dict:
        ie = self.enumerate_ie(threads)
        tors = self.enumerate_torsion_classes(threads)
        tf = self.enumerate_torsionfree_classes(threads)
        hearts = self.enumerate_torsion_hearts(tors)
        lab = lambda subs: [self.c.label_list(s.members) for s in subs]  # noqa: E731
        return {
            "quiver": self.c.quiver.to_json(),
            "field": self.field.name,
            "counts": {
                "indecomposables": self.n,
                "ie_closed": len(ie),
                "torsion_classes": len(tors),
                "torsionfree_classes": len(tf),
                "torsion_hearts": len(hearts),
            },
            "ie_closed": lab(sorted(ie, key=Subcat.sort_key)),
            "torsion_classes": lab(sorted(tors, key=Subcat.sort_key)),
            "torsionfree_classes": lab(sorted(tf, key=Subcat.sort_key)),
            "torsion_hearts": lab(hearts),
        }


def _mask(s: Subcat | int) -> int:
    return s.mask if isinstance(s, Subcat) else s


def _multisets_with_dims(pset, dims, target, bound) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors over ``pset`` whose dimension vectors sum to ``target``."""
    def rec(k, remaining):
        if k == len(pset):
            if all(r == 0 for r in remaining):
                yield ()
            return
        d = dims[pset[k]]
        m = 0
        while all(r - m * x >= 0 for r, x in zip(remaining, d)) and m <= bound:
            for rest in rec(k + 1, [r - m * x for r, x in zip(remaining, d)]):
                yield (m,) + rest
            m += 1

    yield from rec(0, list(target))


# parallel sharding ----------------------------------------------------------------

_WORKER: Oracle | None = None


def _init_worker(quiver_json, field_p, max_bits, class_bits):
    global _WORKER
    from .quiver import parse_quiver

    _WORKER = Oracle(build_catalog(parse_quiver(quiver_json)), Field(field_p), max_bits, class_bits)


def _run_shard(args):
    test, lo, hi = args
    fn = getattr(_WORKER, test)
    return [m for m in range(lo, hi) if fn(m)]


def _parallel_filter(o: Oracle, test: str, threads: int) -> list[Subcat]:
    total = o.full + 1
    step = max(1, total // (threads * 4))
    shards = [(test, lo, min(lo + step, total)) for lo in range(0, total, step)]
    with ProcessPoolExecutor(threads, initializer=_init_worker,
                             initargs=(o.c.quiver.to_json(), o.field.p, o.max_subset_bits, o.max_class_bits)) as ex:
        found = [m for part in ex.map(_run_shard, shards) for m in part]
    return [Subcat(m) for m in sorted(found)]


def oracle_for(q: Quiver, field: Field = F2) -> Oracle:
    return Oracle(build_catalog(q), field)


def check_against(ie_brute: list[Subcat], classified: list[Subcat]) -> dict:
    """Differences between the brute-force and the classified sets of bitsets."""
    a, b = set(ie_brute), set(classified)
    return {"only_oracle": sorted(a - b, key=Subcat.sort_key), "only_classified": sorted(b - a, key=Subcat.sort_key)}


__all__ = [
    "ExtensionWitness",
    "Oracle",
    "check_against",
    "ext_dimension_by_cocycles",
    "extension_middles",
    "f2_hom_dim",
    "oracle_for",
    "subrepresentations",
    "subspaces",
]
