"""Subcategories as bitsets and the classification of IE-closed subcategories."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .approx import fac_contains, sub_contains
from .catalog import Catalog, SummandSet
from .errors import VerificationError
from .twin_rigid import TwinRigidPair, enumerate_rigid, mutation_quiver


@dataclass(frozen=True)
class Subcat:
    """Additive closure of the indecomposables whose bits are set in ``mask``."""

    mask: int

    @classmethod
    def of(cls, ids: Iterable[int]) -> "Subcat":
        m = 0
        for i in ids:
            m |= 1 << i
        return cls(m)

    @property
    def members(self) -> SummandSet:
        return frozenset(i for i in range(self.mask.bit_length()) if self.mask >> i & 1)

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __le__(self, other: "Subcat") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subcat") -> bool:
        return self <= other and self.mask != other.mask

    def sort_key(self) -> tuple:
        return (len(self), tuple(sorted(self.members)))


def fac_cap_sub(c: Catalog, p: Iterable[int], i: Iterable[int]) -> Subcat:
    p, i = frozenset(p), frozenset(i)
    return Subcat.of(x for x in c.ids if fac_contains(c, p, x) and sub_contains(c, i, x))


def ext_projectives(c: Catalog, s: Subcat) -> SummandSet:
    members = s.members
    return frozenset(x for x in members if all(c.ext_table[x][y] == 0 for y in members))


def ext_injectives(c: Catalog, s: Subcat) -> SummandSet:
    members = s.members
    return frozenset(x for x in members if all(c.ext_table[y][x] == 0 for y in members))


@dataclass(frozen=True)
class Classified:
    subcat: Subcat
    pair: TwinRigidPair


def classify_ie(c: Catalog) -> list[Classified]:
    """All IE-closed subcategories, one per basic twin rigid pair, in canonical order.

    Pairs come from mutation quivers rooted at every rigid module; the
    bijection and its inverse are checked before returning.
    """
    key = ("classify",)
    if key in c.memo:
        return c.memo[key]
    by_subcat: dict[Subcat, TwinRigidPair] = {}
    for p in enumerate_rigid(c):
        for pair in mutation_quiver(c, p).vertices:
            s = fac_cap_sub(c, pair.p, pair.i)
            if s in by_subcat and by_subcat[s] != pair:
                raise VerificationError(
                    f"pairs {by_subcat[s].describe(c)} and {pair.describe(c)} give the same subcategory"
                )
            by_subcat[s] = pair
    out = []
    for s, pair in by_subcat.items():
        if ext_projectives(c, s) != pair.p or ext_injectives(c, s) != pair.i:
            raise VerificationError(f"Ext-projectives/injectives of {c.label(s.members)} do not give back {pair.describe(c)}")
        if fac_cap_sub(c, ext_projectives(c, s), ext_injectives(c, s)) != s:
            raise VerificationError("round trip through (P(C), I(C)) changed the subcategory")
        out.append(Classified(s, pair))
    out.sort(key=lambda e: e.subcat.sort_key())
    c.memo[key] = out
    return out


def classification_json(c: Catalog, rows: list[Classified]) -> list[dict]:
    return [
        {
            "indecomposables": c.label_list(e.subcat.members),
            "ext_progenerator": c.label_list(e.pair.p),
            "ext_injective_cogenerator": c.label_list(e.pair.i),
        }
        for e in rows
    ]


def classification_from_json(c: Catalog, data: list[dict]) -> list[Classified]:
    """Inverse of :func:`classification_json`."""
    out = []
    for row in data:
        s = Subcat.of(c.parse_ids("+".join(row["indecomposables"])))
        p = c.parse_ids("+".join(row["ext_progenerator"]))
        i = c.parse_ids("+".join(row["ext_injective_cogenerator"]))
        out.append(Classified(s, TwinRigidPair(p, i)))
    return out
