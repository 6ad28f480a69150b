import itertools

import pytest

from conftest import catalog, ids, oracle, small_quivers
from twinrigid.approx import cok_set, fac_set
from twinrigid.errors import UsageError
from twinrigid.subcat import Subcat
from twinrigid.twin_rigid import (
    NotMutableError,
    TwinRigidPair,
    bongartz_completion,
    complete,
    enumerate_rigid,
    enumerate_tilting,
    enumerate_twin_rigid,
    is_rigid,
    is_twin_rigid,
    mutate,
    mutation_quiver,
    mutation_step,
    tilting_hasse,
    twin_rigid_coideals,
)


def test_is_rigid_examples(a3):
    assert is_rigid(a3, set())
    assert not is_rigid(a3, ids(a3, "100+010"))
    assert is_rigid(a3, ids(a3, "100+111+001"))


def test_enumerate_rigid_small(a1, a2):
    assert enumerate_rigid(a1) == [frozenset(), frozenset({0})]
    got = {a2.label(s) for s in enumerate_rigid(a2)}
    assert got == {"", "10", "01", "11", "10+11", "01+11"}


@pytest.mark.parametrize("q", small_quivers()[:6], ids=str)
def test_enumerate_rigid_matches_subset_filter(q):
    c, o = catalog(q), oracle(q)
    # the oracle's Ext table comes from cocycles, not the Euler form
    brute = [
        frozenset(s)
        for r in range(len(c) + 1)
        for s in itertools.combinations(c.ids, r)
        if all(o.ext[a][b] == 0 for a in s for b in s)
    ]
    assert sorted(enumerate_rigid(c), key=sorted) == sorted(brute, key=sorted)


def test_is_twin_rigid_examples(a3, a2):
    for p in enumerate_rigid(a3):
        assert is_twin_rigid(a3, p, p)
    assert is_twin_rigid(a3, a3.projectives, a3.injectives)
    assert a3.label(a3.injectives) == "001+011+111"
    assert not is_twin_rigid(a2, ids(a2, "01"), ids(a2, "10"))
    with pytest.raises(UsageError):
        is_twin_rigid(a3, ids(a3, "100+010"), ids(a3, "100+010"))


def test_mutate_examples(a2, a3):
    lam = a2.projectives
    assert a2.label(lam) == "10+11"
    out = mutate(a2, TwinRigidPair(lam, lam), a2.index["10"])
    assert out == TwinRigidPair(lam, a2.injectives) and a2.label(out.i) == "01+11"
    lam = a3.projectives
    new, y, middle = mutation_step(a3, TwinRigidPair(lam, lam), a3.index["100"])
    assert a3.label(new.i) == "010+110+111"
    assert a3.labels[y] == "010" and [a3.labels[m] for m in middle] == ["110"]
    with pytest.raises(NotMutableError, match="not mutable"):
        mutate(a3, TwinRigidPair(lam, lam), a3.index["111"])
    with pytest.raises(UsageError, match="not a summand"):
        mutate(a3, TwinRigidPair(lam, lam), a3.index["001"])


def test_mutation_quiver_examples(a2, a3):
    mq = mutation_quiver(a2, frozenset())
    assert mq.vertices == [TwinRigidPair(frozenset(), frozenset())] and mq.arrows == []
    mq = mutation_quiver(a2, a2.projectives)
    assert len(mq.vertices) == 2 and len(mq.arrows) == 1
    assert mq.vertices[mq.arrows[0].target].i == a2.injectives
    assert len(mutation_quiver(a3, a3.projectives).vertices) == 5


def test_complete_examples(a2, a3):
    for p in enumerate_rigid(a3):
        assert complete(a3, p, p) == TwinRigidPair(p, p)
    assert complete(a2, a2.projectives, ids(a2, "01")) == TwinRigidPair(a2.projectives, a2.injectives)
    got = complete(a3, a3.projectives, ids(a3, "001"))
    assert a3.index["001"] in got.i and len(got.i) == 3
    tilts_with = sorted((t for t in enumerate_tilting(a3) if a3.index["001"] in t), key=sorted)
    assert len(tilts_with) == 2 and got.i == tilts_with[0]


def test_complete_rejects(a3):
    with pytest.raises(UsageError):
        complete(a3, ids(a3, "010"), ids(a3, "110"))
    with pytest.raises(UsageError):
        complete(a3, a3.projectives, ids(a3, "100+010"))


def test_enumerate_tilting_small(a1, a2, a3):
    assert enumerate_tilting(a1) == [frozenset({0})]
    assert len(enumerate_tilting(a2)) == 2
    tilts = {a3.label(t) for t in enumerate_tilting(a3)}
    assert len(tilts) == 5
    assert {"100+110+111", "001+011+111", "100+001+111"} <= tilts


def test_tilting_hasse_shape(a1, a2, a3):
    assert len(tilting_hasse(a1).vertices) == 1 and tilting_hasse(a1).arrows == []
    mq = tilting_hasse(a2)
    (arrow,) = mq.arrows
    assert (a2.labels[arrow.x], [a2.labels[m] for m in arrow.middle], a2.labels[arrow.y]) == ("10", ["11"], "01")
    mq = tilting_hasse(a3)
    outdeg = {k: 0 for k in range(len(mq.vertices))}
    indeg = dict(outdeg)
    for a in mq.arrows:
        outdeg[a.source] += 1
        indeg[a.target] += 1
    sources = [mq.vertices[k].i for k in outdeg if indeg[k] == 0]
    sinks = [mq.vertices[k].i for k in outdeg if outdeg[k] == 0]
    assert sources == [a3.projectives] and sinks == [a3.injectives]


@pytest.mark.parametrize("q", small_quivers(), ids=str)
def test_bongartz(q):
    c = catalog(q)
    assert bongartz_completion(c, frozenset()) == c.projectives
    for m in enumerate_rigid(c):
        t = bongartz_completion(c, m)
        assert m <= t and t in enumerate_tilting(c)
        # largest torsion class among the completions of m
        others = [fac_set(c, u) for u in enumerate_tilting(c) if m <= u]
        assert all(f <= fac_set(c, t) for f in others)


@pytest.mark.parametrize("q", small_quivers(), ids=str)
def test_invariants(q):
    c = catalog(q)
    pairs = enumerate_twin_rigid(c)
    for pair in pairs:
        assert len(pair.p) == len(pair.i)
    for p in enumerate_rigid(c):
        mq = mutation_quiver(c, p)
        assert set(mq.coideals()) == set(twin_rigid_coideals(c, p))
        assert all(v.p == p for v in mq.vertices) and mq.vertices[0] == TwinRigidPair(p, p)
        for a in mq.arrows:
            assert a.x != a.y and c.ext_table[a.y][a.x] > 0
        # co-rank one: at most two completions, at least one
        cok = cok_set(c, p)
        for m in enumerate_rigid(c):
            if len(m) == len(p) - 1 and m <= cok:
                xs = [x for x in cok - m if is_rigid(c, m | {x})]
                assert 1 <= len(xs) <= 2


@pytest.mark.parametrize("q", small_quivers()[:6], ids=str)
def test_exchange_sequences_do_not_split(q):
    c, o = catalog(q), oracle(q)
    for p in enumerate_rigid(c):
        for a in mutation_quiver(c, p).arrows:
            middles = o.all_extensions(a.y, a.x)
            assert len(middles) >= 2
            assert tuple(sorted(a.middle)) in middles


@pytest.mark.parametrize("q", small_quivers(), ids=str)
def test_self_duality(q):
    c, cop = catalog(q), catalog(q.opposite())
    # dualizing keeps dimension vectors, so labels match across Q and Q^op
    relabel = lambda s: frozenset(cop.index[c.labels[x]] for x in s)  # noqa: E731
    ours = {(relabel(t.i), relabel(t.p)) for t in enumerate_twin_rigid(c)}
    theirs = {(t.p, t.i) for t in enumerate_twin_rigid(cop)}
    assert ours == theirs


def test_monotone_along_arrows(a3):
    from twinrigid.subcat import classify_ie, fac_cap_sub

    classified = [e.subcat for e in classify_ie(a3)]
    for p in enumerate_rigid(a3):
        mq = mutation_quiver(a3, p)
        for a in mq.arrows:
            c1 = fac_cap_sub(a3, p, mq.vertices[a.source].i)
            c2 = fac_cap_sub(a3, p, mq.vertices[a.target].i)
            assert c1 < c2
            assert not any(c1 < s < c2 for s in classified)
    assert Subcat.of(a3.ids) in classified
