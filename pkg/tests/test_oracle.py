import pytest

from conftest import catalog, ids, oracle, small_quivers
from twinrigid.errors import InstanceTooLargeError, UsageError
from twinrigid.linalg import F2, QQ, Field
from twinrigid.oracle import Oracle, check_against, ext_dimension_by_cocycles, f2_hom_dim, subrepresentations, subspaces
from twinrigid.quiver import linear_quiver
from twinrigid.representation import hom_dim
from twinrigid.subcat import Subcat, classify_ie


def test_subspace_counts():
    assert len(subspaces(0, F2)) == 1
    assert len(subspaces(3, F2)) == 16  # 1 + 7 + 7 + 1
    assert len(subspaces(2, Field(3))) == 6


def test_subrepresentations_of_11(a2):
    rep = a2.rep(a2.index["11"], F2)
    assert sorted(tuple(b.ncols for b in s) for s in subrepresentations(rep)) == [(0, 0), (1, 0), (1, 1)]


def test_quotients_and_submodules(a3, o3):
    lab = lambda t: "+".join(a3.labels[i] for i in t)  # noqa: E731
    assert {lab(t) for t in o3.quotients_of(a3.index["111"])} == {"", "001", "011", "111"}
    assert {lab(t) for t in o3.submodules_of(a3.index["111"])} == {"", "100", "110", "111"}


@pytest.mark.parametrize("q", small_quivers()[-2:], ids=str)
def test_packed_hom_matches_generic(q):
    c = catalog(q)
    r = c.reps(F2)
    for a in r:
        for b in r:
            assert f2_hom_dim(a, b) == hom_dim(a, b)
            assert ext_dimension_by_cocycles(a, b) == hom_dim(a, b) - sum(x * y for x, y in zip(a.dims, b.dims)) + sum(
                a.dims[s - 1] * b.dims[t - 1] for s, t in q.arrows
            )


def test_all_extensions_examples(a2, o2, a3, o3):
    l2 = lambda ms: [[a2.labels[i] for i in m] for m in ms]  # noqa: E731
    assert l2(o2.all_extensions(a2.index["01"], a2.index["10"])) == [["10", "01"], ["11"]]
    l3 = lambda ms: [[a3.labels[i] for i in m] for m in ms]  # noqa: E731
    assert l3(o3.all_extensions(a3.index["010"], a3.index["100"])) == [["100", "010"], ["110"]]
    assert l3(o3.all_extensions(a3.index["001"], a3.index["100"])) == [["100", "001"]]


@pytest.mark.parametrize("q", small_quivers()[:6], ids=str)
def test_split_class_always_present(q):
    c, o = catalog(q), oracle(q)
    for x in c.ids:
        for y in c.ids:
            ms = o.all_extensions(x, y)
            assert ms[0] == tuple(sorted((x, y)))
            assert (len(ms) >= 2) == (c.ext_table[x][y] > 0)


def test_extension_closed_examples(a2, o2, a3, o3):
    assert o2.is_extension_closed(Subcat.of(a2.ids))
    assert not o2.is_extension_closed(Subcat.of(ids(a2, "10+01")))
    assert o3.is_extension_closed(Subcat.of(ids(a3, "100+111+001")))
    # the AR sequence 0 -> 110 -> 111 + 010 -> 011 -> 0 has a decomposable middle term
    assert not o3.is_extension_closed(Subcat.of(ids(a3, "110+011")))
    w = o3.extension_witness(Subcat.of(ids(a3, "110+011")).mask)
    assert w is not None and sorted(a3.labels[i] for i in w.middle) == ["010", "111"]


def test_image_closed_examples(a2, o2, a3, o3):
    for x in a3.ids:
        assert o3.is_image_closed(Subcat.of([x]))
    assert o2.is_image_closed(Subcat.of(a2.ids))
    assert not o3.is_image_closed(Subcat.of(ids(a3, "110+011")))


def test_trace_over_decomposable_generators():
    # 111 is a quotient of 110 + 011 over 1 -> 2 <- 3 and a submodule of it over 1 <- 2 -> 3,
    # in neither case through a single summand
    c = catalog(linear_quiver(3, "><"))
    o = oracle(c.quiver)
    i = c.index
    assert o.in_fac(Subcat.of(ids(c, "110+011")).mask, i["111"])
    assert not o.in_fac(Subcat.of([i["110"]]).mask, i["111"])
    assert not o.in_fac(Subcat.of([i["011"]]).mask, i["111"])
    c = catalog(linear_quiver(3, "<>"))
    o = oracle(c.quiver)
    i = c.index
    assert o.in_sub(Subcat.of(ids(c, "110+011")).mask, i["111"])
    assert not o.in_sub(Subcat.of([i["110"]]).mask, i["111"])


def test_quotient_submodule_examples(a2, o2, a3, o3):
    whole = Subcat.of(a3.ids)
    assert o3.is_quotient_closed(whole) and o3.is_submodule_closed(whole)
    s = Subcat.of(ids(a2, "11"))
    assert not o2.is_quotient_closed(s) and not o2.is_submodule_closed(s)
    assert o3.is_quotient_closed(Subcat.of(ids(a3, "001+011+111")))


def test_enumeration_counts(a1, a2, a3):
    for c, ie, tors in ((a1, 2, 2), (a2, 7, 5), (a3, 34, 14)):
        o = oracle(c.quiver)
        assert len(o.enumerate_ie()) == ie
        assert len(o.enumerate_torsion_classes()) == tors
        assert len(o.enumerate_torsionfree_classes()) == tors


def test_torsion_hearts(a3, o3):
    tors = o3.enumerate_torsion_classes()
    hearts = set(o3.enumerate_torsion_hearts(tors))
    assert Subcat.of(a3.ids) in hearts
    assert set(tors) <= hearts
    ie = set(o3.enumerate_ie())
    assert hearts < ie
    assert ie - hearts == {Subcat.of(ids(a3, "100+111+001"))}


@pytest.mark.parametrize("q", small_quivers()[:14], ids=str)
def test_ie_is_torsion_cap_torsionfree(q):
    o = oracle(q)
    tors, tf = o.enumerate_torsion_classes(), o.enumerate_torsionfree_classes()
    for s in o.enumerate_ie():
        t, f = o.smallest_containing(s.mask, tors), o.smallest_containing(s.mask, tf)
        assert Subcat(t.mask & f.mask) == s
    for h in o.enumerate_torsion_hearts(tors):
        assert o.is_image_closed(h) and o.is_extension_closed(h)


def test_other_prime(a3):
    o = Oracle(a3, Field(3))
    assert len(o.enumerate_ie()) == 34


def test_guards(a3):
    with pytest.raises(UsageError):
        Oracle(a3, QQ)
    with pytest.raises(InstanceTooLargeError):
        Oracle(a3, max_subset_bits=5).enumerate_ie()
    with pytest.raises(InstanceTooLargeError):
        Oracle(a3, max_class_bits=0).all_extensions(a3.index["010"], a3.index["100"])


def test_threads_do_not_change_results(a3_alt):
    o = oracle(a3_alt.quiver)
    assert o.enumerate_ie(threads=2) == o.enumerate_ie()
    assert o.enumerate_torsion_classes(threads=3) == o.enumerate_torsion_classes()


def test_report_and_check(a3):
    o = oracle(a3.quiver)
    rep = o.report()
    assert rep["counts"] == {
        "indecomposables": 6,
        "ie_closed": 34,
        "torsion_classes": 14,
        "torsionfree_classes": 14,
        "torsion_hearts": 33,
    }
    assert rep["field"] == "f2" and len(rep["ie_closed"]) == 34
    d = check_against(o.enumerate_ie(), [e.subcat for e in classify_ie(a3)])
    assert d == {"only_oracle": [], "only_classified": []}
    d = check_against(o.enumerate_ie(), [e.subcat for e in classify_ie(a3)][1:])
    assert d["only_oracle"] == [Subcat(0)]
