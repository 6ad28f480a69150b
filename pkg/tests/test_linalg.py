from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twinrigid.errors import UsageError
from twinrigid.linalg import (
    F2,
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
    rref,
    solve,
    vstack,
)

F3 = Field(3)


def test_rank_examples():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zeros(2, 2)) == 0
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)) == []
    k = kernel_basis(Matrix.zeros(2, 3))
    assert sorted(k) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    (v,) = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_solve_examples():
    assert solve(Matrix.identity(3), [1, 2, 3]) == (1, 2, 3)
    assert solve(Matrix.zeros(2, 2), [1, 0]) is None
    assert solve(Matrix.from_rows([[2]]), [1]) == (Fraction(1, 2),)
    with pytest.raises(UsageError):
        solve(Matrix.identity(2), [1])


def test_prime_field():
    assert F2(3) == 1 and F3(-1) == 2
    assert F3.inv(2) == 2
    assert rank(Matrix.from_rows([[1, 1], [1, 1]], F2)) == 1
    # singular mod 2 only
    m = [[1, 1], [1, 3]]
    assert rank(Matrix.from_rows(m, QQ)) == 2 and rank(Matrix.from_rows(m, F2)) == 1
    with pytest.raises(UsageError):
        Field(4)
    assert Field.parse("q") == QQ and Field.parse("F5") == Field(5)
    with pytest.raises(UsageError):
        Field.parse("r")


def test_blocks():
    a = Matrix.from_rows([[1, 2]])
    b = Matrix.from_rows([[3]])
    assert hstack([a, b], 1).data == ((1, 2, 3),)
    assert vstack([a, Matrix.from_rows([[0, 1]])], 2).shape == (2, 2)
    d = block_diag([a, b])
    assert d.shape == (2, 3) and d[1, 2] == 3 and d[1, 0] == 0
    assert hstack([], 2).shape == (2, 0)


def test_inverse_and_singular():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(2)
    with pytest.raises(UsageError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_complement():
    vs = [(1, 1, 0)]
    extra = complement_basis(vs, 3)
    cols = vs + [tuple(1 if i == j else 0 for i in range(3)) for j in extra]
    assert rank(Matrix.from_columns(cols, 3)) == 3


def test_rref_pivots_first_nonzero():
    rows, piv = rref(Matrix.from_rows([[0, 2, 4], [0, 1, 3]]))
    assert piv == [1, 2]
    assert rows == [[0, 1, 0], [0, 0, 1]]


entries = st.integers(-3, 3)


@st.composite
def matrices(draw, field=QQ):
    r = draw(st.integers(0, 4))
    c = draw(st.integers(1, 4))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows, field, ncols=c) if r else Matrix.zeros(0, c, field)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F2, F3]).flatmap(matrices))
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + len(k) == m.ncols
    for v in k:
        assert all(x == 0 for x in m.apply(v))
    assert len(image_basis(m)) == rank(m) == rank(m.T)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QQ, F3]).flatmap(matrices), st.lists(entries, min_size=4, max_size=4))
def test_solve_consistent_systems(m, x):
    x = [m.field(v) for v in x[: m.ncols]]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@settings(max_examples=40, deadline=None)
@given(matrices(), matrices())
def test_product_rank_bound(a, b):
    if a.ncols != b.nrows:
        b = Matrix.zeros(a.ncols, b.ncols)
    assert rank(a @ b) <= min(rank(a), rank(b))
