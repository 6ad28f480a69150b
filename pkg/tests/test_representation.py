import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twinrigid.errors import UsageError, VerificationError
from twinrigid.linalg import F2, QQ, Matrix
from twinrigid.quiver import linear_quiver
from twinrigid.representation import (
    Morphism,
    Representation,
    direct_sum,
    dualize,
    dualize_morphism,
    euler_form,
    ext_dim,
    hom_basis,
    hom_dim,
    identity,
    morphism_parts,
    zero_morphism,
)

Q = linear_quiver(3, "<<")  # 1 <- 2 <- 3, arrows (2,1), (3,2)


def rep(dims, *rows):
    maps = []
    for (s, t), r in zip(Q.arrows, rows):
        maps.append(Matrix.from_rows(r, QQ, ncols=dims[s - 1]) if r else Matrix.zeros(dims[t - 1], dims[s - 1]))
    return Representation(Q, dims, tuple(maps))


M100 = Representation.simple(Q, 1)
M010 = Representation.simple(Q, 2)
M001 = Representation.simple(Q, 3)
M110 = rep((1, 1, 0), [[1]], [])
M011 = rep((0, 1, 1), [], [[1]])
M111 = rep((1, 1, 1), [[1]], [[1]])


def test_shape_validation():
    with pytest.raises(UsageError):
        Representation(Q, (1, 1, 0), (Matrix.zeros(2, 1), Matrix.zeros(0, 1)))


def test_euler_examples():
    assert euler_form(Q, (0, 1, 0), (1, 0, 0)) == -1
    assert euler_form(Q, (1, 0, 0), (1, 0, 0)) == 1
    assert euler_form(Q, (1, 1, 1), (1, 1, 0)) == 0
    with pytest.raises(UsageError):
        euler_form(Q, (1, 0), (1, 0, 0))


def test_hom_examples():
    (inc,) = hom_basis(M110, M111)
    inc.check()
    assert inc.is_injective() and not inc.is_surjective()
    assert len(hom_basis(M111, M111)) == 1
    assert hom_basis(M010, M100) == []


def test_ext_examples():
    assert ext_dim(M010, M100) == 1
    for m in (M100, M010, M001, M110, M011, M111):
        assert ext_dim(m, m) == 0
    assert ext_dim(M001, M100) == 0


def test_morphism_parts_identity_and_zero():
    parts = morphism_parts(identity(M111))
    assert parts.kernel.is_zero() and parts.cokernel.is_zero() and parts.image.dims == M111.dims
    parts = morphism_parts(zero_morphism(M110, M111))
    assert parts.kernel.dims == M110.dims and parts.image.is_zero() and parts.cokernel.dims == M111.dims


def test_morphism_parts_inclusion():
    (inc,) = hom_basis(M110, M111)
    parts = morphism_parts(inc)
    assert parts.kernel.is_zero()
    assert parts.image.dims == (1, 1, 0)
    assert parts.cokernel.dims == (0, 0, 1)
    for m in (parts.kernel_inclusion, parts.image_inclusion, parts.coimage_projection, parts.cokernel_projection):
        m.check()
    # coimage then image inclusion recovers the map
    assert (parts.image_inclusion @ parts.coimage_projection).flat() == inc.flat()


def test_direct_sum():
    with pytest.raises(UsageError):
        direct_sum([])
    assert direct_sum([], Q).is_zero()
    assert direct_sum([M110]) == M110
    assert direct_sum([M110, M011]).dims == (1, 2, 1)


def test_dualize():
    assert dualize(Representation.zero(Q)).is_zero()
    d = dualize(M110)
    assert d.quiver == linear_quiver(3, ">>") and d.dims == (1, 1, 0)
    for v in Q.vertices:
        assert dualize(Representation.simple(Q, v)) == Representation.simple(Q.opposite(), v)
    (inc,) = hom_basis(M110, M111)
    dualize_morphism(inc).check()
    assert hom_dim(dualize(M111), dualize(M110)) == 1


def test_broken_morphism_detected():
    bad = Morphism(M110, M111, (Matrix.identity(1), Matrix.zeros(1, 1), Matrix.zeros(1, 0)))
    with pytest.raises(VerificationError):
        bad.check()


reps = st.sampled_from([M100, M010, M001, M110, M011, M111])


@settings(max_examples=40, deadline=None)
@given(reps, reps, reps)
def test_hom_basis_composition_intertwines(a, b, c):
    for f in hom_basis(a, b):
        f.check()
        for g in hom_basis(b, c):
            (g @ f).check()


@settings(max_examples=30, deadline=None)
@given(st.lists(reps, min_size=1, max_size=3), reps)
def test_hom_additive(parts, x):
    s = direct_sum(parts)
    assert hom_dim(s, x) == sum(hom_dim(p, x) for p in parts)
    assert hom_dim(x, s) == sum(hom_dim(x, p) for p in parts)


def test_field_independent_on_a3():
    pool = [M100, M010, M001, M110, M011, M111]
    over2 = [Representation(r.quiver, r.dims, tuple(Matrix.from_rows(m.data, F2, ncols=m.ncols) for m in r.maps), F2) for r in pool]
    assert [[hom_dim(x, y) for y in pool] for x in pool] == [[hom_dim(x, y) for y in over2] for x in over2]
