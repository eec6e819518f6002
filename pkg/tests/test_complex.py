import json

import pytest
from hypothesis import given, settings, strategies as st

from momentangle.complex import (
    ComplexError,
    all_faces,
    boundary_complex,
    delete_vertex,
    euler_characteristic,
    f_vector,
    from_dict,
    from_json,
    full_subcomplex,
    glue_along_face,
    join,
    new_complex,
    simplex,
)
from momentangle.polytopes import build_lhat, disjoint_points

from oracles import closure

SQUARE = new_complex(4, [[1, 2], [2, 3], [3, 4], [1, 4]])
TRIANGLE = new_complex(3, [[1, 2], [2, 3], [1, 3]])
S0 = new_complex(2, [[1], [2]])


@st.composite
def complexes(draw, max_m=6):
    m = draw(st.integers(1, max_m))
    faces = draw(st.lists(st.sets(st.integers(1, m), min_size=1, max_size=m), max_size=8))
    return new_complex(m, [sorted(f) for f in faces])


def test_new_complex_examples():
    assert len(TRIANGLE.facets) == 3
    assert new_complex(3, [[1, 2, 3], [1, 2]]).facets == ((1, 2, 3),)
    E = new_complex(2, [])
    assert E.is_empty() and E.ghost_vertices() == (1, 2)


@pytest.mark.parametrize("faces", [[[0, 1]], [[1, 4]], [[1, 1, 2]]])
def test_new_complex_errors(faces):
    with pytest.raises(ComplexError):
        new_complex(3, faces)


def test_all_faces():
    assert all_faces(TRIANGLE, 1) == [(1, 2), (1, 3), (2, 3)]
    assert all_faces(TRIANGLE, 2) == []
    assert all_faces(simplex([1, 2, 3]), 0) == [(1,), (2,), (3,)]


def test_full_subcomplex_examples():
    K = full_subcomplex(SQUARE, {1, 3})
    assert K.facets == ((1,), (3,)) and K.vertices == (1, 3)
    assert full_subcomplex(SQUARE, set()).is_empty()
    dL = boundary_complex(build_lhat(2, 2))
    assert full_subcomplex(dL, dL.vertices) == dL
    with pytest.raises(ComplexError):
        full_subcomplex(SQUARE, {5})


def test_full_subcomplex_keeps_ghosts():
    K = full_subcomplex(new_complex(3, [[1, 2]]), {1, 3})
    assert K.vertices == (1, 3) and K.facets == ((1,),)
    assert K.ghost_vertices() == (3,)


def test_join_examples():
    sq, offset = join(S0, S0)
    assert offset == 2 and len(sq.facets) == 4
    assert f_vector(sq) == [4, 4]
    oct_, _ = join(join(S0, S0)[0], S0)
    assert len(oct_.facets) == 8
    assert f_vector(oct_) == [6, 12, 8] and euler_characteristic(oct_) == 2
    cone, _ = join(TRIANGLE, simplex([1]))
    assert f_vector(cone) == [4, 6, 3]


def test_glue_along_face():
    K = glue_along_face(simplex([1, 2, 3]), [1, 2], 2)
    assert K.facets == ((1, 2, 3), (1, 2, 4))
    path = glue_along_face(simplex([1, 2]), [1], 1)
    assert path.facets == ((1, 2), (1, 3))
    with pytest.raises(ComplexError):
        glue_along_face(simplex([1, 2, 3]), [1, 2, 3], 2)
    with pytest.raises(ComplexError):
        glue_along_face(TRIANGLE, [1, 2, 3], 3)


def test_boundary_complex():
    for d in range(1, 5):
        B = boundary_complex(simplex(range(1, d + 2)))
        assert len(B.facets) == d + 1
    two = new_complex(4, [[1, 2, 3], [1, 2, 4]])
    assert boundary_complex(two).facets == ((1, 3), (1, 4), (2, 3), (2, 4))
    assert boundary_complex(build_lhat(2, 3)).facets == ((1, 3), (1, 5), (2, 3), (2, 4), (4, 5))
    with pytest.raises(ComplexError):
        boundary_complex(new_complex(4, [[1, 2, 3], [3, 4]]))
    with pytest.raises(ComplexError):
        boundary_complex(new_complex(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5]]))


def test_delete_vertex():
    assert delete_vertex(SQUARE, 1).facets == ((2, 3), (3, 4))
    P = delete_vertex(disjoint_points(4), 2)
    assert P.facets == ((1,), (3,), (4,))
    with pytest.raises(ComplexError):
        delete_vertex(SQUARE, 9)


def test_f_vectors():
    assert f_vector(boundary_complex(simplex([1, 2, 3]))) == [3, 3]
    assert euler_characteristic(TRIANGLE) == 0
    # brute-force count for the boundary of two tetrahedra glued on a triangle
    B = boundary_complex(build_lhat(3, 2))
    assert f_vector(B) == [5, 9, 6]
    assert euler_characteristic(B) == 2


def test_lhat_boundary_is_sphere_like():
    for d in range(1, 5):
        for ell in range(1, 6):
            B = boundary_complex(build_lhat(d, ell))
            assert B.is_pure() and B.dim == d - 1
            if d >= 2:
                assert euler_characteristic(B) == 1 + (-1) ** (d - 1)
                # closed pseudomanifold: every ridge in exactly two facets
                for r in B.faces(d - 2):
                    assert sum(1 for f in B.facets if set(r) <= set(f)) == 2


def test_json_roundtrip_and_rejects():
    K = delete_vertex(SQUARE, 1)
    assert from_json(K.to_json()) == K
    assert json.loads(SQUARE.to_json()) == {"m": 4, "facets": [[1, 2], [1, 4], [2, 3], [3, 4]]}
    for bad in (
        {"m": 3, "facets": [[2, 1]]},
        {"m": 3, "facets": [[1, 2], [1, 2]]},
        {"m": 3, "facets": [[1, 2, 3], [1, 2]]},
        {"m": 2, "facets": [[1, 3]]},
        {"facets": []},
    ):
        with pytest.raises(ComplexError):
            from_dict(bad)
    with pytest.raises(ComplexError):
        from_json("{not json")


@given(complexes())
def test_generation_idempotent(K):
    assert new_complex(K.m, K.facets) == K
    assert K.face_set == closure(K.facets)


@given(complexes(), st.data())
def test_full_subcomplex_composes(K, data):
    I = data.draw(st.sets(st.sampled_from(K.vertices)))
    J = data.draw(st.sets(st.sampled_from(sorted(I)))) if I else set()
    assert full_subcomplex(full_subcomplex(K, I), J) == full_subcomplex(K, I & J)


@settings(max_examples=50)
@given(complexes(4), complexes(4))
def test_join_f_vector_convolution(K1, K2):
    J, _ = join(K1, K2)

    def fv(K):
        return [1] + f_vector(K)

    a, b, c = fv(K1), fv(K2), fv(J)
    for k in range(len(c)):
        expect = sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b))
        assert c[k] == expect


@given(st.integers(1, 4), st.integers(1, 5))
def test_glue_preserves_purity(d, ell):
    L = build_lhat(d, ell)
    assert L.is_pure() and L.dim == d and len(L.facets) == ell
