import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigidkernel.dihedral_cayley import (
    dihedral_apply,
    dihedral_mul,
    edge_vector,
    elements,
    from_perm,
    incidence_rows,
    mir,
    mirror_product,
    rot,
    spanning_tree_edges,
    st1_schreier_words,
    vertex_conditions,
    walk_edge_vector,
    cycle_space_basis,
)
from rigidkernel.gf2 import Mat2, rank, span_equal
from rigidkernel.selfsim import root_perm, hanoihedral_spec


def test_multiplication_examples():
    for d in (3, 5, 7):
        for i in range(d):
            assert mir(d, i) * mir(d, i) == rot(d, 0)
    assert dihedral_mul(mir(5, 3), mir(5, 1)) == rot(5, 4)
    assert dihedral_mul(mir(5, 2), rot(5, 1)) == mir(5, 4)
    with pytest.raises(ValueError):
        mir(3, 0) * mir(5, 0)


def test_apply_examples():
    assert all(dihedral_apply(rot(5, 0), x) == x for x in range(5))
    assert dihedral_apply(mir(5, 4), 3) == 0
    assert dihedral_apply(rot(7, 3), 5) == 1


@pytest.mark.parametrize("d", [3, 5, 7])
def test_multiplication_table(d):
    h = (d + 1) // 2
    for i, j in product(range(d), repeat=2):
        assert mir(d, i) * mir(d, j) == rot(d, 2 * (i - j))
        assert mir(d, i) * rot(d, j) == mir(d, i - j * h)
        assert rot(d, i) * rot(d, j) == rot(d, i + j)
        assert rot(d, j) * mir(d, i) == mir(d, i + j * h)


def test_mirror_product_examples():
    assert mirror_product(3, ()) == rot(3, 0)
    assert mirror_product(5, (2, 2)) == rot(5, 0)
    assert mirror_product(3, (1, 2, 1, 0)) == rot(3, 0)


@given(st.sampled_from([3, 5, 7]), st.data())
def test_mirror_product_matches_iteration(d, data):
    idx = data.draw(st.lists(st.integers(0, d - 1), max_size=12))
    out = rot(d, 0)
    for i in idx:
        out = out * mir(d, i)
    assert mirror_product(d, idx) == out


def test_perm_recognition():
    for d in (3, 5):
        for e in elements(d):
            assert from_perm(d, e.perm()) == e
    assert from_perm(5, (1, 0, 2, 3, 4)) is None


def test_edge_vector_examples():
    spec = hanoihedral_spec(3)
    assert not edge_vector(spec, ())
    assert not edge_vector(spec, (2, 2))
    v = edge_vector(spec, (1, 2, 1, 0))
    assert v.weight() == 4
    assert v == walk_edge_vector(3, (1, 2, 1, 0))


@given(st.sampled_from([3, 5, 7]), st.data())
def test_edge_vector_is_walk_parity(d, data):
    w = tuple(data.draw(st.lists(st.integers(0, d - 1), max_size=16)))
    assert edge_vector(hanoihedral_spec(d), w) == walk_edge_vector(d, w)


@given(st.sampled_from([3, 5]), st.data())
def test_closed_walk_characterization(d, data):
    w = tuple(data.draw(st.lists(st.integers(0, d - 1), max_size=14)))
    v = edge_vector(hanoihedral_spec(d), w)
    closed = all(bin(r & v.bits).count("1") % 2 == 0 for r in vertex_conditions(d).rows)
    assert closed == (root_perm(hanoihedral_spec(d), w) == tuple(range(d)))


@pytest.mark.parametrize("d,r", [(3, 4), (5, 16), (7, 36)])
def test_cycle_space_rank(d, r):
    assert rank(cycle_space_basis(d)) == r
    assert rank(cycle_space_basis(d)) + rank(vertex_conditions(d)) == d * d


@pytest.mark.parametrize("d", [3, 5])
def test_vertex_conditions(d):
    vc = vertex_conditions(d)
    assert len(vc) == 2 * d and rank(vc) == 2 * d - 1
    total = 0
    for r in vc.rows:
        total ^= r
    assert total == 0
    assert span_equal(vc, incidence_rows(d))


def test_spanning_tree_size():
    for d in (3, 5, 7):
        assert len(spanning_tree_edges(d)) == 2 * d - 1


def test_schreier_words_lie_in_st1():
    spec = hanoihedral_spec(5)
    ident = tuple(range(5))
    assert all(root_perm(spec, w) == ident for w in st1_schreier_words(5))


def test_schreier_edge_vectors_satisfy_conditions():
    rng = random.Random(0)
    d = 5
    spec = hanoihedral_spec(d)
    vc = vertex_conditions(d)
    for w in rng.sample(st1_schreier_words(d), 20):
        v = edge_vector(spec, w)
        assert all(bin(r & v.bits).count("1") % 2 == 0 for r in vc.rows)
    assert isinstance(vc, Mat2)
