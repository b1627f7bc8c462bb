from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from segrecube.errors import ShapeMismatch
from segrecube.segre.varieties import (
    MinorIndex,
    SegreShape,
    composition_cuts,
    compositions,
    cuts_to_composition,
    enumerate_minors,
    generalized_segre_embed,
    membership,
    minor_count,
    minor_square_sum,
    minor_values,
    peel,
    rank_one_split,
    segre_embed,
    tensor_coords,
)
from segrecube.state import ProjectivePoint, projective_distance

from .strategies import seeds


def gauss(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def point(*coords):
    return ProjectivePoint(np.array(coords, dtype=complex))


# --- shapes and embeddings -------------------------------------------------


@pytest.mark.parametrize("dims, target", [((1, 1), 3), ((1, 3), 7), ((1, 1, 1), 7), ((2, 4), 14), ((3,), 3)])
def test_target_dim(dims, target):
    assert SegreShape(dims).target_dim == target


def test_qubit_shape():
    assert SegreShape.qubits((1, 2, 1)).dims == (1, 3, 1)


@pytest.mark.parametrize("dims", [(), (0, 1), (-1,)])
def test_bad_shape(dims):
    with pytest.raises(ShapeMismatch):
        SegreShape(dims)


def test_segre_embed_examples():
    assert segre_embed(point(1, 0), point(1, 0)) == point(1, 0, 0, 0)
    z = segre_embed(point(1, 1), point(1, -1))
    np.testing.assert_array_equal(z.coords, [1, -1, 1, -1])


def test_segre_embed_coordinate_order():
    # [a0 b0 : a0 b1 : a0 b2 : a0 b3 : a1 b0 : ...]
    a, b = np.array([2, 3]), np.array([5, 7, 11, 13])
    z = segre_embed(ProjectivePoint(a), ProjectivePoint(b)).coords
    np.testing.assert_array_equal(z, [a[i] * b[j] for i in range(2) for j in range(4)])


@given(seeds, st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_segre_embed_is_projective(seed, lam):
    rng = np.random.default_rng(seed)
    a, b = gauss(rng, 2), gauss(rng, 3)
    left = segre_embed(ProjectivePoint(lam * a), ProjectivePoint(b))
    assert left == segre_embed(ProjectivePoint(a), ProjectivePoint(b))


@given(seeds)
def test_generalized_embed_matches_iterated_pairs(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (ProjectivePoint(gauss(rng, k)) for k in (2, 3, 2))
    shape = SegreShape((1, 2, 1))
    z = generalized_segre_embed([a, b, c], shape)
    assert z == segre_embed(segre_embed(a, b), c)
    assert z == segre_embed(a, segre_embed(b, c))


def test_generalized_embed_commutative_square():
    # [1:0],[1:0],[c0:c1] through either bracket gives the same point
    c = point(0.6, 0.8j)
    e = point(1, 0)
    assert segre_embed(segre_embed(e, e), c) == segre_embed(e, segre_embed(e, c))
    assert generalized_segre_embed([e, e, e], SegreShape((1, 1, 1))) == point(1, 0, 0, 0, 0, 0, 0, 0)


def test_generalized_embed_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        generalized_segre_embed([point(1, 0)], SegreShape((1, 1)))
    with pytest.raises(ShapeMismatch):
        generalized_segre_embed([point(1, 0), point(1, 0)], SegreShape((1, 2)))


# --- minors ----------------------------------------------------------------


@pytest.mark.parametrize("k, ell, expected", [(1, 1, 1), (1, 3, 6), (3, 3, 36), (2, 2, 9)])
def test_minor_count_values(k, ell, expected):
    assert minor_count(k, ell) == expected


@pytest.mark.parametrize("k", range(1, 8))
@pytest.mark.parametrize("ell", range(1, 8))
def test_minor_count_matches_enumeration(k, ell):
    m = np.zeros((k + 1, ell + 1))
    assert len(enumerate_minors(m)) == minor_count(k, ell)


def test_minor_index_value():
    m = np.array([[1, 2, 3], [4, 5, 6]])
    assert MinorIndex((0, 1), (0, 2)).value(m) == 1 * 6 - 3 * 4


@given(seeds, st.integers(2, 6), st.integers(2, 6))
def test_vectorized_minors_match_enumeration(seed, rows, cols):
    m = gauss(np.random.default_rng(seed), (rows, cols))
    listed = np.array([v for _, v in enumerate_minors(m)])
    np.testing.assert_allclose(minor_values(m), listed, atol=1e-12)
    assert minor_square_sum(m) == pytest.approx(np.sum(np.abs(listed) ** 2), rel=1e-12)


def test_minor_enumeration_order():
    idx = [i for i, _ in enumerate_minors(np.zeros((3, 3)))]
    assert idx[0] == MinorIndex((0, 1), (0, 1))
    assert idx[-1] == MinorIndex((1, 2), (1, 2))
    rows = [list(combinations(range(3), 2))[j] for j in range(3)]
    assert [i.rows for i in idx[::3]] == rows


# --- membership ------------------------------------------------------------


def test_eps_not_in_sigma11():
    inside, worst = membership(point(1, 0, 0, 1), SegreShape((1, 1)))
    assert not inside
    assert worst == pytest.approx(0.5)


def test_ghz_not_in_sigma13():
    inside, _ = membership(point(1, 0, 0, 0, 0, 0, 0, 1), SegreShape((1, 3)))
    assert not inside


@given(seeds, st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_embedded_points_are_members(seed, dims):
    rng = np.random.default_rng(seed)
    shape = SegreShape(tuple(dims))
    pts = [ProjectivePoint(gauss(rng, k + 1)) for k in dims]
    inside, worst = membership(generalized_segre_embed(pts, shape), shape)
    assert inside and worst < 1e-12


@given(seeds)
def test_generic_point_is_not_member(seed):
    z = ProjectivePoint(gauss(np.random.default_rng(seed), 8))
    for dims in [(1, 3), (3, 1), (1, 1, 1)]:
        assert not membership(z, SegreShape(dims))[0]


def test_membership_recursion_catches_trailing_entanglement():
    # |0> x EPS passes the leading 1|3 reshape but fails the trailing 1|1 test
    z = point(1, 0, 0, 1, 0, 0, 0, 0)
    assert membership(z, SegreShape((1, 3)))[0]
    assert not membership(z, SegreShape((1, 1, 1)))[0]


def test_membership_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        membership(point(1, 0, 0, 0), SegreShape((1, 2)))


# --- rank-1 peeling --------------------------------------------------------


@given(seeds, st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_peel_recovers_factors(seed, parts):
    rng = np.random.default_rng(seed)
    factors = [gauss(rng, 2 ** m) for m in parts]
    coords = tensor_coords(factors)
    result = peel(coords, [2 ** m for m in parts])
    assert result is not None
    got, scale = result
    for f, g in zip(factors, got):
        assert projective_distance(f, g) < 1e-10
        first = np.flatnonzero(np.abs(g) > 1e-12)[0]
        assert abs(g[first].imag) < 1e-15 and g[first].real > 0
        assert abs(np.linalg.norm(g) - 1) < 1e-12
    np.testing.assert_allclose(scale * tensor_coords(got), coords, atol=1e-10 * np.linalg.norm(coords))


def test_rank_one_split_rejects_rank_two():
    assert rank_one_split(np.eye(2)) is None
    # sigma_2 / sigma_1 against the relative threshold 1e-8
    assert rank_one_split(np.array([[1, 0], [0, 1e-7]])) is None
    assert rank_one_split(np.array([[1, 0], [0, 1e-9]])) is not None
    assert rank_one_split(np.array([[1, 0], [0, 1e-7]]), eps_rank=1e-6) is not None


def test_rank_one_split_degenerate_shapes():
    u, w = rank_one_split(np.array([[1j, 2]]))
    np.testing.assert_allclose(np.outer(u, w), [[1j, 2]])
    u, w = rank_one_split(np.array([[1j], [1]]))
    np.testing.assert_allclose(np.outer(u, w), [[1j], [1]])


# --- compositions ----------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 8))
def test_compositions_complete(n):
    comps = list(compositions(n))
    assert len(comps) == 2 ** (n - 1) == len(set(comps))
    assert all(sum(c) == n and min(c) >= 1 for c in comps)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
def test_cuts_round_trip(parts):
    n = sum(parts)
    assert cuts_to_composition(composition_cuts(parts), n) == tuple(parts)
