import itertools
import math

import numpy as np
import pytest

from polyperim.errors import DimensionTooHigh, EmptyPiece, UnsupportedDimension
from polyperim.slicing import (
    SlicePiece,
    build_frame,
    classify_pieces,
    congruent_shape,
    enumerate_pieces,
    make_piece,
    piece_is_nonempty,
    shape_class,
    translate_piece,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_frame_gram_identity(n):
    """Frame vectors must satisfy a_i . a_j = (n+1) delta_ij - 1."""
    frame = build_frame(n)
    gram = frame.vectors @ frame.vectors.T
    target = (n + 1) * np.eye(n + 1) - np.ones((n + 1, n + 1))
    assert np.allclose(gram, target, atol=1e-12)
    assert np.allclose(frame.vectors.sum(axis=0), 0.0, atol=1e-12)


def test_frame_dimension_limits():
    with pytest.raises(DimensionTooHigh):
        build_frame(5)
    with pytest.raises(UnsupportedDimension):
        build_frame(0)


def test_coordinates_roundtrip():
    rng = np.random.default_rng(11)
    for n in (2, 3, 4):
        frame = build_frame(n)
        for _ in range(25):
            y = rng.normal(size=n + 1)
            y -= y.mean()  # frame coordinates always sum to zero
            x = frame.point_from_coordinates(y)
            assert np.allclose(frame.coordinates(x), y, atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_translation_shifts_index_by_generator(n):
    rng = np.random.default_rng(100 + n)
    frame = build_frame(n)
    done = 0
    while done < 40:
        x = rng.uniform(-2, 2, size=n)
        i = int(rng.integers(0, n + 1))
        try:
            before = np.array(frame.index_of(x))
            after = np.array(frame.index_of(x + frame.vectors[i]))
        except ValueError:
            continue  # point fell on a wall; draw again
        assert np.array_equal(after, before + frame.generator(i))
        done += 1


def test_index_of_rejects_wall_points():
    frame = build_frame(2)
    with pytest.raises(ValueError):
        frame.index_of(np.zeros(2))


@pytest.mark.parametrize(
    "n, slices, expected",
    [(2, 2, 4), (2, 5, 25), (3, 2, 5), (4, 2, 6)],
)
def test_piece_counts(n, slices, expected):
    assert len(enumerate_pieces(n, slices)) == expected


def test_plane_inventory_upright_and_inverted():
    pieces = enumerate_pieces(2, 3)
    summary = classify_pieces(pieces)
    assert [s.level for s in summary] == [1, 2]
    counts = {s.level: s.count for s in summary}
    assert counts == {1: 3, 2: 6}  # inverted n(n-1)/2, upright n(n+1)/2 at N=3
    by_level = {s.level: s for s in summary}
    assert by_level[1].piece_volume == pytest.approx(
        by_level[2].piece_volume, abs=1e-12
    )
    assert not congruent_shape(
        by_level[1].representative, by_level[2].representative
    )


def test_space_inventory_tets_and_octahedron():
    summary = classify_pieces(enumerate_pieces(3, 2))
    assert [(s.level, s.count, s.vertex_count) for s in summary] == [
        (2, 1, 6),
        (3, 4, 4),
    ]
    octa = next(s for s in summary if s.vertex_count == 6)
    tet = next(s for s in summary if s.vertex_count == 4)
    assert octa.piece_volume == pytest.approx(4 * tet.piece_volume, abs=1e-9)


def test_all_levels_appear_for_three_slices():
    summary = classify_pieces(enumerate_pieces(3, 3))
    assert [s.level for s in summary] == [1, 2, 3]
    # levels 1 and 3 are both tetrahedra of unit volume, oppositely oriented
    lv = {s.level: s for s in summary}
    assert lv[1].vertex_count == lv[3].vertex_count == 4
    assert lv[1].piece_volume == pytest.approx(lv[3].piece_volume, abs=1e-12)
    assert not congruent_shape(lv[1].representative, lv[3].representative)


@pytest.mark.parametrize("n, slices", [(2, 2), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_volumes_fill_the_enlarged_simplex(n, slices):
    frame = build_frame(n)
    unit = make_piece(frame, (1,) * n + (0,)).volume
    total = sum(p.volume for p in enumerate_pieces(n, slices))
    assert total == pytest.approx(slices**n * unit, rel=1e-9)


def test_translate_piece_matches_remake():
    frame = build_frame(2)
    piece = make_piece(frame, (1, 1, -1))
    moved = translate_piece(frame, piece, 0)
    assert moved.index == (-1, 2, 0)
    remade = make_piece(frame, moved.index)
    a = np.array(sorted(map(tuple, np.round(moved.vertices, 12))))
    b = np.array(sorted(map(tuple, np.round(remade.vertices, 12))))
    assert np.allclose(a, b, atol=1e-12)
    assert moved.volume == pytest.approx(remade.volume, abs=1e-12)


def test_translates_within_level_3d():
    frame = build_frame(3)
    pieces = enumerate_pieces(3, 3)
    rng = np.random.default_rng(5)
    by_level = {}
    for p in pieces:
        by_level.setdefault(p.level, []).append(p)
    for group in by_level.values():
        rep = group[0]
        for other in rng.choice(len(group), size=min(4, len(group)), replace=False):
            assert congruent_shape(rep, group[int(other)])


def test_congruence_rejects_rotation():
    frame = build_frame(2)
    tri = make_piece(frame, (1, 1, 0))
    c, s = math.cos(math.pi / 2), math.sin(math.pi / 2)
    rot = np.array([[c, -s], [s, c]])
    spun = SlicePiece(index=tri.index, vertices=tri.vertices @ rot.T, volume=tri.volume)
    assert not congruent_shape(tri, spun)
    nudged = SlicePiece(
        index=tri.index, vertices=tri.vertices + [3.25, -1.5], volume=tri.volume
    )
    assert congruent_shape(tri, nudged)


def test_empty_piece_errors():
    frame = build_frame(2)
    with pytest.raises(EmptyPiece):
        make_piece(frame, (0, 0, 0))
    with pytest.raises(EmptyPiece):
        make_piece(frame, (1, 1, 1))
    with pytest.raises(ValueError):
        make_piece(frame, (1, 1))
    with pytest.raises(ValueError):
        enumerate_pieces(2, 1)
    assert not piece_is_nonempty((2, 1, 0), 2)
    assert piece_is_nonempty((1, 1, 0), 2)


def test_shape_class_is_level():
    frame = build_frame(3)
    for k in [(1, 1, 1, 0), (1, 1, 1, -1), (2, 1, 1, -1)]:
        assert shape_class(make_piece(frame, k)) == sum(k)
    hollow = SlicePiece(index=(0, 0, 0, 0), vertices=np.zeros((1, 3)), volume=0.0)
    with pytest.raises(EmptyPiece):
        shape_class(hollow)


def test_generators_have_expected_pattern():
    for n in (2, 3, 4):
        frame = build_frame(n)
        for i in range(n + 1):
            g = frame.generator(i)
            assert g[i] == -n
            assert sum(g) == 0
            assert sorted(g)[1:] == [1] * n


def test_piece_vertex_counts_match_hull_structure():
    # every (2, N) piece is a triangle
    for p in enumerate_pieces(2, 4):
        assert p.vertex_count == 3
    counts = sorted({p.vertex_count for p in enumerate_pieces(3, 2)})
    assert counts == [4, 6]
