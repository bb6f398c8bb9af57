""" Tests for the grid module. """

from itertools import product
import math
import numpy as np
import pytest
from rfidpy.grid import GridTag, RoomSpec, ROOM_EDGES, TagKind
from rfidpy.grid import build_reference_tags, grid_to_frame
from rfidpy.grid import interpolate_rssi, measure_grid, measure_positions
from rfidpy.grid import place_virtual_tags
from rfidpy.radio import Point3, distance3, friis_backscatter


def _virtual_on_edge(grid, a, b):
    return [tag for tag in grid.tags if tag.anchors == (a, b)]


def _random_readers(rng, count):
    """Reader positions around and inside the default room."""
    return [
        Point3.from_array(p)
        for p in rng.uniform([-5, -5, -5], [8, 8, 9], size=(count, 3))
    ]


def test_room_defaults(room):
    assert tuple(room.extents) == (3.0, 3.0, 4.0)


@pytest.mark.parametrize("extent", [0, -1, float("nan"), float("inf")])
def test_room_rejects_bad_extents(extent):
    """Room extents must be finite and positive."""
    with pytest.raises(ValueError, match="depth_m"):
        RoomSpec(depth_m=extent)


def test_room_contains(room):
    """Walls belong to the room unless strict is set."""
    assert room.contains(Point3(3, 3, 4))
    assert not room.contains(Point3(3, 3, 4), strict=True)
    assert room.contains(Point3(1.5, 1.5, 2), strict=True)
    assert not room.contains(Point3(-0.1, 1, 1))


def test_room_edges_join_neighbouring_vertices():
    """The 12 edges join vertices that differ in one coordinate."""
    assert len(ROOM_EDGES) == 12
    assert list(ROOM_EDGES) == sorted(ROOM_EDGES)
    assert ROOM_EDGES[0] == (0, 1)


def test_reference_tags_default_room(room):
    """Eight reference tags on the vertices, in lexicographic order."""
    tags = build_reference_tags(room)
    positions = [tuple(tag.position) for tag in tags]
    assert len(tags) == 8
    assert positions == sorted(positions)
    assert positions[0] == (0.0, 0.0, 0.0)
    assert positions[-1] == (3.0, 3.0, 4.0)
    assert [tag.id for tag in tags] == list(range(8))
    assert all(tag.kind == TagKind.REFERENCE for tag in tags)


def test_reference_tags_unit_cube():
    tags = build_reference_tags(RoomSpec(1, 1, 1))
    assert {tuple(tag.position) for tag in tags} == set(
        product((0.0, 1.0), repeat=3)
    )


@pytest.mark.parametrize("n", range(11))
def test_tag_counts(room, n):
    """Edge grids have 8 + 12n tags, lattice grids (n + 2) ** 3."""
    edge = place_virtual_tags(room, n)
    lattice = place_virtual_tags(room, n, mode="lattice")
    assert len(edge) == 8 + 12 * n
    assert len(lattice) == (n + 2) ** 3
    for grid in (edge, lattice):
        assert [tag.id for tag in grid.tags] == list(range(len(grid)))
        assert len({tuple(tag.position) for tag in grid.tags}) == len(grid)


def test_no_virtual_tags(vertex_grid, room):
    """n = 0 gives the reference tags only, in both modes."""
    lattice = place_virtual_tags(room, 0, mode="lattice")
    for grid in (vertex_grid, lattice):
        assert len(grid) == 8
        assert all(tag.kind == TagKind.REFERENCE for tag in grid.tags)


def test_edge_grid_layout(edge_grid):
    """Virtual tags split each edge in equal parts."""
    assert len(edge_grid) == 32
    # First edge runs from (0, 0, 0) to (0, 0, 4)
    first = _virtual_on_edge(edge_grid, 0, 1)
    assert [t.id for t in first] == [8, 9]
    assert np.allclose(
        [tuple(t.position) for t in first], [[0, 0, 4 / 3], [0, 0, 8 / 3]]
    )
    assert all(t.kind == TagKind.VIRTUAL for t in edge_grid.tags[8:])


def test_edge_tags_are_equidistant(room):
    """Consecutive points along every edge are the same distance apart."""
    grid = place_virtual_tags(room, 3)
    for a, b in ROOM_EDGES:
        points = (
            [grid.position_of(a)]
            + [t.position for t in _virtual_on_edge(grid, a, b)]
            + [grid.position_of(b)]
        )
        steps = [distance3(p, q) for p, q in zip(points, points[1:])]
        assert len(steps) == 4
        assert np.allclose(steps, steps[0])


def test_lattice_includes_room_centre(lattice_grid):
    positions = {tuple(tag.position) for tag in lattice_grid.tags}
    assert (1.5, 1.5, 2.0) in positions


def test_placement_is_deterministic(room):
    for mode in ("edge", "lattice"):
        assert place_virtual_tags(room, 4, mode) == place_virtual_tags(
            room, 4, mode
        )


@pytest.mark.parametrize("n", [-1, 1.5, True])
def test_invalid_virtual_tag_count(room, n):
    with pytest.raises(ValueError, match="non-negative integer"):
        place_virtual_tags(room, n)


def test_invalid_placement_mode(room):
    with pytest.raises(ValueError):
        place_virtual_tags(room, 1, mode="diagonal")


def test_interpolate_examples():
    assert interpolate_rssi(-40, -50, 0) == -40
    assert interpolate_rssi(-40, -50, 0.5) == -45
    assert interpolate_rssi(-40, -40, 0.73) == pytest.approx(-40)


@pytest.mark.parametrize("t", [-0.1, 1.1, float("nan")])
def test_interpolate_fraction_out_of_range(t):
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        interpolate_rssi(-40, -50, t)


def test_measure_grid_reference_values(vertex_grid, params):
    """Reference tag entries are Friis values at their distance."""
    reader = Point3(-1, 0, 0)
    measurement = measure_grid(vertex_grid, reader, params)
    assert len(measurement) == 8
    assert measurement.rssi_dbm[7] == pytest.approx(
        friis_backscatter(params, math.sqrt(41))
    )
    assert measurement.rssi_dbm[0] == pytest.approx(
        friis_backscatter(params, 1.0)
    )


def test_measure_grid_reader_on_tag(vertex_grid, params):
    """A reader placed on a tag can not measure it."""
    with pytest.raises(ValueError, match="coincides with tag 0"):
        measure_grid(vertex_grid, Point3(0, 0, 0), params)


def test_midpoint_is_mean_of_endpoints(room, params):
    """The virtual tag halfway along an edge gets the mean RSSI."""
    grid = place_virtual_tags(room, 1)
    (mid,) = _virtual_on_edge(grid, 0, 4)
    assert tuple(mid.position) == (1.5, 0.0, 0.0)
    rssi = measure_grid(grid, Point3(-0.5, -0.1, -0.1), params).rssi_dbm
    assert rssi[mid.id] == pytest.approx((rssi[0] + rssi[4]) / 2)


def test_midpoint_with_equidistant_endpoints(room, params):
    """Equal endpoint RSSI is carried over to the midpoint unchanged."""
    grid = place_virtual_tags(room, 1)
    (mid,) = _virtual_on_edge(grid, 0, 4)
    rssi = measure_grid(grid, Point3(1.5, -1, -1), params).rssi_dbm
    assert rssi[0] == pytest.approx(rssi[4])
    assert rssi[mid.id] == pytest.approx(rssi[0])


def test_reference_entries_do_not_depend_on_mode(edge_grid, params):
    """Reference tags are measured exactly in both modes."""
    reader = Point3(2, -0.1, -0.1)
    interpolated = measure_grid(edge_grid, reader, params).rssi_dbm
    exact = measure_grid(edge_grid, reader, params, "exact").rssi_dbm
    assert np.allclose(interpolated[:8], exact[:8], rtol=0, atol=1e-12)
    assert not np.allclose(interpolated[8:], exact[8:])


def test_interpolated_values_stay_within_endpoints(room, params, rng):
    """Edge interpolation never leaves the endpoint RSSI interval."""
    grid = place_virtual_tags(room, 3)
    virtual = [tag for tag in grid.tags if tag.kind == TagKind.VIRTUAL]
    a = np.array([tag.anchors[0] for tag in virtual])
    b = np.array([tag.anchors[1] for tag in virtual])
    ids = np.array([tag.id for tag in virtual])
    matrix = measure_positions(grid, _random_readers(rng, 1000), params)
    low = np.minimum(matrix[:, a], matrix[:, b])
    high = np.maximum(matrix[:, a], matrix[:, b])
    assert np.all(matrix[:, ids] >= low - 1e-9)
    assert np.all(matrix[:, ids] <= high + 1e-9)


def test_lattice_values_stay_within_references(lattice_grid, params, rng):
    """Trilinear weights are convex, so values stay within the vertices."""
    matrix = measure_positions(lattice_grid, _random_readers(rng, 200), params)
    reference = matrix[:, :8]
    low = reference.min(axis=1, keepdims=True)
    high = reference.max(axis=1, keepdims=True)
    assert np.all(matrix >= low - 1e-9)
    assert np.all(matrix <= high + 1e-9)


def test_lattice_centre_is_mean_of_vertices(lattice_grid, params):
    rssi = measure_grid(lattice_grid, Point3(-1, -1, -1), params).rssi_dbm
    centre = [
        t.id for t in lattice_grid.tags if tuple(t.position) == (1.5, 1.5, 2)
    ][0]
    assert rssi[centre] == pytest.approx(rssi[:8].mean())


def test_exact_rssi_sorted_by_distance(room, params, rng):
    """With exact virtual tags, stronger RSSI means a closer tag."""
    for n, mode in [(4, "edge"), (2, "lattice")]:
        grid = place_virtual_tags(room, n, mode)
        for reader in _random_readers(rng, 500):
            rssi = measure_grid(grid, reader, params, "exact").rssi_dbm
            order = np.argsort(-rssi, kind="stable")
            d = distance3(grid.positions, reader)[order]
            assert np.all(np.diff(d) >= -1e-9)


def test_watts_interpolation_is_never_weaker(edge_grid, params, rng):
    """The mean of linear power is at least the mean of its logarithms."""
    for reader in _random_readers(rng, 50):
        dbm = measure_grid(edge_grid, reader, params).rssi_dbm
        watts = measure_grid(
            edge_grid, reader, params, domain="watts"
        ).rssi_dbm
        assert np.allclose(dbm[:8], watts[:8])
        assert np.all(watts >= dbm - 1e-9)


def test_measure_grid_is_deterministic(edge_grid, params):
    reader = Point3(5, -0.1, -0.1)
    first = measure_grid(edge_grid, reader, params).rssi_dbm
    second = measure_grid(edge_grid, reader, params).rssi_dbm
    assert np.array_equal(first, second)


def test_measure_positions_rows(edge_grid, params, walk):
    matrix = measure_positions(edge_grid, walk.positions, params)
    assert matrix.shape == (11, 32)
    row = measure_grid(edge_grid, walk.positions[3], params).rssi_dbm
    assert np.array_equal(matrix[3], row)


def test_grid_to_frame(edge_grid):
    """One row per tag with the dump columns."""
    frame = grid_to_frame(edge_grid)
    assert list(frame.columns) == ["id", "kind", "x", "y", "z"]
    assert len(frame) == 32
    assert (frame["kind"] == "reference").sum() == 8
    assert frame.iloc[-1]["id"] == 31


def test_grid_tag_defaults():
    tag = GridTag(0, Point3(0, 0, 0), TagKind.REFERENCE)
    assert tag.anchors == ()
    assert tag.fraction == ()
