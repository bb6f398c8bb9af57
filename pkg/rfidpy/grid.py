"""
rfidpy.grid
===========

The reference matrix: reference tags on the room vertices, virtual tags
placed between them, and the RSSI values the reader sees for every tag.

"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Tuple
import numpy as np
import pandas as pd
from .radio import Point3, distance3, friis_backscatter
from .radio import dbm_to_watts, watts_to_dbm


class TagKind(str, Enum):
    REFERENCE = "reference"
    VIRTUAL = "virtual"


class PlacementMode(str, Enum):
    """Where virtual tags go.

    ``EDGE`` puts ``n`` tags on each of the 12 room edges, ``LATTICE``
    fills a uniform ``(n + 2) ** 3`` lattice over the whole room.
    """

    EDGE = "edge"
    LATTICE = "lattice"


class VirtualMode(str, Enum):
    """How virtual tags get their RSSI.

    ``INTERPOLATED`` estimates it from the reference tags, ``EXACT``
    evaluates the Friis model at the virtual tag position (diagnostic).
    """

    INTERPOLATED = "interpolated"
    EXACT = "exact"


class InterpolationDomain(str, Enum):
    DBM = "dbm"
    WATTS = "watts"


# Vertex index is 4 * ix + 2 * iy + iz, so edges join indices that differ
# in exactly one bit. Sorted lexicographically by (a, b).
ROOM_EDGES = tuple(
    (a, b)
    for a in range(8)
    for b in range(a + 1, 8)
    if bin(a ^ b).count("1") == 1
)


@dataclass(frozen=True)
class RoomSpec:
    """A rectangular room with one corner at the origin.

    Parameters
    ----------
    width_m : float (default = 3)
        Extent along x in meters.
    depth_m : float (default = 3)
        Extent along y in meters.
    height_m : float (default = 4)
        Extent along z in meters.
    """

    width_m: float = 3.0
    depth_m: float = 3.0
    height_m: float = 4.0

    def __post_init__(self):
        for name in ("width_m", "depth_m", "height_m"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(
                    "Room extent `{}` should be greater than 0, "
                    "got {}.".format(name, value)
                )

    @property
    def extents(self):
        return np.array([self.width_m, self.depth_m, self.height_m])

    def contains(self, point, strict=False):
        """Check whether a point lies inside the room box.

        Parameters
        ----------
        point : Point3
            Point to test.
        strict : bool (default = False)
            If True, points on the walls are outside.

        Returns
        -------
        bool
        """
        coords = np.asarray(tuple(point))
        if strict:
            return bool(np.all(coords > 0) and np.all(coords < self.extents))
        return bool(np.all(coords >= 0) and np.all(coords <= self.extents))


@dataclass(frozen=True)
class GridTag:
    """A tag of the reference matrix.

    ``anchors`` holds the ids of the reference tags a virtual tag is
    interpolated from and ``fraction`` its position between them: one
    value ``t`` along an edge, or ``(u, v, w)`` inside the room for
    lattice tags. Both are empty for reference tags.
    """

    id: int
    position: Point3
    kind: TagKind
    anchors: Tuple[int, ...] = ()
    fraction: Tuple[float, ...] = ()


@dataclass(frozen=True)
class ReferenceGrid:
    """Reference and virtual tags of a room, in canonical id order.

    A tag's id is also its index in ``tags``.
    """

    room: RoomSpec
    tags: Tuple[GridTag, ...]
    n_virtual_per_edge: int
    placement_mode: PlacementMode = PlacementMode.EDGE

    def __len__(self):
        return len(self.tags)

    @cached_property
    def positions(self):
        """Tag positions as an array of shape (n_tags, 3)."""
        return np.array([tuple(tag.position) for tag in self.tags])

    @cached_property
    def reference_ids(self):
        return np.array(
            [t.id for t in self.tags if t.kind == TagKind.REFERENCE]
        )

    def position_of(self, tag_id):
        return self.tags[tag_id].position

    def distances_to(self, reader):
        """Distance from the reader to every tag, in id order.

        Raises
        ------
        ValueError
            If the reader stands on a tag.
        """
        distances = np.atleast_1d(distance3(self.positions, reader))
        if np.any(distances <= 0):
            raise ValueError(
                "The reader at {} coincides with tag {}.".format(
                    tuple(reader), int(np.argmin(distances))
                )
            )
        return distances


@dataclass(frozen=True, eq=False)
class GridMeasurement:
    """RSSI of every grid tag seen from one reader position.

    ``rssi_dbm`` is index aligned with ``ReferenceGrid.tags``.
    """

    reader_position: Point3
    rssi_dbm: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.rssi_dbm)


def build_reference_tags(room):
    """Place one reference tag on each of the 8 room vertices.

    Parameters
    ----------
    room : RoomSpec
        The room to instrument.

    Returns
    -------
    list of GridTag
        Eight reference tags with ids 0-7, in lexicographic (x, y, z)
        order of their positions.

    Examples
    --------
    >>> from rfidpy.grid import RoomSpec, build_reference_tags
    >>> tags = build_reference_tags(RoomSpec())
    >>> tuple(tags[-1].position)
    (3.0, 3.0, 4.0)
    """
    corners = product(
        (0.0, room.width_m), (0.0, room.depth_m), (0.0, room.height_m)
    )
    return [
        GridTag(id=i, position=Point3(*c), kind=TagKind.REFERENCE)
        for i, c in enumerate(corners)
    ]


def _edge_virtual_tags(reference, n):
    tags = []
    for a, b in ROOM_EDGES:
        start = reference[a].position.to_array()
        end = reference[b].position.to_array()
        for i in range(1, n + 1):
            t = i / (n + 1)
            tags.append(
                GridTag(
                    id=len(reference) + len(tags),
                    position=Point3.from_array((1 - t) * start + t * end),
                    kind=TagKind.VIRTUAL,
                    anchors=(a, b),
                    fraction=(t,),
                )
            )
    return tags


def _lattice_virtual_tags(room, reference, n):
    steps = n + 1
    anchors = tuple(tag.id for tag in reference)
    tags = []
    for i, j, k in product(range(steps + 1), repeat=3):
        # Vertices are already reference tags
        if all(idx in (0, steps) for idx in (i, j, k)):
            continue
        uvw = (i / steps, j / steps, k / steps)
        tags.append(
            GridTag(
                id=len(reference) + len(tags),
                position=Point3.from_array(np.array(uvw) * room.extents),
                kind=TagKind.VIRTUAL,
                anchors=anchors,
                fraction=uvw,
            )
        )
    return tags


def place_virtual_tags(room, n, mode=PlacementMode.EDGE):
    """Build the reference matrix of a room with ``n`` virtual tags.

    Parameters
    ----------
    room : RoomSpec
        The room to instrument.
    n : int
        Number of virtual tags between two neighbouring reference tags.
        They split the segment into ``n + 1`` equal parts.
    mode : PlacementMode (default = PlacementMode.EDGE)
        ``EDGE`` places ``n`` tags on each of the 12 edges, giving
        ``8 + 12 * n`` tags. ``LATTICE`` fills a uniform lattice with
        ``n + 2`` points per axis, giving ``(n + 2) ** 3`` tags.

    Returns
    -------
    ReferenceGrid
        Reference tags first, then virtual tags in edge order (edge mode)
        or lexicographic lattice order (lattice mode).

    Examples
    --------
    >>> from rfidpy.grid import RoomSpec, place_virtual_tags
    >>> len(place_virtual_tags(RoomSpec(), 2))
    32
    >>> len(place_virtual_tags(RoomSpec(), 1, mode="lattice"))
    27
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(
            "The number of virtual tags should be a non-negative integer."
        )
    n = int(n)
    mode = PlacementMode(mode)
    reference = build_reference_tags(room)
    if mode == PlacementMode.EDGE:
        virtual = _edge_virtual_tags(reference, n)
    else:
        virtual = _lattice_virtual_tags(room, reference, n)
    return ReferenceGrid(
        room=room,
        tags=tuple(reference + virtual),
        n_virtual_per_edge=n,
        placement_mode=mode,
    )


def interpolate_rssi(rssi_a, rssi_b, t):
    """Linear interpolation between two RSSI values.

    Parameters
    ----------
    rssi_a, rssi_b : float or numpy array
        RSSI at the two endpoints, in dBm.
    t : float or numpy array
        Fraction of the way from ``a`` to ``b``, in [0, 1].

    Returns
    -------
    float or numpy array
        ``(1 - t) * rssi_a + t * rssi_b``.

    Examples
    --------
    >>> from rfidpy.grid import interpolate_rssi
    >>> interpolate_rssi(-40, -50, 0.5)
    -45.0
    """
    t = np.asarray(t, dtype=float)
    if np.any(~((t >= 0) & (t <= 1))):
        raise ValueError("Interpolation fraction `t` should be in [0, 1].")
    value = (1 - t) * np.asarray(rssi_a, dtype=float) + t * np.asarray(
        rssi_b, dtype=float
    )
    if value.ndim == 0:
        return float(value)
    return value


def _trilinear(corner_rssi, fractions):
    """Trilinear blend of rows of 8 vertex values at rows of (u, v, w)."""
    u, v, w = fractions[:, 0], fractions[:, 1], fractions[:, 2]
    value = np.zeros(len(fractions))
    for vertex in range(8):
        wx = u if vertex & 4 else 1 - u
        wy = v if vertex & 2 else 1 - v
        wz = w if vertex & 1 else 1 - w
        value = value + wx * wy * wz * corner_rssi[:, vertex]
    return value


def _interpolate_virtual(grid, reference_rssi, domain):
    """RSSI of the virtual tags from the reference values.

    ``reference_rssi`` is indexed by tag id; only reference entries are
    read.
    """
    virtual = [tag for tag in grid.tags if tag.kind == TagKind.VIRTUAL]
    if not virtual:
        return np.empty(0)
    if domain == InterpolationDomain.WATTS:
        ref_ids = grid.reference_ids
        watts = np.full(len(grid), np.nan)
        watts[ref_ids] = dbm_to_watts(reference_rssi[ref_ids])
        reference_rssi = watts
    anchors = np.array([tag.anchors for tag in virtual])
    if grid.placement_mode == PlacementMode.EDGE:
        t = np.array([tag.fraction[0] for tag in virtual])
        value = interpolate_rssi(
            reference_rssi[anchors[:, 0]], reference_rssi[anchors[:, 1]], t
        )
    else:
        fractions = np.array([tag.fraction for tag in virtual])
        value = _trilinear(reference_rssi[anchors], fractions)
    if domain == InterpolationDomain.WATTS:
        value = watts_to_dbm(value)
    return np.atleast_1d(value)


def measure_grid(
    grid,
    reader,
    params,
    virtual_mode=VirtualMode.INTERPOLATED,
    domain=InterpolationDomain.DBM,
):
    """RSSI of every grid tag seen by the reader at one position.

    Reference tags always get the Friis value at their true distance.
    Virtual tags are interpolated from the reference tags (along their
    edge, or trilinearly for lattice grids) or, in ``EXACT`` mode,
    evaluated with the Friis model directly.

    Parameters
    ----------
    grid : ReferenceGrid
        The reference matrix.
    reader : Point3
        Reader position. Must not coincide with any tag.
    params : RadioParams
        Link budget parameters.
    virtual_mode : VirtualMode (default = VirtualMode.INTERPOLATED)
        How to obtain virtual tag RSSI.
    domain : InterpolationDomain (default = InterpolationDomain.DBM)
        Interpolate dBm values directly, or linear power in watts.

    Returns
    -------
    GridMeasurement
    """
    virtual_mode = VirtualMode(virtual_mode)
    domain = InterpolationDomain(domain)
    distances = grid.distances_to(reader)

    if virtual_mode == VirtualMode.EXACT:
        rssi = np.atleast_1d(friis_backscatter(params, distances))
    else:
        ref_ids = grid.reference_ids
        rssi = np.full(len(grid), np.nan)
        rssi[ref_ids] = friis_backscatter(params, distances[ref_ids])
        is_virtual = np.ones(len(grid), dtype=bool)
        is_virtual[ref_ids] = False
        rssi[is_virtual] = _interpolate_virtual(grid, rssi, domain)
    return GridMeasurement(reader_position=reader, rssi_dbm=rssi)


def measure_positions(
    grid,
    readers,
    params,
    virtual_mode=VirtualMode.INTERPOLATED,
    domain=InterpolationDomain.DBM,
):
    """Reference matrix for a sequence of reader positions.

    Returns
    -------
    numpy array of shape (n_positions, n_tags)
        Row ``i`` holds ``measure_grid(grid, readers[i], ...).rssi_dbm``.
    """
    return np.vstack(
        [
            measure_grid(grid, reader, params, virtual_mode, domain).rssi_dbm
            for reader in readers
        ]
    )


def grid_to_frame(grid):
    """Tabulate the grid tags for inspection or plotting.

    Returns
    -------
    pandas.DataFrame
        One row per tag with columns ``id, kind, x, y, z``.
    """
    return pd.DataFrame(
        {
            "id": [tag.id for tag in grid.tags],
            "kind": [tag.kind.value for tag in grid.tags],
            "x": grid.positions[:, 0],
            "y": grid.positions[:, 1],
            "z": grid.positions[:, 2],
        }
    )
