"""
rfidpy.locate
=============

Locate a target tag with a single mobile reader. At every position of its
trajectory the reader measures the target, finds the grid tag with the
closest RSSI, and votes for it. The most voted tag is the estimate.

"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Tuple
import numpy as np
from .errors import ConfigError
from .grid import InterpolationDomain, VirtualMode, measure_positions
from .grid import measure_grid
from .radio import Point3, distance3, friis_backscatter

DEFAULT_STANDOFF_M = 0.1
"""Offset (m) of the default walk below and behind the room's x edge.

The walk runs through the room vertices (0, 0, 0) and (3, 0, 0), where
reference tags sit; the standoff keeps the reader off them.
"""

AXES = ("x", "y", "z")


class MatrixMode(str, Enum):
    """When the reference matrix is measured.

    ``RECOMPUTE`` measures it again at every reader position. ``FIXED``
    measures it once at the first position and reuses it.
    """

    RECOMPUTE = "recompute"
    FIXED = "fixed"


@dataclass(frozen=True)
class ReaderTrajectory:
    """Ordered reader positions.

    Parameters
    ----------
    positions : tuple of Point3
        At least one position.
    """

    positions: Tuple[Point3, ...]

    def __post_init__(self):
        positions = tuple(
            p if isinstance(p, Point3) else Point3.from_array(p)
            for p in self.positions
        )
        if not positions:
            raise ConfigError("A reader trajectory needs at least 1 point.")
        object.__setattr__(self, "positions", positions)

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    @classmethod
    def axis_walk(
        cls, axis="x", positions=10, step=1.0, standoff=DEFAULT_STANDOFF_M
    ):
        """Walk along one axis in fixed steps.

        Parameters
        ----------
        axis : str (default = "x")
            The axis the reader moves along: "x", "y" or "z".
        positions : int (default = 10)
            Last step index; the walk visits ``positions + 1`` points.
        step : float (default = 1.0)
            Distance between consecutive points in meters.
        standoff : float (default = 0.1)
            The two other coordinates are ``-standoff``.

        Returns
        -------
        ReaderTrajectory
        """
        if axis not in AXES:
            raise ConfigError(
                "axis should be one of {}, got {}".format(AXES, axis)
            )
        if isinstance(positions, bool) or int(positions) != positions:
            raise ConfigError(
                "positions should be an integer, got {!r}".format(positions)
            )
        if positions < 0:
            raise ConfigError("positions should be 0 or greater.")
        moving = AXES.index(axis)
        points = []
        for i in range(int(positions) + 1):
            coords = [-standoff] * 3
            coords[moving] = i * step
            points.append(Point3(*coords))
        return cls(tuple(points))

    @classmethod
    def x_axis_walk(cls, positions=10, step=1.0, standoff=DEFAULT_STANDOFF_M):
        """The reader walk of the reference algorithm: x = 0, 1, ..., 10.

        Examples
        --------
        >>> from rfidpy.locate import ReaderTrajectory
        >>> walk = ReaderTrajectory.x_axis_walk()
        >>> len(walk)
        11
        >>> tuple(walk.positions[-1])
        (10.0, -0.1, -0.1)
        """
        return cls.axis_walk("x", positions, step, standoff)

    @classmethod
    def multi_axis_walk(
        cls, positions=10, step=1.0, standoff=DEFAULT_STANDOFF_M
    ):
        """Walk along x, then y, then z, to break the symmetry of a
        single-axis walk around its own axis."""
        points = []
        for axis in AXES:
            walk = cls.axis_walk(axis, positions, step, standoff)
            # Every walk starts at the same corner point
            points.extend(walk.positions if not points else walk.positions[1:])
        return cls(tuple(points))


@dataclass(frozen=True)
class NoiseSpec:
    """Zero-mean Gaussian noise added to the measured target RSSI.

    Parameters
    ----------
    enabled : bool (default = False)
    sigma_db : float (default = 0.0)
        Standard deviation in dB.
    """

    enabled: bool = False
    sigma_db: float = 0.0

    def __post_init__(self):
        if not self.sigma_db >= 0:
            raise ValueError("`sigma_db` should be 0 or greater.")


@dataclass(frozen=True)
class Vote:
    reader_position_index: int
    matched_tag_id: int
    rssi_diff_db: float


@dataclass(frozen=True)
class LocalizationResult:
    """Votes, estimate and error of one localization."""

    votes: Tuple[Vote, ...]
    estimated_tag_id: int
    estimated_position: Point3
    true_position: Point3
    error_m: float
    per_axis_abs_error: Tuple[float, float, float]


def measure_target(target, reader, params, noise=NoiseSpec(), rng=None):
    """RSSI of the target tag measured by the reader.

    Parameters
    ----------
    target : Point3
        Target tag position.
    reader : Point3
        Reader position. Must differ from ``target``.
    params : RadioParams
        Link budget parameters.
    noise : NoiseSpec (default = disabled)
        Optional measurement noise.
    rng : numpy.random.Generator (optional)
        Random stream. Required when noise is enabled.

    Returns
    -------
    float
        RSSI in dBm.
    """
    rssi = friis_backscatter(params, distance3(reader, target))
    if noise.enabled:
        if rng is None:
            raise ConfigError("Noisy measurements need a random stream.")
        rssi = rssi + float(rng.normal(0.0, noise.sigma_db))
    return rssi


def _nearest(target_rssi, grid_rssi, reader_position_index):
    grid_rssi = np.asarray(grid_rssi, dtype=float)
    if grid_rssi.size == 0:
        raise ConfigError("The grid measurement has no tags to match.")
    diff = np.abs(target_rssi - grid_rssi)
    # argmin returns the first minimum, i.e. the lowest tag id
    tag_id = int(np.argmin(diff))
    return Vote(
        reader_position_index=reader_position_index,
        matched_tag_id=tag_id,
        rssi_diff_db=float(diff[tag_id]),
    )


def match_nearest_rssi(target_rssi, measurement, reader_position_index=0):
    """Find the grid tag whose RSSI is closest to the target's.

    Parameters
    ----------
    target_rssi : float
        Target RSSI in dBm.
    measurement : GridMeasurement
        RSSI of every grid tag at the same reader position.
    reader_position_index : int (default = 0)
        Recorded on the returned vote.

    Returns
    -------
    Vote
        Ties go to the lowest tag id.
    """
    return _nearest(
        target_rssi, measurement.rssi_dbm, reader_position_index
    )


def _winning_tag(votes):
    if not votes:
        raise ConfigError("At least one vote is needed to pick a position.")
    counts = Counter(v.matched_tag_id for v in votes)
    diffs = {}
    for v in votes:
        diffs.setdefault(v.matched_tag_id, []).append(v.rssi_diff_db)
    return min(
        counts,
        key=lambda tag_id: (
            -counts[tag_id],
            float(np.mean(diffs[tag_id])),
            tag_id,
        ),
    )


def vote_incidence(votes, grid):
    """Position of the most voted tag.

    Ties on the vote count go to the tag with the smallest mean RSSI
    difference, then to the lowest tag id.

    Parameters
    ----------
    votes : list of Vote
    grid : ReferenceGrid

    Returns
    -------
    Point3
    """
    return grid.position_of(_winning_tag(votes))


def localization_error(estimated, true_pos):
    """Distance between estimate and truth, and its per-axis parts.

    Returns
    -------
    tuple
        ``(error_m, (abs_dx, abs_dy, abs_dz))``

    Examples
    --------
    >>> from rfidpy.radio import Point3
    >>> from rfidpy.locate import localization_error
    >>> localization_error(Point3(0, 0, 0), Point3(3, 0, 4))
    (5.0, (3.0, 0.0, 4.0))
    """
    per_axis = tuple(
        abs(float(e) - float(t)) for e, t in zip(estimated, true_pos)
    )
    return distance3(estimated, true_pos), per_axis


def reference_matrix(
    grid,
    trajectory,
    params,
    matrix_mode=MatrixMode.RECOMPUTE,
    virtual_mode=VirtualMode.INTERPOLATED,
    domain=InterpolationDomain.DBM,
):
    """Grid RSSI used for matching at each trajectory position.

    Returns
    -------
    numpy array of shape (len(trajectory), len(grid))
    """
    matrix_mode = MatrixMode(matrix_mode)
    if matrix_mode == MatrixMode.RECOMPUTE:
        return measure_positions(
            grid, trajectory.positions, params, virtual_mode, domain
        )
    for reader in trajectory.positions[1:]:
        grid.distances_to(reader)
    first = measure_grid(
        grid, trajectory.positions[0], params, virtual_mode, domain
    )
    return np.tile(first.rssi_dbm, (len(trajectory), 1))


def localize(
    target,
    grid,
    trajectory,
    params,
    matrix_mode=MatrixMode.RECOMPUTE,
    virtual_mode=VirtualMode.INTERPOLATED,
    noise=NoiseSpec(),
    rng=None,
    domain=InterpolationDomain.DBM,
    matrix=None,
):
    """Estimate a target tag position with a mobile reader.

    At every trajectory position the target RSSI is compared with the
    reference matrix and the tag with the smallest difference gets a
    vote. The most voted tag position is the estimate.

    Parameters
    ----------
    target : Point3
        True target position, inside the room (walls included).
    grid : ReferenceGrid
        The reference matrix.
    trajectory : ReaderTrajectory
        Reader positions, in measurement order.
    params : RadioParams
        Link budget parameters.
    matrix_mode : MatrixMode (default = MatrixMode.RECOMPUTE)
        Measure the grid at every position, or once at the first.
    virtual_mode : VirtualMode (default = VirtualMode.INTERPOLATED)
        How virtual tag RSSI is obtained.
    noise : NoiseSpec (default = disabled)
        Measurement noise on the target RSSI.
    rng : numpy.random.Generator (optional)
        Random stream for the noise.
    domain : InterpolationDomain (default = InterpolationDomain.DBM)
        Interpolation domain for virtual tags.
    matrix : numpy array (optional)
        A precomputed ``reference_matrix`` for these inputs.

    Returns
    -------
    LocalizationResult

    Examples
    --------
    >>> from rfidpy.grid import RoomSpec, place_virtual_tags
    >>> from rfidpy.locate import ReaderTrajectory, localize
    >>> from rfidpy.radio import Point3, RadioParams
    >>> grid = place_virtual_tags(RoomSpec(), 2)
    >>> result = localize(Point3(3, 3, 4), grid,
    ...                   ReaderTrajectory.x_axis_walk(), RadioParams())
    >>> result.error_m
    0.0
    """
    if not isinstance(trajectory, ReaderTrajectory):
        trajectory = ReaderTrajectory(tuple(trajectory))
    if not grid.room.contains(target):
        raise ValueError(
            "The target {} is outside the room.".format(tuple(target))
        )
    if matrix is None:
        matrix = reference_matrix(
            grid, trajectory, params, matrix_mode, virtual_mode, domain
        )
    elif matrix.shape != (len(trajectory), len(grid)):
        raise ConfigError(
            "The reference matrix has shape {}, expected {}.".format(
                matrix.shape, (len(trajectory), len(grid))
            )
        )

    votes = []
    for i, reader in enumerate(trajectory.positions):
        target_rssi = measure_target(target, reader, params, noise, rng)
        votes.append(_nearest(target_rssi, matrix[i], i))

    tag_id = _winning_tag(votes)
    estimated = grid.position_of(tag_id)
    error_m, per_axis = localization_error(estimated, target)
    return LocalizationResult(
        votes=tuple(votes),
        estimated_tag_id=tag_id,
        estimated_position=estimated,
        true_position=target,
        error_m=error_m,
        per_axis_abs_error=per_axis,
    )
