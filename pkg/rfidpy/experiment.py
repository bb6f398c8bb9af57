"""
rfidpy.experiment
=================

Seeded Monte Carlo runs of the localizer over a range of virtual tag
counts, and the error statistics they produce.

Every trial draws its own random streams from the experiment seed, so the
results do not depend on the order trials run in or on how many run at
once. The target of trial ``i`` only depends on ``(seed, i)``: every
value of ``n`` in a sweep locates the same targets.

"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
import logging
from typing import Tuple
import numpy as np
import pandas as pd
from .errors import ConfigError
from .grid import InterpolationDomain, PlacementMode, RoomSpec, VirtualMode
from .grid import place_virtual_tags
from .locate import MatrixMode, NoiseSpec, ReaderTrajectory
from .locate import localize, reference_matrix
from .radio import Point3, RadioParams

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
PERCENTILES = (50, 90)
AGGREGATE_COLUMNS = [
    "n",
    "mean_error_m",
    "mae_x",
    "mae_y",
    "mae_z",
    "p50",
    "p90",
    "max",
]

# First spawn-key element of each random stream family
_TARGET_STREAM = 0
_NOISE_STREAM = 1


def _default_n_values():
    return tuple(range(9))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce a sweep.

    Defaults reproduce the reference setup: a 3 m x 3 m x 4 m room, a
    30 dBm reader walking x = 0..10, ``n`` from 0 to 8, 1000 trials per
    ``n``, no noise.
    """

    room: RoomSpec = field(default_factory=RoomSpec)
    params: RadioParams = field(default_factory=RadioParams)
    trajectory: ReaderTrajectory = field(
        default_factory=ReaderTrajectory.x_axis_walk
    )
    n_values: Tuple[int, ...] = field(default_factory=_default_n_values)
    trials_per_n: int = 1000
    seed: int = DEFAULT_SEED
    placement_mode: PlacementMode = PlacementMode.EDGE
    virtual_mode: VirtualMode = VirtualMode.INTERPOLATED
    matrix_mode: MatrixMode = MatrixMode.RECOMPUTE
    interpolation_domain: InterpolationDomain = InterpolationDomain.DBM
    noise: NoiseSpec = field(default_factory=NoiseSpec)

    def __post_init__(self):
        n_values = tuple(self.n_values)
        if not n_values:
            raise ConfigError("`n_values` should list at least one value.")
        for n in n_values:
            if isinstance(n, bool) or int(n) != n or n < 0:
                raise ConfigError(
                    "`n_values` should hold non-negative integers, "
                    "got {!r}.".format(n)
                )
        object.__setattr__(self, "n_values", tuple(int(n) for n in n_values))
        if isinstance(self.trials_per_n, bool) or not (
            int(self.trials_per_n) == self.trials_per_n
            and self.trials_per_n >= 1
        ):
            raise ConfigError("`trials_per_n` should be 1 or greater.")
        if isinstance(self.seed, bool) or not (
            int(self.seed) == self.seed and 0 <= self.seed < 2 ** 64
        ):
            raise ConfigError(
                "`seed` should be an integer in [0, 2**64), got {!r}.".format(
                    self.seed
                )
            )
        object.__setattr__(self, "trials_per_n", int(self.trials_per_n))
        object.__setattr__(self, "seed", int(self.seed))
        try:
            for name, enum in (
                ("placement_mode", PlacementMode),
                ("virtual_mode", VirtualMode),
                ("matrix_mode", MatrixMode),
                ("interpolation_domain", InterpolationDomain),
            ):
                object.__setattr__(self, name, enum(getattr(self, name)))
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def to_dict(self):
        """Plain, JSON serializable form of the configuration."""
        return {
            "room": asdict(self.room),
            "params": asdict(self.params),
            "trajectory": [list(p) for p in self.trajectory.positions],
            "n_values": list(self.n_values),
            "trials_per_n": self.trials_per_n,
            "seed": self.seed,
            "placement_mode": self.placement_mode.value,
            "virtual_mode": self.virtual_mode.value,
            "matrix_mode": self.matrix_mode.value,
            "interpolation_domain": self.interpolation_domain.value,
            "noise": asdict(self.noise),
        }

    @classmethod
    def from_dict(cls, values):
        """Build a configuration from a (possibly partial) dictionary.

        Missing keys keep their defaults. ``trajectory`` is either a list
        of ``[x, y, z]`` points or a walk description such as
        ``{"axis": "x", "positions": 10, "step": 1.0, "standoff": 0.1}``,
        where ``axis`` may also be ``"xyz"`` for a walk along all three.

        Raises
        ------
        ConfigError
            For unknown keys or values of the wrong shape.
        """
        if not isinstance(values, dict):
            raise ConfigError("A configuration should be a JSON object.")
        unknown = set(values) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(
                "Unknown configuration keys: {}".format(sorted(unknown))
            )
        kwargs = dict(values)
        nested = {"room": RoomSpec, "params": RadioParams, "noise": NoiseSpec}
        try:
            for key, kind in nested.items():
                if key in kwargs:
                    if not isinstance(kwargs[key], dict):
                        raise ConfigError(
                            "`{}` should be a JSON object.".format(key)
                        )
                    kwargs[key] = kind(**kwargs[key])
            if "trajectory" in kwargs:
                kwargs["trajectory"] = _trajectory_from_value(
                    kwargs["trajectory"]
                )
            return cls(**kwargs)
        except TypeError as err:
            raise ConfigError(
                "Invalid configuration: {}".format(err)
            ) from err


def _trajectory_from_value(value):
    if isinstance(value, dict):
        walk = dict(value)
        axis = walk.pop("axis", "x")
        if axis == "xyz":
            return ReaderTrajectory.multi_axis_walk(**walk)
        return ReaderTrajectory.axis_walk(axis, **walk)
    try:
        return ReaderTrajectory(tuple(Point3(*p) for p in value))
    except (TypeError, ValueError) as err:
        raise ConfigError(
            "`trajectory` should be a list of [x, y, z] points."
        ) from err


@dataclass(frozen=True)
class TrialRecord:
    n: int
    trial_index: int
    true_position: Point3
    estimated_position: Point3
    error_m: float
    per_axis_abs_error: Tuple[float, float, float]


@dataclass(frozen=True)
class AggregateRow:
    """Error statistics of the trials for one value of ``n``."""

    n: int
    trials: int
    mean_error_m: float
    mae_x: float
    mae_y: float
    mae_z: float
    p50: float
    p90: float
    max: float


@dataclass(frozen=True)
class SweepReport:
    """Per-``n`` statistics of a sweep, with the records behind them."""

    config: ExperimentConfig
    rows: Tuple[AggregateRow, ...]
    overall_mean_error_m: float
    overall_mae: Tuple[float, float, float]
    records: Tuple[TrialRecord, ...] = field(repr=False, default=())

    def to_frame(self):
        """One row per ``n`` with the aggregate CSV columns."""
        frame = pd.DataFrame([asdict(row) for row in self.rows])
        return frame[AGGREGATE_COLUMNS]


def target_stream(seed, trial_index):
    """Random stream that places the target of one trial."""
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(_TARGET_STREAM, trial_index))
    )


def noise_stream(seed, n, trial_index):
    """Random stream for the measurement noise of one trial."""
    return np.random.default_rng(
        np.random.SeedSequence(
            seed, spawn_key=(_NOISE_STREAM, n, trial_index)
        )
    )


def sample_target(room, rng):
    """Draw a target uniformly inside the room, walls excluded.

    Parameters
    ----------
    room : RoomSpec
    rng : numpy.random.Generator

    Returns
    -------
    Point3
    """
    while True:
        coords = rng.uniform(0.0, room.extents)
        if np.all(coords > 0):
            return Point3.from_array(coords)


def _run_trial(config, grid, matrix, n, trial_index):
    stream = target_stream(config.seed, trial_index)
    target = sample_target(config.room, stream)
    rng = None
    if config.noise.enabled:
        rng = noise_stream(config.seed, n, trial_index)
    result = localize(
        target,
        grid,
        config.trajectory,
        config.params,
        matrix_mode=config.matrix_mode,
        virtual_mode=config.virtual_mode,
        noise=config.noise,
        rng=rng,
        domain=config.interpolation_domain,
        matrix=matrix,
    )
    return TrialRecord(
        n=n,
        trial_index=trial_index,
        true_position=target,
        estimated_position=result.estimated_position,
        error_m=result.error_m,
        per_axis_abs_error=result.per_axis_abs_error,
    )


def run_trials(config, n, n_jobs=1):
    """Locate ``config.trials_per_n`` random targets on the grid for ``n``.

    Parameters
    ----------
    config : ExperimentConfig
    n : int
        Number of virtual tags between neighbouring reference tags.
    n_jobs : int (default = 1)
        Number of worker threads. Results do not depend on it.

    Returns
    -------
    list of TrialRecord
        Ordered by trial index.
    """
    grid = place_virtual_tags(config.room, n, config.placement_mode)
    matrix = reference_matrix(
        grid,
        config.trajectory,
        config.params,
        config.matrix_mode,
        config.virtual_mode,
        config.interpolation_domain,
    )

    def trial(i):
        try:
            return _run_trial(config, grid, matrix, n, i)
        except Exception as err:
            logger.error("Trial %d for n=%d failed: %s", i, n, err)
            raise ValueError(
                "Trial {} for n={} failed: {}".format(i, n, err)
            ) from err

    indices = range(config.trials_per_n)
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as executor:
            return list(executor.map(trial, indices))
    return [trial(i) for i in indices]


def _nearest_rank(sorted_values, percent):
    rank = -(-percent * len(sorted_values) // 100)
    return float(sorted_values[max(rank, 1) - 1])


def aggregate(records):
    """Mean and percentile error statistics of a list of trials.

    Percentiles use the nearest-rank method.

    Parameters
    ----------
    records : list of TrialRecord

    Returns
    -------
    AggregateRow

    Examples
    --------
    >>> from rfidpy.radio import Point3
    >>> from rfidpy.experiment import TrialRecord, aggregate
    >>> p = Point3(0, 0, 0)
    >>> rows = [TrialRecord(0, i, p, p, e, (e, 0.0, 0.0))
    ...         for i, e in enumerate([1.0, 3.0])]
    >>> aggregate(rows).mean_error_m
    2.0
    """
    if not records:
        raise ConfigError("Can not aggregate an empty list of trials.")
    errors = np.array([r.error_m for r in records])
    per_axis = np.array([r.per_axis_abs_error for r in records])
    mae = per_axis.mean(axis=0)
    ordered = np.sort(errors)
    p50, p90 = (_nearest_rank(ordered, p) for p in PERCENTILES)
    return AggregateRow(
        n=records[0].n,
        trials=len(records),
        mean_error_m=float(errors.mean()),
        mae_x=float(mae[0]),
        mae_y=float(mae[1]),
        mae_z=float(mae[2]),
        p50=p50,
        p90=p90,
        max=float(ordered[-1]),
    )


def sweep_n(config, n_jobs=1):
    """Run and aggregate the trials for every ``n`` of the configuration.

    Parameters
    ----------
    config : ExperimentConfig
    n_jobs : int (default = 1)
        Worker threads per ``n``.

    Returns
    -------
    SweepReport
    """
    rows = []
    records = []
    for n in config.n_values:
        logger.info(
            "Running %d trials for n=%d (%s, %s, %s)",
            config.trials_per_n,
            n,
            config.placement_mode.value,
            config.virtual_mode.value,
            config.matrix_mode.value,
        )
        trials = run_trials(config, n, n_jobs=n_jobs)
        row = aggregate(trials)
        logger.info("n=%d mean error %.3f m", n, row.mean_error_m)
        rows.append(row)
        records.extend(trials)

    overall = aggregate(records)
    return SweepReport(
        config=config,
        rows=tuple(rows),
        overall_mean_error_m=overall.mean_error_m,
        overall_mae=(overall.mae_x, overall.mae_y, overall.mae_z),
        records=tuple(records),
    )


def records_to_frame(records):
    """One row per trial, for the per-trial CSV."""
    return pd.DataFrame(
        {
            "n": [r.n for r in records],
            "trial_index": [r.trial_index for r in records],
            "true_x": [r.true_position.x for r in records],
            "true_y": [r.true_position.y for r in records],
            "true_z": [r.true_position.z for r in records],
            "est_x": [r.estimated_position.x for r in records],
            "est_y": [r.estimated_position.y for r in records],
            "est_z": [r.estimated_position.z for r in records],
            "error_m": [r.error_m for r in records],
            "abs_dx": [r.per_axis_abs_error[0] for r in records],
            "abs_dy": [r.per_axis_abs_error[1] for r in records],
            "abs_dz": [r.per_axis_abs_error[2] for r in records],
        }
    )
