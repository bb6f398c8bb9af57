""" Utility functions for tests. """
import numpy as np
import pytest
from rfidpy.experiment import ExperimentConfig
from rfidpy.grid import RoomSpec, place_virtual_tags
from rfidpy.locate import ReaderTrajectory
from rfidpy.radio import RadioParams


@pytest.fixture
def room():
    """The default 3 m x 3 m x 4 m room."""
    return RoomSpec()


@pytest.fixture
def params():
    """Default link budget: 30 dBm, unit gains, 0.3125 m, k = 0.33."""
    return RadioParams()


@pytest.fixture
def walk():
    """The default reader walk along x."""
    return ReaderTrajectory.x_axis_walk()


@pytest.fixture
def vertex_grid(room):
    """Only the 8 reference tags."""
    return place_virtual_tags(room, 0)


@pytest.fixture
def edge_grid(room):
    """Two virtual tags per edge, 32 tags in total."""
    return place_virtual_tags(room, 2)


@pytest.fixture
def lattice_grid(room):
    """A 3 x 3 x 3 lattice, 27 tags in total."""
    return place_virtual_tags(room, 1, mode="lattice")


@pytest.fixture
def small_config():
    """A quick sweep: three values of n and 20 trials each."""
    return ExperimentConfig(n_values=(0, 1, 2), trials_per_n=20, seed=7)


@pytest.fixture
def rng():
    """A seeded numpy random stream."""
    return np.random.default_rng(20240601)
