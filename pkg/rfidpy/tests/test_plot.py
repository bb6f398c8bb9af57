""" Tests for the plot module. """

import matplotlib.pyplot as plt
import pytest
import rfidpy.plot as rp
from rfidpy.experiment import ExperimentConfig, sweep_n

plt.show = lambda: None


@pytest.fixture
def report():
    """A small sweep to plot."""
    return sweep_n(ExperimentConfig(n_values=(0, 1, 2), trials_per_n=5))


def test_plot_grid_returns_3d_axes(edge_grid):
    """plot_grid draws the tags on a new 3D axes."""
    ax = rp.plot_grid(edge_grid, title="Reference matrix")
    assert hasattr(ax, "zaxis")
    assert ax.get_title() == "Reference matrix"
    labels = [t.get_text() for t in ax.get_legend().get_texts()]
    assert labels == ["reference tags", "virtual tags"]
    # Twelve room edges
    assert len(ax.lines) == 12
    plt.close(ax.figure)


def test_plot_grid_without_virtual_tags(vertex_grid):
    ax = rp.plot_grid(vertex_grid)
    labels = [t.get_text() for t in ax.get_legend().get_texts()]
    assert labels == ["reference tags"]
    plt.close(ax.figure)


def test_plot_grid_needs_3d_axes(edge_grid):
    """A 2D axes can not hold the grid."""
    f, ax = plt.subplots()
    with pytest.raises(ValueError, match="3D axes"):
        rp.plot_grid(edge_grid, ax=ax)
    plt.close(f)


def test_plot_grid_on_existing_axes(lattice_grid):
    f = plt.figure()
    ax = f.add_subplot(projection="3d")
    assert rp.plot_grid(lattice_grid, ax=ax) is ax
    plt.close(f)


def test_plot_sweep_lines(report):
    ax = rp.plot_sweep(report, title="Mean error")
    assert len(ax.lines) == 4
    assert ax.get_title() == "Mean error"
    x, y = ax.lines[0].get_data()
    assert list(x) == [0, 1, 2]
    assert list(y) == [row.mean_error_m for row in report.rows]
    plt.close(ax.figure)


def test_plot_sweep_total_only(report):
    f, ax = plt.subplots()
    rp.plot_sweep(report, ax=ax, per_axis=False)
    assert len(ax.lines) == 1
    assert ax.get_legend().get_texts()[0].get_text() == "mean error"
    plt.close(f)
