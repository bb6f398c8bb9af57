"""
rfidpy.plot
===========

Plots of the reference matrix layout and of sweep results.

"""

import numpy as np
import matplotlib.pyplot as plt
from .grid import ROOM_EDGES, TagKind, build_reference_tags

_EDGE_STYLE = {"color": "lightgrey", "linewidth": 0.8, "zorder": 0}


def plot_grid(grid, ax=None, title=None, figsize=(6, 6)):
    """Draw the room with its reference and virtual tags in 3D.

    Parameters
    ----------
    grid : ReferenceGrid
        The reference matrix to draw.
    ax : matplotlib 3D axes object (optional)
        Axes created with ``projection="3d"``. A new figure is created
        when not provided.
    title : str (optional)
        Plot title.
    figsize : tuple (default = (6, 6))
        Figure size in inches, used when ``ax`` is not provided.

    Returns
    -------
    ax : matplotlib 3D axes object
        The axes the grid was drawn on.

    Example
    -------
    .. plot::

        >>> import matplotlib.pyplot as plt
        >>> import rfidpy.plot as rp
        >>> from rfidpy.grid import RoomSpec, place_virtual_tags
        >>> grid = place_virtual_tags(RoomSpec(), 2)
        >>> ax = rp.plot_grid(grid, title="Reference matrix, n = 2")
        >>> plt.show()
    """
    if ax is None:
        fig = plt.figure(figsize=figsize)
        ax = fig.add_subplot(projection="3d")
    elif not hasattr(ax, "zaxis"):
        raise ValueError(
            "plot_grid needs a 3D axes, create it with projection='3d'."
        )

    corners = np.array(
        [tuple(tag.position) for tag in build_reference_tags(grid.room)]
    )
    for a, b in ROOM_EDGES:
        segment = corners[[a, b]]
        ax.plot(segment[:, 0], segment[:, 1], segment[:, 2], **_EDGE_STYLE)

    for kind, marker, color in (
        (TagKind.REFERENCE, "s", "purple"),
        (TagKind.VIRTUAL, "o", "darkorange"),
    ):
        is_kind = np.array([tag.kind == kind for tag in grid.tags])
        points = grid.positions[is_kind]
        if len(points):
            ax.scatter(
                points[:, 0],
                points[:, 1],
                points[:, 2],
                marker=marker,
                color=color,
                label="{} tags".format(kind.value),
            )
    ax.set(xlabel="x (m)", ylabel="y (m)", zlabel="z (m)")
    if title:
        ax.set(title=title)
    ax.legend(loc="upper left")
    return ax


def plot_sweep(report, ax=None, title=None, per_axis=True, figsize=(8, 5)):
    """Plot the mean localization error against the number of virtual tags.

    Parameters
    ----------
    report : SweepReport
        Result of ``rfidpy.experiment.sweep_n``.
    ax : matplotlib axes object (optional)
        Axes to draw on. A new figure is created when not provided.
    title : str (optional)
        Plot title.
    per_axis : bool (default = True)
        Also draw the mean absolute error of each axis.
    figsize : tuple (default = (8, 5))
        Figure size in inches, used when ``ax`` is not provided.

    Returns
    -------
    ax : matplotlib axes object
    """
    if ax is None:
        fig, ax = plt.subplots(figsize=figsize)

    frame = report.to_frame()
    ax.plot(frame["n"], frame["mean_error_m"], marker="o", label="mean error")
    if per_axis:
        for column, axis in (("mae_x", "x"), ("mae_y", "y"), ("mae_z", "z")):
            ax.plot(
                frame["n"],
                frame[column],
                linestyle="--",
                marker=".",
                label="{} axis".format(axis),
            )
    ax.set(xlabel="n (virtual tags per segment)", ylabel="error (m)")
    ax.set_xticks(list(frame["n"]))
    if title:
        ax.set(title=title)
    ax.legend()
    return ax
