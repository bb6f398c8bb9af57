"""
rfidpy.errors
=============

Exceptions raised by rfidpy. Invalid physical values (negative powers,
zero distances, points outside the room) raise plain ``ValueError``.

"""


class ConfigError(ValueError):
    """A simulation was set up in a way that can not run.

    Raised for empty trajectories, vote lists or measurements, and for
    invalid configuration files or values.
    """
