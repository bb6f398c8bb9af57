"""
rfidpy.radio
============

Geometry and radio propagation kernel: 3D distances, power unit
conversions and the Friis backscatter model for passive RFID tags.

"""

from dataclasses import dataclass
import math
import numpy as np

SPEED_OF_LIGHT = 3e8
"""Speed of light used to derive wavelengths (m/s).

960 MHz maps to a wavelength of exactly 0.3125 m with this value.
"""


@dataclass(frozen=True)
class Point3:
    """A point in the room, in meters.

    Parameters
    ----------
    x, y, z : float
        Coordinates in meters. All three must be finite.

    Examples
    --------
    >>> from rfidpy.radio import Point3
    >>> p = Point3(3, 3, 4)
    >>> tuple(p)
    (3.0, 3.0, 4.0)
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(
                    "Point coordinates should be finite, got {}={}".format(
                        name, value
                    )
                )
            object.__setattr__(self, name, value)

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def to_array(self):
        """Return the coordinates as a numpy array of shape (3,)."""
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, arr):
        """Build a point from any length-3 sequence."""
        x, y, z = (float(v) for v in arr)
        return cls(x, y, z)


@dataclass(frozen=True)
class RadioParams:
    """Link budget parameters of the reader/tag pair.

    Parameters
    ----------
    tx_power_dbm : float (default = 30)
        Reader transmit power in dBm.
    reader_gain : float (default = 1)
        Linear antenna gain of the reader.
    tag_gain : float (default = 1)
        Linear antenna gain of the tag.
    wavelength_m : float (default = 0.3125)
        Carrier wavelength in meters.
    backscatter_loss : float (default = 0.33)
        Backscatter transmission loss factor, in (0, 1].
    """

    tx_power_dbm: float = 30.0
    reader_gain: float = 1.0
    tag_gain: float = 1.0
    wavelength_m: float = 0.3125
    backscatter_loss: float = 0.33

    def __post_init__(self):
        if not math.isfinite(self.tx_power_dbm):
            raise ValueError("`tx_power_dbm` should be a finite number.")
        if not self.reader_gain > 0:
            raise ValueError("`reader_gain` should be greater than 0.")
        if not self.tag_gain > 0:
            raise ValueError("`tag_gain` should be greater than 0.")
        if not self.wavelength_m > 0:
            raise ValueError("`wavelength_m` should be greater than 0.")
        if not 0 < self.backscatter_loss <= 1:
            raise ValueError(
                "`backscatter_loss` should be in the interval (0, 1]."
            )

    @classmethod
    def from_frequency(
        cls, frequency_hz, speed_of_light=SPEED_OF_LIGHT, **kwargs
    ):
        """Build parameters from a carrier frequency instead of a wavelength.

        Parameters
        ----------
        frequency_hz : float
            Carrier frequency in Hz.
        speed_of_light : float (default = 3e8)
            Propagation speed used for ``wavelength = c / f``.
        **kwargs
            Any other ``RadioParams`` field.

        Returns
        -------
        RadioParams

        Examples
        --------
        >>> from rfidpy.radio import RadioParams
        >>> RadioParams.from_frequency(960e6).wavelength_m
        0.3125
        """
        if not frequency_hz > 0:
            raise ValueError("`frequency_hz` should be greater than 0.")
        return cls(wavelength_m=speed_of_light / frequency_hz, **kwargs)


def _as_coords(p):
    if isinstance(p, Point3):
        return p.to_array()
    return np.asarray(p, dtype=float)


def distance3(a, b):
    """Euclidean distance between points in 3D space.

    Either argument may be a ``Point3``, a length-3 sequence, or an array
    of shape (N, 3), in which case distances are computed row by row.

    Parameters
    ----------
    a, b : Point3 or array-like
        Points in meters.

    Returns
    -------
    float or numpy array
        Distance(s) in meters. A float when both inputs are single points.

    Examples
    --------
    >>> from rfidpy.radio import Point3, distance3
    >>> distance3(Point3(0, 0, 0), Point3(3, 0, 0))
    3.0
    >>> round(distance3(Point3(0, 0, 0), Point3(3, 3, 4)), 4)
    5.831
    """
    diff = _as_coords(a) - _as_coords(b)
    if diff.shape[-1] != 3:
        raise ValueError("Points should have exactly three coordinates.")
    dist = np.sqrt(
        diff[..., 0] * diff[..., 0]
        + diff[..., 1] * diff[..., 1]
        + diff[..., 2] * diff[..., 2]
    )
    if dist.ndim == 0:
        return float(dist)
    return dist


def dbm_to_watts(p):
    """Convert power from dBm to watts.

    Parameters
    ----------
    p : float or numpy array
        Power in dBm.

    Returns
    -------
    float or numpy array
        Power in watts, ``10 ** (p / 10) / 1000``.

    Examples
    --------
    >>> from rfidpy.radio import dbm_to_watts
    >>> dbm_to_watts(30)
    1.0
    """
    watts = np.power(10.0, np.asarray(p, dtype=float) / 10.0) / 1000.0
    if watts.ndim == 0:
        return float(watts)
    return watts


def watts_to_dbm(p):
    """Convert power from watts to dBm.

    Parameters
    ----------
    p : float or numpy array
        Power in watts. Must be strictly positive.

    Returns
    -------
    float or numpy array
        Power in dBm.

    Examples
    --------
    >>> from rfidpy.radio import watts_to_dbm
    >>> watts_to_dbm(0.001)
    0.0
    """
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0)):
        raise ValueError("Power in watts should be greater than 0.")
    dbm = 10.0 * np.log10(p) + 30.0
    if dbm.ndim == 0:
        return float(dbm)
    return dbm


def friis_backscatter(params, d):
    """Power reflected by a passive tag and received back at the reader.

    Evaluates the round-trip Friis equation in linear watts::

        P_rx = P_tx * k * G_reader**2 * G_tag**2 * wavelength**4
               / (4 * pi * d)**4

    and returns the result in dBm. The fourth-power law makes the received
    power drop by ``40 * log10(2)`` dB (about 12.04 dB) every time the
    distance doubles.

    Parameters
    ----------
    params : RadioParams
        Link budget parameters.
    d : float or numpy array
        Reader to tag distance(s) in meters. Must be strictly positive.

    Returns
    -------
    float or numpy array
        Received signal strength in dBm.

    Examples
    --------
    >>> from rfidpy.radio import RadioParams, friis_backscatter
    >>> round(friis_backscatter(RadioParams(), 1.0), 2)
    -38.99
    """
    d = np.asarray(d, dtype=float)
    if np.any(~(d > 0)):
        raise ValueError(
            "Distance between reader and tag should be greater than 0. "
            "The reader can not be placed on a tag."
        )
    gains = params.reader_gain ** 2 * params.tag_gain ** 2
    numerator = (
        dbm_to_watts(params.tx_power_dbm)
        * params.backscatter_loss
        * gains
        * params.wavelength_m ** 4
    )
    p_rx = numerator / (4.0 * math.pi * d) ** 4
    return watts_to_dbm(p_rx)
