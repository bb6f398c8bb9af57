"""

3D localization of passive RFID tags with a single mobile reader, a
reference tag matrix densified with virtual tags, and RSSI voting.

"""

__version__ = "0.1.0"

from .errors import ConfigError
from .radio import Point3, RadioParams, distance3, friis_backscatter
from .grid import RoomSpec, ReferenceGrid, place_virtual_tags
from .locate import ReaderTrajectory, localize
from .experiment import ExperimentConfig, sweep_n
