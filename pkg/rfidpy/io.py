"""
rfidpy.io
=========

File Input/Output utilities: configuration files, CSV and JSON reports,
and the example data shipped with the package.

"""

import json
import logging
import os
import os.path as op
import rfidpy
from .errors import ConfigError

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%#.6g"
CSV_COMMENT = "# floats written with fixed 6 significant digits (printf %#.6g)"


def read_config(path):
    """Read a JSON configuration file.

    Parameters
    ----------
    path : str
        Path to a JSON file holding one object. Keys follow
        ``ExperimentConfig`` field names; every key is optional.

    Returns
    -------
    dict
        The parsed configuration values.

    Example
    -------
        >>> from rfidpy.io import path_to_example, read_config
        >>> read_config(path_to_example("paper-preset.json"))["trials_per_n"]
        1000
    """
    with open(path, encoding="utf-8") as f:
        try:
            values = json.load(f)
        except json.JSONDecodeError as err:
            raise ConfigError(
                "The configuration file {} is not valid JSON: {}".format(
                    path, err
                )
            ) from err
    if not isinstance(values, dict):
        raise ConfigError(
            "The configuration file {} should hold a JSON object.".format(
                path
            )
        )
    return values


def write_csv(frame, path, comment=CSV_COMMENT):
    """Write a data frame as CSV with stable number formatting.

    The first line is a ``#`` comment describing the number format, so
    readers should skip it (``pandas.read_csv(path, comment="#")``).

    Parameters
    ----------
    frame : pandas.DataFrame
        Table to write.
    path : str or file-like
        Output file path (the directory must exist) or an open text
        stream such as ``sys.stdout``.
    comment : str (optional)
        Header comment line.

    Returns
    -------
    str or file-like
        The path or stream that was written.
    """
    if hasattr(path, "write"):
        _write_csv_stream(frame, path, comment)
        return path
    with open(path, "w", encoding="utf-8", newline="") as f:
        _write_csv_stream(frame, f, comment)
    logger.info("Wrote %s", path)
    return path


def _write_csv_stream(frame, stream, comment):
    stream.write(comment + "\n")
    frame.to_csv(
        stream,
        index=False,
        float_format=CSV_FLOAT_FORMAT,
        lineterminator="\n",
    )


def write_json(values, path):
    """Write a JSON document with sorted keys and full float precision."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(values, f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("Wrote %s", path)
    return path


def path_to_example(dataset):
    """Construct a file path to an example dataset.

    Parameters
    ----------
    dataset: string
        Name of a dataset to access (e.g., "paper-preset.json")

    Returns
    -------
    A file path (string) to the dataset

    Example
    -------

        >>> import rfidpy.io as rfio
        >>> rfio.path_to_example('paper-preset.json')
        '...paper-preset.json'
    """
    rfidpy_path = os.path.split(rfidpy.__file__)[0]
    data_dir = op.join(rfidpy_path, "example-data")
    data_files = os.listdir(data_dir)
    if dataset not in data_files:
        raise KeyError(dataset + " not found in rfidpy example data.")
    return op.join(data_dir, dataset)
