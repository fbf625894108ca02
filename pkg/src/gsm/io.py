"""CSV reading and writing of orthant datasets."""

import logging
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from ..model.base import Dataset
from ..model.errors import DomainError

logger = logging.getLogger(__name__)


def _is_number(text: str) -> bool:
    try:
        float(text)
    except (TypeError, ValueError):
        return False
    return True


def read_dataset(path: Union[str, Path], support: str = "nonnegative") -> Dataset:
    """Read a comma separated matrix with an optional header row.

    The first row is taken as a header when any of its cells is not a
    number. Rows and columns in error messages are 1-based and count data
    rows only.

    Raises:
        DomainError: If the file is missing, empty, ragged, holds a
            non-numeric body cell or (for orthant data) a negative entry
    """
    path = Path(path)
    try:
        raw = pd.read_csv(
            path, header=None, dtype=str, sep=",", skip_blank_lines=True
        )
    except FileNotFoundError:
        raise DomainError(f"Data file not found: {path}")
    except pd.errors.EmptyDataError:
        raise DomainError(f"Data file {path} is empty")
    except pd.errors.ParserError as e:
        raise DomainError(f"Ragged rows in {path}: {e}")

    header = not all(_is_number(cell) for cell in raw.iloc[0].tolist())
    body = raw.iloc[1:] if header else raw
    if body.empty:
        raise DomainError(f"Data file {path} has no data rows")

    values = body.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    missing = body.isna().to_numpy()
    bad = np.isnan(values)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        if missing[row, col]:
            raise DomainError(
                f"Missing value at row {row + 1}, column {col + 1} of {path} "
                f"(ragged rows?)"
            )
        raise DomainError(
            f"Non-numeric value '{body.iat[row, col]}' at row {row + 1}, "
            f"column {col + 1} of {path}"
        )
    logger.info(f"Read {values.shape[0]} x {values.shape[1]} dataset from {path}")
    return Dataset(x=values, support=support)


def write_dataset(
    dataset: Dataset, path: Union[str, Path], header: bool = False
) -> Path:
    """Write the data matrix; header names are ``x1..xm``."""
    path = Path(path)
    columns = [f"x{j + 1}" for j in range(dataset.m)]
    frame = pd.DataFrame(dataset.x, columns=columns)
    frame.to_csv(path, index=False, header=header, float_format="%.17g")
    return path
