"""
CSV / JSON serialization of spectra, fits, shift curves, sensitivity tables and
design recommendations.

Floats are written with repr() so identical results give byte-identical files.
"""

from __future__ import annotations

import csv
import json
import logging
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from .exceptions import InvalidArgumentError
from .spectrum import SpectrumGrid

logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ("wavelength_nm", "intensity")
CURVE_HEADER = ("B_tesla", "shift_nm")
TABLE_HEADER = ("beta_rad", "k_nm_per_T", "r2", "p_postselect")


def fmt(value: float) -> str:
    """repr of a float with negative zero folded to 0.0."""
    return repr(float(value) + 0.0)


def _clean(value: Any) -> Any:
    if isinstance(value, float):
        return value + 0.0
    if isinstance(value, Mapping):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_clean(v) for v in value]
    return value


def write_rows(path: Path, header: Iterable[str], rows: Iterable[Iterable[float]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([fmt(v) for v in row])
            count += 1
    logger.info("Wrote %d rows to %s", count, path)
    return path


def write_json(path: Path, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload) + "\n", encoding="utf-8")
    logger.info("Wrote %s", path)
    return path


def dumps(payload: Any) -> str:
    return json.dumps(_clean(payload), indent=2, allow_nan=True)


def write_spectrum_csv(path: Path, spectrum) -> Path:
    return write_rows(path, SPECTRUM_HEADER, zip(spectrum.wavelengths, spectrum.intensities, strict=True))


def read_spectrum_csv(path: Path):
    """
    Read a `wavelength_nm,intensity` CSV back into a SpectrumGrid.

    Raises FileNotFoundError for a missing file and InvalidArgumentError for a
    file without the expected header.
    """
    path = Path(path)
    wavelengths: list[float] = []
    intensities: list[float] = []
    with path.open("r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != SPECTRUM_HEADER:
            raise InvalidArgumentError(
                f"{path.name}: expected header {','.join(SPECTRUM_HEADER)}, got {reader.fieldnames}"
            )
        for row in reader:
            wavelengths.append(float(row["wavelength_nm"]))
            intensities.append(float(row["intensity"]))
    logger.info("Read %d samples from %s", len(wavelengths), path.name)
    return SpectrumGrid(wavelengths, intensities)


def write_curve_csv(path: Path, curve) -> Path:
    return write_rows(path, CURVE_HEADER, curve.points)


def write_table_csv(path: Path, results) -> Path:
    return write_rows(path, TABLE_HEADER, ([r.to_record()[k] for k in TABLE_HEADER] for r in results))
