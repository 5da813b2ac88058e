"""Claim ingestion: deductible/cover transform, normalization, CSV I/O.

A raw loss y with deductible d and cover M becomes
y_net = min(max(y - d, 0), M), normalized to z = y_net / M in [0, 1].
Records hitting the cover give z = 1 exactly; records fully below the
deductible give z = 0 and are excluded from fitting samples (with a
count), since the likelihoods live on (0, 1].
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DataError

__all__ = ["ClaimRecord", "NormalizedSample", "transform_claim", "load_claims", "save_sample"]

Z_TOL = 1e-12

RAW_COLUMNS = ("loss", "deductible", "cover")


@dataclass(frozen=True)
class ClaimRecord:
    total_loss: float
    deductible: float
    cover: float

    def __post_init__(self):
        if not self.deductible > 0.0:
            raise DataError(f"deductible must be > 0, got {self.deductible}")
        if not self.cover > 0.0:
            raise DataError(f"cover must be > 0, got {self.cover}")
        if not np.isfinite(self.total_loss) or self.total_loss < 0.0:
            raise DataError(f"total loss must be finite and >= 0, got {self.total_loss}")


@dataclass
class NormalizedSample:
    z_values: np.ndarray
    n_dropped_zero: int = 0


def transform_claim(record: ClaimRecord) -> float:
    """Normalized loss z = min((y - d)+, M) / M; exactly 1 at the cover."""
    excess = record.total_loss - record.deductible
    if excess >= record.cover:
        return 1.0
    if excess <= 0.0:
        return 0.0
    return excess / record.cover


def load_claims(path, schema: str = "z") -> NormalizedSample:
    """Load a claims CSV in `z` or `raw` schema.

    `z`: single column ``z`` of normalized losses in [0, 1].
    `raw`: columns ``loss,deductible,cover``; the transform is applied per
    record. Zero-valued z are excluded and counted.
    """
    if schema not in ("z", "raw"):
        raise DataError(f"schema must be 'z' or 'raw', got {schema!r}")
    values = []
    dropped = 0
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if schema == "z":
            if header != ["z"]:
                raise DataError(f"{path}: expected header 'z', got {header!r}")
        else:
            if header != list(RAW_COLUMNS):
                raise DataError(
                    f"{path}: expected header {','.join(RAW_COLUMNS)!r}, got {header!r}"
                )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                fields = [float(c) for c in row]
            except ValueError:
                raise DataError(f"{path}:{lineno}: malformed row {row!r}") from None
            if schema == "z":
                if len(fields) != 1:
                    raise DataError(f"{path}:{lineno}: expected one column, got {len(fields)}")
                z = fields[0]
                if z < -Z_TOL or z > 1.0 + Z_TOL:
                    raise DataError(f"{path}:{lineno}: z={z!r} outside [0, 1]")
                z = min(max(z, 0.0), 1.0)
            else:
                if len(fields) != 3:
                    raise DataError(f"{path}:{lineno}: expected three columns, got {len(fields)}")
                try:
                    z = transform_claim(ClaimRecord(*fields))
                except DataError as exc:
                    raise DataError(f"{path}:{lineno}: {exc}") from None
            if z == 0.0:
                dropped += 1
            else:
                values.append(z)
    if not values and dropped == 0:
        raise DataError(f"{path}: no data rows")
    return NormalizedSample(z_values=np.array(values, dtype=float), n_dropped_zero=dropped)


def save_sample(sample, path) -> None:
    """Write a `z`-schema CSV; floats use shortest round-trip formatting."""
    z = sample.z_values if isinstance(sample, NormalizedSample) else np.asarray(sample, dtype=float)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("z\n")
        for v in z:
            fh.write(repr(float(v)) + "\n")
