"""Minimal peak qualification: match located spectrum peaks against a
generated library within an energy tolerance.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

from .library import LibraryEntry, RadionuclideLibrary


@dataclass(frozen=True)
class Peak:
    centroid_kev: float
    net_area: float | None = None

    def __post_init__(self):
        if not (self.centroid_kev >= 0 and self.centroid_kev == self.centroid_kev):
            raise ValueError("peak centroid must be finite and nonnegative")


@dataclass
class PeakList:
    peaks: list[Peak] = field(default_factory=list)

    @classmethod
    def load_csv(cls, path: Path | str) -> "PeakList":
        """Read 'centroid_kev[,net_area]' rows; a header row is optional."""
        text = Path(path).read_text(encoding="utf-8")
        peaks = []
        for row in csv.reader(io.StringIO(text)):
            if not row or not row[0].strip():
                continue
            try:
                centroid = float(row[0])
            except ValueError:
                continue  # header or comment line
            area = None
            if len(row) > 1 and row[1].strip():
                area = float(row[1])
            peaks.append(Peak(centroid, area))
        return cls(peaks)


@dataclass
class PeakMatch:
    """Qualification result for one peak; unassigned when no candidate."""

    peak: Peak
    candidates: list[LibraryEntry]

    @property
    def unassigned(self) -> bool:
        return not self.candidates


def qualify_peaks(
    peaks: PeakList, lib: RadionuclideLibrary, tol_kev: float
) -> list[PeakMatch]:
    """Assign library candidates to each located peak.

    A candidate is any entry with |entry energy - centroid| <= tol_kev,
    sorted by |deltaE| then descending intensity (energy agreement is the
    physical discriminator; intensity breaks ties). Total: peaks without
    candidates come back flagged unassigned.
    """
    if tol_kev <= 0:
        raise ValueError("tolerance must be positive")
    matches = []
    for peak in peaks.peaks:
        candidates = [
            entry
            for entry in lib.entries
            if abs(entry.energy.kev - peak.centroid_kev) <= tol_kev
        ]
        candidates.sort(
            key=lambda entry: (
                abs(entry.energy.kev - peak.centroid_kev),
                -(entry.intensity_percent if entry.intensity_percent is not None else -1.0),
                str(entry.nuclide),
            )
        )
        matches.append(PeakMatch(peak=peak, candidates=candidates))
    return matches
