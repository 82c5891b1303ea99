"""Energy level feasibility validation by cascade simulation, plus isomer
inference.

A daughter nuclide is populated at the levels its parents feed directly; the
remaining reachable levels are established by simulating electromagnetic
transitions downward until the lowest energy is observed. Levels outside the
flattened set are unfeasible and their radiation is excluded downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .nuclide import DecayMode, EnergyValue, Nuclide, energies_match
from .records import LevelRecord, LevelScheme

DEFAULT_ISOMER_THRESHOLD_S = 1e-9


@dataclass
class FlattenedLevels:
    """All permissible energy levels of one nuclide in a given context."""

    nuclide: Nuclide
    inherited: list[EnergyValue]
    visited: list[EnergyValue]
    all: list[EnergyValue]
    orphans: list[EnergyValue] = field(default_factory=list)

    def contains(self, energy: EnergyValue) -> bool:
        return any(energies_match(energy, member) for member in self.all)


@dataclass(frozen=True)
class LevelOutcome:
    """Feasibility verdict for one level of a nuclide's level dataset."""

    level: LevelRecord
    feasible: bool
    modes: tuple[tuple[DecayMode, float], ...]
    is_isomer: bool


def _dedup_desc(values: list[EnergyValue]) -> list[EnergyValue]:
    out: list[EnergyValue] = []
    for value in sorted(values, key=lambda e: e.kev, reverse=True):
        if not any(v.kev == value.kev for v in out):
            out.append(value)
    return out


def cascade_visit(
    start_levels: list[EnergyValue],
    scheme: LevelScheme,
    warnings: list[str] | None = None,
) -> list[EnergyValue]:
    """Every level reachable from any start level via zero or more downward
    transitions, duplicates excluded, sorted by descending energy.

    Start levels that resolve to no level record are kept in the output
    (reported through ``warnings``) but cannot seed transitions.
    """
    visited: list[EnergyValue] = []
    frontier: list[EnergyValue] = []
    for start in start_levels:
        record = scheme.find_level(start)
        if record is None:
            if warnings is not None:
                warnings.append(
                    f"{scheme.nuclide}: start level {start.kev} keV matches no "
                    f"level record"
                )
            visited.append(start)
            continue
        visited.append(record.energy)
        frontier.append(record.energy)

    seen = {e.kev for e in visited}
    while frontier:
        current = frontier.pop()
        for transition in scheme.transitions:
            if not energies_match(transition.start_level, current):
                continue
            record = scheme.find_level(transition.end_level)
            end = record.energy if record is not None else transition.end_level
            if end.kev not in seen:
                seen.add(end.kev)
                visited.append(end)
                frontier.append(end)
    return _dedup_desc(visited)


def flatten_levels(
    nuclide: Nuclide,
    inherited: list[EnergyValue],
    scheme: LevelScheme,
    warnings: list[str] | None = None,
    simulate_cascade: bool = True,
) -> FlattenedLevels:
    """Combine parent-fed levels with their cascade closure.

    ``simulate_cascade=False`` skips transition traversal (control/regression
    use only); the flattened set is then the inherited levels alone.
    """
    inherited = _dedup_desc(list(inherited))
    orphans = [e for e in inherited if scheme.find_level(e) is None]
    if simulate_cascade:
        visited = cascade_visit(inherited, scheme, warnings)
    else:
        visited = list(inherited)
    combined = _dedup_desc(inherited + visited)
    return FlattenedLevels(
        nuclide=nuclide,
        inherited=inherited,
        visited=visited,
        all=combined,
        orphans=orphans,
    )


def infer_level_outcomes(
    flat: FlattenedLevels,
    scheme: LevelScheme,
    isomer_threshold_s: float = DEFAULT_ISOMER_THRESHOLD_S,
) -> list[LevelOutcome]:
    """Feasibility and isomer verdicts for every level in the dataset.

    A level is feasible iff it is in the flattened set; an isomer iff it is
    excited and its reported half-life is at or above the threshold. Isomer
    inference needs no extra data pass: it reuses the flattened levels.
    """
    outcomes = []
    for record in sorted(scheme.levels, key=lambda r: r.energy.kev, reverse=True):
        feasible = flat.contains(record.energy)
        is_isomer = (
            record.energy.kev > 0
            and record.half_life is not None
            and not record.half_life.is_stable
            and record.half_life.seconds >= isomer_threshold_s
        )
        outcomes.append(
            LevelOutcome(
                level=record,
                feasible=feasible,
                modes=record.decay_modes,
                is_isomer=is_isomer,
            )
        )
    return outcomes
