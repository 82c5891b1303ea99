"""YAML run configuration with a strict schema.

Unknown keys are errors: a typo in a progenitor list silently producing the
wrong library is exactly the class of human error batch generation is meant
to remove.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigParseError, InvertedBounds, UnknownKey
from .library import INF, PruneBounds
from .nuclide import LevelSpec, Nuclide, RadiationType, parse_nuclide_id
from .plot import PlotWindow

RADIATION_NAMES = {
    "alpha": RadiationType.ALPHA,
    "a": RadiationType.ALPHA,
    "beta_minus": RadiationType.BETA_MINUS,
    "beta-": RadiationType.BETA_MINUS,
    "bm": RadiationType.BETA_MINUS,
    "beta_plus_ec": RadiationType.BETA_PLUS_EC,
    "beta+": RadiationType.BETA_PLUS_EC,
    "bp": RadiationType.BETA_PLUS_EC,
    "gamma": RadiationType.GAMMA,
    "g": RadiationType.GAMMA,
    "electron": RadiationType.ELECTRON,
    "e": RadiationType.ELECTRON,
    "xray": RadiationType.XRAY,
    "x": RadiationType.XRAY,
}

_JOB_KEYS = {
    "name",
    "recursive_progenitors",
    "static_nuclides",
    "exclusions",
    "radiation",
    "prune",
    "outputs",
    "plot",
    "lineage",
}
_PRUNE_KEYS = {"energy_kev", "intensity_percent", "half_life_seconds"}
_PLOT_KEYS = {"enabled", "windows", "marker_registry"}
_WINDOW_KEYS = {"energy_kev", "intensity_percent", "annotate", "annotation_min_intensity"}
_TOP_KEYS = {"jobs", "cache_dir", "offline", "registry_enabled", "base_url", "out_dir"}


@dataclass
class PlotConfig:
    enabled: bool = True
    windows: list[PlotWindow] = field(default_factory=list)
    marker_registry: str | None = None


@dataclass
class JobConfig:
    name: str
    recursive_progenitors: list[Nuclide] = field(default_factory=list)
    static_nuclides: list[Nuclide] = field(default_factory=list)
    exclusions: list[Nuclide] = field(default_factory=list)
    radiation: RadiationType = RadiationType.GAMMA
    prune: PruneBounds = field(default_factory=PruneBounds)
    outputs: list[str] = field(default_factory=lambda: ["csv"])
    plot: PlotConfig = field(default_factory=PlotConfig)
    lineage: bool = True
    # A bad nuclide id poisons only this job (recorded here), so the other
    # jobs of a batch still run; schema errors stay fatal at load time.
    config_error: str | None = None


@dataclass
class RunConfig:
    jobs: list[JobConfig]
    cache_dir: str | None = None
    offline: bool = False
    registry_enabled: bool = True
    base_url: str | None = None
    out_dir: str = "out"


def _reject_unknown(mapping: dict, allowed: set[str], context: str) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise UnknownKey(f"{context}: unknown key(s) {unknown}; allowed: {sorted(allowed)}")


def _parse_nuclide_entry(item, context: str) -> Nuclide:
    if isinstance(item, str):
        return parse_nuclide_id(item)
    if isinstance(item, dict):
        _reject_unknown(item, {"id", "level"}, context)
        if "id" not in item:
            raise ConfigParseError(f"{context}: nuclide mapping needs an 'id'")
        nuclide = parse_nuclide_id(str(item["id"]))
        level = item.get("level")
        if level is None:
            return nuclide
        if isinstance(level, (int, float)):
            return nuclide.at_level(LevelSpec.energy(float(level)))
        text = str(level).strip().lower()
        if text in ("ground", "gs", "0"):
            return nuclide
        if text.startswith("m"):
            ordinal = 1 if text == "m" else int(text[1:])
            return nuclide.at_level(LevelSpec.meta(ordinal))
        return nuclide.at_level(LevelSpec.energy(float(text)))
    raise ConfigParseError(f"{context}: expected a nuclide id or mapping, got {item!r}")


def _parse_interval(value, context: str, default: tuple[float, float]) -> tuple[float, float]:
    if value is None:
        return default
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigParseError(f"{context}: expected [lo, hi]")
    lo = -INF if value[0] is None else float(value[0])
    hi = INF if value[1] is None else float(value[1])
    return (lo, hi)


def _parse_prune(value, context: str) -> PruneBounds:
    if value is None:
        return PruneBounds()
    if not isinstance(value, dict):
        raise ConfigParseError(f"{context}: prune must be a mapping")
    _reject_unknown(value, _PRUNE_KEYS, context)
    half_life = None
    if value.get("half_life_seconds") is not None:
        half_life = _parse_interval(value["half_life_seconds"], context, (0.0, INF))
    bounds = PruneBounds(
        energy_kev=_parse_interval(value.get("energy_kev"), context, (0.0, INF)),
        intensity_percent=_parse_interval(
            value.get("intensity_percent"), context, (0.0, 100.0)
        ),
        half_life_seconds=half_life,
    )
    try:
        bounds.validate()
    except InvertedBounds as exc:
        raise ConfigParseError(f"{context}: {exc}") from exc
    return bounds


def _parse_plot(value, context: str) -> PlotConfig:
    if value is None:
        return PlotConfig()
    if isinstance(value, bool):
        return PlotConfig(enabled=value)
    if not isinstance(value, dict):
        raise ConfigParseError(f"{context}: plot must be a mapping or boolean")
    _reject_unknown(value, _PLOT_KEYS, context)
    windows = []
    for i, win in enumerate(value.get("windows") or []):
        wctx = f"{context}.windows[{i}]"
        if not isinstance(win, dict):
            raise ConfigParseError(f"{wctx}: expected a mapping")
        _reject_unknown(win, _WINDOW_KEYS, wctx)
        windows.append(
            PlotWindow(
                energy_kev=_parse_interval(win.get("energy_kev"), wctx, (0.0, INF)),
                intensity_percent=_parse_interval(
                    win.get("intensity_percent"), wctx, (0.0, 100.0)
                ),
                annotate=bool(win.get("annotate", True)),
                annotation_min_intensity=float(win.get("annotation_min_intensity", 10.0)),
            )
        )
    return PlotConfig(
        enabled=bool(value.get("enabled", True)),
        windows=windows,
        marker_registry=value.get("marker_registry"),
    )


def _parse_job(value, index: int) -> JobConfig:
    context = f"jobs[{index}]"
    if not isinstance(value, dict):
        raise ConfigParseError(f"{context}: expected a mapping")
    _reject_unknown(value, _JOB_KEYS, context)
    name = str(value.get("name") or f"job{index + 1}")

    try:
        progenitors = [
            _parse_nuclide_entry(item, f"{context}.recursive_progenitors")
            for item in (value.get("recursive_progenitors") or [])
        ]
        statics = [
            _parse_nuclide_entry(item, f"{context}.static_nuclides")
            for item in (value.get("static_nuclides") or [])
        ]
        exclusions = [
            _parse_nuclide_entry(item, f"{context}.exclusions")
            for item in (value.get("exclusions") or [])
        ]
    except MalformedId as exc:
        return JobConfig(name=name, config_error=f"{context}: {exc}")
    if not progenitors and not statics:
        raise ConfigParseError(
            f"{context}: at least one recursive progenitor or static nuclide required"
        )

    radiation_text = str(value.get("radiation", "gamma")).strip().lower()
    if radiation_text not in RADIATION_NAMES:
        raise ConfigParseError(
            f"{context}: unknown radiation {radiation_text!r}; "
            f"one of {sorted(set(RADIATION_NAMES))}"
        )

    outputs = value.get("outputs")
    if outputs is None:
        outputs = ["csv"]
    if not isinstance(outputs, list) or not all(isinstance(o, str) for o in outputs):
        raise ConfigParseError(f"{context}: outputs must be a list of format names")

    return JobConfig(
        name=str(value.get("name") or f"job{index + 1}"),
        recursive_progenitors=progenitors,
        static_nuclides=statics,
        exclusions=exclusions,
        radiation=RADIATION_NAMES[radiation_text],
        prune=_parse_prune(value.get("prune"), f"{context}.prune"),
        outputs=[o.lower() for o in outputs],
        plot=_parse_plot(value.get("plot"), f"{context}.plot"),
        lineage=bool(value.get("lineage", True)),
    )


def load_config(path: Path | str) -> RunConfig:
    """Load and validate a YAML run configuration.

    Raises ConfigParseError with line diagnostics for YAML syntax errors and
    UnknownKey for any key outside the documented schema.
    """
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigParseError(f"{path}: {exc.problem}{where}") from exc
    except yaml.YAMLError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc}") from exc

    if raw is None:
        raise ConfigParseError(f"{path}: empty configuration")
    if isinstance(raw, list):
        raw = {"jobs": raw}
    if not isinstance(raw, dict):
        raise ConfigParseError(f"{path}: top level must be a mapping or job list")
    _reject_unknown(raw, _TOP_KEYS, str(path))

    jobs_raw = raw.get("jobs")
    if not jobs_raw or not isinstance(jobs_raw, list):
        raise ConfigParseError(f"{path}: 'jobs' must be a non-empty list")
    jobs = [_parse_job(job, i) for i, job in enumerate(jobs_raw)]

    return RunConfig(
        jobs=jobs,
        cache_dir=raw.get("cache_dir"),
        offline=bool(raw.get("offline", False)),
        registry_enabled=bool(raw.get("registry_enabled", True)),
        base_url=raw.get("base_url"),
        out_dir=str(raw.get("out_dir", "out")),
    )
