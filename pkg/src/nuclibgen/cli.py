"""Batch command-line interface.

``generate`` runs every job of a YAML configuration: subset construction,
level validation, library assembly, pruning, exports, lineage files, and
plots, then reports per-phase timings and exact retrieval counters.
``qualify`` matches located spectrum peaks against an exported library.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import __version__
from .chains import assemble_subset, render_lineage
from .config import JobConfig, RunConfig, load_config
from .dataaccess import AccessConfig, DataStore
from .errors import NuclibError
from .export import export_table, import_library_csv
from .identify import PeakList, qualify_peaks
from .library import assemble_library, prune
from .nuclide import display_name, format_nuclide_id
from .plot import MarkerRegistry, plot_library


@dataclass
class JobReport:
    name: str
    ok: bool = True
    error: str | None = None
    subset_size: int = 0
    entries_pre_prune: int = 0
    entries_post_prune: int = 0
    network_calls: int = 0
    cache_hits: int = 0
    registry_skips: int = 0
    phase_seconds: dict[str, float] = field(default_factory=dict)
    total_seconds: float = 0.0
    outputs: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "error": self.error,
            "subset_size": self.subset_size,
            "entries_pre_prune": self.entries_pre_prune,
            "entries_post_prune": self.entries_post_prune,
            "network_calls": self.network_calls,
            "cache_hits": self.cache_hits,
            "registry_skips": self.registry_skips,
            "phase_seconds": self.phase_seconds,
            "total_seconds": self.total_seconds,
            "outputs": self.outputs,
            "warnings": self.warnings,
        }


@dataclass
class RunReport:
    jobs: list[JobReport] = field(default_factory=list)
    source_id: str = ""
    started_at: str = ""
    total_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(job.ok for job in self.jobs)

    def as_dict(self) -> dict:
        return {
            "source": self.source_id,
            "started_at": self.started_at,
            "total_seconds": self.total_seconds,
            "ok": self.ok,
            "jobs": [job.as_dict() for job in self.jobs],
        }

    def as_text(self) -> str:
        lines = [f"run report ({'ok' if self.ok else 'FAILED'})"]
        for job in self.jobs:
            status = "ok" if job.ok else f"FAILED: {job.error}"
            lines.append(f"  job {job.name}: {status}")
            lines.append(
                f"    subset {job.subset_size} members; entries "
                f"{job.entries_pre_prune} -> {job.entries_post_prune} after prune"
            )
            lines.append(
                f"    network_calls {job.network_calls}, cache_hits {job.cache_hits}, "
                f"registry_skips {job.registry_skips}"
            )
            phases = ", ".join(
                f"{name} {seconds:.3f}s" for name, seconds in job.phase_seconds.items()
            )
            lines.append(f"    phases: {phases or 'n/a'}; total {job.total_seconds:.3f}s")
            for warning in job.warnings[:10]:
                lines.append(f"    warning: {warning}")
            if len(job.warnings) > 10:
                lines.append(f"    ... {len(job.warnings) - 10} more warnings")
        return "\n".join(lines) + "\n"


class _PhaseTimer:
    def __init__(self, report: JobReport):
        self.report = report

    def time(self, name: str):
        timer = self

        class _Ctx:
            def __enter__(self_inner):
                self_inner.t0 = time.perf_counter()

            def __exit__(self_inner, *exc):
                timer.report.phase_seconds[name] = round(
                    time.perf_counter() - self_inner.t0, 6
                )

        return _Ctx()


def run_job(job: JobConfig, access: AccessConfig, out_dir: Path) -> JobReport:
    """Execute one job; failures are captured, not propagated."""
    report = JobReport(name=job.name)
    store = DataStore(access)
    timer = _PhaseTimer(report)
    t_start = time.perf_counter()
    try:
        with timer.time("subset"):
            subset = assemble_subset(
                job.recursive_progenitors,
                job.static_nuclides,
                job.exclusions,
                store,
                source_id=access.base_url,
            )
        report.subset_size = len(subset.members)
        report.warnings.extend(subset.warnings)

        with timer.time("library"):
            library = assemble_library(subset, job.radiation, report.warnings)
        report.entries_pre_prune = len(library.entries)

        with timer.time("prune"):
            library = prune(library, job.prune)
        report.entries_post_prune = len(library.entries)

        with timer.time("export"):
            stem = f"library_{job.name}_{job.radiation.code}"
            for fmt in job.outputs:
                out = export_table(library, fmt, out_dir / f"{stem}.{fmt}")
                report.outputs.append(str(out))
            if job.lineage:
                for chain, tree in zip(subset.recursive_chains, subset.trees):
                    name = format_nuclide_id(chain.progenitor)
                    path = out_dir / f"lineage_{name}.txt"
                    path.parent.mkdir(parents=True, exist_ok=True)
                    path.write_text(render_lineage(tree), encoding="utf-8", newline="\n")
                    report.outputs.append(str(path))

        if job.plot.enabled:
            with timer.time("plot"):
                markers = (
                    MarkerRegistry.load_csv(job.plot.marker_registry)
                    if job.plot.marker_registry
                    else MarkerRegistry()
                )
                windows = job.plot.windows or None
                out = plot_library(library, markers, windows, out_dir / f"{stem}.svg")
                report.outputs.append(str(out))
    except NuclibError as exc:
        report.ok = False
        report.error = f"{type(exc).__name__}: {exc}"
    finally:
        counters = store.stats.snapshot()
        report.network_calls = counters["network_calls"]
        report.cache_hits = counters["cache_hits"]
        report.registry_skips = counters["registry_skips"]
        report.total_seconds = round(time.perf_counter() - t_start, 6)
    return report


def run(config: RunConfig, *, jobs_parallel: int = 1) -> RunReport:
    """Execute all jobs of a run configuration and write the reports.

    Per-job failures are isolated: remaining jobs still execute, and the
    run's exit status reflects the aggregate.
    """
    report = RunReport(
        started_at=time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    )
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    overrides = {
        "offline": config.offline,
        "registry_enabled": config.registry_enabled,
    }
    if config.cache_dir:
        overrides["cache_dir"] = Path(config.cache_dir)
    access = AccessConfig.from_env(**overrides)
    if config.base_url:
        access = replace(access, base_url=config.base_url)
    report.source_id = access.base_url

    t0 = time.perf_counter()
    if jobs_parallel > 1:
        with ThreadPoolExecutor(max_workers=jobs_parallel) as pool:
            report.jobs = list(
                pool.map(lambda job: run_job(job, access, out_dir), config.jobs)
            )
    else:
        report.jobs = [run_job(job, access, out_dir) for job in config.jobs]
    report.total_seconds = round(time.perf_counter() - t0, 6)

    (out_dir / "report.json").write_text(
        json.dumps(report.as_dict(), indent=2) + "\n", encoding="utf-8", newline="\n"
    )
    (out_dir / "report.txt").write_text(report.as_text(), encoding="utf-8", newline="\n")
    return report


def _cmd_generate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.offline:
        config.offline = True
    if args.no_registry:
        config.registry_enabled = False
    if args.cache_dir:
        config.cache_dir = args.cache_dir
    if args.out_dir:
        config.out_dir = args.out_dir
    report = run(config, jobs_parallel=args.jobs)
    sys.stdout.write(report.as_text())
    return 0 if report.ok else 1


def _cmd_qualify(args: argparse.Namespace) -> int:
    peaks = PeakList.load_csv(args.peaks)
    library = import_library_csv(args.library)
    matches = qualify_peaks(peaks, library, args.tol_kev)
    for match in matches:
        if match.unassigned:
            sys.stdout.write(f"{match.peak.centroid_kev:g} keV: unassigned\n")
            continue
        best = ", ".join(
            f"{display_name(c.nuclide)} {c.energy.kev:g} keV"
            + (
                f" ({c.intensity_percent:g}%)"
                if c.intensity_percent is not None
                else ""
            )
            for c in match.candidates[: args.top]
        )
        sys.stdout.write(f"{match.peak.centroid_kev:g} keV: {best}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nuclibgen",
        description="Generate tailored radionuclide libraries from progenitor input.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="run all jobs of a YAML configuration")
    gen.add_argument("config", help="YAML run configuration")
    gen.add_argument("--offline", action="store_true", help="never touch the network")
    gen.add_argument("--cache-dir", help="nuclear data cache directory")
    gen.add_argument(
        "--no-registry",
        action="store_true",
        help="disable absence-registry screening (timing experiments)",
    )
    gen.add_argument("--out-dir", help="output directory (default from config)")
    gen.add_argument("--jobs", type=int, default=1, help="parallel jobs (default 1)")
    gen.set_defaults(func=_cmd_generate)

    qual = sub.add_parser("qualify", help="match peak centroids against a library CSV")
    qual.add_argument("peaks", help="peak list CSV: centroid_kev[,net_area]")
    qual.add_argument("library", help="library CSV produced by generate")
    qual.add_argument("--tol-kev", type=float, required=True, help="match tolerance")
    qual.add_argument("--top", type=int, default=5, help="candidates shown per peak")
    qual.set_defaults(func=_cmd_qualify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NuclibError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
