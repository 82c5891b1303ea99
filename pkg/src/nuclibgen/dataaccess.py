"""Two-stage screened retrieval of nuclear datasets.

Every dataset request passes two screening tests before any network access:
the absence registry (datasets known to have no data) and the disk cache.
Only a miss on both triggers one HTTP GET; a data-bearing response is written
to the cache atomically, a no-data response is recorded in the registry.
Transport failures are never recorded as absence.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import requests

from .errors import CacheWriteError, NetworkError, OfflineMiss, RegistryIoError
from .nuclide import Nuclide, RadiationType

REGISTRY_FILENAME = "absent_registry.txt"

KIND_LEVELS = "lv"
KIND_TRANSITIONS = "tr"

_DECAY_KINDCODES = {rad: f"dr-{rad.code}" for rad in RadiationType}


@dataclass(frozen=True)
class DatasetKey:
    """Identity of one retrievable dataset: a level-erased nuclide plus kind.

    ``kindcode`` is one of dr-a, dr-bm, dr-bp, dr-g, dr-e, dr-x, lv, tr.
    """

    nuclide: Nuclide
    kindcode: str

    def __post_init__(self):
        object.__setattr__(self, "nuclide", self.nuclide.ground_state)
        valid = set(_DECAY_KINDCODES.values()) | {KIND_LEVELS, KIND_TRANSITIONS}
        if self.kindcode not in valid:
            raise ValueError(f"unknown dataset kind: {self.kindcode!r}")

    @staticmethod
    def decay_rads(nuclide: Nuclide, rad: RadiationType) -> "DatasetKey":
        return DatasetKey(nuclide, _DECAY_KINDCODES[rad])

    @staticmethod
    def levels(nuclide: Nuclide) -> "DatasetKey":
        return DatasetKey(nuclide, KIND_LEVELS)

    @staticmethod
    def transitions(nuclide: Nuclide) -> "DatasetKey":
        return DatasetKey(nuclide, KIND_TRANSITIONS)

    @property
    def radiation(self) -> RadiationType | None:
        if self.kindcode.startswith("dr-"):
            return RadiationType.from_code(self.kindcode[3:])
        return None

    def serialize(self) -> str:
        n = self.nuclide
        return f"{n.mass_number}{n.element.lower()}:{self.kindcode}"

    def filename(self) -> str:
        # Colon is not portable in filenames; the cache layout maps it to "_".
        return self.serialize().replace(":", "_") + ".csv"


@dataclass(frozen=True)
class RawDataset:
    """One fetched dataset body (CSV text with a header row)."""

    key: DatasetKey
    body: str
    origin: str  # "cache" | "remote"

    def __post_init__(self):
        if not self.body.strip():
            raise ValueError("dataset body must be non-empty")


class AbsenceRegistry:
    """Persisted set of dataset keys authoritatively known to have no data.

    The backing file is sorted, newline-delimited, duplicate-free UTF-8 text;
    the in-memory set and the file agree after every mutation.
    """

    def __init__(self, backing_path: Path, entries: set[str] | None = None):
        self.backing_path = Path(backing_path)
        self.entries: set[str] = set(entries or ())

    @classmethod
    def load(cls, path: Path | str) -> "AbsenceRegistry":
        path = Path(path)
        if not path.exists():
            return cls(path)  # absent file: empty registry, nothing created yet
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise RegistryIoError(f"cannot read registry {path}: {exc}") from exc
        reg = cls(path, {ln.strip() for ln in lines if ln.strip()})
        normalized = "".join(f"{entry}\n" for entry in sorted(reg.entries))
        if normalized != "\n".join(lines) + ("\n" if lines else ""):
            reg._rewrite()  # normalize hand-edited files: sorted, duplicate-free
        return reg

    def __contains__(self, key: DatasetKey | str) -> bool:
        serialized = key.serialize() if isinstance(key, DatasetKey) else key
        return serialized in self.entries

    def record(self, key: DatasetKey | str) -> None:
        """Add a key; idempotent. Rewrites the backing file on change."""
        serialized = key.serialize() if isinstance(key, DatasetKey) else key
        if serialized in self.entries:
            return
        self.entries.add(serialized)
        self._rewrite()

    def _rewrite(self) -> None:
        # Unique temp name: registries in a shared cache dir may be rewritten
        # by several store instances at once.
        tmp = self.backing_path.with_name(
            f".{self.backing_path.name}.{os.getpid()}.{threading.get_ident()}.tmp"
        )
        try:
            self.backing_path.parent.mkdir(parents=True, exist_ok=True)
            tmp.write_text(
                "".join(f"{entry}\n" for entry in sorted(self.entries)),
                encoding="utf-8",
                newline="\n",
            )
            os.replace(tmp, self.backing_path)
        except OSError as exc:
            raise RegistryIoError(
                f"cannot write registry {self.backing_path}: {exc}"
            ) from exc


def registry_load(path: Path | str) -> AbsenceRegistry:
    """Load a registry file; a missing file yields an empty registry."""
    return AbsenceRegistry.load(path)


def registry_record(registry: AbsenceRegistry, key: DatasetKey | str) -> AbsenceRegistry:
    registry.record(key)
    return registry


@dataclass(frozen=True)
class AccessConfig:
    """Connection and screening settings for dataset retrieval."""

    base_url: str = "https://nds.iaea.org/relnsd/v1/data"
    cache_dir: Path = Path("nucdata_cache")
    timeout_s: float = 30.0
    offline: bool = False
    registry_enabled: bool = True
    retries: int = 0  # extra attempts on transport failure, capped at 3
    max_parallel: int = 4

    @staticmethod
    def from_env(**overrides) -> "AccessConfig":
        cfg = AccessConfig()
        env_url = os.environ.get("NUCLIBGEN_BASE_URL")
        env_cache = os.environ.get("NUCLIBGEN_CACHE_DIR")
        if env_url:
            cfg = replace(cfg, base_url=env_url)
        if env_cache:
            cfg = replace(cfg, cache_dir=Path(env_cache))
        if overrides:
            cfg = replace(cfg, **overrides)
        return cfg


class CsvEndpointAdapter:
    """Adapter for an IAEA-style CSV web endpoint.

    Maps a DatasetKey to query parameters (nuclides=<A><element>,
    fields=decay_rads|levels|gammas, rad_types=a|bm|bp|g|e|x) and decides
    whether a response body carries data. Alternative data sources plug in
    by implementing the same two methods.
    """

    def query_params(self, key: DatasetKey) -> dict[str, str]:
        n = key.nuclide
        nuclide_q = f"{n.mass_number}{n.element.lower()}"
        if key.kindcode == KIND_LEVELS:
            return {"fields": "levels", "nuclides": nuclide_q}
        if key.kindcode == KIND_TRANSITIONS:
            return {"fields": "gammas", "nuclides": nuclide_q}
        return {
            "fields": "decay_rads",
            "nuclides": nuclide_q,
            "rad_types": key.radiation.code,
        }

    def is_no_data(self, body: str) -> bool:
        """True when the endpoint authoritatively reports no such dataset.

        The endpoint answers "0" (or an empty body, or a bare header) for
        unknown datasets; those responses are safe to register as absent.
        """
        stripped = body.strip()
        if not stripped or stripped == "0":
            return True
        return len(stripped.splitlines()) < 2  # header only, no data rows


@dataclass
class AccessStats:
    """Counters for one store instance; all mutations are lock-protected."""

    network_calls: int = 0
    cache_hits: int = 0
    registry_skips: int = 0
    absences_recorded: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def bump(self, attr: str) -> None:
        with self._lock:
            setattr(self, attr, getattr(self, attr) + 1)

    def snapshot(self) -> dict[str, int]:
        with self._lock:
            return {
                "network_calls": self.network_calls,
                "cache_hits": self.cache_hits,
                "registry_skips": self.registry_skips,
                "absences_recorded": self.absences_recorded,
            }


class DataStore:
    """Thread-safe screened access to nuclear datasets.

    Fetches may run concurrently; a per-key lock guarantees at most one
    network call per dataset, and registry mutations are serialized behind
    a single writer lock.
    """

    def __init__(
        self,
        cfg: AccessConfig,
        adapter: CsvEndpointAdapter | None = None,
        session: requests.Session | None = None,
    ):
        self.cfg = cfg
        self.adapter = adapter or CsvEndpointAdapter()
        self.cache_dir = Path(cfg.cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.registry = AbsenceRegistry.load(self.cache_dir / REGISTRY_FILENAME)
        self.stats = AccessStats()
        self._session = session or requests.Session()
        self._registry_lock = threading.Lock()
        self._key_locks: dict[str, threading.Lock] = {}
        self._key_locks_guard = threading.Lock()

    def _lock_for(self, key: DatasetKey) -> threading.Lock:
        serialized = key.serialize()
        with self._key_locks_guard:
            lock = self._key_locks.get(serialized)
            if lock is None:
                lock = self._key_locks[serialized] = threading.Lock()
            return lock

    def cache_path(self, key: DatasetKey) -> Path:
        return self.cache_dir / key.filename()

    def fetch_many(self, keys: list[DatasetKey]) -> dict[DatasetKey, RawDataset | None]:
        """Fetch several datasets, up to cfg.max_parallel concurrently."""
        if self.cfg.max_parallel <= 1 or len(keys) <= 1:
            return {key: self.fetch_dataset(key) for key in keys}
        from concurrent.futures import ThreadPoolExecutor

        workers = min(self.cfg.max_parallel, len(keys))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(self.fetch_dataset, keys))
        return dict(zip(keys, results))

    def fetch_dataset(self, key: DatasetKey) -> RawDataset | None:
        """Fetch one dataset; None means authoritatively absent.

        Screening order: absence registry, disk cache, then (unless offline)
        one HTTP GET. Raises NetworkError on transport failure, OfflineMiss
        when offline with no cached copy, CacheWriteError on a failed write.
        """
        if self.cfg.registry_enabled:
            with self._registry_lock:
                registered = key in self.registry
            if registered:
                self.stats.bump("registry_skips")
                return None

        with self._lock_for(key):
            path = self.cache_path(key)
            if path.exists():
                self.stats.bump("cache_hits")
                return RawDataset(key, path.read_text(encoding="utf-8"), "cache")

            if self.cfg.offline:
                raise OfflineMiss(f"offline and not cached: {key.serialize()}")

            body = self._http_get(key)
            if self.adapter.is_no_data(body):
                if self.cfg.registry_enabled:
                    self._record_absent(key)
                return None

            self._write_cache(path, body)
            return RawDataset(key, body, "remote")

    def _http_get(self, key: DatasetKey) -> str:
        params = self.adapter.query_params(key)
        attempts = 1 + max(0, min(self.cfg.retries, 3))
        delay = 0.5
        last_exc: Exception | None = None
        for attempt in range(attempts):
            if attempt:
                time.sleep(delay)
                delay *= 2
            try:
                self.stats.bump("network_calls")
                resp = self._session.get(
                    self.cfg.base_url, params=params, timeout=self.cfg.timeout_s
                )
            except requests.RequestException as exc:
                last_exc = exc
                continue
            if resp.status_code != 200:
                last_exc = NetworkError(
                    f"HTTP {resp.status_code} for {key.serialize()}"
                )
                continue
            return resp.text
        raise NetworkError(f"request failed for {key.serialize()}: {last_exc}")

    def _record_absent(self, key: DatasetKey) -> None:
        with self._registry_lock:
            if key not in self.registry:
                self.registry.record(key)
                self.stats.bump("absences_recorded")

    def _write_cache(self, path: Path, body: str) -> None:
        # Write-to-temp-then-rename: a crash mid-download must not leave a
        # truncated file that would pass the existence screen.
        try:
            tmp = path.with_name(path.name + ".part")
            tmp.write_text(body, encoding="utf-8", newline="")
            os.replace(tmp, path)
        except OSError as exc:
            raise CacheWriteError(f"cannot write cache file {path}: {exc}") from exc
