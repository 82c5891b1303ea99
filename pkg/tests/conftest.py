"""Shared test infrastructure.

Two fixture corpora are committed: fixtures/ (actinide series and the other
demonstration nuclides) and tests/data/mini (a three-nuclide Sr-90 chain for
the timing harnesses). Tests either prime a cache directory from a corpus or
serve it from the in-process mock HTTP server.
"""

from __future__ import annotations

import csv
import io
import shutil
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

import pytest

from nuclibgen.dataaccess import AccessConfig, DataStore, DatasetKey, RawDataset
from nuclibgen.nuclide import parse_nuclide_id

REPO = Path(__file__).resolve().parent.parent
CORPUS = REPO / "fixtures"
MINI_CORPUS = Path(__file__).resolve().parent / "data" / "mini"

DR_COLUMNS = (
    "energy", "unc_en", "intensity", "unc_i", "p_symbol", "p_a", "p_energy",
    "unc_pe", "half_life_sec", "unc_hls", "decay", "decay_%", "unc_d",
    "d_symbol", "d_a", "daughter_level_energy", "start_level_energy",
    "end_level_energy",
)
LV_COLUMNS = (
    "symbol", "a", "energy", "unc_e", "jp", "half_life_sec", "unc_hls",
    "decay_1", "decay_1_%", "decay_2", "decay_2_%", "decay_3", "decay_3_%",
)
TR_COLUMNS = (
    "symbol", "a", "start_level_energy", "unc_sl", "end_level_energy",
    "unc_el", "energy", "unc_en", "intensity", "unc_i",
)


def _csv_body(columns, rows) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row.get(c, "") for c in columns})
    return out.getvalue()


def dr_body(rows) -> str:
    return _csv_body(DR_COLUMNS, rows)


def lv_body(rows) -> str:
    return _csv_body(LV_COLUMNS, rows)


def tr_body(rows) -> str:
    return _csv_body(TR_COLUMNS, rows)


def dr_row(p, d, *, mode="B-", pct=100.0, energy=100.0, intensity=10.0,
           p_energy=0.0, fed=0.0, start="", end="", hl=1000.0, unc_i=0.1):
    psym, pa = p
    dsym, da = d
    return {
        "energy": energy, "unc_en": 0.1, "intensity": intensity,
        "unc_i": unc_i, "p_symbol": psym, "p_a": pa, "p_energy": p_energy,
        "unc_pe": 0.1, "half_life_sec": hl, "unc_hls": 1.0, "decay": mode,
        "decay_%": pct, "unc_d": "", "d_symbol": dsym, "d_a": da,
        "daughter_level_energy": fed, "start_level_energy": start,
        "end_level_energy": end,
    }


class FakeSource:
    """In-memory DatasetSource for synthetic graphs: serialized key -> body."""

    def __init__(self, bodies: dict[str, str]):
        self.bodies = dict(bodies)
        self.requests: list[str] = []

    def fetch_dataset(self, key: DatasetKey) -> RawDataset | None:
        serialized = key.serialize()
        self.requests.append(serialized)
        body = self.bodies.get(serialized)
        if body is None:
            return None
        return RawDataset(key, body, "cache")


def simple_chain_source(links: dict[str, list[tuple[str, float]]],
                        stable: set[str]) -> FakeSource:
    """Build a FakeSource for a bare-bones decay graph.

    ``links`` maps a nuclide id to (daughter id, branching percent) pairs;
    every listed nuclide decays by beta minus with one 100 keV gamma-less
    record per daughter. ``stable`` nuclides get no datasets at all.
    """
    bodies: dict[str, str] = {}
    ids = set(links) | stable | {d for lst in links.values() for d, _ in lst}
    for nid in ids:
        nuclide = parse_nuclide_id(nid)
        sym, a = nuclide.element, nuclide.mass_number
        bodies[f"{nid}:lv"] = lv_body([
            {"symbol": sym, "a": a, "energy": 0.0, "unc_e": 0.0, "jp": "0+",
             "half_life_sec": "STABLE" if nid in stable else 1000.0,
             "unc_hls": "", "decay_1": "" if nid in stable else "B-",
             "decay_1_%": "" if nid in stable else 100.0},
        ])
    for nid, daughters in links.items():
        nuclide = parse_nuclide_id(nid)
        rows = []
        for did, pct in daughters:
            dn = parse_nuclide_id(did)
            rows.append(dr_row((nuclide.element, nuclide.mass_number),
                               (dn.element, dn.mass_number), pct=pct))
        bodies[f"{nid}:dr-bm"] = dr_body(rows)
    return FakeSource(bodies)


def prime_cache(corpus: Path, target: Path) -> Path:
    target.mkdir(parents=True, exist_ok=True)
    for f in corpus.glob("*.csv"):
        shutil.copy(f, target / f.name)
    registry = corpus / "absent_registry.txt"
    if registry.exists():
        shutil.copy(registry, target / "absent_registry.txt")
    return target


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    assert CORPUS.exists(), "run tools/generate_fixtures.py first"
    return CORPUS


@pytest.fixture(scope="session")
def mini_corpus_dir() -> Path:
    assert MINI_CORPUS.exists(), "run tools/generate_fixtures.py first"
    return MINI_CORPUS


@pytest.fixture(scope="session")
def primed_store(corpus_dir, tmp_path_factory) -> DataStore:
    """Offline store over a fully primed cache; shared read-only."""
    cache = prime_cache(corpus_dir, tmp_path_factory.mktemp("primed_cache"))
    return DataStore(AccessConfig(cache_dir=cache, offline=True))


@pytest.fixture()
def fresh_primed_store(corpus_dir, tmp_path) -> DataStore:
    cache = prime_cache(corpus_dir, tmp_path / "cache")
    return DataStore(AccessConfig(cache_dir=cache, offline=True))


class _CorpusHandler(BaseHTTPRequestHandler):
    server_version = "MockNucData/1.0"

    def do_GET(self):  # noqa: N802 (stdlib naming)
        cfg = self.server.cfg
        with cfg["lock"]:
            cfg["requests"] += 1
        if cfg["latency"]:
            time.sleep(cfg["latency"])
        if cfg["fail"]:
            self.send_response(503)
            self.end_headers()
            return
        params = parse_qs(urlparse(self.path).query)
        body = self._resolve(params)
        data = body.encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "text/csv")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _resolve(self, params) -> str:
        cfg = self.server.cfg
        nuclide = params.get("nuclides", [""])[0]
        fields = params.get("fields", [""])[0]
        if fields == "decay_rads":
            kind = "dr-" + params.get("rad_types", [""])[0]
        elif fields == "levels":
            kind = "lv"
        elif fields == "gammas":
            kind = "tr"
        else:
            return "0"
        key = f"{nuclide}:{kind}"
        if key in cfg["overrides"]:
            return cfg["overrides"][key]
        path = cfg["corpus"] / f"{nuclide}_{kind}.csv"
        if path.exists():
            return path.read_text(encoding="utf-8")
        return "0"

    def log_message(self, *args):  # keep test output clean
        pass


class MockServer:
    """Serves a fixture corpus over HTTP with optional latency/failure."""

    def __init__(self, corpus: Path, latency: float = 0.0):
        self.cfg = {
            "corpus": corpus, "latency": latency, "fail": False,
            "requests": 0, "overrides": {}, "lock": threading.Lock(),
        }
        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), _CorpusHandler)
        self._httpd.cfg = self.cfg
        self._thread = threading.Thread(
            target=self._httpd.serve_forever, daemon=True
        )
        self._thread.start()

    @property
    def url(self) -> str:
        host, port = self._httpd.server_address
        return f"http://{host}:{port}/data"

    @property
    def requests(self) -> int:
        with self.cfg["lock"]:
            return self.cfg["requests"]

    def reset(self) -> None:
        with self.cfg["lock"]:
            self.cfg["requests"] = 0

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()


@pytest.fixture()
def mock_server(corpus_dir):
    server = MockServer(corpus_dir)
    yield server
    server.stop()


@pytest.fixture()
def mini_server(mini_corpus_dir):
    server = MockServer(mini_corpus_dir)
    yield server
    server.stop()


# --- brute-force oracles (independent of the package's parsing path) ---------

def brute_rows(corpus: Path, nid: str) -> list[dict]:
    rows = []
    for kind in ("a", "bm", "bp", "g", "e", "x"):
        path = corpus / f"{nid}_dr-{kind}.csv"
        if not path.exists():
            continue
        with path.open(encoding="utf-8") as fh:
            rows.extend(csv.DictReader(fh))
    return rows


def brute_daughters(corpus: Path, nid: str) -> dict[str, float]:
    """daughter id -> branching percent, straight from the CSV files."""
    out: dict[str, float] = {}
    for row in brute_rows(corpus, nid):
        did = f"{row['d_a']}{row['d_symbol'].lower()}"
        if did == nid:
            continue
        pct = float(row["decay_%"])
        out[did] = max(out.get(did, 0.0), pct)
    return out


def brute_reachable(corpus: Path, root: str) -> set[str]:
    """All nuclide ids reachable from root, root included."""
    seen = {root}
    frontier = [root]
    while frontier:
        current = frontier.pop()
        for daughter in brute_daughters(corpus, current):
            if daughter not in seen:
                seen.add(daughter)
                frontier.append(daughter)
    return seen


def brute_radioactive(corpus: Path, nid: str) -> bool:
    return bool(brute_rows(corpus, nid))


def brute_edges(corpus: Path, root: str) -> set[tuple[str, str]]:
    edges = set()
    for parent in brute_reachable(corpus, root):
        for daughter in brute_daughters(corpus, parent):
            edges.add((parent, daughter))
    return edges
