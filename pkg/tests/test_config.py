import pytest

from nuclibgen.config import load_config
from nuclibgen.errors import ConfigParseError, UnknownKey
from nuclibgen.nuclide import LevelSpec, Nuclide, RadiationType


def write(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_minimal_config_defaults(tmp_path):
    cfg = load_config(write(tmp_path, """
jobs:
  - recursive_progenitors: [238U, 235U, 232Th]
"""))
    job = cfg.jobs[0]
    assert job.recursive_progenitors == [
        Nuclide("U", 238), Nuclide("U", 235), Nuclide("Th", 232)
    ]
    assert job.radiation is RadiationType.GAMMA
    assert job.prune.energy_kev == (0.0, float("inf"))
    assert job.prune.intensity_percent == (0.0, 100.0)
    assert job.prune.half_life_seconds is None
    assert job.outputs == ["csv"]
    assert not cfg.offline
    assert cfg.registry_enabled


def test_progenitor_level_spec_forms(tmp_path):
    cfg = load_config(write(tmp_path, """
jobs:
  - name: lutetium
    recursive_progenitors:
      - 177lu@m4
      - {id: 177lu, level: m4}
      - {id: 99tc, level: 142.6836}
"""))
    first, second, third = cfg.jobs[0].recursive_progenitors
    assert first == Nuclide("Lu", 177, LevelSpec.meta(4))
    assert second == first
    assert third.level.kind == "energy"


def test_unknown_top_level_key(tmp_path):
    with pytest.raises(UnknownKey) as err:
        load_config(write(tmp_path, """
jobs:
  - recursive_progenitors: [238U]
progenators: [oops]
"""))
    assert "progenators" in str(err.value)


def test_unknown_job_key(tmp_path):
    with pytest.raises(UnknownKey):
        load_config(write(tmp_path, """
jobs:
  - recursive_progenitors: [238U]
    radiaton: gamma
"""))


def test_job_requires_some_nuclide(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config(write(tmp_path, """
jobs:
  - name: empty
"""))


def test_unknown_radiation(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config(write(tmp_path, """
jobs:
  - recursive_progenitors: [238U]
    radiation: neutrino
"""))


def test_yaml_syntax_error_reports_line(tmp_path):
    with pytest.raises(ConfigParseError) as err:
        load_config(write(tmp_path, "jobs:\n  - recursive_progenitors: [238U\n"))
    assert "line" in str(err.value)


def test_prune_and_plot_sections(tmp_path):
    cfg = load_config(write(tmp_path, """
jobs:
  - name: th
    recursive_progenitors: [232Th]
    radiation: alpha
    prune:
      energy_kev: [0, 10000]
      intensity_percent: [0.001, 100]
      half_life_seconds: [1e-6, null]
    outputs: [csv, tex]
    plot:
      enabled: true
      windows:
        - energy_kev: [0, 2000]
          intensity_percent: [0.001, 100]
          annotate: true
          annotation_min_intensity: 10
"""))
    job = cfg.jobs[0]
    assert job.radiation is RadiationType.ALPHA
    assert job.prune.energy_kev == (0.0, 10000.0)
    assert job.prune.half_life_seconds == (1e-6, float("inf"))
    assert job.outputs == ["csv", "tex"]
    assert len(job.plot.windows) == 1
    assert job.plot.windows[0].annotation_min_intensity == 10.0


def test_unknown_prune_key(tmp_path):
    with pytest.raises(UnknownKey):
        load_config(write(tmp_path, """
jobs:
  - recursive_progenitors: [238U]
    prune: {energy: [0, 10]}
"""))


def test_inverted_prune_interval_rejected(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config(write(tmp_path, """
jobs:
  - recursive_progenitors: [238U]
    prune: {energy_kev: [100, 10]}
"""))


def test_bare_job_list_accepted(tmp_path):
    cfg = load_config(write(tmp_path, """
- recursive_progenitors: [226Ra]
"""))
    assert len(cfg.jobs) == 1


def test_empty_file_rejected(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config(write(tmp_path, ""))
