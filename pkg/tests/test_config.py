import json
from pathlib import Path

import pytest

from app.api.cli import list_presets, resolve_config
from app.api.config_parser import parse_run_config, read_sections
from app.config.app_config import AppConfig
from app.core.exceptions import ConfigError
from app.schemas.scenario import ScenarioKind

BASE = """\
[run]
name = small
[grid]
dimension = 2
h = 1/16
[scenario]
kind = SLIT_TRACE
kappa = 1/2
"""


def parse(text):
    return parse_run_config("small.cfg", text=text)


def error_line(text):
    with pytest.raises(ConfigError) as info:
        parse(text)
    return info.value.line


# ------------------------------ #  键值读取部分


def test_read_sections_records_lines():
    sections = read_sections(BASE)
    assert sections["grid"]["h"] == ("1/16", 5)
    assert sections["scenario"]["kind"] == ("SLIT_TRACE", 7)


def test_comments_and_blank_lines_are_ignored():
    sections = read_sections("# 说明\n\n[grid]\nh = 1/8  # 行尾注释\n")
    assert sections == {"grid": {"h": ("1/8", 4)}}


@pytest.mark.parametrize(
    "text,line",
    [
        ("[grid]\n[mesh]\n", 2),
        ("[grid]\nh 1/16\n", 2),
        ("h = 1/16\n", 1),
        ("[grid]\nspacing = 1/16\n", 2),
        ("[grid]\nh = 1/16\nh = 1/32\n", 3),
        ("[grid]\n[grid]\n", 2),
        ("[grid\n", 1),
    ],
)
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(ConfigError) as info:
        read_sections(text)
    assert info.value.line == line
    assert f"第 {line} 行" in str(info.value)


# ------------------------------ #  运行配置部分


def test_parse_minimal_config():
    config = parse(BASE)
    assert config.name == "small"
    assert config.inverse_h == 16
    assert config.scenario.kind == ScenarioKind.SLIT_TRACE
    assert config.scenario.kappa == 0.5
    assert config.output_dir == str(Path("out") / "small")
    assert config.analysis.identities
    assert not config.analysis.phi
    assert config.seed == 0


def test_name_defaults_to_file_stem():
    config = parse_run_config("other.cfg", text=BASE.replace("[run]\nname = small\n", ""))
    assert config.name == "other"


def test_bad_spacing_points_at_h():
    assert error_line(BASE.replace("h = 1/16", "h = 0.3")) == 5


def test_bad_dimension_points_at_dimension():
    assert error_line(BASE.replace("dimension = 2", "dimension = 4")) == 4


def test_missing_required_key():
    with pytest.raises(ConfigError) as info:
        parse(BASE.replace("kind = SLIT_TRACE\n", ""))
    assert info.value.line is None


def test_invalid_scenario_is_config_error():
    with pytest.raises(ConfigError):
        parse(BASE.replace("kappa = 1/2", "kappa = 1"))
    assert error_line(BASE.replace("kind = SLIT_TRACE", "kind = PARABOLA")) == 7


def test_non_number_points_at_line():
    assert error_line(BASE.replace("kappa = 1/2", "kappa = half")) == 8


def test_centers_are_completed_on_thin_plane():
    text = BASE + "[analysis]\nfrequency_centers = 0; 0.25\nregularity_centers = -0.5\nphi = yes\nperturbations = 5\n"
    config = parse(text)
    assert config.analysis.frequency_centers == [(0.0, 0.0), (0.25, 0.0)]
    assert config.analysis.regularity_centers == [(-0.5, 0.0)]
    assert config.analysis.phi
    assert config.analysis.perturbations == 5


def test_centers_in_three_dimensions():
    text = "[grid]\ndimension = 3\nh = 1/8\n[scenario]\nkind = CONSTANT\nvalue = 1\n"
    config = parse(text + "[analysis]\nfrequency_centers = 0,0; 0.25,0.1\n")
    assert config.analysis.frequency_centers == [(0.0, 0.0, 0.0), (0.25, 0.1, 0.0)]


def test_center_coordinate_count():
    assert error_line(BASE + "[analysis]\nfrequency_centers = 0,0\n") == 10


def test_negative_frequency_center_rejected():
    with pytest.raises(ConfigError):
        parse(BASE + "[analysis]\nfrequency_centers = -0.25\n")


def test_bad_boolean():
    assert error_line(BASE + "[analysis]\nidentities = maybe\n") == 10


def test_solver_section():
    config = parse(BASE + "[solver]\nomega = 1.5\nmax_iterations = 1000\n")
    assert config.solver.omega == 1.5
    assert config.solver.max_iterations == 1000
    with pytest.raises(ConfigError):
        parse(BASE + "[solver]\nomega = 2.5\n")


def test_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        parse_run_config(tmp_path / "missing.cfg")


# ------------------------------ #  预设部分


def test_presets_are_listed():
    names = [name for name, _ in list_presets()]
    assert names == sorted(names)
    assert {"const1", "slit12", "slit32", "slit52", "shifted32", "const1_3d"} <= set(names)
    assert all(description for _, description in list_presets())


@pytest.mark.parametrize("name", [name for name, _ in list_presets()])
def test_every_preset_parses(name):
    config = parse_run_config(resolve_config(name))
    assert config.name == name
    assert config.scenario.dimension == config.dimension


def test_resolve_unknown_preset():
    with pytest.raises(ConfigError):
        resolve_config("no_such_preset")


# ------------------------------ #  仓库配置部分


def test_app_config_fills_missing_keys(tmp_path):
    path = tmp_path / "lab_config.json"
    path.write_text(json.dumps({"solver_config": {"omega": 1.5}}), encoding="utf-8")
    config = AppConfig(str(path), {"solver_config": {"omega": 1.8, "tolerance": 1e-10}, "extra": {"on": True}})
    assert config.section("solver_config") == {"omega": 1.5, "tolerance": 1e-10}
    assert config.extra == {"on": True}
    # 补齐后的配置写回文件
    assert json.loads(path.read_text(encoding="utf-8-sig"))["extra"] == {"on": True}


def test_app_config_creates_missing_file(tmp_path):
    path = tmp_path / "nested" / "lab_config.json"
    config = AppConfig(str(path), {"frequency_config": {"workers": 1}})
    assert path.exists()
    assert config.section("frequency_config") == {"workers": 1}
    assert config.section("unknown") == {}
