from pathlib import Path

import pytest

from weakmag.config import SHIPPED_CONFIG, RunConfig, load_config, parse_config
from weakmag.exceptions import ConfigError
from weakmag.geometries import FiberCoil, MultiReflection
from weakmag.spectrum import ShotNoise

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def _keys(exc: ConfigError) -> list[str]:
    return [key for key, _ in exc.problems]


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "run.toml"
    path.write_text(text)
    return path


def test_shipped_config_builds_reference_setup():
    config = load_config(SHIPPED_CONFIG)
    setup = config.build_setup()
    assert isinstance(setup.geometry, FiberCoil)
    assert setup.geometry.effective_length_m() == 1000.0
    assert setup.medium.verdet_rad_per_T_m == 32.0
    assert setup.synthesis_grid().points == 4001
    assert setup.phase_for_field(1e-9) == pytest.approx(3.2e-5, rel=1e-12)
    assert config.sweep.betas_rad == [0.007, 0.010, 0.013]
    assert len(config.sweep.b_values()) == 21
    assert config.beta_search().beta_step_rad == 1e-5


def test_noisy_config_builds_spectrometer():
    config = load_config(CONFIGS / "noisy_spectrometer.toml")
    setup = config.build_setup()
    assert setup.readout == "synthetic"
    assert isinstance(setup.spectrometer.noise, ShotNoise)
    assert setup.spectrometer.seed == config.seed == 7


def test_no_config_gives_defaults():
    config = load_config(None)
    assert config == RunConfig()
    assert config.build_setup().probe.lambda0_nm == 833.0


def test_multi_reflection_geometry_from_toml(tmp_path):
    path = _write(
        tmp_path,
        '[geometry]\nkind = "multi_reflection"\npasses = 5\nlength_m = 0.1\n',
    )
    setup = load_config(path).build_setup()
    assert isinstance(setup.geometry, MultiReflection)
    assert setup.geometry.effective_length_m() == pytest.approx(0.5)


def test_budget_is_calibrated_on_build(tmp_path):
    path = _write(tmp_path, "[budget]\nphi_sbc_rad = 0.3\nphi_opd_rad = -0.1\n")
    budget = load_config(path).build_setup().budget
    assert budget.phi_sbc == pytest.approx(0.1)
    assert budget.is_calibrated


def test_invalid_probe_width_names_key(tmp_path):
    path = _write(tmp_path, "[probe]\nw_nm = -1.0\n")
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert _keys(info.value) == ["probe.w_nm"]


def test_unknown_geometry_names_key(tmp_path):
    path = _write(tmp_path, '[geometry]\nkind = "ring_cavity"\n')
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert _keys(info.value) == ["geometry.kind"]


def test_bad_geometry_field_names_key(tmp_path):
    path = _write(tmp_path, '[geometry]\nkind = "fiber_coil"\nturns = 0\nturn_length_m = 1.0\n')
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert _keys(info.value) == ["geometry.turns"]


def test_empty_beta_list_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config({"sweep": {"betas_rad": []}})
    assert _keys(info.value) == ["sweep.betas_rad"]


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config({"probe": {"lambda0": 833.0}})
    assert _keys(info.value) == ["probe.lambda0"]


def test_inconsistent_spectrometer_names_section():
    data = {
        "spectrometer": {
            "lambda_min_nm": 583.0,
            "lambda_max_nm": 1083.0,
            "bin_width_nm": 0.25,
            "intensity_floor": 0.5,
            "saturation": 0.1,
        }
    }
    with pytest.raises(ConfigError) as info:
        parse_config(data)
    assert _keys(info.value)[0].startswith("spectrometer")


def test_reversed_sweep_range_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config({"sweep": {"b_min_T": 1e-9, "b_max_T": 0.0, "steps": 3}})
    assert _keys(info.value)[0].startswith("sweep")


def test_single_field_sweep_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config({"sweep": {"b_min_T": 1e-9, "steps": 1}})
    assert _keys(info.value) == ["sweep.steps"]


def test_two_field_sweep():
    config = parse_config({"sweep": {"b_min_T": 0.0, "b_max_T": 1e-9, "steps": 2}})
    assert config.sweep.b_values() == [0.0, 1e-9]


def test_toml_syntax_error(tmp_path):
    path = _write(tmp_path, "[probe\nw_nm = 50\n")
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert _keys(info.value) == ["<file>"]


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_config(tmp_path / "nope.toml")
    assert "not found" in str(info.value)
