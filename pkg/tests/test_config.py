import math

import pytest

from ris_aoi.config import (
    ConfigError,
    ScenarioConfig,
    config_hash,
    db_to_linear,
    dbm_to_watts,
    parse_config,
    serialize_config,
)


def test_defaults():
    c = ScenarioConfig()
    assert c.i_clusters == 10
    assert c.l_elements == 32
    assert c.t_slots == 100
    assert c.mc_runs == 500
    assert c.gamma_th_db == 45.0
    assert c.p_max_dbm == 20.0
    assert c.sigma2_dbm == -110.0
    assert c.gamma0_db == -30.0
    assert c.rician_k == 2.0
    assert c.d_s == 10.0 and c.d_w == 10.0 and c.d_rb == 150.0
    assert c.h_b == 10.0 and c.h_r == 10.0
    assert c.eta_rb == 2.2 and c.eta_wr == 2.2
    assert c.eta_sb == 3.5 and c.eta_wb == 3.5
    assert c.gr_samples == 100


def test_unit_conversions():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == pytest.approx(10.0)
    assert dbm_to_watts(30.0) == pytest.approx(1.0)
    assert dbm_to_watts(0.0) == pytest.approx(1e-3)
    c = ScenarioConfig()
    assert c.gamma_th == pytest.approx(10.0**4.5)
    assert c.p_max_w == pytest.approx(0.1)
    assert c.sigma2_w == pytest.approx(1e-14)
    assert c.gamma0 == pytest.approx(1e-3)


def test_parse_roundtrip():
    c = ScenarioConfig(i_clusters=4, gamma_th_db=42.5, los_mode="ones")
    assert parse_config(serialize_config(c)) == c


def test_parse_empty_document_gives_defaults():
    assert parse_config("") == ScenarioConfig()


def test_parse_from_path(tmp_path):
    p = tmp_path / "cfg.yaml"
    p.write_text("i_clusters: 3\nl_elements: 8\n")
    c = parse_config(str(p))
    assert c.i_clusters == 3 and c.l_elements == 8
    assert parse_config(p) == c  # Path-like


def test_parse_rejects_unknown_field():
    with pytest.raises(ConfigError, match="unknown config field"):
        parse_config("i_clusters: 4\nbogus_field: 1\n")


def test_parse_rejects_bad_types():
    with pytest.raises(ConfigError):
        parse_config("i_clusters: 4.5\n")
    with pytest.raises(ConfigError):
        parse_config("gamma_th_db: hello\n")
    with pytest.raises(ConfigError):
        parse_config("- just\n- a list\n")


def test_validation():
    with pytest.raises(ConfigError):
        ScenarioConfig(i_clusters=0)
    with pytest.raises(ConfigError):
        ScenarioConfig(t_slots=-5)
    with pytest.raises(ConfigError):
        ScenarioConfig(d_rb=0.0)
    with pytest.raises(ConfigError):
        ScenarioConfig(rician_k=-1.0)
    with pytest.raises(ConfigError):
        ScenarioConfig(sdr_tolerance=0.0)
    with pytest.raises(ConfigError):
        ScenarioConfig(los_mode="diagonal")
    with pytest.raises(ConfigError):
        ScenarioConfig(gamma_th_db=math.inf)


def test_hash_stability_and_sensitivity():
    a = ScenarioConfig()
    b = ScenarioConfig(seed=2)
    assert config_hash(a) == config_hash(ScenarioConfig())
    assert config_hash(a) != config_hash(b)
    assert len(config_hash(a)) == 12


def test_with_overrides():
    c = ScenarioConfig().with_overrides(l_elements=8, p_max_dbm=5.0)
    assert c.l_elements == 8 and c.p_max_dbm == 5.0
    assert c.i_clusters == 10
