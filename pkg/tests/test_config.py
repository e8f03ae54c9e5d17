"""Test the configuration layer (`rc` and `RunConfig`)."""
import pytest
import yaml

from vconn.vc_config import RunConfig, rc


def test_defaults():
    conf = RunConfig()
    assert conf.seed == 0
    assert conf.flow == "dinic"
    assert conf.threads == 1
    assert conf.extra_rows == 8
    assert conf.l2_min_rows == 2048
    assert conf.scratch_reps == 3
    assert conf.nonscratch_floor == 8
    assert conf.early_exit is False
    assert conf.accounting_bound == 4
    assert any(f.endswith("vc_config.yaml") for f in rc.loaded_from)


def test_rc_is_read_at_creation(monkeypatch):
    before = RunConfig()
    monkeypatch.setitem(rc.scratch, "reps", 5)
    assert RunConfig().scratch_reps == 5
    assert before.scratch_reps == 3


def test_negative_seed():
    with pytest.raises(ValueError):
        RunConfig(seed=-1)
    with pytest.raises(ValueError):
        RunConfig().replace(seed=-3)


def test_replace_is_a_copy():
    conf = RunConfig(seed=1)
    other = conf.replace(flow="csgraph")
    assert conf.flow == "dinic"
    assert other.flow == "csgraph"
    assert other.seed == 1


def test_yaml():
    conf = RunConfig(seed=11).replace(level_factor=2, early_exit=True)
    dct = yaml.safe_load(conf.to_yaml())
    assert RunConfig.from_dict(dct) == conf
    assert list(dct)[:2] == ["seed", "flow"]
