import json

import pytest

from src.cli.config_parser import ACTIONS, config_from_dict, parse_config
from src.domain.models.errors import ConfigError
from src.infrastructure.config.lab_config import LabSettings


def test_minimal_flags_fill_defaults(settings):
    config = parse_config(["bounds", "kappa"], settings)
    assert config.command == "bounds"
    assert config.action == "kappa"
    assert config.params == {"q": 0.0, "eta": 0.0}
    assert config.seed == settings.seed
    assert config.format == "csv"
    assert config.output_path is None


def test_every_action_parses_with_defaults(settings):
    # Senaryo: her komutun varsayılanları kendi aralık kontrollerinden geçmeli
    for command, action in ACTIONS:
        argv = [command] if action is None else [command, action]
        config = parse_config(argv, settings)
        assert config.name == " ".join(argv)


def test_misspelled_flag_is_rejected(settings):
    with pytest.raises(ConfigError) as info:
        parse_config(["bounds", "kappa", "--etaa", "0.5"], settings)
    assert info.value.key == "argv"
    assert "--etaa" in str(info.value)


def test_out_of_range_value_names_the_key(settings):
    with pytest.raises(ConfigError) as info:
        parse_config(["bounds", "rate", "--q", "1"], settings)
    assert info.value.key == "q"


def test_negative_values_and_lists(settings):
    config = parse_config(["bounds", "rate", "--q", "-0.5", "--eta", "1"], settings)
    assert config.params["q"] == -0.5
    lasso = parse_config(["lasso", "fit", "--blocks=-1:1,0:2", "--x0", "0.5,-0.5"], settings)
    assert lasso.params["blocks"] == "-1:1,0:2"
    assert lasso.params["x0"] == (0.5, -0.5)


def test_integer_and_choice_validation(settings):
    with pytest.raises(ConfigError) as info:
        parse_config(["conc-lab", "tails", "--replicates", "150.5"], settings)
    assert info.value.key == "replicates"
    with pytest.raises(ConfigError) as info:
        parse_config(["conc-lab", "tails", "--replicates", "50"], settings)
    assert info.value.key == "replicates"
    with pytest.raises(ConfigError) as info:
        parse_config(["conc-lab", "calibrate", "--kind", "Z"], settings)
    assert info.value.key == "kind"


def test_model_params_are_parsed_as_pairs(settings):
    config = parse_config(["simulate", "--model", "ou", "--model-params", "d=2", "--model-params", "tag=x"], settings)
    assert config.params["model_params"] == {"d": 2.0, "tag": "x"}
    with pytest.raises(ConfigError) as info:
        parse_config(["simulate", "--model-params", "d"], settings)
    assert info.value.key == "model_params"


def test_seed_comes_from_settings_unless_flagged():
    settings = LabSettings(seed=99)
    assert parse_config(["bounds", "c"], settings).seed == 99
    assert parse_config(["bounds", "c", "--seed", "5"], settings).seed == 5


def test_to_dict_round_trip(settings):
    original = parse_config(
        ["conc-lab", "tails", "--t", "3", "--thresholds", "0.5,1", "--seed", "7", "--format", "json", "--out", "r.json"],
        settings,
    )
    rebuilt = config_from_dict(json.loads(json.dumps(original.to_dict())), settings)
    assert rebuilt == original
    assert rebuilt.echo == original.echo


def test_config_from_dict_rejects_unknown_keys(settings):
    with pytest.raises(ConfigError) as info:
        config_from_dict({"command": "bounds", "action": "c", "params": {"qq": 0.1}}, settings)
    assert info.value.key == "qq"
    with pytest.raises(ConfigError) as info:
        config_from_dict({"command": "bounds", "action": "c", "colour": "red"}, settings)
    assert info.value.key == "colour"
    with pytest.raises(ConfigError) as info:
        config_from_dict({"command": "bounds", "action": "nope"}, settings)
    assert info.value.key == "command"


def test_config_file_is_overridden_by_flags(tmp_path, settings):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({
        "command": "bounds",
        "action": "rate",
        "seed": 3,
        "params": {"q": 0.25, "eta": 1.0},
    }), encoding="utf-8")

    from_file = parse_config(["--config", str(path)], settings)
    assert from_file.params["q"] == 0.25
    assert from_file.seed == 3

    overridden = parse_config(["bounds", "rate", "--config", str(path), "--q", "0.5"], settings)
    assert overridden.params["q"] == 0.5
    assert overridden.params["eta"] == 1.0
    assert overridden.seed == 3


def test_config_file_errors(tmp_path, settings):
    with pytest.raises(ConfigError) as info:
        parse_config(["--config", str(tmp_path / "missing.json")], settings)
    assert info.value.key == "config"

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        parse_config(["--config", str(broken)], settings)

    other = tmp_path / "other.json"
    other.write_text(json.dumps({"command": "bounds", "action": "c"}), encoding="utf-8")
    with pytest.raises(ConfigError) as info:
        parse_config(["bounds", "rate", "--config", str(other)], settings)
    assert info.value.key == "command"


def test_missing_command(settings):
    with pytest.raises(ConfigError) as info:
        parse_config([], settings)
    assert info.value.key == "command"
