from zetameans import config


def test_config_file_keys_are_normalised(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("# sweep defaults\nN-ORDER = 3\neta=0.2\nx_rule = proportional\n", encoding="utf-8")
    values = config.load_config_file(str(path))
    assert values == {"n_order": "3", "eta": "0.2", "x_rule": "proportional"}


def test_no_config_file():
    assert config.load_config_file(None) == {}
    assert config.load_config_file("") == {}


def test_default_policy_follows_settings():
    policy = config.default_policy()
    assert policy.precision_bits == config.PRECISION_BITS
    assert policy.abs_tol == policy.rel_tol == config.TOL
    assert policy.max_subdivisions == config.MAX_SUBDIVISIONS
    assert policy.series_safety_factor == config.SERIES_SAFETY
