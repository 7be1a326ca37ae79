import pytest

from vortexmc.config import GOLDEN_CONFIG, ConfigError, golden_config, parse_config

FREE_MINIMAL = """\
[run]
scheme = fmcrv
seed = 7
dt = 0.01
n_steps = 10
n_copies = 3

[physics]
nu = 0.05
delta = 0.05
big_r = 5.0

[lattice]
h = 0.1
extent_r = 1.0

[fields]
omega0 = gaussian
omega0_amplitude = 10.0
omega0_width = 0.06
"""


class TestGoldenPreset:
    def test_values_verbatim(self):
        cfg = golden_config()
        assert cfg.scheme == "wall1"
        assert (cfg.nu, cfg.delta, cfg.eps) == (0.01, 0.01, 0.05)
        assert (cfg.h0, cfg.h1, cfg.h2) == (0.15, 0.1, 0.00125)
        assert (cfg.n0, cfg.n1, cfg.n2) == (40, 60, 80)
        assert (cfg.dt, cfg.n_steps) == (0.01, 300)
        assert (cfg.g0, cfg.u0, cfg.length_scale) == (-0.2, 1.0, 6.0)

    def test_reynolds_derived(self):
        assert golden_config().reynolds == pytest.approx(600.0)

    def test_snapshot_schedule(self):
        sched = golden_config().snapshot_schedule()
        assert len(sched) == 31
        assert sched[0] == 0 and sched[-1] == 300

    def test_probe_grids(self):
        cfg = golden_config()
        names = {p.name: p for p in cfg.probes}
        assert set(names) == {"boundary", "outer"}
        assert (names["boundary"].n1, names["boundary"].n2) == (121, 41)
        assert (names["outer"].n1, names["outer"].n2) == (61, 31)


class TestValidation:
    def test_free_minimal_parses(self):
        cfg = parse_config(FREE_MINIMAL)
        assert cfg.scheme == "fmcrv"
        assert not cfg.is_wall

    def test_negative_nu_rejected(self):
        bad = FREE_MINIMAL.replace("nu = 0.05", "nu = -1.0")
        with pytest.raises(ConfigError, match="nu"):
            parse_config(bad)

    def test_unknown_key_named(self):
        bad = FREE_MINIMAL.replace("delta = 0.05", "delta = 0.05\ndetla = 0.1")
        with pytest.raises(ConfigError, match="detla"):
            parse_config(bad)

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match="extras"):
            parse_config(FREE_MINIMAL + "\n[extras]\nfoo = 1\n")

    def test_pmcrv_multicopy_rejected(self):
        bad = FREE_MINIMAL.replace("scheme = fmcrv", "scheme = pmcrv")
        with pytest.raises(ConfigError, match="n_copies"):
            parse_config(bad)

    def test_wall_requires_mesh(self):
        bad = GOLDEN_CONFIG.replace("h2 = 0.00125\n", "")
        with pytest.raises(ConfigError, match="h2"):
            parse_config(bad)

    def test_mesh_ordering(self):
        bad = GOLDEN_CONFIG.replace("h2 = 0.00125", "h2 = 0.5")
        with pytest.raises(ConfigError, match="h2"):
            parse_config(bad)

    def test_missing_seed(self):
        bad = FREE_MINIMAL.replace("seed = 7\n", "")
        with pytest.raises(ConfigError, match="seed"):
            parse_config(bad)

    def test_snapshot_steps_parsed(self):
        cfg = parse_config(FREE_MINIMAL.replace("n_copies = 3", "n_copies = 3\nsnapshot_steps = 1, 5, 25"))
        assert cfg.snapshot_steps == (1, 5, 25)
        sched = cfg.snapshot_schedule()
        assert 1 in sched and 5 in sched
        assert 25 not in sched  # beyond n_steps, dropped

    def test_parse_error_reported(self):
        with pytest.raises(ConfigError, match="parse error"):
            parse_config("not an ini file [[[")

    def test_preset_long_names_accepted(self):
        cfg = parse_config(
            FREE_MINIMAL.replace("omega0 = gaussian", "omega0 = gaussian_vortex")
        )
        assert cfg.omega0 == "gaussian_vortex"

    def test_hash_tracks_text(self):
        a = parse_config(FREE_MINIMAL)
        b = parse_config(FREE_MINIMAL.replace("seed = 7", "seed = 8"))
        assert a.config_hash != b.config_hash
        assert len(a.config_hash) == 12
