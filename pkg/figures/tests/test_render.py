import numpy as np
import pytest

from vortexmc_plots.render import FigureSpec, render
from vortexmc_plots.snapshots import SnapshotFormatError, load_snapshot

BOUNDARY_TIMES = (0.01, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
OUTER_TIMES = (0.01, 1.0, 2.0, 3.0)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class TestLoad:
    def test_roundtrip_fields(self, fake_snapshot_factory):
        p = fake_snapshot_factory(0.25)
        snap = load_snapshot(p)
        assert snap.time == 0.25
        assert snap.nx == 24 and snap.ny == 12
        assert snap.points.shape == (24 * 12, 2)
        assert snap.theta.shape == (6,)

    def test_grid_axes(self, fake_snapshot_factory):
        snap = load_snapshot(fake_snapshot_factory(0.5))
        assert snap.x1.shape == (24,)
        assert snap.x2.shape == (12,)
        u1, u2, om, speed = snap.grids()
        assert u1.shape == (12, 24)
        assert np.all(speed >= 0)

    def test_rejects_garbage(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("hello\n")
        with pytest.raises(SnapshotFormatError):
            load_snapshot(p)


class TestRender:
    def test_eight_panel_boundary(self, fake_snapshot_factory, tmp_path):
        paths = [str(fake_snapshot_factory(t, name=f"b{i}.csv")) for i, t in enumerate(BOUNDARY_TIMES)]
        out = tmp_path / "boundary.png"
        render(FigureSpec(snapshot_paths=tuple(paths), view="boundary", out_path=str(out)))
        assert out.read_bytes()[:8] == PNG_MAGIC

    def test_four_panel_outer(self, fake_snapshot_factory, tmp_path):
        paths = [
            str(fake_snapshot_factory(t, name=f"o{i}.csv", view="outer", x2span=(0.01, 1.0)))
            for i, t in enumerate(OUTER_TIMES)
        ]
        out = tmp_path / "outer.png"
        render(FigureSpec(snapshot_paths=tuple(paths), view="outer", out_path=str(out)))
        assert out.exists()

    def test_idempotent_bytes(self, fake_snapshot_factory, tmp_path):
        paths = [str(fake_snapshot_factory(t, name=f"i{t}.csv")) for t in (0.1, 0.2)]
        out1 = tmp_path / "one.png"
        out2 = tmp_path / "two.png"
        spec1 = FigureSpec(snapshot_paths=tuple(paths), view="boundary", out_path=str(out1))
        spec2 = FigureSpec(snapshot_paths=tuple(paths), view="boundary", out_path=str(out2))
        render(spec1)
        render(spec2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_all_zero_snapshot(self, fake_snapshot_factory, tmp_path):
        p = fake_snapshot_factory(0.3, zero=True)
        out = tmp_path / "zero.png"
        render(FigureSpec(snapshot_paths=(str(p),), view="boundary", out_path=str(out)))
        assert out.exists()

    def test_hash_mismatch_rejected(self, fake_snapshot_factory, tmp_path):
        a = fake_snapshot_factory(0.1, name="a.csv", config="aaaaaaaaaaaa")
        b = fake_snapshot_factory(0.2, name="b.csv", config="bbbbbbbbbbbb")
        with pytest.raises(SnapshotFormatError, match="hash mismatch"):
            render(
                FigureSpec(snapshot_paths=(str(a), str(b)), view="boundary",
                           out_path=str(tmp_path / "x.png"))
            )

    def test_bad_view_rejected(self):
        with pytest.raises(ValueError):
            FigureSpec(snapshot_paths=("x",), view="sideways", out_path="y.png")


class TestCli:
    def test_render_subcommand(self, fake_snapshot_factory, tmp_path, capsys):
        from vortexmc_plots.cli import main

        for i, t in enumerate(OUTER_TIMES):
            fake_snapshot_factory(t, name=f"snap_outer_step{i:06d}.csv", view="outer")
        out = tmp_path / "fig.png"
        rc = main([
            "render", "--view", "outer",
            "--snapshots", str(tmp_path / "snap_outer_step*.csv"),
            "--out", str(out),
        ])
        assert rc == 0
        assert "4 panels" in capsys.readouterr().out
        assert out.exists()

    def test_missing_file_error(self, tmp_path, capsys):
        from vortexmc_plots.cli import main

        rc = main([
            "render", "--view", "outer",
            "--snapshots", str(tmp_path / "nothing*.csv"),
            "--out", str(tmp_path / "fig.png"),
        ])
        assert rc == 2
