import math

import numpy as np
import pytest


def write_fake_snapshot(path, time, view="boundary", nx=24, ny=12, config="deadbeef0123",
                        zero=False, x2span=(0.001, 0.1)):
    """Emit a file in the simulator's snapshot schema with a swirl field."""
    x1 = [float(v) for v in np.linspace(-1.0, 1.0, nx)]
    x2 = [float(v) for v in np.linspace(x2span[0], x2span[1], ny)]
    lines = [
        f"# vortexmc config={config} seed=1 scheme=wall1 step={int(time * 100)}"
        f" time={time!r} view={view} nx={nx} ny={ny}"
    ]
    for a in x1:
        for b in x2:
            if zero:
                u1 = u2 = om = 0.0
            else:
                u1 = math.sin(2 * a) * (b / x2[-1])
                u2 = 0.1 * math.cos(a) * math.sin(b * 30 + time)
                om = math.cos(3 * a) * math.exp(-b * 5) * (1 + time)
            lines.append(f"P,{a!r},{b!r},{u1!r},{u2!r},{om!r}")
    for a in x1[::4]:
        lines.append(f"T,{a!r},{math.sin(a + time)!r}")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture()
def fake_snapshot_factory(tmp_path):
    def make(time, **kw):
        name = kw.pop("name", f"snap_{time}.csv")
        return write_fake_snapshot(tmp_path / name, time, **kw)

    return make
