"""Run configuration: flat key-value text with sections, fail-closed.

Unknown sections or keys are errors; every physical invariant violation
is reported with the offending key.  The golden preset reproduces the
wall experiment verbatim: nu=0.01, delta=0.01, eps=0.05, h0=0.15, N0=40,
h1=0.1, N1=60, h2=0.00125, N2=80, dt=0.01, 300 steps, G0=-0.2, U0=1.
"""

from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, field

SCHEMES = ("fmcrv", "pmcrv", "wall1", "wall2")

_KNOWN_KEYS = {
    "run": {
        "scheme", "seed", "dt", "n_steps", "n_copies", "snapshot_every",
        "snapshot_steps", "share_noise",
    },
    "physics": {"nu", "delta", "eps", "big_r"},
    "lattice": {"h", "extent_r", "h0", "h1", "h2", "n0", "n1", "n2"},
    "fields": {
        "omega0", "omega0_amplitude", "omega0_width", "omega0_center1",
        "omega0_center2", "forcing", "g0", "forcing_window", "initial", "u0",
        "length_scale",
    },
}
_PROBE_KEYS = {"x1min", "x1max", "n1", "x2min", "x2max", "n2"}


@dataclass(frozen=True)
class ProbeGrid:
    """Rectangular probe grid of one snapshot view."""

    name: str
    x1min: float
    x1max: float
    n1: int
    x2min: float
    x2max: float
    n2: int

    def points(self):
        import numpy as np

        x1 = np.linspace(self.x1min, self.x1max, self.n1)
        x2 = np.linspace(self.x2min, self.x2max, self.n2)
        g1, g2 = np.meshgrid(x1, x2, indexing="ij")
        return np.column_stack((g1.ravel(), g2.ravel()))


@dataclass(frozen=True)
class SimConfig:
    """Validated parameters of one run."""

    scheme: str
    seed: int
    dt: float
    n_steps: int
    n_copies: int
    snapshot_every: int
    snapshot_steps: tuple[int, ...]
    share_noise: bool
    nu: float
    delta: float
    eps: float | None
    big_r: float | None
    # free-space lattice
    h: float | None
    extent_r: float | None
    # wall lattice
    h0: float | None
    h1: float | None
    h2: float | None
    n0: int | None
    n1: int | None
    n2: int | None
    # fields
    omega0: str
    omega0_amplitude: float
    omega0_width: float
    omega0_center: tuple[float, float]
    forcing: str
    g0: float
    forcing_window: float
    initial: str
    u0: float
    length_scale: float
    probes: tuple[ProbeGrid, ...] = field(default_factory=tuple)
    text: str = ""

    @property
    def is_wall(self) -> bool:
        return self.scheme.startswith("wall")

    @property
    def reynolds(self) -> float:
        return self.u0 * self.length_scale / self.nu

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()[:12]

    def snapshot_schedule(self) -> tuple[int, ...]:
        steps = set(range(0, self.n_steps + 1, self.snapshot_every))
        steps.add(self.n_steps)
        steps.update(s for s in self.snapshot_steps if 0 <= s <= self.n_steps)
        return tuple(sorted(steps))


class ConfigError(ValueError):
    pass


def _get(section, key, conv, default=None, required=False):
    if key not in section:
        if required:
            raise ConfigError(f"missing required key '{key}' in section [{section.name}]")
        return default
    raw = section[key].strip()
    try:
        if conv is bool:
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        return conv(raw)
    except ValueError as e:
        raise ConfigError(f"key '{key}' in [{section.name}]: cannot parse '{raw}'") from e


def parse_config(text: str) -> SimConfig:
    """Parse and validate a configuration document.

    Raises
    ------
    ConfigError
        On malformed text, unknown sections/keys, or invariant violations
        (the message names the violated key).
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ConfigError(f"config parse error: {e}") from e

    for sec in cp.sections():
        if sec in _KNOWN_KEYS:
            allowed = _KNOWN_KEYS[sec]
        elif sec.startswith("probes."):
            allowed = _PROBE_KEYS
        else:
            raise ConfigError(f"unknown section [{sec}]")
        for key in cp[sec]:
            if key not in allowed:
                raise ConfigError(f"unknown key '{key}' in section [{sec}]")

    if "run" not in cp:
        raise ConfigError("missing required section [run]")
    if "physics" not in cp:
        raise ConfigError("missing required section [physics]")

    run = cp["run"]
    phys = cp["physics"]
    lat = cp["lattice"] if "lattice" in cp else {"name": "lattice"}
    flds = cp["fields"] if "fields" in cp else None

    scheme = _get(run, "scheme", str, required=True)
    if scheme not in SCHEMES:
        raise ConfigError(f"key 'scheme': expected one of {SCHEMES}, got '{scheme}'")

    def latget(key, conv, required=False):
        if isinstance(lat, dict):
            if required:
                raise ConfigError(f"missing required key '{key}' in section [lattice]")
            return None
        return _get(lat, key, conv, required=required)

    snapshot_steps_raw = _get(run, "snapshot_steps", str, default="")
    try:
        snapshot_steps = tuple(
            int(s) for s in snapshot_steps_raw.replace(",", " ").split()
        )
    except ValueError as e:
        raise ConfigError("key 'snapshot_steps': expected integers") from e
    cfg = SimConfig(
        scheme=scheme,
        seed=_get(run, "seed", int, required=True),
        dt=_get(run, "dt", float, required=True),
        n_steps=_get(run, "n_steps", int, required=True),
        n_copies=_get(run, "n_copies", int, default=1),
        snapshot_every=_get(run, "snapshot_every", int, default=10),
        snapshot_steps=snapshot_steps,
        share_noise=_get(run, "share_noise", bool, default=False),
        nu=_get(phys, "nu", float, required=True),
        delta=_get(phys, "delta", float, required=True),
        eps=_get(phys, "eps", float),
        big_r=_get(phys, "big_r", float),
        h=latget("h", float),
        extent_r=latget("extent_r", float),
        h0=latget("h0", float),
        h1=latget("h1", float),
        h2=latget("h2", float),
        n0=latget("n0", int),
        n1=latget("n1", int),
        n2=latget("n2", int),
        omega0=_get(flds, "omega0", str, default="zero") if flds else "zero",
        omega0_amplitude=_get(flds, "omega0_amplitude", float, default=1.0) if flds else 1.0,
        omega0_width=_get(flds, "omega0_width", float, default=0.5) if flds else 0.5,
        omega0_center=(
            _get(flds, "omega0_center1", float, default=0.0) if flds else 0.0,
            _get(flds, "omega0_center2", float, default=0.0) if flds else 0.0,
        ),
        forcing=_get(flds, "forcing", str, default="none") if flds else "none",
        g0=_get(flds, "g0", float, default=0.0) if flds else 0.0,
        forcing_window=_get(flds, "forcing_window", float, default=6.0) if flds else 6.0,
        initial=_get(flds, "initial", str, default="rest") if flds else "rest",
        u0=_get(flds, "u0", float, default=1.0) if flds else 1.0,
        length_scale=_get(flds, "length_scale", float, default=6.0) if flds else 6.0,
        probes=tuple(
            ProbeGrid(
                name=sec.split(".", 1)[1],
                x1min=_get(cp[sec], "x1min", float, required=True),
                x1max=_get(cp[sec], "x1max", float, required=True),
                n1=_get(cp[sec], "n1", int, required=True),
                x2min=_get(cp[sec], "x2min", float, required=True),
                x2max=_get(cp[sec], "x2max", float, required=True),
                n2=_get(cp[sec], "n2", int, required=True),
            )
            for sec in cp.sections()
            if sec.startswith("probes.")
        ),
        text=text,
    )
    _validate(cfg)
    return cfg


def _validate(cfg: SimConfig) -> None:
    if cfg.nu < 0:
        raise ConfigError("key 'nu': viscosity must be non-negative")
    if cfg.dt <= 0:
        raise ConfigError("key 'dt': time step must be positive")
    if cfg.delta <= 0:
        raise ConfigError("key 'delta': regularization length must be positive")
    if cfg.n_steps < 1:
        raise ConfigError("key 'n_steps': need at least one step")
    if cfg.n_copies < 1:
        raise ConfigError("key 'n_copies': need at least one copy")
    if cfg.snapshot_every < 1:
        raise ConfigError("key 'snapshot_every': must be at least 1")
    if cfg.scheme == "pmcrv" and cfg.n_copies != 1:
        raise ConfigError("key 'n_copies': the particle scheme runs exactly one path family")
    if cfg.is_wall:
        if cfg.eps is None or cfg.eps <= 0:
            raise ConfigError("key 'eps': wall schemes need a positive mollifier thickness")
        if cfg.nu == 0:
            raise ConfigError("key 'nu': wall schemes need positive viscosity")
        for key in ("h0", "h1", "h2", "n0", "n1", "n2"):
            if getattr(cfg, key) is None:
                raise ConfigError(f"missing required key '{key}' in section [lattice]")
        if not (cfg.h2 <= cfg.h1 <= cfg.h0):
            raise ConfigError("keys 'h0','h1','h2': expected h2 <= h1 <= h0")
        if cfg.scheme == "wall1" and cfg.n_copies != 1:
            raise ConfigError("key 'n_copies': single-realization wall scheme uses one copy")
    else:
        if cfg.big_r is None or cfg.big_r <= 0:
            raise ConfigError("key 'big_r': free-space schemes need a positive cutoff radius")
        if cfg.h is None or cfg.h <= 0:
            raise ConfigError("key 'h': free-space schemes need a positive grid size")
        if cfg.extent_r is None or cfg.extent_r <= 0:
            raise ConfigError("key 'extent_r': free-space schemes need a positive extent")
        if cfg.omega0 not in ("zero", "gaussian", "gaussian_vortex"):
            raise ConfigError(f"key 'omega0': unknown preset '{cfg.omega0}'")
    if cfg.omega0.startswith("gaussian") and cfg.omega0_width <= 0:
        raise ConfigError("key 'omega0_width': must be positive")
    if cfg.forcing not in ("none", "constant", "constant_forcing"):
        raise ConfigError(f"key 'forcing': unknown preset '{cfg.forcing}'")
    if cfg.initial not in ("rest", "uniform_stream"):
        raise ConfigError(f"key 'initial': unknown preset '{cfg.initial}'")


GOLDEN_CONFIG = """\
# Wall-bounded uniform-stream experiment (Re = 600)
[run]
scheme = wall1
seed = 20260810
dt = 0.01
n_steps = 300
n_copies = 1
snapshot_every = 10
share_noise = false

[physics]
nu = 0.01
delta = 0.01
eps = 0.05

[lattice]
h0 = 0.15
h1 = 0.1
h2 = 0.00125
n0 = 40
n1 = 60
n2 = 80

[fields]
omega0 = zero
forcing = constant
g0 = -0.2
forcing_window = 6.0
initial = uniform_stream
u0 = 1.0
length_scale = 6.0

[probes.boundary]
x1min = -6.0
x1max = 6.0
n1 = 121
x2min = 0.001
x2max = 0.1
n2 = 41

[probes.outer]
x1min = -6.0
x1max = 6.0
n1 = 61
x2min = 0.01
x2max = 6.0
n2 = 31
"""


def golden_config() -> SimConfig:
    """The wall experiment preset, parsed."""
    return parse_config(GOLDEN_CONFIG)


GOLDEN_SMALL_CONFIG = """\
# Free-space quantitative check: Gaussian vortex against the radial oracle
[run]
scheme = fmcrv
seed = 101
dt = 0.01
n_steps = 50
n_copies = 50
snapshot_every = 25

[physics]
nu = 0.05
delta = 0.05
big_r = 5.0

[lattice]
h = 0.1
extent_r = 0.01

[fields]
omega0 = gaussian
omega0_amplitude = 10.0
omega0_width = 0.06

[probes.center]
x1min = -1.0
x1max = 1.0
n1 = 5
x2min = -1.0
x2max = 1.0
n2 = 5
"""


def golden_small_config() -> SimConfig:
    """The free-space quantitative-check preset, parsed."""
    return parse_config(GOLDEN_SMALL_CONFIG)
