"""Self-check suite behind the `verify` CLI subcommand.

Runs the oracle cross-validations and kernel identities at desk scale and
prints one pass/fail line per check.  Returns the number of failures.
"""

from __future__ import annotations

import math

import numpy as np

from vortexmc import fields, kernels, oracle
from vortexmc.geometry import perp, reflect


def _check(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))
    return ok


def run_verify() -> int:
    rng = np.random.default_rng(7)
    failures = 0

    # geometry conventions
    z = rng.normal(size=(100, 2))
    failures += not _check(
        "perp and reflect conventions",
        np.array_equal(perp(z), np.column_stack((-z[:, 1], z[:, 0])))
        and np.array_equal(reflect(z), np.column_stack((z[:, 0], -z[:, 1]))),
    )

    # kernel antisymmetry and regularization envelope
    zs = rng.normal(size=(1000, 2))
    k = kernels.biot_savart_free(zs)
    failures += not _check(
        "free kernel antisymmetry", np.allclose(kernels.biot_savart_free(-zs), -k, atol=0)
    )
    deltas = rng.uniform(0.01, 1.0, size=1000)
    kd = np.array([kernels.biot_savart_regularized(z, d) for z, d in zip(zs, deltas)])
    r = np.hypot(zs[:, 0], zs[:, 1])
    bound = 1.0 / (2.0 * math.pi * r)
    failures += not _check(
        "regularized kernel bound C0=1/(2 pi)",
        np.all(np.hypot(kd[:, 0], kd[:, 1]) <= bound * (1 + 1e-12)),
    )
    env = np.array([kernels.epsilon_delta(z, d) for z, d in zip(zs, deltas)])
    diff = np.hypot(kd[:, 0] - k[:, 0], kd[:, 1] - k[:, 1]) * r
    failures += not _check("regularization error envelope", np.all(diff <= env * (1 + 1e-12)))

    # wall cancellation of the half-plane kernel
    xs = np.column_stack((rng.normal(size=50), np.zeros(50)))
    ys = np.column_stack((rng.normal(size=50), rng.uniform(0.1, 3.0, size=50)))
    kw = np.array([kernels.halfplane_kernel(x, y) for x, y in zip(xs, ys)])
    failures += not _check("half-plane kernel wall cancellation", np.all(kw == 0.0))

    # boundary-stress kernel against its finite-difference definition
    step = 1e-6
    worst = 0.0
    for _ in range(100):
        y = np.array([rng.normal(), rng.uniform(0.05, 2.0)])
        x1 = rng.normal()
        delta = rng.uniform(0.005, 0.1)
        up = kernels.halfplane_kernel_regularized(np.array([x1, step]), y, delta)[0]
        dn = kernels.halfplane_kernel_regularized(np.array([x1, -step]), y, delta)[0]
        fd = -(up - dn) / (2 * step)
        an = float(kernels.boundary_stress_kernel(y, x1, delta))
        worst = max(worst, abs(fd - an) / max(abs(an), 1e-12))
    failures += not _check(
        "boundary-stress kernel vs finite difference", worst < 1e-4, f"max rel err {worst:.2e}"
    )

    # boundary mollifier integrates to zero
    rr, wr = np.polynomial.legendre.leggauss(200)
    r01 = 0.5 * (rr + 1.0)
    integral = float(np.sum(0.5 * wr * kernels.boundary_mollifier_chi(r01)))
    failures += not _check(
        "boundary mollifier zero mean", abs(integral) < 1e-10, f"integral {integral:.2e}"
    )

    # the two radial oracles agree
    a, w, nu = 1.3, 0.4, 0.05
    closed = oracle.gaussian_radial_solution(a, w, nu)
    bump = fields.gaussian_vortex(a, w)
    rs = np.linspace(0.0, 5 * w, 12)
    ok = True
    for t in (0.0, 0.1, 1.0):
        got = np.atleast_1d(oracle.radial_heat_evolution(bump, nu, t, rs))
        want = closed.omega_exact(rs, t)
        # taper of the preset sets an absolute floor ~1e-8 a in the far tail
        ok = ok and bool(np.all(np.abs(got - want) <= 1e-6 * np.abs(want) + 2e-8 * a))
    failures += not _check("radial heat oracle vs closed form", ok)

    # dense Biot-Savart matches the circulation law and is divergence-free
    probe_r = 2 * w
    u = oracle.dense_biot_savart(bump.eval, np.array([probe_r, 0.0]), bump.support_radius)
    want = float(closed.u_theta_exact(np.array([probe_r]), 0.0))
    failures += not _check(
        "dense Biot-Savart vs circulation law",
        abs(u[1] - want) <= 1e-4 * abs(want) and abs(u[0]) < 1e-8,
        f"u={u}, u_theta={want:.6f}",
    )
    div = oracle.fd_divergence(
        lambda p: oracle.dense_biot_savart(bump.eval, p, bump.support_radius),
        np.array([0.5, 0.3]),
        1e-4,
    )
    failures += not _check("dense Biot-Savart divergence-free", abs(div) < 1e-4, f"div {div:.2e}")

    print("verify:", "all checks passed" if failures == 0 else f"{failures} check(s) FAILED")
    return failures
