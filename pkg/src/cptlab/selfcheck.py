"""Fast invariant suite run by ``cpt-lab selfcheck``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dbc
from .dynamics import converge_to_steady
from .generator import GeneratorSpec, build_full, build_noiseless, classical_dissipator
from .model import SystemParams, basis_state
from .noise import CorrelationModel, NoiseStrength, alpha_t
from .oracles import reference_generator
from .steady_state import solve_steady


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual < self.tolerance)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<38s} residual={self.residual:.3e}  tol={self.tolerance:.1e}"


def _draws(rng, n, resonant=False):
    for _ in range(n):
        yield SystemParams(
            gamma=rng.uniform(0.1, 50),
            omega1=rng.uniform(0.1, 100),
            omega2=rng.uniform(0.1, 100),
            phi1=rng.uniform(-math.pi, math.pi),
            phi2=rng.uniform(-math.pi, math.pi),
            delta1=0.0 if resonant else rng.uniform(-100, 100),
            delta2=0.0 if resonant else rng.uniform(-100, 100),
            gamma_e=rng.uniform(0.5, 2.0),
        )


def check_singular(rng, n=50) -> CheckResult:
    worst = 0.0
    for p in _draws(rng, n):
        sv = np.linalg.svd(build_noiseless(p), compute_uv=False)
        worst = max(worst, sv[-1] / sv[0])
    return CheckResult("det A = 0 (sigma_min / ||A||)", worst, 1e-10)


def check_kron_oracle(rng, n=50) -> CheckResult:
    worst = 0.0
    for p in _draws(rng, n):
        rate = rng.uniform(0, 5)
        hand = build_noiseless(p) + classical_dissipator(1.0, rate)
        worst = max(worst, float(np.max(np.abs(hand - reference_generator(p, rate)))))
    return CheckResult("generator vs Kronecker oracle", worst, 1e-12)


def check_dbc_equivalence(rng, n=50) -> CheckResult:
    worst = 0.0
    for p in _draws(rng, n, resonant=True):
        rate = rng.uniform(0, 5)
        hand = build_noiseless(p) + classical_dissipator(1.0, rate)
        worst = max(worst, float(np.max(np.abs(hand - dbc.generator_from_dbc(p, rate)))))
    return CheckResult("generator vs dbc-basis reconstruction", worst, 1e-12)


def check_decomposition(rng, n=100) -> CheckResult:
    worst = max(dbc.verify_decomposition(*rng.uniform(-math.pi, math.pi, 3)) for _ in range(n))
    return CheckResult("P11 - P22 dbc decomposition", worst, 1e-12)


def check_alpha_quadrature(rng, n=20) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        model = CorrelationModel(c0=rng.uniform(0.1, 2), tau_c=rng.uniform(0.01, 5))
        t = rng.uniform(0.0, 5.0) * model.tau_c
        s = np.linspace(0.0, t, 100_001)
        c = model.c0 ** 2 * np.exp(-s / model.tau_c)
        quad = float(np.sum(0.5 * (c[1:] + c[:-1]) * np.diff(s)))
        exact = alpha_t(model, t)
        worst = max(worst, abs(quad - exact) / exact)
    return CheckResult("alpha(t) vs trapezoid quadrature", worst, 1e-8)


def check_steady_cross_method() -> CheckResult:
    spec = GeneratorSpec(SystemParams(7.0, 46.0, 46.0), NoiseStrength.from_tau2(100.0))
    direct = solve_steady(build_full(spec)).state
    propagated = converge_to_steady(spec, basis_state(1), tol=1e-10)
    return CheckResult("steady state: null space vs propagation", float(np.max(np.abs(direct - propagated))), 1e-6)


def run(seed: int = 2021) -> list:
    rng = np.random.default_rng(seed)
    return [
        check_singular(rng),
        check_kron_oracle(rng),
        check_dbc_equivalence(rng),
        check_decomposition(rng),
        check_alpha_quadrature(rng),
        check_steady_cross_method(),
    ]
