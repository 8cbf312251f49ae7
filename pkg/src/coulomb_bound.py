"""
Dunkl-Coulomb 束缚态模块
V = -Ze²/r 的能谱、指标指数 δ 与径向波函数

径向方程 𝓡'' + (c/r)𝓡' + [(E + Ze²/r)² - m² - ϖ²/r²]𝓡 = 0, c = d-1+2Σμ,
𝓡 = η^δ e^{-η/2} M(-n, 2δ+c; η), η = 2ϰr, ϰ = √(m² - E²)。

能谱按公式原样实现, 分母为 (n - 1/2 - s)², s = √(ϖ² + Σμ(Σμ+d-2) + (d/2-1)² - Z²e⁴)。
Kummer 截断条件给出的分母是 (n + 1/2 + s)², 二者只在 n = 0 时相同,
energy_candidates 同时返回两者。
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from .core import AngularState, DunklConfig, mu_sum, validate, varpi_squared
from .errors import DegenerateDenominator, InvalidParameter, NonConfining, SupercriticalCharge
from .oracle import count_sign_changes, endpoint_power_integrate
from .specfun import kummer_m

logger = logging.getLogger(__name__)

PRINTED = 'printed'
SHIFTED = 'shifted'
BRANCHES = (PRINTED, SHIFTED)


@dataclass(frozen=True)
class CoulombSpec:
    """Coulomb 问题参数: Dunkl配置、角量子数、质量 m 与耦合 Ze²"""

    config: DunklConfig
    ang: AngularState
    m: float = 1.0
    ze2: float = 1.0
    strict_coupling: bool = True

    def __post_init__(self):
        if not self.m > 0:
            raise InvalidParameter(f"质量 m={self.m} 必须为正")
        if not self.ze2 >= 0:
            raise InvalidParameter(f"耦合 Ze²={self.ze2} 不能为负")
        validate(self.config, self.ang, strict_coupling=self.strict_coupling)

    @property
    def c(self) -> float:
        return self.config.d - 1 + 2.0 * mu_sum(self.config)

    def to_dict(self) -> dict:
        return {**self.config.to_dict(), **self.ang.to_dict(), 'm': self.m, 'ze2': self.ze2}


@dataclass(frozen=True)
class BoundState:
    n: int
    energy: float
    delta: float
    kappa_b: float
    branch: str = PRINTED


def _radicand(spec: CoulombSpec) -> float:
    """ϖ² + Σμ(Σμ+d-2) + (d/2-1)² - Z²e⁴"""
    config = spec.config
    total_mu = mu_sum(config)
    varpi2 = varpi_squared(config, spec.ang, strict_coupling=spec.strict_coupling)
    return (varpi2 + total_mu * (total_mu + config.d - 2)
            + (config.d / 2.0 - 1.0) ** 2 - spec.ze2 ** 2)


def _root(spec: CoulombSpec) -> float:
    radicand = _radicand(spec)
    if radicand < 0:
        raise SupercriticalCharge(
            f"束缚态条件不满足: ϖ² + Σμ(Σμ+d-2) + (d/2-1)² - Z²e⁴ = {radicand:.6g} < 0 "
            f"(Ze²={spec.ze2})"
        )
    return math.sqrt(radicand)


def constraint(spec: CoulombSpec) -> bool:
    """束缚态存在条件 (边界取等号算成立)"""
    return _radicand(spec) >= 0


def delta(spec: CoulombSpec) -> float:
    """指标指数 δ = 1 - (d+2Σμ)/2 + √(...)"""
    return 1.0 - (spec.config.d + 2.0 * mu_sum(spec.config)) / 2.0 + _root(spec)


def _check_level(n: int) -> int:
    if int(n) != n or n < 0:
        raise InvalidParameter(f"径向量子数 n={n} 必须为非负整数")
    return int(n)


def _energy_from_denominator(spec: CoulombSpec, denominator: float, n: int) -> float:
    if denominator == 0:
        raise DegenerateDenominator(f"能谱分母在 n={n} 处为零 (Ze²={spec.ze2})")
    return spec.m / math.sqrt(1.0 + spec.ze2 ** 2 / denominator)


def energy(spec: CoulombSpec, n: int) -> float:
    """
    束缚态能量 E_n = m{1 + Z²e⁴/(n - 1/2 - s)²}^{-1/2}

    Raises:
        SupercriticalCharge: 根号内为负
        DegenerateDenominator: n - 1/2 - s = 0
    """
    n = _check_level(n)
    root = _root(spec)
    return _energy_from_denominator(spec, (n - 0.5 - root) ** 2, n)


def energy_candidates(spec: CoulombSpec, n: int) -> Dict[str, float]:
    """两个解析候选: printed 分母 (n-1/2-s)², shifted 分母 (n+1/2+s)²"""
    n = _check_level(n)
    root = _root(spec)
    candidates = {SHIFTED: _energy_from_denominator(spec, (n + 0.5 + root) ** 2, n)}
    try:
        candidates[PRINTED] = _energy_from_denominator(spec, (n - 0.5 - root) ** 2, n)
    except DegenerateDenominator:
        candidates[PRINTED] = math.nan
    return candidates


def bound_state(spec: CoulombSpec, n: int, branch: str = PRINTED) -> BoundState:
    """
    束缚态 (E, δ, ϰ)

    Raises:
        NonConfining: Ze² = 0 时 ϰ = 0, 没有束缚态
    """
    if branch not in BRANCHES:
        raise InvalidParameter(f"未知的能量分支: {branch}")
    n = _check_level(n)
    value = energy(spec, n) if branch == PRINTED else energy_candidates(spec, n)[SHIFTED]
    kappa_b = math.sqrt(max(spec.m ** 2 - value ** 2, 0.0))
    if kappa_b <= 0:
        raise NonConfining(f"ϰ = √(m² - E²) = 0, Ze²={spec.ze2} 时没有束缚态")
    return BoundState(n=n, energy=value, delta=delta(spec), kappa_b=kappa_b, branch=branch)


def wavefunction(spec: CoulombSpec, n: int, r, branch: str = PRINTED):
    """
    未归一化径向函数 𝓡(r) = η^δ e^{-η/2} M(-n, 2δ+c; η), η = 2ϰr
    """
    state = bound_state(spec, n, branch)
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise InvalidParameter("半径 r 必须为正")
    eta = 2.0 * state.kappa_b * r_arr
    b = 2.0 * state.delta + spec.c
    flat = eta.reshape(-1)
    poly = np.array([kummer_m(-state.n, b, x).real for x in flat]).reshape(eta.shape)
    value = eta ** state.delta * np.exp(-eta / 2.0) * poly
    return float(value) if value.ndim == 0 else value


def _eta_max(spec: CoulombSpec, n: int, state: BoundState) -> float:
    return 4.0 * (2 * n + 2.0 * state.delta + spec.c) + 40.0


def normalization(spec: CoulombSpec, n: int, branch: str = PRINTED, tol: float = 1e-10) -> float:
    """
    归一化常数 𝒞, 使 𝒞² ∫ |𝓡|² r^{d-1+2Σμ} dr = 1
    """
    state = bound_state(spec, n, branch)
    b = 2.0 * state.delta + spec.c
    scale = (2.0 * state.kappa_b) ** (spec.c + 1.0)

    def integrand(eta: float) -> float:
        poly = kummer_m(-state.n, b, eta).real
        return eta ** (2.0 * state.delta + spec.c) * math.exp(-eta) * poly * poly

    integral, _ = endpoint_power_integrate(integrand, 0.0, _eta_max(spec, n, state),
                                           power_a=2.0 * state.delta + spec.c, power_b=0.0,
                                           tol=tol)
    return math.sqrt(scale / integral)


def node_count(spec: CoulombSpec, n: int, grid: Optional[Sequence[float]] = None,
               points: int = 2000, branch: str = PRINTED) -> int:
    """径向函数在 r 网格上的内部节点数"""
    if grid is None:
        state = bound_state(spec, n, branch)
        r_max = _eta_max(spec, n, state) / (2.0 * state.kappa_b)
        grid = np.linspace(r_max / points, r_max, points)
    return count_sign_changes(wavefunction(spec, n, grid, branch))
