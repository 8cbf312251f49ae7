"""
DKG 振子模块
闭式能谱、非相对论极限、径向波函数与径向概率密度

径向变量 ρ = mω r²。径向方程:
    𝓡'' + (c/r)𝓡' + [E² - m² + 2mω(Σμ_j s_j + d/2) - m²ω²r² - ϖ²/r²]𝓡 = 0,  c = d-1+2Σμ
其正则解 𝓡 = ρ^L e^{-ρ/2} M(-n, b; ρ), b = 2L + d/2 + Σμ。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .core import AngularState, DunklConfig, mu_parity_sum, mu_sum, total_l, validate, varpi_squared
from .errors import GridTooCoarse, ImaginaryEnergy, InvalidParameter
from .oracle import count_sign_changes, endpoint_power_integrate
from .specfun import kummer_m

logger = logging.getLogger(__name__)

DEFAULT_PROFILE_POINTS = 2000
DEFAULT_PROFILE_TOL = 1e-6


@dataclass(frozen=True)
class OscillatorSpec:
    """振子参数: Dunkl配置、角量子数、质量 m 与频率 ω (自然单位)"""

    config: DunklConfig
    ang: AngularState
    m: float = 1.0
    omega: float = 1.0
    strict_coupling: bool = True

    def __post_init__(self):
        if not self.m > 0:
            raise InvalidParameter(f"质量 m={self.m} 必须为正")
        if not self.omega > 0:
            raise InvalidParameter(f"频率 ω={self.omega} 必须为正")
        validate(self.config, self.ang, strict_coupling=self.strict_coupling)

    @property
    def big_l(self) -> float:
        return float(total_l(self.ang))

    @property
    def b(self) -> float:
        """Kummer 参数 b = 2L + d/2 + Σμ"""
        return 2.0 * self.big_l + self.config.d / 2.0 + mu_sum(self.config)

    @property
    def mu_shift(self) -> float:
        """Σμ - Σμ_j s_j, 只有奇宇称轴贡献 2μ_j"""
        return mu_sum(self.config) - mu_parity_sum(self.config)

    def to_dict(self) -> dict:
        return {
            **self.config.to_dict(),
            **self.ang.to_dict(),
            'm': self.m,
            'omega': self.omega,
        }


@dataclass
class RadialProfile:
    """
    径向密度: grid 为 ρ 网格, values 为归一化后的 |𝓡(ρ)|²,
    probability 为乘上测度 ρ^{(d-2)/2+Σμ}/(2√(mω)) 后的径向概率密度
    """

    n: int
    grid: np.ndarray
    values: np.ndarray
    norm_constant: float
    probability: np.ndarray = field(default=None)


def _check_level(n: int) -> int:
    if int(n) != n or n < 0:
        raise InvalidParameter(f"径向量子数 n={n} 必须为非负整数")
    return int(n)


def _spectral(spec: OscillatorSpec, n: int) -> float:
    """E² - m² = 2mω[2(n+L) + Σμ - Σμ_j s_j]"""
    return 2.0 * spec.m * spec.omega * (2.0 * (n + spec.big_l) + spec.mu_shift)


def energy(spec: OscillatorSpec, n: int, branch: int = 1) -> float:
    """
    闭式能谱 E = ±√(2mω[2(n+L) + Σμ - Σμ_j s_j] + m²)

    Args:
        spec: 振子参数
        n: 径向量子数
        branch: +1 正能量, -1 负能量

    Raises:
        ImaginaryEnergy: 根号内为负
    """
    n = _check_level(n)
    if branch not in (1, -1):
        raise InvalidParameter(f"能量分支必须为 ±1, 收到 {branch}")
    radicand = _spectral(spec, n) + spec.m ** 2
    if radicand < 0:
        raise ImaginaryEnergy(f"E² = {radicand:.6g} < 0 (n={n}, μ={spec.config.mu})")
    return branch * math.sqrt(radicand)


def energy_nonrel(spec: OscillatorSpec, n: int) -> float:
    """非相对论能量 (不含静能) E_nr = ω[2(n+L) + Σμ - Σμ_j s_j]"""
    n = _check_level(n)
    return spec.omega * (2.0 * (n + spec.big_l) + spec.mu_shift)


def spectrum(spec: OscillatorSpec, n_values: Iterable[int], branch: int = 1) -> List[float]:
    return [energy(spec, n, branch) for n in n_values]


def radial_wavefunction(spec: OscillatorSpec, n: int, rho):
    """
    未归一化径向函数 𝓡(ρ) = ρ^L e^{-ρ/2} M(-n, b; ρ)

    Args:
        rho: ρ > 0, 标量或数组
    """
    n = _check_level(n)
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr <= 0):
        raise InvalidParameter("径向变量 ρ 必须为正")
    b = spec.b
    big_l = spec.big_l
    flat = rho_arr.reshape(-1)
    poly = np.array([kummer_m(-n, b, x).real for x in flat]).reshape(rho_arr.shape)
    value = rho_arr ** big_l * np.exp(-rho_arr / 2.0) * poly
    return float(value) if value.ndim == 0 else value


def radial_wavefunction_r(spec: OscillatorSpec, n: int, r):
    """以原始半径 r 表示的径向函数, ρ = mω r²"""
    r_arr = np.asarray(r, dtype=float)
    return radial_wavefunction(spec, n, spec.m * spec.omega * r_arr ** 2)


def radial_residual(spec: OscillatorSpec, n: int, rho_values: Sequence[float],
                    h: float = 1e-3) -> float:
    """
    径向方程的有限差分残差 (按 max|𝓡| 缩放), 在半径 r 上以四阶中心差分求导
    """
    n = _check_level(n)
    config = spec.config
    m, omega = spec.m, spec.omega
    c = config.d - 1 + 2.0 * mu_sum(config)
    varpi2 = varpi_squared(config, spec.ang, strict_coupling=spec.strict_coupling)
    shift = _spectral(spec, n) + 2.0 * m * omega * (mu_parity_sum(config) + config.d / 2.0)

    r = np.sqrt(np.asarray(rho_values, dtype=float) / (m * omega))

    def func(x):
        return radial_wavefunction_r(spec, n, x)

    f_m2, f_m1, f_0, f_p1, f_p2 = (func(r + k * h) for k in (-2, -1, 0, 1, 2))
    first = (f_m2 - 8 * f_m1 + 8 * f_p1 - f_p2) / (12 * h)
    second = (-f_m2 + 16 * f_m1 - 30 * f_0 + 16 * f_p1 - f_p2) / (12 * h * h)
    residual = second + (c / r) * first + (shift - (m * omega * r) ** 2 - varpi2 / r ** 2) * f_0
    return float(np.max(np.abs(residual)) / np.max(np.abs(f_0)))


def default_rho_max(spec: OscillatorSpec, n: int) -> float:
    """覆盖经典允许区与衰减尾部: ρ_max = 4(2n + b)"""
    return 4.0 * (2 * n + spec.b)


def density_profile(spec: OscillatorSpec, n: int, grid: Optional[Sequence[float]] = None,
                    points: int = DEFAULT_PROFILE_POINTS,
                    tol: float = DEFAULT_PROFILE_TOL) -> RadialProfile:
    """
    归一化径向密度 |𝓡|²

    归一化条件 ∫ |𝓡|² ρ^{(d-2)/2+Σμ} dρ /(2√(mω)) = 1 在网格支撑 (0, ρ_max] 上成立。

    Raises:
        GridTooCoarse: 积分自估误差超过 tol, 或网格分辨不出 n 个节点
    """
    n = _check_level(n)
    if grid is None:
        rho_max = default_rho_max(spec, n)
        grid_arr = np.linspace(rho_max / points, rho_max, points)
    else:
        grid_arr = np.asarray(grid, dtype=float)
        if grid_arr.size < 2 or np.any(grid_arr <= 0) or np.any(np.diff(grid_arr) <= 0):
            raise InvalidParameter("ρ 网格必须为正且严格递增")
        rho_max = float(grid_arr[-1])

    raw = radial_wavefunction(spec, n, grid_arr)
    nodes = count_sign_changes(raw)
    if nodes != n:
        raise GridTooCoarse(f"网格上找到 {nodes} 个节点, 应为 {n} (网格 {grid_arr.size} 点)")

    weight_power = (spec.config.d - 2) / 2.0 + mu_sum(spec.config)
    jacobian = 2.0 * math.sqrt(spec.m * spec.omega)

    def integrand(rho: float) -> float:
        return radial_wavefunction(spec, n, rho) ** 2 * rho ** weight_power / jacobian

    integral, error = endpoint_power_integrate(
        integrand, 0.0, rho_max, power_a=2.0 * spec.big_l + weight_power, power_b=0.0,
        tol=tol * 1e-3,
    )
    if integral <= 0 or error > tol * integral:
        raise GridTooCoarse(f"归一化积分自估误差 {error:.3e} 超过容限 {tol:.1e}")

    norm_constant = 1.0 / math.sqrt(integral)
    values = norm_constant ** 2 * raw ** 2
    probability = values * grid_arr ** weight_power / jacobian
    logger.debug(f"振子径向密度 n={n}: ρ_max={rho_max:.4g}, 𝒞={norm_constant:.6g}")
    return RadialProfile(n=n, grid=grid_arr, values=values,
                         norm_constant=norm_constant, probability=probability)


def peak_summary(profile: RadialProfile, weighted: bool = False) -> List[Tuple[float, float]]:
    """
    局部极大值列表 [(ρ, 高度)]

    Args:
        weighted: True 时在径向概率密度上找峰
    """
    values = profile.probability if weighted else profile.values
    peaks = []
    for i in range(1, len(values) - 1):
        if values[i] > values[i - 1] and values[i] >= values[i + 1]:
            peaks.append((float(profile.grid[i]), float(values[i])))
    return peaks
