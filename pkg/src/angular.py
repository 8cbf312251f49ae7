"""
角向本征函数模块
超球坐标下分离出的角函数 Θ_1 ... Θ_{d-1}, 反射宇称检查与本征方程残差

约定:
- Θ_1(θ) = cos^{e1}θ sin^{e2}θ P^{(μ2+e2-1/2, μ1+e1-1/2)}_{ℓ1-(e1+e2)/2}(cos 2θ), θ ∈ [0, 2π]
- Θ_j(θ) = cos^{e_{j+1}}θ sin^{2(ℓ1+..+ℓ_{j-1})}θ
           P^{((j-2)/2 + 2Σℓ_{<j} + Σμ_{≤j}, μ_{j+1}+e_{j+1}-1/2)}_{ℓj - e_{j+1}/2}(cos 2θ), θ ∈ [0, π]
- 反射: R_1 与 R_{j+1} (j ≥ 2) 作用为 θ → π-θ, R_2 作用为 θ_1 → -θ_1
- 归一化常数取 1, 需要时用 normalization 数值计算
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import AngularState, DunklConfig, chain_constant, mu_sum, total_l, validate
from .errors import IndexOutOfRange, InvalidParameter, NegativeDegree, ParityCoupling
from .oracle import endpoint_power_integrate
from .specfun import jacobi_p

logger = logging.getLogger(__name__)

FD_STEP = 1e-3
# 远离 sin θ = 0 与 cos θ = 0 的残差检查区间
RESIDUAL_MARGIN = 0.1


@dataclass
class AngularProfile:
    """角函数采样: j 为角变量序号, thetas 与 values 等长"""

    j: int
    thetas: np.ndarray
    values: np.ndarray


def _parity_bit(s: int) -> int:
    if s not in (1, -1):
        raise ParityCoupling(f"宇称必须为 ±1, 收到 {s}")
    return (1 - s) // 2


def _degree(value: Fraction, label: str) -> int:
    if value.denominator != 1 or value < 0:
        raise NegativeDegree(f"{label} 的 Jacobi 多项式次数 {value} 不是非负整数")
    return int(value)


def theta_1(config: DunklConfig, ell1, s1: int, s2: int, theta,
            strict_coupling: bool = True):
    """
    第一个角函数 Θ_1(θ)

    Args:
        config: Dunkl配置 (使用 μ_1, μ_2)
        ell1: ℓ_1 (整数或半整数)
        s1, s2: 反射宇称
        theta: 角度 (标量或数组)
        strict_coupling: 是否检查 ℓ_1 与 s_1, s_2 的耦合规则

    Raises:
        ParityCoupling: 耦合规则被违反
        NegativeDegree: 多项式次数不是非负整数
    """
    ell1 = Fraction(ell1)
    e1 = _parity_bit(s1)
    e2 = _parity_bit(s2)
    if strict_coupling:
        half_odd = (ell1 * 2).denominator == 1 and int(ell1 * 2) % 2 == 1
        if (s1 * s2 == -1) != half_odd:
            raise ParityCoupling(f"ℓ_1={ell1} 与宇称 s_1={s1}, s_2={s2} 不匹配")
        if ell1 == 0 and (s1, s2) != (1, 1):
            raise ParityCoupling("ℓ_1=0 只允许 s_1=s_2=+1")
    degree = _degree(ell1 - Fraction(e1 + e2, 2), "Θ_1")

    mu1, mu2 = config.mu[0], config.mu[1]
    theta = np.asarray(theta, dtype=float)
    value = (np.cos(theta) ** e1 * np.sin(theta) ** e2
             * jacobi_p(degree, mu2 + e2 - 0.5, mu1 + e1 - 0.5, np.cos(2.0 * theta)))
    return float(value) if value.ndim == 0 else value


def theta_j(config: DunklConfig, j: int, ang: AngularState, s_next: int, theta,
            strict_coupling: bool = True):
    """
    第 j (≥ 2) 个角函数 Θ_j(θ_j)

    Args:
        config: Dunkl配置
        j: 角变量序号, 2..d-1
        ang: 角量子数
        s_next: 宇称 s_{j+1}
        theta: 角度 (标量或数组)
        strict_coupling: 是否检查 ℓ_j 与 s_{j+1} 的耦合规则

    Raises:
        IndexOutOfRange: j 不在 2..d-1
        ParityCoupling, NegativeDegree
    """
    if not 2 <= j <= config.d - 1:
        raise IndexOutOfRange(f"Θ_j 的下标 j={j} 必须在 2..{config.d - 1} 之间")
    validate(config, ang, strict_coupling=False)

    e_next = _parity_bit(s_next)
    ell_j = ang.ell(j)
    if strict_coupling and ((ell_j * 2) % 2 == 1) != (e_next == 1):
        raise ParityCoupling(f"ℓ_{j}={ell_j} 与宇称 s_{j + 1}={s_next} 不匹配")
    degree = _degree(ell_j - Fraction(e_next, 2), f"Θ_{j}")

    lower = total_l(ang, upto=j - 1)
    alpha = (j - 2) / 2.0 + 2.0 * float(lower) + mu_sum(config, upto=j)
    beta = config.mu[j] + e_next - 0.5

    theta = np.asarray(theta, dtype=float)
    value = (np.cos(theta) ** e_next * np.sin(theta) ** float(2 * lower)
             * jacobi_p(degree, alpha, beta, np.cos(2.0 * theta)))
    return float(value) if value.ndim == 0 else value


def evaluate(config: DunklConfig, ang: AngularState, j: int, theta,
             strict_coupling: bool = True):
    """按配置中的宇称求 Θ_j(θ), j = 1..d-1"""
    if j == 1:
        return theta_1(config, ang.ell(1), config.s[0], config.s[1], theta, strict_coupling)
    return theta_j(config, j, ang, config.s[j], theta, strict_coupling)


def default_grid(j: int = 1, points: int = 201) -> np.ndarray:
    """[0, π] 均匀网格, 关于 π/2 对称; Θ_1 的 R_2 检查另取 [0, 2π] (关于 π 对称)"""
    return np.linspace(0.0, math.pi, points)


def sample(config: DunklConfig, ang: AngularState, j: int,
           thetas: Optional[Sequence[float]] = None,
           strict_coupling: bool = True) -> AngularProfile:
    """在给定角度上采样 Θ_j"""
    grid = default_grid(j) if thetas is None else np.asarray(thetas, dtype=float)
    values = np.asarray(evaluate(config, ang, j, grid, strict_coupling), dtype=float)
    return AngularProfile(j=j, thetas=grid, values=np.atleast_1d(values))


def check_parity(profile: AngularProfile, s: int, center: float = math.pi / 2) -> float:
    """
    反射宇称偏差 max|Θ(2c-θ) - s·Θ(θ)|

    center=π/2 对应 θ → π-θ; Θ_1 的 R_2 (θ → -θ) 取 center=0 或 center=π。

    Raises:
        InvalidParameter: 采样网格不关于 center 对称
    """
    thetas = profile.thetas
    if not np.allclose(2.0 * center - thetas[::-1], thetas, rtol=0.0, atol=1e-12):
        raise InvalidParameter(f"采样网格不关于 θ={center:.6g} 对称")
    return float(np.max(np.abs(profile.values[::-1] - s * profile.values)))


def _derivatives(func, theta: np.ndarray, h: float = FD_STEP):
    f_m2 = func(theta - 2 * h)
    f_m1 = func(theta - h)
    f_0 = func(theta)
    f_p1 = func(theta + h)
    f_p2 = func(theta + 2 * h)
    first = (f_m2 - 8 * f_m1 + 8 * f_p1 - f_p2) / (12 * h)
    second = (-f_m2 + 16 * f_m1 - 30 * f_0 + 16 * f_p1 - f_p2) / (12 * h * h)
    return f_0, first, second


def residual_grid(points: int = 200) -> np.ndarray:
    """[0.1, π-0.1] 去掉 π/2 两侧 0.1 的邻域 (tan θ 发散)"""
    half = points // 2
    left = np.linspace(RESIDUAL_MARGIN, math.pi / 2 - RESIDUAL_MARGIN, half)
    right = np.linspace(math.pi / 2 + RESIDUAL_MARGIN, math.pi - RESIDUAL_MARGIN, points - half)
    return np.concatenate([left, right])


def operator_residual(config: DunklConfig, ang: AngularState, j: int,
                      thetas: Optional[Sequence[float]] = None,
                      strict_coupling: bool = True) -> float:
    """
    角方程残差 max|𝒥_jΘ_j - λ_{j-1}²Θ_j/sin²θ + λ_j²Θ_j|

    导数用四阶中心差分, 反射项精确求值。λ_0 = 0, λ_{d-1}² = ϖ²。

    j = 1:  𝒥 = ∂² + 2(μ2 cotθ - μ1 tanθ)∂ - μ1(1-R_1)/cos²θ - μ2(1-R_2)/sin²θ
    j ≥ 2:  𝒥 = ∂² + [(j-1+2Σμ_{≤j}) cotθ - 2μ_{j+1} tanθ]∂ - μ_{j+1}(1-R_{j+1})/cos²θ
    """
    if not 1 <= j <= config.d - 1:
        raise IndexOutOfRange(f"角方程下标 j={j} 必须在 1..{config.d - 1} 之间")
    validate(config, ang, strict_coupling=strict_coupling)

    theta = residual_grid() if thetas is None else np.asarray(thetas, dtype=float)

    def func(x):
        return np.asarray(evaluate(config, ang, j, x, strict_coupling), dtype=float)

    value, first, second = _derivatives(func, theta)
    cos2 = np.cos(theta) ** 2
    sin2 = np.sin(theta) ** 2
    cot = np.cos(theta) / np.sin(theta)
    tan = np.sin(theta) / np.cos(theta)
    mirrored = func(math.pi - theta)

    if j == 1:
        mu1, mu2 = config.mu[0], config.mu[1]
        negated = func(-theta)
        applied = (second + 2.0 * (mu2 * cot - mu1 * tan) * first
                   - mu1 * (value - mirrored) / cos2
                   - mu2 * (value - negated) / sin2)
    else:
        mu_next = config.mu[j]
        drift = (j - 1 + 2.0 * mu_sum(config, upto=j)) * cot - 2.0 * mu_next * tan
        applied = (second + drift * first
                   - mu_next * (value - mirrored) / cos2
                   - chain_constant(j - 1, config, ang, strict_coupling) * value / sin2)

    residual = applied + chain_constant(j, config, ang, strict_coupling) * value
    return float(np.max(np.abs(residual)))


def hyperspherical_harmonic(config: DunklConfig, ang: AngularState, thetas: Sequence[float],
                            strict_coupling: bool = True) -> float:
    """角函数乘积 Θ_1(θ_1)·Θ_2(θ_2)···Θ_{d-1}(θ_{d-1})"""
    if len(thetas) != config.d - 1:
        raise IndexOutOfRange(f"需要 d-1={config.d - 1} 个角度, 收到 {len(thetas)}")
    validate(config, ang, strict_coupling=strict_coupling)
    product = 1.0
    for j, theta in enumerate(thetas, 1):
        product *= float(evaluate(config, ang, j, theta, strict_coupling))
    return product


def _weight_exponents(config: DunklConfig, j: int):
    """权函数 |sin θ|^a |cos θ|^b 的指数"""
    if j == 1:
        return 2.0 * config.mu[1], 2.0 * config.mu[0]
    return j - 1 + 2.0 * mu_sum(config, upto=j), 2.0 * config.mu[j]


def weighted_overlap(config: DunklConfig, j: int, f, g, tol: float = 1e-12) -> float:
    """
    ∫ f g |sin θ|^a |cos θ|^b dθ, j=1 在 [0, 2π] 上, j ≥ 2 在 [0, π] 上

    积分区间在 sin θ = 0 与 cos θ = 0 处切开, 每段两端做幂次代换。
    """
    power_sin, power_cos = _weight_exponents(config, j)

    def integrand(theta: float) -> float:
        weight = abs(math.sin(theta)) ** power_sin * abs(math.cos(theta)) ** power_cos
        return float(f(theta)) * float(g(theta)) * weight

    quarter = math.pi / 2
    segments = 4 if j == 1 else 2
    total = 0.0
    for index in range(segments):
        lo = index * quarter
        hi = lo + quarter
        # 偶数段从 sin=0 出发到 cos=0, 奇数段反之
        p_lo, p_hi = (power_sin, power_cos) if index % 2 == 0 else (power_cos, power_sin)
        value, _ = endpoint_power_integrate(integrand, lo, hi, p_lo, p_hi, tol=tol / segments)
        total += value
    return total


def normalization(config: DunklConfig, ang: AngularState, j: int,
                  strict_coupling: bool = True, tol: float = 1e-12) -> float:
    """
    Θ_j 的数值归一化常数 N, 使 N² ∫ |Θ_j|² w dθ = 1
    """
    def func(theta: float) -> float:
        return evaluate(config, ang, j, theta, strict_coupling)

    norm_sq = weighted_overlap(config, j, func, func, tol=tol)
    return 1.0 / math.sqrt(norm_sq)
