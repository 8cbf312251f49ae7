"""
散射态与对产生模块
Whittaker 指标、Bogoliubov 系数、对产生概率与粒子数密度、产生条件与临界电荷

所有 cosh 比值在对数空间计算:
    log cosh(y) = |y| + log(1 + e^{-2|y|}) - log 2
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .core import AngularState, DunklConfig, mu_sum, validate, varpi_squared
from .errors import (
    DimensionMismatch,
    DivergentDensity,
    GammaPole,
    InvalidParameter,
    NonPropagatingEnergy,
    PoleAtNonPositiveInteger,
    SubcriticalCharge,
)
from .specfun import log_gamma, whittaker_m

logger = logging.getLogger(__name__)

E2_INVERSE = 137.0
LOG_TWO = math.log(2.0)
# exp 的上溢阈值
LOG_OVERFLOW = 709.0


@dataclass(frozen=True)
class ScatterInput:
    """散射输入: |E| > m 时 κ = √(E² - m²) 为正实数"""

    config: DunklConfig
    ang: AngularState
    m: float
    ze2: float
    energy: float
    strict_coupling: bool = True

    def __post_init__(self):
        if not self.m > 0:
            raise InvalidParameter(f"质量 m={self.m} 必须为正")
        if not self.ze2 >= 0:
            raise InvalidParameter(f"耦合 Ze²={self.ze2} 不能为负")

    @property
    def kappa(self) -> float:
        if not abs(self.energy) > self.m:
            raise NonPropagatingEnergy(f"散射态要求 |E| > m, 收到 E={self.energy}, m={self.m}")
        return math.sqrt(self.energy ** 2 - self.m ** 2)

    @property
    def alpha_im(self) -> float:
        """x = E·Ze²/κ, α = -i·x"""
        return self.energy * self.ze2 / self.kappa


@dataclass(frozen=True)
class ScatterResult:
    vartheta: float
    beta_tilde: float
    alpha_im: float
    probability: float
    density: float

    def to_dict(self) -> dict:
        return {
            'vartheta': self.vartheta,
            'beta_tilde': self.beta_tilde,
            'alpha_im': self.alpha_im,
            'probability': self.probability,
            'density': self.density,
        }


@dataclass(frozen=True)
class BogoliubovCoefficients:
    """A, B 及其复对数; |A| 上溢时 a/b 为 None, 只保留对数"""

    log_a: complex
    log_b: complex
    a: Optional[complex]
    b: Optional[complex]
    branch: int

    @property
    def log_ratio_sq(self) -> float:
        """log |B/A|²"""
        return 2.0 * (self.log_b.real - self.log_a.real)

    @property
    def ratio_sq(self) -> float:
        return math.exp(self.log_ratio_sq)


def log_cosh(y: float) -> float:
    y = abs(y)
    return y + math.log1p(math.exp(-2.0 * y)) - LOG_TWO


def _softplus(t: float) -> float:
    """log(1 + e^t)"""
    if t > 0:
        return t + math.log1p(math.exp(-t))
    return math.log1p(math.exp(t))


def vartheta(config: DunklConfig) -> float:
    """ϑ = -(d - 1 + 2Σμ)/2"""
    if len(config.mu) != config.d:
        raise DimensionMismatch(f"μ 向量长度 {len(config.mu)} 与 d={config.d} 不符")
    return -(config.d - 1 + 2.0 * mu_sum(config)) / 2.0


def _threshold(config: DunklConfig, ang: AngularState, strict_coupling: bool) -> float:
    """ϖ² + ϑ(ϑ+1) + 1/4"""
    varpi2 = varpi_squared(config, ang, strict_coupling=strict_coupling)
    theta = vartheta(config)
    return varpi2 + theta * (theta + 1.0) + 0.25


def creation_condition(config: DunklConfig, ang: AngularState, ze2: float,
                       strict_coupling: bool = True) -> bool:
    """对产生条件 Z²e⁴ ≥ ϖ² + ϑ(ϑ+1) + 1/4"""
    return ze2 * ze2 >= _threshold(config, ang, strict_coupling)


def beta_tilde(config: DunklConfig, ang: AngularState, ze2: float,
               strict_coupling: bool = True) -> float:
    """
    β̃ = √(Z²e⁴ - ϖ² - ϑ(ϑ+1) - 1/4)

    Raises:
        SubcriticalCharge: 根号内为负
    """
    radicand = ze2 * ze2 - _threshold(config, ang, strict_coupling)
    if radicand < 0:
        raise SubcriticalCharge(
            f"对产生条件不满足: Z²e⁴ - ϖ² - ϑ(ϑ+1) - 1/4 = {radicand:.6g} < 0 (Ze²={ze2})"
        )
    return math.sqrt(radicand)


def threshold_ze2(config: DunklConfig, ang: AngularState, strict_coupling: bool = True) -> float:
    """产生阈值 Ze² = √(ϖ² + ϑ(ϑ+1) + 1/4)"""
    return math.sqrt(_threshold(config, ang, strict_coupling))


def critical_charge(config: DunklConfig, ang: AngularState, e2_inverse: float = E2_INVERSE,
                    strict_coupling: bool = True) -> float:
    """临界核电荷 Z_cr = (1/e²)·√(ϖ² + ϑ(ϑ+1) + 1/4)"""
    validate(config, ang, strict_coupling=strict_coupling)
    return e2_inverse * threshold_ze2(config, ang, strict_coupling)


def critical_charge_reduced(d: int, ell, e2_inverse: float = E2_INVERSE) -> float:
    """μ = 0 的简化形式 Z_cr = (1/e²)(ℓ + d/2 - 1), ℓ 为单个整数"""
    return e2_inverse * (float(ell) + d / 2.0 - 1.0)


def critical_charge_3d_reduced(ell, e2_inverse: float = E2_INVERSE) -> float:
    """三维 μ = 0: Z_cr = (1/e²)(ℓ + 1/2)"""
    return critical_charge_reduced(3, ell, e2_inverse)


def _safe_exp(value: complex) -> Optional[complex]:
    if value.real > LOG_OVERFLOW:
        return None
    return cmath.exp(value)


def bogoliubov(alpha_im: float, beta_tilde_value: float, branch: int = -1) -> BogoliubovCoefficients:
    """
    Bogoliubov 系数
        A = Γ(1+2β) e^{iπα} / Γ(1/2+β-α)
        B = Γ(1+2β) e^{iπ(α-β-1/2)} / Γ(1/2+β+α)
    α = -i·alpha_im, β = branch·i·β̃

    branch = -1 时 |B/A|² 等于对产生概率公式, branch = +1 时为其倒数。

    Raises:
        GammaPole: Γ 函数参数落在非正整数上
    """
    if branch not in (1, -1):
        raise InvalidParameter(f"β 分支必须为 ±1, 收到 {branch}")
    alpha = complex(0.0, -alpha_im)
    beta = complex(0.0, branch * beta_tilde_value)
    try:
        shared = log_gamma(1.0 + 2.0 * beta)
        log_a = shared + 1j * math.pi * alpha - log_gamma(0.5 + beta - alpha)
        log_b = shared + 1j * math.pi * (alpha - beta - 0.5) - log_gamma(0.5 + beta + alpha)
    except PoleAtNonPositiveInteger as exc:
        raise GammaPole(f"Bogoliubov 系数的 Γ 函数在极点上: {exc}") from exc
    return BogoliubovCoefficients(log_a=log_a, log_b=log_b,
                                  a=_safe_exp(log_a), b=_safe_exp(log_b), branch=branch)


def branch_report(alpha_im: float, beta_tilde_value: float, rel_tol: float = 1e-9) -> Dict[str, dict]:
    """
    两个 β 分支的 |B/A|²、归一化残差 |A|² - |B|² - 1 以及与概率公式的比较
    """
    printed = math.exp(log_probability(beta_tilde_value, alpha_im))
    report = {}
    for branch in (-1, 1):
        coefficients = bogoliubov(alpha_im, beta_tilde_value, branch)
        ratio = coefficients.ratio_sq
        try:
            abs_a_sq = math.exp(2.0 * coefficients.log_a.real)
            residual = abs_a_sq * (1.0 - ratio) - 1.0
        except OverflowError:
            residual = math.inf
        report['minus' if branch == -1 else 'plus'] = {
            'branch': branch,
            'ratio_sq': ratio,
            'normalization_residual': residual,
            'matches_probability': abs(ratio - printed) <= rel_tol * max(printed, 1e-300),
        }
    return report


def log_probability(beta_tilde_value: float, alpha_im: float) -> float:
    """log 𝒫 = -2πβ̃ + log cosh π(β̃+x) - log cosh π(β̃-x)"""
    b = beta_tilde_value
    x = alpha_im
    return -2.0 * math.pi * b + log_cosh(math.pi * (b + x)) - log_cosh(math.pi * (b - x))


def log_one_minus_probability(beta_tilde_value: float, alpha_im: float) -> float:
    """log(1 - 𝒫) = log(1 - e^{-4πβ̃}) - log(1 + e^{-2π(β̃-x)})"""
    b = beta_tilde_value
    if b <= 0:
        return -math.inf
    return math.log(-math.expm1(-4.0 * math.pi * b)) - _softplus(-2.0 * math.pi * (b - alpha_im))


def probability_from(beta_tilde_value: float, alpha_im: float) -> float:
    return math.exp(log_probability(beta_tilde_value, alpha_im))


def density_from(beta_tilde_value: float, alpha_im: float) -> float:
    """
    𝒩 = 𝒫/(1 - 𝒫)

    Raises:
        DivergentDensity: 𝒫 ≥ 1 (β̃ = 0)
    """
    log_rest = log_one_minus_probability(beta_tilde_value, alpha_im)
    if log_rest == -math.inf:
        raise DivergentDensity(f"β̃={beta_tilde_value} 时 𝒫 = 1, 粒子数密度发散")
    log_density = log_probability(beta_tilde_value, alpha_im) - log_rest
    if log_density > LOG_OVERFLOW:
        return math.inf
    return math.exp(log_density)


def pair_probability(scatter_input: ScatterInput) -> float:
    """
    对产生概率 𝒫 = [cosh π(β̃+x)/cosh π(β̃-x)]·e^{-2πβ̃}, x = EZe²/κ

    Raises:
        NonPropagatingEnergy: |E| ≤ m
        SubcriticalCharge: 产生条件不满足
    """
    x = scatter_input.alpha_im
    b = beta_tilde(scatter_input.config, scatter_input.ang, scatter_input.ze2,
                   scatter_input.strict_coupling)
    return probability_from(b, x)


def pair_density(scatter_input: ScatterInput) -> float:
    """粒子数密度 𝒩 = cosh π(β̃+x)/[e^{2πβ̃} cosh π(β̃-x) - cosh π(β̃+x)]"""
    x = scatter_input.alpha_im
    b = beta_tilde(scatter_input.config, scatter_input.ang, scatter_input.ze2,
                   scatter_input.strict_coupling)
    return density_from(b, x)


def whittaker_mode(scatter_input: ScatterInput, zeta: complex, branch: int = -1) -> complex:
    """入射模 Φ_in^+ = M_{α,β}(ζ), α = -i·x, β = branch·i·β̃"""
    x = scatter_input.alpha_im
    b = beta_tilde(scatter_input.config, scatter_input.ang, scatter_input.ze2,
                   scatter_input.strict_coupling)
    return whittaker_m(complex(0.0, -x), complex(0.0, branch * b), zeta)


def scatter(scatter_input: ScatterInput) -> ScatterResult:
    """一次求出 ϑ, β̃, x, 𝒫, 𝒩"""
    validate(scatter_input.config, scatter_input.ang,
             strict_coupling=scatter_input.strict_coupling)
    x = scatter_input.alpha_im
    b = beta_tilde(scatter_input.config, scatter_input.ang, scatter_input.ze2,
                   scatter_input.strict_coupling)
    return ScatterResult(
        vartheta=vartheta(scatter_input.config),
        beta_tilde=b,
        alpha_im=x,
        probability=probability_from(b, x),
        density=density_from(b, x),
    )


def probability_sweep(config: DunklConfig, ang: AngularState, m: float, energy: float,
                      ze2_values: Sequence[float], strict_coupling: bool = True) -> List[float]:
    """
    固定 E 扫描 Ze² 的 𝒫; 低于产生阈值的点记为 NaN
    """
    results = []
    for ze2 in ze2_values:
        scatter_input = ScatterInput(config, ang, m, ze2, energy, strict_coupling)
        if not creation_condition(config, ang, ze2, strict_coupling):
            results.append(math.nan)
            continue
        results.append(pair_probability(scatter_input))
    return results
