"""
核心模块
Dunkl配置、角量子数记录、宇称耦合校验以及各物理模块共用的分离常数

半整数角量子数统一以 2ℓ 的整数形式保存, 所有 L = Σℓ 的求和在有理数上精确完成,
只在最后一步转换为浮点数。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import DimensionMismatch, IndexOutOfRange, MuOutOfRange, ParityCoupling

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]

MU_LOWER_BOUND = -0.5


@dataclass(frozen=True)
class DunklConfig:
    """d 维 Dunkl 配置: 维数、Dunkl参数 μ_j 与反射宇称 s_j"""

    d: int
    mu: Tuple[float, ...]
    s: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'mu', tuple(float(m) for m in self.mu))
        object.__setattr__(self, 's', tuple(int(x) for x in self.s))

    @classmethod
    def uniform(cls, d: int, mu: float, s: int = 1) -> 'DunklConfig':
        """所有轴取相同 μ 与 s"""
        return cls(d=d, mu=(mu,) * d, s=(s,) * d)

    def with_parities(self, s: Sequence[int]) -> 'DunklConfig':
        return DunklConfig(d=self.d, mu=self.mu, s=tuple(s))

    def to_dict(self) -> dict:
        return {'d': self.d, 'mu': list(self.mu), 's': list(self.s)}


@dataclass(frozen=True)
class AngularState:
    """d-1 个角量子数, two_ell[j] = 2ℓ_{j+1}"""

    two_ell: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'two_ell', tuple(int(x) for x in self.two_ell))

    @classmethod
    def from_ells(cls, ells: Iterable[Number]) -> 'AngularState':
        """
        由 ℓ_j 构造 (允许整数、半整数浮点或 Fraction)

        Raises:
            ParityCoupling: ℓ_j 不是半整数的整数倍或为负
        """
        doubled = []
        for value in ells:
            twice = Fraction(value) * 2
            if twice.denominator != 1 or twice < 0:
                raise ParityCoupling(f"角量子数必须是非负整数或半整数, 收到 ℓ={value}")
            doubled.append(int(twice))
        return cls(two_ell=tuple(doubled))

    @classmethod
    def uniform(cls, d: int, ell: Number) -> 'AngularState':
        """所有 d-1 个角量子数取相同值 ℓ_i"""
        return cls.from_ells([ell] * (d - 1))

    def ell(self, j: int) -> Fraction:
        """第 j 个角量子数 ℓ_j (1 起始)"""
        return Fraction(self.two_ell[j - 1], 2)

    @property
    def ells(self) -> List[Fraction]:
        return [Fraction(t, 2) for t in self.two_ell]

    def to_dict(self) -> dict:
        return {'ell': [str(v) for v in self.ells]}


@dataclass(frozen=True)
class ParityIndicator:
    """e_j = (1 - s_j)/2"""

    e: Tuple[int, ...] = field(default_factory=tuple)

    def __getitem__(self, j: int) -> int:
        """1 起始下标"""
        return self.e[j - 1]


def parity_indicator(config: DunklConfig) -> ParityIndicator:
    return ParityIndicator(e=tuple((1 - s) // 2 for s in config.s))


def validate(config: DunklConfig, ang: AngularState, strict_coupling: bool = True) -> None:
    """
    校验配置与角量子数

    Args:
        config: Dunkl配置
        ang: 角量子数
        strict_coupling: False 时跳过 ℓ/s 耦合规则 (维数与 μ 范围仍然检查)

    Raises:
        DimensionMismatch: 向量长度与 d 不符, 或 d < 2
        MuOutOfRange: 某个 μ_j ≤ -1/2
        ParityCoupling: ℓ 与 s 的耦合规则被违反
    """
    d = config.d
    if d < 2:
        raise DimensionMismatch(f"维数 d 必须 ≥ 2, 收到 d={d}")
    if len(config.mu) != d:
        raise DimensionMismatch(f"μ 向量长度 {len(config.mu)} 与 d={d} 不符")
    if len(config.s) != d:
        raise DimensionMismatch(f"s 向量长度 {len(config.s)} 与 d={d} 不符")
    if len(ang.two_ell) != d - 1:
        raise DimensionMismatch(f"角量子数个数 {len(ang.two_ell)} 应为 d-1={d - 1}")

    for j, s in enumerate(config.s, 1):
        if s not in (1, -1):
            raise ParityCoupling(f"宇称 s_{j} 必须为 ±1, 收到 {s}")

    for j, mu in enumerate(config.mu, 1):
        if not mu > MU_LOWER_BOUND:
            raise MuOutOfRange(f"Dunkl参数 μ_{j}={mu} 必须大于 -1/2")

    for j, twice in enumerate(ang.two_ell, 1):
        if twice < 0:
            raise ParityCoupling(f"角量子数 ℓ_{j}={Fraction(twice, 2)} 为负")

    if not strict_coupling:
        return

    s = config.s
    two_ell_1 = ang.two_ell[0]
    if s[0] * s[1] == -1:
        if two_ell_1 % 2 != 1:
            raise ParityCoupling(
                f"s_1·s_2=-1 时 ℓ_1 必须为正半整数, 收到 ℓ_1={Fraction(two_ell_1, 2)}"
            )
    else:
        if two_ell_1 % 2 != 0:
            raise ParityCoupling(
                f"s_1·s_2=+1 时 ℓ_1 必须为整数, 收到 ℓ_1={Fraction(two_ell_1, 2)}"
            )
        if two_ell_1 == 0 and s[0] == -1:
            raise ParityCoupling("ℓ_1=0 只允许 s_1=s_2=+1")

    for j in range(2, d):
        twice = ang.two_ell[j - 1]
        s_next = s[j]
        if s_next == -1 and twice % 2 != 1:
            raise ParityCoupling(
                f"s_{j + 1}=-1 时 ℓ_{j} 必须为正半整数, 收到 ℓ_{j}={Fraction(twice, 2)}"
            )
        if s_next == 1 and twice % 2 != 0:
            raise ParityCoupling(
                f"s_{j + 1}=+1 时 ℓ_{j} 必须为整数, 收到 ℓ_{j}={Fraction(twice, 2)}"
            )


def total_l(ang: AngularState, upto: int = None) -> Fraction:
    """L = ℓ_1 + ... + ℓ_upto (默认全部), 精确有理数"""
    values = ang.two_ell if upto is None else ang.two_ell[:upto]
    return Fraction(sum(values), 2)


def mu_sum(config: DunklConfig, upto: int = None) -> float:
    """Σ μ_j (j ≤ upto)"""
    values = config.mu if upto is None else config.mu[:upto]
    return float(sum(values))


def mu_parity_sum(config: DunklConfig) -> float:
    """Σ μ_j s_j"""
    return float(sum(m * s for m, s in zip(config.mu, config.s)))


def varpi_squared(config: DunklConfig, ang: AngularState, strict_coupling: bool = True) -> float:
    """
    径向方程分离常数 ϖ² = 4L(L + Σμ + (d-2)/2)
    """
    validate(config, ang, strict_coupling=strict_coupling)
    big_l = total_l(ang)
    return float(4 * big_l) * (float(big_l) + mu_sum(config) + (config.d - 2) / 2.0)


def lambda_squared(k: int, config: DunklConfig, ang: AngularState,
                   strict_coupling: bool = True) -> float:
    """
    角方程分离常数 λ_k² = 4(ℓ_1+..+ℓ_k)(ℓ_1+..+ℓ_k + μ_1+..+μ_{k+1} + (k-1)/2)

    k = d-1 是递推的最后一步, 其值与 ϖ² 相同。

    Raises:
        IndexOutOfRange: k 不在 1..d-1
    """
    validate(config, ang, strict_coupling=strict_coupling)
    if not 1 <= k <= config.d - 1:
        raise IndexOutOfRange(f"λ_k² 的下标 k={k} 必须在 1..{config.d - 1} 之间 (d={config.d})")
    partial = total_l(ang, upto=k)
    return float(4 * partial) * (float(partial) + mu_sum(config, upto=k + 1) + (k - 1) / 2.0)


def separation_constants(config: DunklConfig, ang: AngularState,
                         strict_coupling: bool = True) -> List[float]:
    """完整分离常数链 [λ_1², ..., λ_{d-2}², ϖ²]"""
    chain = [lambda_squared(k, config, ang, strict_coupling) for k in range(1, config.d - 1)]
    chain.append(varpi_squared(config, ang, strict_coupling))
    return chain


def chain_constant(j: int, config: DunklConfig, ang: AngularState,
                   strict_coupling: bool = True) -> float:
    """
    第 j 个角方程的本征常数: j ≤ d-2 时为 λ_j², j = d-1 时为 ϖ², j = 0 时为 0
    """
    if j == 0:
        return 0.0
    return lambda_squared(j, config, ang, strict_coupling)
