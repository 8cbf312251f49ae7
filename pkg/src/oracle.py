"""
数值验证模块
径向常微分方程的有限差分本征求解、自适应 Gauss-Legendre 积分与高精度参考级数

与解析公式完全独立: 只使用分离常数 (core) 构造径向方程, 不引用能谱公式。
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import AngularState, DunklConfig, mu_parity_sum, mu_sum, varpi_squared
from .errors import (
    BisectionBracketFailure,
    InvalidParameter,
    MaxDepthExceeded,
    NonConfining,
    NonConvergence,
)

logger = logging.getLogger(__name__)

MIN_GRID_POINTS = 500
GAUSS_LEGENDRE_ORDER = 16


@dataclass(frozen=True)
class RadialProblem:
    """
    径向方程 𝓡'' + (c/r)𝓡' + [E² + constant + quadratic·r² + inverse_r/r - inverse_square/r²]𝓡 = 0

    Coulomb 问题中 inverse_r = 2E·Ze² 随试探能量变化, 由 ze2 字段给出。
    """

    c: float
    inverse_square: float
    inverse_r: float = 0.0
    quadratic: float = 0.0
    constant: float = 0.0
    mass: float = 1.0
    ze2: float = 0.0
    r_max: float = 12.0
    points: int = 4000

    def __post_init__(self):
        for name in ('c', 'inverse_square', 'inverse_r', 'quadratic', 'constant', 'mass', 'ze2'):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameter(f"径向问题系数 {name} 不是有限值")
        if self.points < MIN_GRID_POINTS:
            raise InvalidParameter(f"网格点数 {self.points} 小于 {MIN_GRID_POINTS}")
        if self.r_max <= 0:
            raise InvalidParameter(f"r_max={self.r_max} 必须为正")

    @property
    def is_coulomb(self) -> bool:
        return self.ze2 > 0

    @property
    def step(self) -> float:
        return self.r_max / self.points

    def with_grid(self, r_max: float = None, points: int = None) -> 'RadialProblem':
        r_max = self.r_max if r_max is None else r_max
        points = self.points if points is None else points
        return replace(self, r_max=r_max, points=points)

    @classmethod
    def oscillator(cls, config: DunklConfig, ang: AngularState, m: float, omega: float,
                   r_max: float = 12.0, points: int = 4000,
                   strict_coupling: bool = True) -> 'RadialProblem':
        """DKG 振子径向方程, r_max 以 1/√(mω) 为单位"""
        varpi2 = varpi_squared(config, ang, strict_coupling=strict_coupling)
        scaled_r_max = r_max / math.sqrt(m * omega)
        return cls(
            c=config.d - 1 + 2 * mu_sum(config),
            inverse_square=varpi2,
            quadratic=-(m * omega) ** 2,
            constant=-m * m + 2 * m * omega * (mu_parity_sum(config) + config.d / 2.0),
            mass=m,
            r_max=scaled_r_max,
            points=points,
        )

    @classmethod
    def coulomb(cls, config: DunklConfig, ang: AngularState, m: float, ze2: float,
                r_max: float = 400.0, points: int = 4000,
                strict_coupling: bool = True) -> 'RadialProblem':
        """Dunkl-Coulomb 径向方程 (E + Ze²/r)² - m² - ϖ²/r²"""
        varpi2 = varpi_squared(config, ang, strict_coupling=strict_coupling)
        return cls(
            c=config.d - 1 + 2 * mu_sum(config),
            inverse_square=varpi2 - ze2 * ze2,
            constant=-m * m,
            mass=m,
            ze2=ze2,
            r_max=r_max,
            points=points,
        )


@dataclass(frozen=True)
class SymmetrizedProblem:
    """u = r^{c/2}𝓡 满足 u'' + [E² + constant + quadratic·r² + inverse_r/r - kappa_eff/r²]u = 0"""

    kappa_eff: float
    inverse_r: float
    quadratic: float
    constant: float
    mass: float
    ze2: float
    r_max: float
    points: int

    @property
    def indicial_exponent(self) -> float:
        """u ~ r^q, q(q-1) = kappa_eff 的较大根"""
        return 0.5 + math.sqrt(max(self.kappa_eff + 0.25, 0.0))


def symmetrize(problem: RadialProblem) -> SymmetrizedProblem:
    """消去一阶导数项: κ_eff = inverse_square + (c/2)(c/2 - 1)"""
    half_c = problem.c / 2.0
    return SymmetrizedProblem(
        kappa_eff=problem.inverse_square + half_c * (half_c - 1.0),
        inverse_r=problem.inverse_r,
        quadratic=problem.quadratic,
        constant=problem.constant,
        mass=problem.mass,
        ze2=problem.ze2,
        r_max=problem.r_max,
        points=problem.points,
    )


def _tridiagonal(sym: SymmetrizedProblem, energy: Optional[float] = None):
    """二阶中心差分, r_i = i·h (i=1..N-1), u(0)=u(r_max)=0"""
    h = sym.r_max / sym.points
    r = h * np.arange(1, sym.points)
    inverse_r = 2.0 * energy * sym.ze2 if energy is not None else sym.inverse_r
    potential = sym.kappa_eff / r ** 2 - sym.quadratic * r ** 2 - inverse_r / r
    diagonal = 2.0 / h ** 2 + potential
    off_diagonal = np.full(sym.points - 2, -1.0 / h ** 2)
    return r, diagonal, off_diagonal


def _count_below(diagonal: np.ndarray, off_diagonal: np.ndarray, target: float) -> int:
    """三对角矩阵小于 target 的本征值个数"""
    lower = float(np.min(diagonal)) - 2.0 * float(np.max(np.abs(off_diagonal))) - 1.0
    if target <= lower:
        return 0
    values = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                              select='v', select_range=(lower, target))
    return int(len(values))


def count_sign_changes(values, rel_floor: float = 1e-10) -> int:
    """符号变化次数, 忽略绝对值低于 rel_floor·max|v| 的样本"""
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if scale == 0.0:
        return 0
    significant = values[np.abs(values) > rel_floor * scale]
    return int(np.count_nonzero(np.diff(np.sign(significant)) != 0))


def gauss_legendre_integrate(f: Callable, a: float, b: float, tol: float = 1e-10,
                             order: int = GAUSS_LEGENDRE_ORDER, max_depth: int = 40,
                             vectorized: bool = False) -> Tuple[float, float]:
    """
    自适应复合 Gauss-Legendre 积分

    每个区间用 order 点求积, 与两个半区间之和比较作为误差估计,
    超出按长度分配的容差时二分。

    Args:
        f: 被积函数
        a, b: 积分区间
        tol: 绝对误差容限
        order: 每段的 Gauss 点数
        max_depth: 最大二分深度
        vectorized: f 是否接受 numpy 数组

    Returns:
        (积分值, 误差估计)

    Raises:
        MaxDepthExceeded: 二分深度超过 max_depth
    """
    if a == b:
        return 0.0, 0.0
    nodes, weights = np.polynomial.legendre.leggauss(order)
    length = b - a

    def panel(lo: float, hi: float) -> float:
        half = 0.5 * (hi - lo)
        xs = 0.5 * (hi + lo) + half * nodes
        if vectorized:
            values = np.asarray(f(xs), dtype=float)
        else:
            values = np.array([f(float(x)) for x in xs], dtype=float)
        return half * float(np.dot(weights, values))

    total = 0.0
    error = 0.0
    stack = [(a, b, panel(a, b), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = panel(lo, mid)
        right = panel(mid, hi)
        estimate = abs(left + right - whole)
        allowed = tol * abs((hi - lo) / length)
        if estimate <= allowed or estimate <= 50 * np.finfo(float).eps * abs(left + right):
            total += left + right
            error += estimate
            continue
        if depth >= max_depth:
            raise MaxDepthExceeded(
                f"自适应积分在 [{lo:.6g}, {hi:.6g}] 上超过最大深度 {max_depth}"
            )
        stack.append((lo, mid, left, depth + 1))
        stack.append((mid, hi, right, depth + 1))
    return total, error


def endpoint_power_integrate(f: Callable, a: float, b: float, power_a: float, power_b: float,
                             tol: float = 1e-10, max_depth: int = 40) -> Tuple[float, float]:
    """
    两端带幂次奇异 (x-a)^{p}, (b-x)^{q} (p, q > -1) 的积分

    从中点切开, 每半段做 x = a + (m-a)·u^k, k = 1/(p+1) 的代换消去奇异性。
    """
    mid = 0.5 * (a + b)
    k_a = 1.0 / (power_a + 1.0) if power_a < 0 else 1.0
    k_b = 1.0 / (power_b + 1.0) if power_b < 0 else 1.0
    span = mid - a

    def left(u: float) -> float:
        return f(a + span * u ** k_a) * span * k_a * u ** (k_a - 1.0)

    def right(u: float) -> float:
        return f(b - span * u ** k_b) * span * k_b * u ** (k_b - 1.0)

    value_l, error_l = gauss_legendre_integrate(left, 0.0, 1.0, tol / 2, max_depth=max_depth)
    value_r, error_r = gauss_legendre_integrate(right, 0.0, 1.0, tol / 2, max_depth=max_depth)
    return value_l + value_r, error_l + error_r


def reference_series(kind: str, params: Tuple, z: complex,
                     max_terms: int = 10000) -> Tuple[complex, float]:
    """
    补偿求和的参考级数, 仅用于测试

    Args:
        kind: 'kummer' (params=(a, b)) 或 'jacobi' (params=(n, alpha, beta), z 为实数 x)
        params: 参数
        z: 自变量

    Returns:
        (值, 误差估计)

    Raises:
        NonConvergence: 级数在 max_terms 项内不收敛或 |z| 过大
    """
    if kind == 'kummer':
        return _reference_kummer(complex(params[0]), complex(params[1]), complex(z), max_terms)
    if kind == 'jacobi':
        n, alpha, beta = params
        return _reference_jacobi(int(n), float(alpha), float(beta), float(np.real(z)))
    raise InvalidParameter(f"未知的参考级数类型: {kind}")


def _reference_kummer(a: complex, b: complex, z: complex, max_terms: int) -> Tuple[complex, float]:
    polynomial = a.imag == 0 and a.real <= 0 and float(a.real).is_integer()
    if not polynomial and abs(z) > 50:
        raise NonConvergence(f"参考 Kummer 级数只支持 |z| ≤ 50, 收到 |z|={abs(z):.6g}")

    terms = [complex(1.0)]
    term = complex(1.0)
    partial = complex(1.0)
    stable = 0
    limit = int(-a.real) if polynomial else max_terms
    for k in range(limit):
        term *= (a + k) / (b + k) * z / (k + 1)
        terms.append(term)
        partial += term
        if polynomial:
            continue
        stable = stable + 1 if abs(term) < 1e-20 * abs(partial) else 0
        if stable >= 3:
            break
    else:
        if not polynomial:
            raise NonConvergence(f"参考 Kummer 级数在 {max_terms} 项内未收敛")

    real = math.fsum(t.real for t in terms)
    imag = math.fsum(t.imag for t in terms)
    magnitude = math.fsum(abs(t) for t in terms)
    error = abs(terms[-1]) + np.finfo(float).eps * magnitude
    return complex(real, imag), error


def _reference_jacobi(n: int, alpha: float, beta: float, x: float) -> Tuple[complex, float]:
    def binomial(y: float, k: int) -> float:
        value = 1.0
        for i in range(k):
            value *= (y - i) / (i + 1)
        return value

    terms = [
        binomial(n + alpha, n - s) * binomial(n + beta, s)
        * ((x - 1.0) / 2.0) ** s * ((x + 1.0) / 2.0) ** (n - s)
        for s in range(n + 1)
    ]
    error = np.finfo(float).eps * math.fsum(abs(t) for t in terms)
    return complex(math.fsum(terms)), error


class RadialOracle:
    """有限差分径向本征求解器"""

    def __init__(self, config: dict = None):
        """
        初始化求解器

        Args:
            config: 配置字典, 读取 oracle 与 numerics 段
        """
        config = config or {}
        oracle_cfg = config.get('oracle', {})
        numerics_cfg = config.get('numerics', {})

        self.grid_points = int(oracle_cfg.get('grid_points', 4000))
        self.richardson = bool(oracle_cfg.get('richardson', True))
        self.oscillator_r_max = float(oracle_cfg.get('oscillator_r_max', 12.0))
        bracket = oracle_cfg.get('coulomb_bracket', [0.01, 0.999])
        self.coulomb_bracket = (float(bracket[0]), float(bracket[1]))
        self.coulomb_r_max_initial = float(oracle_cfg.get('coulomb_r_max_initial', 400.0))
        self.coulomb_decay_lengths = float(oracle_cfg.get('coulomb_decay_lengths', 40.0))
        self.bisection_tol = float(oracle_cfg.get('bisection_tol', 1e-12))
        self.bisection_max_iter = int(oracle_cfg.get('bisection_max_iter', 200))

        self.quadrature_tol = float(numerics_cfg.get('quadrature_tol', 1e-10))
        self.quadrature_order = int(numerics_cfg.get('quadrature_order', GAUSS_LEGENDRE_ORDER))
        self.quadrature_max_depth = int(numerics_cfg.get('quadrature_max_depth', 40))

        logger.debug(f"径向求解器初始化: N={self.grid_points}, richardson={self.richardson}")

    # ---- 振子型 (E 线性出现) ----

    def _oscillator_values(self, problem: RadialProblem, k: int) -> np.ndarray:
        sym = symmetrize(problem)
        _, diagonal, off_diagonal = _tridiagonal(sym)
        values = eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True,
                                  select='i', select_range=(0, k - 1))
        # 本征值为 E², 返回 E² - m²
        return values - sym.constant - problem.mass ** 2

    def eigensolve(self, problem: RadialProblem, k: int = 1) -> List[float]:
        """
        最低 k 个本征值

        振子型问题返回谱参数 E² - m²; Coulomb 型问题返回二分求得的能量 E。
        网格 N 与 2N 上的结果做 Richardson 外推。

        Raises:
            NonConfining: 问题没有束缚谱
            BisectionBracketFailure: Coulomb 二分区间内找不到本征值
        """
        if k < 1:
            raise InvalidParameter(f"本征值个数 k={k} 必须 ≥ 1")
        if problem.is_coulomb:
            return [self.coulomb_energy(problem, n) for n in range(k)]
        if problem.quadratic >= 0:
            raise NonConfining("振子型问题要求 quadratic < 0 (势能在无穷远处增长)")

        coarse = self._oscillator_values(problem, k)
        if not self.richardson:
            return [float(v) for v in coarse]
        fine = self._oscillator_values(problem.with_grid(points=2 * problem.points), k)
        return [float(v) for v in (4.0 * fine - coarse) / 3.0]

    def oscillator_energies(self, config: DunklConfig, ang: AngularState, m: float,
                            omega: float, k: int = 1, strict_coupling: bool = True) -> List[float]:
        """振子正能量分支 E = √(m² + λ)"""
        problem = RadialProblem.oscillator(config, ang, m, omega,
                                           r_max=self.oscillator_r_max,
                                           points=self.grid_points,
                                           strict_coupling=strict_coupling)
        return [math.sqrt(m * m + value) for value in self.eigensolve(problem, k)]

    # ---- Coulomb 型 (E 非线性出现) ----

    def _bisect(self, sym: SymmetrizedProblem, n: int) -> float:
        m = sym.mass
        lo = self.coulomb_bracket[0] * m
        hi = self.coulomb_bracket[1] * m

        def count(energy: float) -> int:
            _, diagonal, off_diagonal = _tridiagonal(sym, energy)
            return _count_below(diagonal, off_diagonal, energy * energy + sym.constant)

        if count(lo) > n or count(hi) <= n:
            raise BisectionBracketFailure(
                f"能量区间 ({lo:.6g}, {hi:.6g}) 内找不到第 {n} 个束缚态 "
                f"(r_max={sym.r_max:.6g}, N={sym.points})"
            )

        for _ in range(self.bisection_max_iter):
            if hi - lo <= self.bisection_tol * m:
                break
            mid = 0.5 * (lo + hi)
            if count(mid) > n:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def _coulomb_box(self, problem: RadialProblem, n: int) -> float:
        """粗网格估计 ϰ, 确定盒子半径 r_max = (衰减长度数 + 4(n+q))/ϰ"""
        sym = symmetrize(problem)
        q = sym.indicial_exponent
        r_max = self.coulomb_r_max_initial
        coarse_points = max(MIN_GRID_POINTS, self.grid_points // 2)

        for _ in range(4):
            trial = symmetrize(problem.with_grid(r_max=r_max, points=coarse_points))
            try:
                energy = self._bisect(trial, n)
            except BisectionBracketFailure:
                r_max *= 4.0
                continue
            kappa = math.sqrt(max(problem.mass ** 2 - energy ** 2, 1e-300))
            wanted = (self.coulomb_decay_lengths + 4.0 * (n + q)) / kappa
            if wanted <= 1.05 * r_max:
                return wanted
            r_max = wanted
        return r_max

    def coulomb_energy(self, problem: RadialProblem, n: int = 0) -> float:
        """
        第 n 个 Coulomb 束缚态能量: 外层对 E 二分, 内层三对角 Sturm 计数

        Raises:
            NonConfining: κ_eff < -1/4 (坠落到中心)
            BisectionBracketFailure: 区间内无本征值
        """
        sym = symmetrize(problem)
        if sym.kappa_eff < -0.25:
            raise NonConfining(f"κ_eff={sym.kappa_eff:.6g} < -1/4, 没有束缚谱")

        r_max = self._coulomb_box(problem, n)
        boxed = problem.with_grid(r_max=r_max, points=self.grid_points)
        coarse = self._bisect(symmetrize(boxed), n)
        if not self.richardson:
            return coarse
        fine = self._bisect(symmetrize(boxed.with_grid(points=2 * boxed.points)), n)
        energy = (4.0 * fine - coarse) / 3.0
        logger.debug(f"Coulomb 本征值 n={n}: E_N={coarse:.12g}, E_2N={fine:.12g}, "
                     f"外推={energy:.12g} (r_max={r_max:.4g})")
        return energy

    def coulomb_energies(self, config: DunklConfig, ang: AngularState, m: float, ze2: float,
                         k: int = 1, strict_coupling: bool = True) -> List[float]:
        problem = RadialProblem.coulomb(config, ang, m, ze2,
                                        r_max=self.coulomb_r_max_initial,
                                        points=self.grid_points,
                                        strict_coupling=strict_coupling)
        return self.eigensolve(problem, k)

    # ---- 诊断 ----

    def grid_convergence(self, problem: RadialProblem, k: int = 1) -> dict:
        """
        N, 2N, 4N 三套网格的本征值与收敛比 (λ_N - λ_2N)/(λ_2N - λ_4N), 二阶格式应接近 4
        """
        if problem.is_coulomb:
            raise InvalidParameter("收敛比诊断只用于振子型问题")
        grids = [problem.points, 2 * problem.points, 4 * problem.points]
        values = [self._oscillator_values(problem.with_grid(points=p), k) for p in grids]
        ratios = []
        for index in range(k):
            numerator = values[0][index] - values[1][index]
            denominator = values[1][index] - values[2][index]
            ratio = float(numerator / denominator) if denominator != 0 else math.inf
            if not 3.0 <= ratio <= 5.0:
                logger.warning(f"Richardson 收敛比 {ratio:.4g} 超出 [3, 5] (第 {index} 个本征值)")
            ratios.append(ratio)
        return {
            'points': grids,
            'values': [[float(v) for v in row] for row in values],
            'ratios': ratios,
        }

    def eigenvector(self, problem: RadialProblem, k: int = 0) -> Tuple[np.ndarray, np.ndarray]:
        """振子型问题第 k 个本征向量 u(r_i)"""
        sym = symmetrize(problem)
        r, diagonal, off_diagonal = _tridiagonal(sym)
        _, vectors = eigh_tridiagonal(diagonal, off_diagonal, select='i', select_range=(k, k))
        u = vectors[:, 0]
        if u[np.argmax(np.abs(u))] < 0:
            u = -u
        return r, u

    def node_count(self, problem: RadialProblem, k: int = 0) -> int:
        """第 k 个本征向量的内部零点个数"""
        _, u = self.eigenvector(problem, k)
        return count_sign_changes(u)

    def local_exponent(self, problem: RadialProblem, k: int = 0) -> float:
        """
        原点附近 u ~ r^q 的拟合指数

        在节点 i0, 2i0, 4i0 上用 log u = q·log r + a + b·r² 三点拟合。
        """
        r, u = self.eigenvector(problem, k)
        i0 = max(8, problem.points // 40)
        picks = [i0 - 1, 2 * i0 - 1, 4 * i0 - 1]
        rs = r[picks]
        matrix = np.column_stack([np.log(rs), np.ones(3), rs ** 2])
        solution = np.linalg.solve(matrix, np.log(np.abs(u[picks])))
        return float(solution[0])

    # ---- 积分 ----

    def quadrature(self, f: Callable, a: float, b: float, vectorized: bool = False) -> float:
        """自适应 16 点 Gauss-Legendre 积分, 绝对误差估计 ≤ quadrature_tol"""
        value, _ = gauss_legendre_integrate(f, a, b, tol=self.quadrature_tol,
                                            order=self.quadrature_order,
                                            max_depth=self.quadrature_max_depth,
                                            vectorized=vectorized)
        return value

    @staticmethod
    def reference_series(kind: str, params: Tuple, z: complex) -> Tuple[complex, float]:
        return reference_series(kind, params, z)
