"""
特殊函数模块
复 log-Gamma、Kummer 合流超几何函数 M、Jacobi 多项式、Whittaker M 函数

全部为纯函数, 不依赖配置, 线程安全。
"""

import cmath
import logging
import math
from typing import Union

import numpy as np

from .errors import (
    BranchCutInput,
    NegativeDegree,
    NonConvergence,
    ParameterPole,
    PoleAtNonPositiveInteger,
)

logger = logging.getLogger(__name__)

ComplexValue = complex
ComplexLike = Union[int, float, complex]

# Lanczos 近似 (g=7, n=9), Re z ≥ 1/2 时相对误差约 1e-15
LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
LOG_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)

KUMMER_REL_TOL = 1e-17
KUMMER_MAX_TERMS = 5000
KUMMER_MAX_ABS_Z = 50.0
# 连续满足收敛判据的项数
KUMMER_STABLE_TERMS = 3


def _non_positive_integer(value: complex) -> bool:
    return value.imag == 0 and value.real <= 0 and float(value.real).is_integer()


def log_gamma(z: ComplexLike) -> ComplexValue:
    """
    复 log Γ(z)

    Re z ≥ 1/2 使用 Lanczos 近似, Re z < 1/2 用反射公式
    log Γ(z) = log π - log sin(πz) - log Γ(1-z)

    Args:
        z: 复数自变量

    Returns:
        log Γ(z) (复数)

    Raises:
        PoleAtNonPositiveInteger: z 为非正整数
    """
    z = complex(z)
    if _non_positive_integer(z):
        raise PoleAtNonPositiveInteger(f"Γ(z) 在 z={z.real:g} 处有极点")

    if z.real < 0.5:
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - log_gamma(1.0 - z)

    shifted = z - 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for index in range(1, len(LANCZOS_COEFFICIENTS)):
        series += LANCZOS_COEFFICIENTS[index] / (shifted + index)
    t = shifted + LANCZOS_G + 0.5
    return LOG_SQRT_TWO_PI + (shifted + 0.5) * cmath.log(t) - t + cmath.log(series)


def gamma(z: ComplexLike) -> ComplexValue:
    """Γ(z) = exp(log Γ(z))"""
    return cmath.exp(log_gamma(z))


def kummer_m(a: ComplexLike, b: ComplexLike, z: ComplexLike,
             rel_tol: float = KUMMER_REL_TOL,
             max_terms: int = KUMMER_MAX_TERMS,
             max_abs_z: float = KUMMER_MAX_ABS_Z) -> ComplexValue:
    """
    Kummer 合流超几何函数 M(a, b; z) = Σ (a)_k/(b)_k z^k/k!

    a 为非正整数 -n 时级数截断, 返回精确的 n 次多项式 (对任意 z)。
    非多项式情形且 Re z < 0 时使用 Kummer 变换 M(a,b,z) = e^z M(b-a,b,-z)。

    Raises:
        ParameterPole: b 为非正整数 (多项式且 n ≤ -b 时除外)
        NonConvergence: 非多项式情形 |z| 超出支持范围, 或项数超限
    """
    a = complex(a)
    b = complex(b)
    z = complex(z)

    polynomial = _non_positive_integer(a)
    degree = int(-a.real) if polynomial else None

    if _non_positive_integer(b):
        if not (polynomial and degree <= int(-b.real)):
            raise ParameterPole(f"M(a,b;z) 的参数 b={b.real:g} 为非正整数")

    if z == 0:
        return complex(1.0)

    if polynomial:
        return _kummer_polynomial(a, b, z, degree)

    if abs(z) > max_abs_z:
        raise NonConvergence(f"M(a,b;z) 级数只支持 |z| ≤ {max_abs_z:g}, 收到 |z|={abs(z):.6g}")

    if z.real < 0:
        return cmath.exp(z) * kummer_m(b - a, b, -z, rel_tol, max_terms, max_abs_z)

    term = complex(1.0)
    total = complex(1.0)
    largest = 1.0
    stable = 0
    for k in range(max_terms):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        largest = max(largest, abs(term))
        if abs(term) < rel_tol * abs(total):
            stable += 1
            if stable >= KUMMER_STABLE_TERMS:
                break
        else:
            stable = 0
    else:
        raise NonConvergence(f"M({a}, {b}; {z}) 在 {max_terms} 项内未收敛")

    if total != 0 and largest / abs(total) > 1e8:
        logger.debug(f"Kummer级数抵消严重: max|term|/|M| = {largest / abs(total):.3e} (a={a}, b={b}, z={z})")
    return total


def _kummer_polynomial(a: complex, b: complex, z: complex, degree: int) -> complex:
    term = complex(1.0)
    total = complex(1.0)
    for k in range(degree):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
    return total


def jacobi_p(n: int, alpha: float, beta: float, x):
    """
    Jacobi 多项式 P_n^{(α,β)}(x), 三项递推

    x 可以是标量或 numpy 数组。递推分母为零时 (只在 α+β ≤ -2 附近出现)
    改用显式求和公式。

    Args:
        n: 次数 (≥ 0)
        alpha: α
        beta: β
        x: 自变量

    Returns:
        与 x 同形状的多项式值
    """
    if int(n) != n or n < 0:
        raise NegativeDegree(f"Jacobi 多项式次数必须为非负整数, 收到 n={n}")
    n = int(n)
    x_arr = np.asarray(x, dtype=float)
    if n == 0:
        result = np.ones_like(x_arr)
    elif n == 1:
        result = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x_arr)
    else:
        result = _jacobi_recurrence(n, alpha, beta, x_arr)
        if result is None:
            result = _jacobi_explicit(n, alpha, beta, x_arr)
    if result.ndim == 0:
        return float(result)
    return result


def _jacobi_recurrence(n: int, alpha: float, beta: float, x: np.ndarray):
    apb = alpha + beta
    p_prev = np.ones_like(x)
    p_curr = 0.5 * (alpha - beta + (apb + 2.0) * x)
    for k in range(2, n + 1):
        a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        if a1 == 0.0:
            return None
        a2 = (2.0 * k + apb - 1.0) * (alpha * alpha - beta * beta)
        a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb)
        p_next = ((a2 + a3 * x) * p_curr - a4 * p_prev) / a1
        p_prev, p_curr = p_curr, p_next
    return p_curr


def _generalized_binomial(y: float, k: int) -> float:
    value = 1.0
    for i in range(k):
        value *= (y - i) / (i + 1)
    return value


def _jacobi_explicit(n: int, alpha: float, beta: float, x: np.ndarray) -> np.ndarray:
    half_minus = (x - 1.0) / 2.0
    half_plus = (x + 1.0) / 2.0
    total = np.zeros_like(x)
    for s in range(n + 1):
        coeff = _generalized_binomial(n + alpha, n - s) * _generalized_binomial(n + beta, s)
        total = total + coeff * half_minus ** s * half_plus ** (n - s)
    return total


def whittaker_m(alpha: ComplexLike, beta: ComplexLike, z: ComplexLike) -> ComplexValue:
    """
    Whittaker 函数 M_{α,β}(z) = z^{β+1/2} e^{-z/2} M(β-α+1/2, 1+2β; z)

    z^{β+1/2} 取主值分支。

    Raises:
        ParameterPole: 1+2β 为非正整数
        BranchCutInput: z 在负实轴上
    """
    alpha = complex(alpha)
    beta = complex(beta)
    z = complex(z)

    if _non_positive_integer(1.0 + 2.0 * beta):
        raise ParameterPole(f"Whittaker M 的参数 1+2β={1.0 + 2.0 * beta} 为非正整数")
    if z.imag == 0 and z.real < 0:
        raise BranchCutInput(f"z={z.real:g} 位于主值分支割线 (负实轴) 上")

    if z == 0:
        if (beta + 0.5).real > 0:
            return complex(0.0)
        raise BranchCutInput("z=0 且 Re(β+1/2) ≤ 0, z^{β+1/2} 无定义")

    prefactor = cmath.exp((beta + 0.5) * cmath.log(z) - z / 2.0)
    return prefactor * kummer_m(beta - alpha + 0.5, 1.0 + 2.0 * beta, z)
