"""
一维Dunkl算子
反射算子 R f(x) = f(-x) 与 Dunkl 导数 D f(x) = f'(x) + (μ/x)(f(x) - f(-x))
"""

import logging
from typing import Callable

from .errors import EvaluationAtOrigin

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[float], float]

STEP_FLOOR = 1e-4
STEP_SCALE = 1e-4


def reflect(f: ScalarFunction) -> ScalarFunction:
    """返回 g(x) = f(-x)"""

    def reflected(x: float) -> float:
        return f(-x)

    return reflected


def central_derivative(f: ScalarFunction, x: float) -> float:
    """四阶中心差分, 步长 h = max(1e-4, 1e-4·|x|)"""
    h = max(STEP_FLOOR, STEP_SCALE * abs(x))
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def dunkl_derivative(f: ScalarFunction, x: float, mu: float) -> float:
    """
    Dunkl导数 f'(x) + (μ/x)(f(x) - f(-x))

    Args:
        f: 实函数, 须在 ±x 处有定义
        x: 求值点 (≠ 0)
        mu: Dunkl参数

    Returns:
        D f(x)

    Raises:
        EvaluationAtOrigin: x = 0
    """
    if x == 0:
        raise EvaluationAtOrigin("Dunkl导数在 x=0 处需要取极限, 不直接求值")
    return central_derivative(f, x) + (mu / x) * (f(x) - f(-x))
