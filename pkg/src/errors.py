"""
异常定义模块
所有物理模块抛出的错误都从这里导入

两个分支:
- DKGValidationError: 参数/量子数不合法 (命令行退出码 1)
- DKGNumericalError: 数值计算失败 (命令行退出码 2)
"""


class DKGError(Exception):
    """工具包异常基类"""

    exit_code = 2


class DKGValidationError(DKGError, ValueError):
    """输入参数不满足约束"""

    exit_code = 1


class DKGNumericalError(DKGError, ArithmeticError):
    """数值计算无法完成"""

    exit_code = 2


# ---- 参数验证类错误 ----

class DimensionMismatch(DKGValidationError):
    """向量长度与维数 d 不一致"""


class ParityCoupling(DKGValidationError):
    """角量子数 ℓ 与宇称 s 的耦合规则被违反"""


class MuOutOfRange(DKGValidationError):
    """Dunkl参数 μ_j ≤ -1/2"""


class IndexOutOfRange(DKGValidationError):
    """分离常数/角函数下标越界"""


class NegativeDegree(DKGValidationError):
    """Jacobi多项式次数为负或非整数"""


class EvaluationAtOrigin(DKGValidationError):
    """Dunkl导数在 x=0 处求值"""


class UnknownFigure(DKGValidationError):
    """未知的图编号"""


class InvalidParameter(DKGValidationError):
    """物理参数不合法 (m ≤ 0, ω ≤ 0, Ze² < 0 等)"""


# ---- 数值类错误 ----

class PoleAtNonPositiveInteger(DKGNumericalError):
    """Γ(z) 在非正整数处有极点"""


class ParameterPole(DKGNumericalError):
    """Kummer/Whittaker 参数 b 为非正整数"""


class NonConvergence(DKGNumericalError):
    """级数不收敛或超出支持的范围"""


class BranchCutInput(DKGNumericalError):
    """输入位于主值分支割线 (负实轴) 上"""


class ImaginaryEnergy(DKGNumericalError):
    """能量根号内为负"""


class SupercriticalCharge(DKGNumericalError):
    """束缚态存在条件不满足 (Z²e⁴ 过大)"""


class DegenerateDenominator(DKGNumericalError):
    """能量公式分母为零"""


class SubcriticalCharge(DKGNumericalError):
    """对产生条件不满足 (β̃ 根号内为负)"""


class NonPropagatingEnergy(DKGNumericalError):
    """散射态要求 |E| > m"""


class DivergentDensity(DKGNumericalError):
    """粒子数密度分母 ≤ 0 (𝒫 ≥ 1)"""


class GammaPole(DKGNumericalError):
    """Bogoliubov系数中的 Γ 函数落在极点"""


class GridTooCoarse(DKGNumericalError):
    """网格过粗, 积分自估误差超限"""


class NonConfining(DKGNumericalError):
    """径向问题没有束缚谱"""


class BisectionBracketFailure(DKGNumericalError):
    """二分法区间内找不到本征值"""


class MaxDepthExceeded(DKGNumericalError):
    """自适应积分递归深度超限"""
