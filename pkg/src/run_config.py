"""
运行配置模块
命令行参数与 JSON 运行配置的统一模型, 参数在执行前规范化并校验
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .core import AngularState, DunklConfig, validate
from .errors import DKGError, InvalidParameter, UnknownFigure

logger = logging.getLogger(__name__)

COMMANDS = (
    'osc-spectrum', 'osc-profile', 'coulomb-spectrum', 'coulomb-sweep',
    'pair-creation', 'critical-charge', 'verify', 'figure', 'table3',
)

CommandName = Literal[
    'osc-spectrum', 'osc-profile', 'coulomb-spectrum', 'coulomb-sweep',
    'pair-creation', 'critical-charge', 'verify', 'figure', 'table3',
]

# 每个命令输出的列, 顺序固定
COMMAND_COLUMNS: Dict[str, List[str]] = {
    'osc-spectrum': ['n', 'E', 'E_negative', 'E_nonrel'],
    'osc-profile': ['series', 'n', 'rho', 'density', 'probability'],
    'coulomb-spectrum': ['n', 'E', 'E_shifted', 'delta', 'kappa_b'],
    'coulomb-sweep': ['series', 'n', 'ze2', 'E', 'E_shifted'],
    'pair-creation': ['ze2', 'beta_tilde', 'x', 'P', 'N'],
    'critical-charge': ['d', 'ell', 'mu_sum', 'ze2_threshold', 'z_cr', 'z_cr_over_e2_inverse', 'z_cr_reduced'],
}

COLUMN_NOTES: Dict[str, str] = {
    'n': '径向量子数',
    'E': '能量 (Coulomb 为原式分母 (n-1/2-s)², 分母为零记 nan)',
    'E_negative': '振子负能量分支',
    'E_nonrel': '非相对论能量 (不含静能)',
    'E_shifted': 'Coulomb 能量, 分母 (n+1/2+s)²',
    'series': '曲线标签',
    'rho': '径向变量 ρ = mωr²',
    'density': '归一化 |𝓡|²',
    'probability': '径向概率密度 |𝓡|²ρ^{(d-2)/2+Σμ}/(2√(mω))',
    'delta': '指标指数 δ',
    'kappa_b': 'ϰ = √(m²-E²)',
    'ze2': '耦合 Ze²',
    'beta_tilde': 'β̃, 阈值以下为 nan',
    'x': 'x = E·Ze²/κ',
    'P': '对产生概率 𝒫',
    'N': '粒子数密度 𝒩, 恰在阈值上为 inf',
    'd': '维数',
    'ell': '各轴角量子数 ℓ_i',
    'mu_sum': 'Σμ',
    'ze2_threshold': '产生阈值 Ze²',
    'z_cr': '临界电荷 Z_cr',
    'z_cr_over_e2_inverse': 'Z_cr·e² (与临界电荷表同单位)',
    'z_cr_reduced': 'μ = 0 简化式 (ℓ + d/2 - 1)/e², 其余情形为 nan',
}

# 各命令的参数及默认值
COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    'osc-spectrum': {'d': 3, 'mu': '0', 's': '+', 'l': '1', 'n': '0..10', 'm': 1.0, 'omega': 1.0,
                     'strict_coupling': True},
    'osc-profile': {'d': 3, 'mu': '0', 's': '+', 'l': '1', 'n': '0', 'm': 1.0, 'omega': 1.0,
                    'points': 2000, 'strict_coupling': True},
    'coulomb-spectrum': {'d': 3, 'mu': '0', 's': '+', 'l': '1', 'n': '0..10', 'm': 1.0, 'ze2': '1',
                         'strict_coupling': True},
    'coulomb-sweep': {'d': 3, 'mu': '0', 's': '+', 'l': '1', 'n': '0', 'm': 1.0, 'ze2': '0.1..1:10',
                      'strict_coupling': True},
    'pair-creation': {'d': 3, 'mu': '0', 's': '+', 'l': '1', 'm': 1.0, 'energy': 2.0, 'ze2': '1..10:10',
                      'strict_coupling': True},
    'critical-charge': {'d': 3, 'mu': '0', 's': '+', 'l': '1', 'strict_coupling': True},
    'verify': {'categories': ''},
    'figure': {'figure': 'F1'},
    'table3': {},
}

# ---- 参数解析 ----

def _split(raw: Union[str, List[Any], Tuple[Any, ...], int, float]) -> List[str]:
    if isinstance(raw, (list, tuple)):
        return [str(item).strip() for item in raw]
    text = str(raw).strip()
    if not text:
        return []
    return [token.strip() for token in text.split(',')]


def broadcast(values: List[Any], size: int, label: str) -> List[Any]:
    """标量简写扩展到 size 个分量"""
    if len(values) == 1:
        return values * size
    if len(values) != size:
        raise InvalidParameter(f"{label} 需要 1 个或 {size} 个分量, 收到 {len(values)} 个")
    return values


def parse_parities(raw, size: int) -> List[int]:
    """'+'/'-' (或 ±1) 组成的逗号列表"""
    parities = []
    for token in _split(raw):
        if token in ('+', '+1', '1'):
            parities.append(1)
        elif token in ('-', '-1'):
            parities.append(-1)
        else:
            raise InvalidParameter(f"宇称只能写作 '+' 或 '-', 收到 {token!r}")
    return broadcast(parities, size, '宇称 s')


def parse_floats(raw, size: Optional[int] = None, label: str = '数值') -> List[float]:
    try:
        values = [float(token) for token in _split(raw)]
    except ValueError:
        raise InvalidParameter(f"{label} 必须是数字列表, 收到 {raw!r}") from None
    if not values:
        raise InvalidParameter(f"{label} 不能为空")
    return values if size is None else broadcast(values, size, label)


def parse_ells(raw, size: int) -> List[str]:
    """角量子数列表, 半整数写作 1/2 或 0.5, 规范化为分数字符串"""
    ells = []
    for token in _split(raw):
        try:
            ells.append(str(Fraction(token)))
        except (ValueError, ZeroDivisionError):
            raise InvalidParameter(f"角量子数必须是整数或半整数, 收到 {token!r}") from None
    return broadcast(ells, size, '角量子数 ℓ')


def parse_levels(raw) -> List[int]:
    """'0..10' (含端点) 或逗号列表"""
    if isinstance(raw, int):
        return [raw]
    if isinstance(raw, (list, tuple)):
        return [int(v) for v in raw]
    text = str(raw).strip()
    try:
        if '..' in text:
            lo, hi = text.split('..', 1)
            levels = list(range(int(lo), int(hi) + 1))
        else:
            levels = [int(token) for token in _split(text)]
    except ValueError:
        raise InvalidParameter(f"量子数范围格式应为 'a..b' 或逗号列表, 收到 {raw!r}") from None
    if not levels or min(levels) < 0:
        raise InvalidParameter(f"量子数必须是非负整数, 收到 {raw!r}")
    return levels


def parse_grid(raw, label: str = 'Ze²') -> List[float]:
    """'a..b:k' (k 个等距点, 含端点) 或逗号列表"""
    if isinstance(raw, (int, float)):
        return [float(raw)]
    if isinstance(raw, (list, tuple)):
        return [float(v) for v in raw]
    text = str(raw).strip()
    if '..' not in text:
        return parse_floats(text, label=label)
    try:
        span, _, count = text.partition(':')
        lo, hi = (float(v) for v in span.split('..', 1))
        count = int(count) if count else 10
    except ValueError:
        raise InvalidParameter(f"{label} 范围格式应为 'a..b:k', 收到 {raw!r}") from None
    if count < 1:
        raise InvalidParameter(f"{label} 范围点数必须 ≥ 1")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _as_bool(raw) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ('1', 'true', 'yes', 'on'):
        return True
    if text in ('0', 'false', 'no', 'off'):
        return False
    raise InvalidParameter(f"布尔参数取值无效: {raw!r}")


def normalize_parameters(command: str, raw: Dict[str, Any]) -> Dict[str, Any]:
    """
    补全默认值并把参数转换为规范形式 (列表、整数、浮点数)

    规范形式再次规范化结果不变, 因此导出的 JSON 配置可以原样重跑。
    """
    defaults = COMMAND_DEFAULTS[command]
    unknown = sorted(set(raw) - set(defaults))
    if unknown:
        raise InvalidParameter(f"命令 {command} 不接受参数: {', '.join(unknown)}")
    merged = {**defaults, **{k: v for k, v in raw.items() if v is not None}}
    params: Dict[str, Any] = {}

    if 'd' in merged:
        try:
            d = int(merged['d'])
        except (TypeError, ValueError):
            raise InvalidParameter(f"维数 d 必须是整数, 收到 {merged['d']!r}") from None
        if d < 2:
            raise InvalidParameter(f"维数 d 必须 ≥ 2, 收到 d={d}")
        params['d'] = d
        params['mu'] = parse_floats(merged['mu'], d, 'Dunkl参数 μ')
        params['s'] = parse_parities(merged['s'], d)
        params['l'] = parse_ells(merged['l'], d - 1)
    if 'n' in merged:
        params['n'] = parse_levels(merged['n'])
    for key in ('m', 'omega', 'energy'):
        if key in merged:
            params[key] = float(merged[key])
    if 'ze2' in merged:
        params['ze2'] = parse_grid(merged['ze2'])
    if 'points' in merged:
        params['points'] = int(merged['points'])
    if 'strict_coupling' in merged:
        params['strict_coupling'] = _as_bool(merged['strict_coupling'])
    if 'figure' in merged:
        from .figures import FIGURE_IDS
        figure = str(merged['figure']).upper()
        if figure not in FIGURE_IDS:
            raise UnknownFigure(f"未知的图编号 {merged['figure']}, 可选 {', '.join(FIGURE_IDS)}")
        params['figure'] = figure
    if 'categories' in merged:
        params['categories'] = [c for c in _split(merged['categories']) if c]
    return params


class RunConfig(BaseModel):
    """一次运行: 命令、规范化参数、输出路径与格式"""

    command: CommandName
    parameters: Dict[str, Any] = Field(default_factory=dict)
    output_path: Optional[str] = None
    format: Literal['csv', 'json'] = 'csv'

    @field_validator('format', mode='before')
    @classmethod
    def _lower_format(cls, value):
        return str(value).lower() if value is not None else 'csv'

    @model_validator(mode='after')
    def _normalize(self) -> 'RunConfig':
        self.parameters = normalize_parameters(self.command, self.parameters)
        if 'd' in self.parameters:
            config, ang = self.physics()
            validate(config, ang, strict_coupling=self.parameters.get('strict_coupling', True))
        return self

    def physics(self) -> Tuple[DunklConfig, AngularState]:
        """参数中的 Dunkl 配置与角量子数"""
        params = self.parameters
        config = DunklConfig(d=params['d'], mu=tuple(params['mu']), s=tuple(params['s']))
        ang = AngularState.from_ells(Fraction(v) for v in params['l'])
        return config, ang

    @property
    def columns(self) -> List[str]:
        return list(COMMAND_COLUMNS.get(self.command, []))

    def dump(self, path: Union[str, Path]) -> Path:
        """写出规范化后的 JSON 配置"""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.model_dump_json(indent=2) + '\n', encoding='utf-8')
        logger.info(f"运行配置已写出: {target}")
        return target

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'RunConfig':
        """读取 JSON 配置"""
        target = Path(path)
        if not target.exists():
            raise InvalidParameter(f"运行配置文件不存在: {target}")
        return _build(lambda: cls.model_validate_json(target.read_text(encoding='utf-8')))

    @classmethod
    def from_args(cls, command: str, values: Dict[str, Any], output_path: Optional[str] = None,
                  fmt: Optional[str] = None) -> 'RunConfig':
        """由命令行参数构造, 只保留该命令接受的键"""
        if command not in COMMAND_DEFAULTS:
            raise InvalidParameter(f"未知命令 {command}, 可选 {', '.join(COMMANDS)}")
        accepted = {k: v for k, v in values.items() if k in COMMAND_DEFAULTS[command] and v is not None}
        return _build(lambda: cls(command=command, parameters=accepted,
                                  output_path=output_path, format=fmt or 'csv'))


def _build(factory):
    """构造模型; 校验器里抛出的工具包异常原样抛出, 其余转为 InvalidParameter"""
    try:
        return factory()
    except ValidationError as exc:
        for error in exc.errors():
            original = (error.get('ctx') or {}).get('error')
            if isinstance(original, DKGError):
                raise original from None
        raise InvalidParameter(f"运行配置无效: {exc}") from None


def describe_columns() -> str:
    """--help 中的列说明"""
    from .figures import FIGURE_COLUMNS, TABLE3_COLUMNS

    lines = ['输出列:']
    for command, columns in COMMAND_COLUMNS.items():
        lines.append(f"  {command}: {', '.join(columns)}")
    for figure_id, columns in FIGURE_COLUMNS.items():
        lines.append(f"  figure {figure_id}: {', '.join(columns)}")
    lines.append(f"  table3: {', '.join(TABLE3_COLUMNS)}")
    lines.append('列含义:')
    for column, note in COLUMN_NOTES.items():
        lines.append(f"  {column}: {note}")
    return '\n'.join(lines)
