"""
数据集输出模块
CSV/JSON 两种格式, 文件头带元数据 (工具版本、时间戳、参数回显、单位说明)
"""

import csv
import io
import json
import logging
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .errors import InvalidParameter

logger = logging.getLogger(__name__)

TOOL_NAME = 'dkg-toolkit'
UNITS_NOTE = 'natural units, e²=1/137'
FORMATS = ('csv', 'json')


@dataclass
class Dataset:
    """表格数据: 列名、行与元数据"""

    name: str
    columns: List[str]
    rows: List[Sequence[Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise InvalidParameter(
                    f"数据集 {self.name}: 行长度 {len(row)} 与列数 {len(self.columns)} 不符"
                )

    def column(self, name: str) -> List[Any]:
        try:
            index = self.columns.index(name)
        except ValueError:
            raise InvalidParameter(f"数据集 {self.name} 没有列 {name}") from None
        return [row[index] for row in self.rows]

    def labels(self) -> List[str]:
        """series 列中出现的标签, 按首次出现排序"""
        seen: List[str] = []
        for label in self.column('series'):
            if label not in seen:
                seen.append(label)
        return seen

    def series(self, label: str) -> 'Dataset':
        """只保留某个 series 的行"""
        index = self.columns.index('series')
        rows = [row for row in self.rows if row[index] == label]
        return Dataset(name=f"{self.name}[{label}]", columns=list(self.columns),
                       rows=rows, metadata=dict(self.metadata))

    def xy(self, label: str, x: str = 'x', y: str = 'y'):
        part = self.series(label)
        return part.column(x), part.column(y)


def format_value(value: Any, digits: int = 12) -> str:
    """浮点数保留 digits 位有效数字, 布尔值写作 true/false"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return format(value, f'.{digits}g')
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if hasattr(value, 'item'):
        return _json_value(value.item())
    return value


def jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return _json_value(obj)


class DatasetWriter:
    """数据集写出器"""

    def __init__(self, config: dict = None, version: str = None):
        """
        初始化写出器

        Args:
            config: 配置字典, 读取 output 段; DKG_OUTPUT_DIR 覆盖输出目录
            version: 写入文件头的工具版本
        """
        config = config or {}
        output_cfg = config.get('output', {})
        self.output_dir = Path(os.getenv('DKG_OUTPUT_DIR', output_cfg.get('directory', 'output')))
        self.default_format = output_cfg.get('default_format', 'csv')
        self.float_digits = int(output_cfg.get('float_digits', 12))
        if version is None:
            from . import __version__
            version = __version__
        self.version = version

    def header(self, dataset: Dataset, timestamp: Optional[str] = None) -> Dict[str, Any]:
        """元数据头: 时间戳单独一项, 便于比较时剔除"""
        return {
            'tool': TOOL_NAME,
            'version': self.version,
            'dataset': dataset.name,
            'timestamp': timestamp or datetime.now(timezone.utc).isoformat(),
            'units': UNITS_NOTE,
            'parameters': jsonable(dataset.metadata),
        }

    def resolve_path(self, dataset: Dataset, path: Union[str, Path, None], fmt: str) -> Path:
        if path is None:
            return self.output_dir / f"{dataset.name}.{fmt}"
        return Path(path)

    def write(self, dataset: Dataset, path: Union[str, Path, None] = None,
              fmt: Optional[str] = None) -> Path:
        """
        写出数据集

        Args:
            dataset: 数据集
            path: 输出路径, 为空时写到 output 目录下的 <name>.<fmt>
            fmt: csv 或 json, 为空时按扩展名或配置默认值

        Returns:
            实际写出的路径
        """
        if fmt is None and path is not None and Path(path).suffix.lstrip('.') in FORMATS:
            fmt = Path(path).suffix.lstrip('.')
        fmt = (fmt or self.default_format).lower()
        if fmt not in FORMATS:
            raise InvalidParameter(f"不支持的输出格式: {fmt} (可选 {', '.join(FORMATS)})")

        target = self.resolve_path(dataset, path, fmt)
        target.parent.mkdir(parents=True, exist_ok=True)
        header = self.header(dataset)

        if fmt == 'csv':
            self._write_csv(dataset, target, header)
        else:
            self._write_json(dataset, target, header)

        logger.info(f"数据集 {dataset.name} 已写出: {target} ({len(dataset.rows)} 行)")
        return target

    def render_csv(self, dataset: Dataset, header: Dict[str, Any]) -> str:
        lines = [
            f"# tool: {header['tool']} {header['version']}",
            f"# dataset: {header['dataset']}",
            f"# timestamp: {header['timestamp']}",
            f"# units: {header['units']}",
            f"# parameters: {json.dumps(header['parameters'], ensure_ascii=False, sort_keys=True)}",
        ]
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(dataset.columns)
        for row in dataset.rows:
            writer.writerow([format_value(v, self.float_digits) for v in row])
        return '\n'.join(lines) + '\n' + buffer.getvalue()

    def _write_csv(self, dataset: Dataset, target: Path, header: Dict[str, Any]) -> None:
        with target.open('w', encoding='utf-8', newline='') as handle:
            handle.write(self.render_csv(dataset, header))

    def _write_json(self, dataset: Dataset, target: Path, header: Dict[str, Any]) -> None:
        payload = {
            'metadata': header,
            'columns': list(dataset.columns),
            'rows': [[_json_value(v) for v in row] for row in dataset.rows],
        }
        with target.open('w', encoding='utf-8', newline='\n') as handle:
            json.dump(payload, handle, ensure_ascii=False, indent=2)
            handle.write('\n')


def read_csv_rows(path: Union[str, Path]) -> List[List[str]]:
    """读取 CSV 正文 (跳过 '#' 元数据行), 第一行为列名"""
    with Path(path).open('r', encoding='utf-8', newline='') as handle:
        lines = [line for line in handle if not line.startswith('#')]
    return list(csv.reader(lines))
