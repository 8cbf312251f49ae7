"""
主程序入口
整合各物理模块, 按运行配置生成数据集、图数据、临界电荷表与验证报告
"""

import argparse
import logging
import math
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, List, Optional

import colorlog

from . import __version__, coulomb_bound, oscillator, scattering
from .dataset_writer import Dataset, DatasetWriter
from .errors import DKGError, DKGValidationError, DivergentDensity, InvalidParameter, SupercriticalCharge
from .figures import FIGURE_IDS, FigureBuilder
from .run_config import COMMAND_COLUMNS, RunConfig, describe_columns
from .settings import load_config
from .sweep import SweepRunner
from .verification import CATEGORIES, VerificationSuite

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


class DKGToolkit:
    """DKG 工具包主类"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初始化工具包

        Args:
            config_path: YAML 配置文件路径, 为空时使用 DKG_CONFIG 或 config/config.yaml
        """
        # 加载配置 (含 .env)
        self.config = self._load_config(config_path)

        # 设置日志
        self._setup_logging()

        # 初始化组件
        self.runner = SweepRunner(self.config)
        self.writer = DatasetWriter(self.config, version=__version__)
        self.figures = FigureBuilder(self.config, runner=self.runner)
        self.e2_inverse = float(self.config.get('units', {}).get('e2_inverse', scattering.E2_INVERSE))
        self.profile_tol = float(self.config.get('profiles', {}).get('quadrature_tol', 1e-6))

        self.logger = logging.getLogger(__name__)
        self.logger.info(f"DKG 工具包初始化完成 (版本 {__version__})")

    def _load_config(self, config_path: Optional[str]) -> dict:
        """加载配置文件"""
        return load_config(config_path)

    def _setup_logging(self):
        """设置日志系统"""
        log_config = self.config.get('logging', {})
        log_level = os.getenv('LOG_LEVEL', log_config.get('level', 'INFO')).upper()
        log_dir = os.getenv('LOG_DIR', log_config.get('directory', 'logs'))

        # 日志格式
        log_format = log_config.get('format',
                                    '%(asctime)s - %(name)s - %(levelname)s - %(message)s')

        # 彩色控制台格式
        color_formatter = colorlog.ColoredFormatter(
            '%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            }
        )

        root_logger = logging.getLogger()
        root_logger.setLevel(getattr(logging, log_level, logging.INFO))
        root_logger.handlers.clear()

        if log_config.get('console_output', True):
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(color_formatter)
            root_logger.addHandler(console_handler)

        if log_config.get('file_output', True):
            Path(log_dir).mkdir(parents=True, exist_ok=True)
            log_file = os.path.join(log_dir, f'dkg_{datetime.now().strftime("%Y%m%d")}.log')
            if log_config.get('file_rotation', True):
                file_handler = RotatingFileHandler(
                    log_file,
                    maxBytes=log_config.get('max_bytes', 10485760),
                    backupCount=log_config.get('backup_count', 5),
                    encoding='utf-8',
                )
            else:
                file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(log_format))
            root_logger.addHandler(file_handler)

    def run(self, run_config: RunConfig) -> dict:
        """
        执行一次运行

        Args:
            run_config: 运行配置

        Returns:
            结果字典 {'success', 'exit_code', 'output_paths', 'error'}
        """
        self.logger.info(f"开始执行命令: {run_config.command}")
        handler = getattr(self, '_run_' + run_config.command.replace('-', '_'))

        try:
            result = handler(run_config)
            outputs = ', '.join(str(p) for p in result['output_paths'])
            self.logger.info(f"命令 {run_config.command} 完成, 输出: {outputs}")
            return result

        except DKGValidationError as e:
            self.logger.error(f"参数校验失败: {e}")
            return self._failure(e, EXIT_VALIDATION)
        except DKGError as e:
            self.logger.error(f"数值计算失败: {e}")
            return self._failure(e, EXIT_NUMERICAL)
        except Exception as e:  # noqa: BLE001
            self.logger.error(f"执行失败: {e}", exc_info=True)
            return self._failure(e, EXIT_NUMERICAL)

    @staticmethod
    def _failure(exc: Exception, exit_code: int) -> dict:
        return {
            'success': False,
            'exit_code': exit_code,
            'output_paths': [],
            'error': f"{type(exc).__name__}: {exc}",
        }

    def _write(self, run_config: RunConfig, dataset: Dataset) -> dict:
        path = self.writer.write(dataset, run_config.output_path, run_config.format)
        return {
            'success': True,
            'exit_code': EXIT_OK,
            'output_paths': [str(path)],
            'error': None,
            'rows': len(dataset.rows),
        }

    def _dataset(self, run_config: RunConfig, rows: List[List[Any]], **extra) -> Dataset:
        metadata = {'command': run_config.command, **run_config.parameters, **extra}
        return Dataset(name=run_config.command, columns=run_config.columns, rows=rows, metadata=metadata)

    @staticmethod
    def _single(values: List[float], label: str) -> float:
        if len(values) != 1:
            raise InvalidParameter(f"{label} 在此命令中只能取一个值, 收到 {len(values)} 个")
        return values[0]

    # ---- 振子 ----

    def _oscillator_spec(self, run_config: RunConfig) -> oscillator.OscillatorSpec:
        config, ang = run_config.physics()
        params = run_config.parameters
        return oscillator.OscillatorSpec(config, ang, m=params['m'], omega=params['omega'],
                                         strict_coupling=params['strict_coupling'])

    def _run_osc_spectrum(self, run_config: RunConfig) -> dict:
        spec = self._oscillator_spec(run_config)
        rows = []
        for n in run_config.parameters['n']:
            energy = oscillator.energy(spec, n)
            rows.append([n, energy, -energy, oscillator.energy_nonrel(spec, n)])
        return self._write(run_config, self._dataset(run_config, rows))

    def _run_osc_profile(self, run_config: RunConfig) -> dict:
        spec = self._oscillator_spec(run_config)
        points = run_config.parameters['points']
        levels = run_config.parameters['n']

        def compute(n):
            return oscillator.density_profile(spec, n, points=points, tol=self.profile_tol)

        profiles = self.runner.map(compute, levels, label='径向密度')
        rows = []
        for n, profile in zip(levels, profiles):
            for rho, value, prob in zip(profile.grid.tolist(), profile.values.tolist(),
                                        profile.probability.tolist()):
                rows.append([f"n={n}", n, rho, value, prob])
        extra = {'norm_constants': {str(p.n): p.norm_constant for p in profiles}}
        return self._write(run_config, self._dataset(run_config, rows, **extra))

    # ---- Coulomb ----

    def _coulomb_spec(self, run_config: RunConfig, ze2: float) -> coulomb_bound.CoulombSpec:
        config, ang = run_config.physics()
        params = run_config.parameters
        return coulomb_bound.CoulombSpec(config, ang, m=params['m'], ze2=ze2,
                                         strict_coupling=params['strict_coupling'])

    def _run_coulomb_spectrum(self, run_config: RunConfig) -> dict:
        ze2 = self._single(run_config.parameters['ze2'], 'Ze²')
        spec = self._coulomb_spec(run_config, ze2)
        delta = coulomb_bound.delta(spec)
        rows = []
        for n in run_config.parameters['n']:
            candidates = coulomb_bound.energy_candidates(spec, n)
            printed = candidates[coulomb_bound.PRINTED]
            kappa_b = math.sqrt(max(spec.m ** 2 - printed ** 2, 0.0)) if math.isfinite(printed) else math.nan
            rows.append([n, printed, candidates[coulomb_bound.SHIFTED], delta, kappa_b])
        return self._write(run_config, self._dataset(run_config, rows))

    def _run_coulomb_sweep(self, run_config: RunConfig) -> dict:
        grid = run_config.parameters['ze2']
        levels = run_config.parameters['n']

        def compute(n):
            values = []
            for ze2 in grid:
                try:
                    candidates = coulomb_bound.energy_candidates(self._coulomb_spec(run_config, ze2), n)
                except SupercriticalCharge:
                    self.logger.warning(f"Ze²={ze2:g} 超过束缚态临界值, 记为 nan")
                    values.append((math.nan, math.nan))
                    continue
                values.append((candidates[coulomb_bound.PRINTED], candidates[coulomb_bound.SHIFTED]))
            return values

        results = self.runner.map(compute, levels, label='Ze² 扫描')
        rows = []
        for n, series in zip(levels, results):
            rows.extend([f"n={n}", n, ze2, printed, shifted] for ze2, (printed, shifted) in zip(grid, series))
        return self._write(run_config, self._dataset(run_config, rows))

    # ---- 对产生与临界电荷 ----

    def _run_pair_creation(self, run_config: RunConfig) -> dict:
        config, ang = run_config.physics()
        params = run_config.parameters
        strict = params['strict_coupling']
        rows = []
        for ze2 in params['ze2']:
            scatter_input = scattering.ScatterInput(config, ang, params['m'], ze2, params['energy'], strict)
            x = scatter_input.alpha_im
            if not scattering.creation_condition(config, ang, ze2, strict):
                rows.append([ze2, math.nan, x, math.nan, math.nan])
                continue
            try:
                result = scattering.scatter(scatter_input)
            except DivergentDensity:
                self.logger.warning(f"Ze²={ze2:g} 正好在阈值上, 𝒫 = 1, 𝒩 记为 inf")
                rows.append([ze2, 0.0, x, 1.0, math.inf])
                continue
            rows.append([ze2, result.beta_tilde, x, result.probability, result.density])
        threshold = scattering.threshold_ze2(config, ang, strict)
        return self._write(run_config, self._dataset(run_config, rows, ze2_threshold=threshold))

    def _run_critical_charge(self, run_config: RunConfig) -> dict:
        config, ang = run_config.physics()
        strict = run_config.parameters['strict_coupling']
        threshold = scattering.threshold_ze2(config, ang, strict)
        z_cr = scattering.critical_charge(config, ang, self.e2_inverse, strict)
        ells = run_config.parameters['l']
        ell = ells[0] if len(set(ells)) == 1 else ' '.join(ells)
        reduced = math.nan
        if all(mu == 0 for mu in config.mu) and len(set(ang.ells)) == 1:
            reduced = scattering.critical_charge_reduced(config.d, ang.ells[0], self.e2_inverse)
        row = [config.d, ell, sum(config.mu), threshold, z_cr, z_cr / self.e2_inverse, reduced]
        return self._write(run_config, self._dataset(run_config, [row], e2_inverse=self.e2_inverse))

    # ---- 图、表与验证 ----

    def _run_figure(self, run_config: RunConfig) -> dict:
        dataset = self.figures.figure_data(run_config.parameters['figure'])
        dataset.metadata = {'command': run_config.command, **dataset.metadata}
        return self._write(run_config, dataset)

    def _run_table3(self, run_config: RunConfig) -> dict:
        return self._write(run_config, self.figures.table3())

    def _run_verify(self, run_config: RunConfig) -> dict:
        suite = VerificationSuite(self.config, runner=self.runner)
        report = suite.run(run_config.parameters['categories'] or None)
        path = report.write(run_config.output_path or suite.report_path())
        failures = report.failures
        for check in failures:
            self.logger.warning(f"未通过: [{check.category}] {check.name} "
                                f"(测量值 {check.measured}, 容限 {check.tolerance})")
        return {
            'success': report.passed,
            'exit_code': EXIT_OK if report.passed else EXIT_NUMERICAL,
            'output_paths': [str(path)],
            'error': None if report.passed else f"验证未通过: {len(failures)} 项",
            'summary': report.summary(),
        }


class ToolkitArgumentParser(argparse.ArgumentParser):
    """用法错误按参数校验失败处理 (退出码 1)"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: 参数错误: {message}\n")


def _add_physics_arguments(parser: argparse.ArgumentParser, *extra: str) -> None:
    parser.add_argument('--d', type=int, help='维数 d')
    parser.add_argument('--mu', help="Dunkl参数 μ_j, 逗号列表或单值广播, 例如 0.4 或 0.4,0.4,0.4")
    parser.add_argument('--s', help="反射宇称, 例如 + 或 +,-,+")
    parser.add_argument('--l', help='角量子数 ℓ_1..ℓ_{d-1}, 逗号列表或单值广播, 半整数写作 1/2')
    parser.add_argument('--no-strict', dest='strict_coupling', action='store_const', const=False,
                        help='跳过 ℓ 与 s 的耦合规则检查')
    if 'n' in extra:
        parser.add_argument('--n', help="径向量子数, 例如 0..10 或 0,2,4")
    if 'm' in extra:
        parser.add_argument('--m', type=float, help='质量 m')
    if 'omega' in extra:
        parser.add_argument('--omega', type=float, help='振子频率 ω')
    if 'ze2' in extra:
        parser.add_argument('--ze2', help="耦合 Ze², 单值、逗号列表或 a..b:k")
    if 'energy' in extra:
        parser.add_argument('--energy', type=float, help='散射能量 E (|E| > m)')
    if 'points' in extra:
        parser.add_argument('--points', type=int, help='ρ 网格点数')


def build_parser() -> argparse.ArgumentParser:
    """命令行解析器"""
    parser = ToolkitArgumentParser(
        prog='dkg',
        description='DKG 工具包 - Dunkl-Klein-Gordon 振子与 Coulomb 问题的谱、对产生与数值验证',
        epilog=describe_columns(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('-c', '--config', help='JSON 运行配置 (由 --dump-config 生成)', default=None)
    parser.add_argument('--settings', help='YAML 配置文件路径', default=None)

    common = ToolkitArgumentParser(add_help=False)
    common.add_argument('-o', '--output', help='输出文件路径', default=None)
    common.add_argument('-f', '--format', choices=['csv', 'json'], default=None, help='输出格式')
    common.add_argument('--dump-config', help='把规范化后的运行配置写到 JSON 文件', default=None)

    subparsers = parser.add_subparsers(dest='command')
    specs = {
        'osc-spectrum': ('振子能谱', ('n', 'm', 'omega')),
        'osc-profile': ('振子径向密度', ('n', 'm', 'omega', 'points')),
        'coulomb-spectrum': ('Coulomb 束缚态能谱', ('n', 'm', 'ze2')),
        'coulomb-sweep': ('Coulomb 能量随 Ze² 变化', ('n', 'm', 'ze2')),
        'pair-creation': ('对产生概率与粒子数密度', ('m', 'ze2', 'energy')),
        'critical-charge': ('临界电荷', ()),
    }
    for name, (help_text, extra) in specs.items():
        sub = subparsers.add_parser(name, help=help_text, parents=[common],
                                    epilog=f"输出列: {', '.join(COMMAND_COLUMNS[name])}")
        _add_physics_arguments(sub, *extra)

    figure = subparsers.add_parser('figure', help='图数据', parents=[common])
    figure.add_argument('figure', choices=FIGURE_IDS, help='图编号')
    subparsers.add_parser('table3', help='临界电荷表', parents=[common])
    verify = subparsers.add_parser('verify', help='解析结果与数值求解器的比对', parents=[common])
    verify.add_argument('--categories', help=f"逗号分隔的检查类别: {', '.join(CATEGORIES)}")
    return parser


def parse_run_config(args: argparse.Namespace) -> RunConfig:
    """命令行参数或 JSON 文件 → RunConfig"""
    if args.config:
        run_config = RunConfig.load(args.config)
        updates = {}
        if getattr(args, 'output', None):
            updates['output_path'] = args.output
        if getattr(args, 'format', None):
            updates['format'] = args.format
        return run_config.model_copy(update=updates) if updates else run_config
    if not args.command:
        raise InvalidParameter("需要指定命令或 --config 运行配置")
    values = {k: v for k, v in vars(args).items()
              if k not in ('command', 'config', 'settings', 'output', 'format', 'dump_config')}
    return RunConfig.from_args(args.command, values, output_path=args.output, fmt=args.format)


def main(argv: Optional[List[str]] = None):
    """命令行入口"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        run_config = parse_run_config(args)
    except DKGError as e:
        print(f"\n✗ 参数无效: {e}")
        sys.exit(e.exit_code)

    if getattr(args, 'dump_config', None):
        run_config.dump(args.dump_config)

    toolkit = DKGToolkit(config_path=args.settings)
    result = toolkit.run(run_config)

    if result['success']:
        print(f"\n✓ 处理成功!")
        for path in result['output_paths']:
            print(f"输出文件: {path}")
    else:
        print(f"\n✗ 处理失败: {result['error']}")
    sys.exit(result['exit_code'])


if __name__ == '__main__':
    main()
