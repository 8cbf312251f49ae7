#!/usr/bin/env python3
"""一次生成全部图数据、临界电荷表与验证报告"""

import argparse
import logging
import sys
from pathlib import Path

ROOT_DIR = Path(__file__).resolve().parent.parent
if str(ROOT_DIR) not in sys.path:
    sys.path.append(str(ROOT_DIR))


from src.figures import FIGURE_IDS
from src.main import EXIT_OK, DKGToolkit
from src.run_config import RunConfig


def parse_arguments() -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description='生成 F1-F8 图数据、临界电荷表与验证报告'
    )
    parser.add_argument('--output-dir', default='output/datasets', help='输出目录')
    parser.add_argument('--format', choices=['csv', 'json'], default='csv', help='数据集格式')
    parser.add_argument('--settings', default=None, help='YAML 配置文件路径')
    parser.add_argument('--figures', default=','.join(FIGURE_IDS), help='逗号分隔的图编号')
    parser.add_argument('--skip-verify', action='store_true', help='不运行数值验证')
    return parser.parse_args()


def build_runs(args: argparse.Namespace) -> list:
    output_dir = Path(args.output_dir)
    runs = []
    for figure_id in (f.strip().upper() for f in args.figures.split(',') if f.strip()):
        runs.append(RunConfig.from_args('figure', {'figure': figure_id},
                                        output_path=str(output_dir / f"{figure_id}.{args.format}"),
                                        fmt=args.format))
    runs.append(RunConfig.from_args('table3', {}, output_path=str(output_dir / f"table3.{args.format}"),
                                    fmt=args.format))
    if not args.skip_verify:
        runs.append(RunConfig.from_args('verify', {}, output_path=str(output_dir / 'verify_report.json')))
    return runs


def main() -> None:
    args = parse_arguments()
    toolkit = DKGToolkit(config_path=args.settings)
    logger = logging.getLogger('reproduce')

    exit_code = EXIT_OK
    for run_config in build_runs(args):
        result = toolkit.run(run_config)
        if result['success']:
            print(f"✓ {run_config.command} {run_config.parameters.get('figure', '')}: {result['output_paths'][0]}")
        else:
            logger.error(f"{run_config.command} 失败: {result['error']}")
            exit_code = max(exit_code, result['exit_code'])

    sys.exit(exit_code)


if __name__ == '__main__':
    main()
