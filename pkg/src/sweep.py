"""
扫描执行模块
对参数点列表并行或串行求值, 输出顺序始终等于输入顺序
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence

from .settings import env_override

logger = logging.getLogger(__name__)


class SweepRunner:
    """参数扫描执行器"""

    def __init__(self, config: dict = None):
        """
        初始化扫描执行器

        Args:
            config: 配置字典, 读取 concurrency 段; DKG_THREADS 覆盖 max_workers
        """
        config = config or {}
        concurrency_cfg = config.get('concurrency', {})
        self.concurrent_enabled = bool(concurrency_cfg.get('enable', True))
        self.max_workers = env_override('DKG_THREADS', int(concurrency_cfg.get('max_workers', 4)), int)
        logger.debug(f"扫描执行器: 并行={self.concurrent_enabled}, max_workers={self.max_workers}")

    def map(self, func: Callable[[Any], Any], points: Sequence[Any], label: str = '扫描') -> List[Any]:
        """
        对每个点求值 func(point)

        Args:
            func: 单点求值函数, 必须线程安全
            points: 参数点
            label: 日志中的任务名

        Returns:
            与 points 同序的结果列表

        Raises:
            第一个失败点的异常 (其余未开始的任务被取消)
        """
        points = list(points)
        if not points:
            return []

        total = len(points)
        if total == 1 or not self.concurrent_enabled or self.max_workers <= 1:
            sequential: List[Any] = []
            for idx, point in enumerate(points):
                logger.debug(f"串行{label} {idx + 1}/{total}")
                sequential.append(func(point))
            return sequential

        max_workers = max(1, min(self.max_workers, total))
        results: List[Optional[Any]] = [None] * total

        def _worker(index: int, point: Any) -> Any:
            logger.debug(f"并行{label} {index + 1}/{total}")
            return func(point)

        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_map = {
                executor.submit(_worker, idx, point): idx
                for idx, point in enumerate(points)
            }

            for future in as_completed(future_map):
                idx = future_map[future]
                try:
                    results[idx] = future.result()
                except Exception as exc:  # noqa: BLE001
                    logger.error(f"{label}第 {idx + 1} 个点失败: {exc}")
                    for pending_future in future_map:
                        if not pending_future.done():
                            pending_future.cancel()
                    raise

        logger.info(f"{label}完成: {total} 个点, {max_workers} 线程")
        return results
