"""
网格报告模块 - 用二维点集代替 repMEM 中的 SA 扫描

第 j 行放一个点 (j, LF(j))，点上附带 SA[j]。对节点 v 与 Weiner 链接 a·label(v)，
行区间 [i,j] × 列区间 [l1,l2] 中的点恰好是 BWT 为 a 的那些出现。
"""
import logging
from typing import List, Tuple

import numpy as np

from fmindex import FmIndex
from succinct import WaveletTree

logger = logging.getLogger(__name__)


class MemGrid:
    """n_h × n_h 网格，每行每列各一个点"""

    def __init__(self, columns: np.ndarray, payload: np.ndarray):
        columns = np.asarray(columns, dtype=np.int64)
        if columns.size != np.asarray(payload).size:
            raise ValueError("列值与 SA 负载长度不一致")
        self.n = int(columns.size)
        self._payload = np.asarray(payload, dtype=np.int64)
        self._columns = WaveletTree(columns, max(self.n, 1))

    @classmethod
    def build(cls, index: FmIndex) -> "MemGrid":
        """由 LF 置换与 SA 建网格"""
        grid = cls(index.lf_array(), index.sa)
        logger.debug("网格构建完成: %d 个点", grid.n)
        return grid

    def column_of(self, row: int) -> int:
        return self._columns.access(row)

    def report_area(self, i: int, j: int, l1: int, l2: int) -> List[Tuple[int, int, int]]:
        """
        行在 [i,j]、列在 [l1,l2] 内的所有点 (行, 列, SA 值)，按行升序
        """
        i, j = max(i, 1), min(j, self.n)
        if j < i or l2 < l1:
            return []
        return [(row, col, int(self._payload[row - 1]))
                for row, col in self._columns.range_report(i, j, l1, l2)]
