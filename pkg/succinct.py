"""
简洁数据结构 - 支持 rank/select 的位向量与小波树

位置约定：access/select 使用 1 起始位置，rank(i) 统计前 i 个元素。
"""
import logging
from bisect import bisect_left
from typing import Iterable, List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_WORD = 64
_MASK = (1 << _WORD) - 1


class SymbolNotFoundError(LookupError):
    """select 请求的第 r 个符号不存在"""


class RSBitVector:
    """
    带 rank/select 目录的位向量

    64 位一块，预先计算每块之前的 1 的个数（superblock 计数）；
    块内 rank 用 popcount，select 在目录上二分后在块内定位。
    """

    def __init__(self, bits: Iterable[int]):
        arr = np.ascontiguousarray(np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits,
                                              dtype=bool))
        self._bits = arr
        self._size = int(arr.size)

        n_words = (self._size + _WORD - 1) // _WORD
        padded = np.zeros(n_words * _WORD, dtype=bool)
        padded[:self._size] = arr
        packed = np.packbits(padded, bitorder="little")
        self._words: List[int] = [int(w) for w in packed.view("<u8")] if n_words else []

        counts = padded.reshape(-1, _WORD).sum(axis=1) if n_words else np.zeros(0, dtype=np.int64)
        self._super: List[int] = [0] + np.cumsum(counts, dtype=np.int64).tolist()
        self._zero_super: List[int] = [_WORD * b - ones for b, ones in enumerate(self._super)]
        self._ones = self._super[-1]

    def __len__(self) -> int:
        return self._size

    @property
    def ones(self) -> int:
        return self._ones

    @property
    def zeros(self) -> int:
        return self._size - self._ones

    def access(self, i: int) -> int:
        """第 i 位（1 起始）"""
        if not 1 <= i <= self._size:
            raise IndexError(f"位置 {i} 越界 [1,{self._size}]")
        i -= 1
        return (self._words[i >> 6] >> (i & 63)) & 1

    def rank1(self, i: int) -> int:
        """前 i 位中 1 的个数"""
        if not 0 <= i <= self._size:
            raise IndexError(f"rank 位置 {i} 越界 [0,{self._size}]")
        block, rest = divmod(i, _WORD)
        if rest == 0:
            return self._super[block]
        return self._super[block] + (self._words[block] & ((1 << rest) - 1)).bit_count()

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, r: int) -> int:
        """第 r 个 1 的位置（1 起始）"""
        if not 1 <= r <= self._ones:
            raise SymbolNotFoundError(f"不存在第 {r} 个 1（共 {self._ones} 个）")
        block = bisect_left(self._super, r) - 1
        return block * _WORD + _kth_bit(self._words[block], r - self._super[block]) + 1

    def select0(self, r: int) -> int:
        """第 r 个 0 的位置（1 起始）"""
        if not 1 <= r <= self.zeros:
            raise SymbolNotFoundError(f"不存在第 {r} 个 0（共 {self.zeros} 个）")
        block = bisect_left(self._zero_super, r) - 1
        word = ~self._words[block] & _MASK
        return block * _WORD + _kth_bit(word, r - self._zero_super[block]) + 1

    def to_numpy(self) -> np.ndarray:
        return self._bits.copy()


def _kth_bit(word: int, k: int) -> int:
    """word 中第 k 个置位（k >= 1）的块内偏移"""
    for _ in range(k - 1):
        word &= word - 1
    return (word & -word).bit_length() - 1


class WaveletTree:
    """
    字母表 [1, sigma] 上的小波树（按层存储的平衡树，matrix 布局）

    每一层一个 RSBitVector，层内按已处理前缀稳定划分，因此同一前缀的
    元素连续存放；sigma=10 时共 4 层。
    """

    def __init__(self, symbols: Iterable[int], sigma: int):
        if sigma < 1:
            raise ValueError(f"sigma 必须 >= 1，收到 {sigma}")
        seq = np.asarray(symbols if isinstance(symbols, np.ndarray) else list(symbols), dtype=np.int64)
        if seq.size and (seq.min() < 1 or seq.max() > sigma):
            raise ValueError(f"符号必须在 [1,{sigma}] 内")

        self.sigma = sigma
        self._size = int(seq.size)
        self._depth = max(1, (sigma - 1).bit_length())
        self._levels: List[RSBitVector] = []
        self._zeros: List[int] = []

        cur = seq - 1
        for lvl in range(self._depth):
            bits = ((cur >> (self._depth - 1 - lvl)) & 1).astype(bool)
            bv = RSBitVector(bits)
            self._levels.append(bv)
            self._zeros.append(bv.zeros)
            cur = np.concatenate([cur[~bits], cur[bits]])

        logger.debug("小波树构建完成: m=%d, sigma=%d, 层数=%d", self._size, sigma, self._depth)

    def __len__(self) -> int:
        return self._size

    def _check_pos(self, i: int) -> None:
        if not 1 <= i <= self._size:
            raise IndexError(f"位置 {i} 越界 [1,{self._size}]")

    def _check_range(self, i: int, j: int) -> None:
        if not 1 <= i <= j <= self._size:
            raise IndexError(f"区间 [{i},{j}] 非法（长度 {self._size}）")

    def access(self, i: int) -> int:
        """S[i]"""
        self._check_pos(i)
        pos, value = i - 1, 0
        for lvl, bv in enumerate(self._levels):
            bit = bv.access(pos + 1)
            ones = bv.rank1(pos)
            pos = self._zeros[lvl] + ones if bit else pos - ones
            value = (value << 1) | bit
        return value + 1

    def rank(self, c: int, i: int) -> int:
        """S[1,i] 中符号 c 的出现次数"""
        if not 0 <= i <= self._size:
            raise IndexError(f"rank 位置 {i} 越界 [0,{self._size}]")
        if not 1 <= c <= self.sigma:
            return 0
        v = c - 1
        start, end = 0, i
        for lvl, bv in enumerate(self._levels):
            if (v >> (self._depth - 1 - lvl)) & 1:
                z = self._zeros[lvl]
                start, end = z + bv.rank1(start), z + bv.rank1(end)
            else:
                start, end = bv.rank0(start), bv.rank0(end)
        return end - start

    def select(self, c: int, r: int) -> int:
        """第 r 个 c 的位置"""
        count = self.rank(c, self._size)
        if not 1 <= r <= count:
            raise SymbolNotFoundError(f"符号 {c} 只出现 {count} 次，不存在第 {r} 个")
        v = c - 1
        start = 0
        for lvl, bv in enumerate(self._levels):
            if (v >> (self._depth - 1 - lvl)) & 1:
                start = self._zeros[lvl] + bv.rank1(start)
            else:
                start = bv.rank0(start)

        pos = start + r - 1
        for lvl in range(self._depth - 1, -1, -1):
            bv = self._levels[lvl]
            if (v >> (self._depth - 1 - lvl)) & 1:
                pos = bv.select1(pos - self._zeros[lvl] + 1) - 1
            else:
                pos = bv.select0(pos + 1) - 1
        return pos + 1

    def _range_list(self, i: int, j: int, lo: int, hi: int) -> List[Tuple[int, int, int]]:
        # 0 起始值域 [lo, hi]；节点为 (层, 组起点, 映射后的 i-1, 映射后的 j, 前缀)
        out = []
        stack = [(0, 0, i - 1, j, 0)]
        while stack:
            lvl, base, left, right, prefix = stack.pop()
            if right <= left:
                continue
            span = self._depth - lvl
            first, last = prefix << span, ((prefix + 1) << span) - 1
            if last < lo or first > hi:
                continue
            if lvl == self._depth:
                out.append((prefix + 1, left - base, right - base))
                continue
            bv, z = self._levels[lvl], self._zeros[lvl]
            b1, l1, r1 = bv.rank1(base), bv.rank1(left), bv.rank1(right)
            stack.append((lvl + 1, z + b1, z + l1, z + r1, (prefix << 1) | 1))
            stack.append((lvl + 1, base - b1, left - l1, right - r1, prefix << 1))
        return out

    def range_list(self, i: int, j: int) -> List[Tuple[int, int, int]]:
        """
        S[i,j] 中每个不同符号的三元组 (c, rank_c(i-1), rank_c(j))，按 c 升序
        """
        self._check_range(i, j)
        return self._range_list(i, j, 0, self.sigma - 1)

    def range_count(self, i: int, j: int, lo: int, hi: int) -> int:
        """S[i,j] 中满足 lo <= y <= hi 的符号个数"""
        self._check_range(i, j)
        lo, hi = max(lo, 1), min(hi, self.sigma)
        if lo > hi:
            return 0
        return self._count_less(i - 1, j, hi) - self._count_less(i - 1, j, lo - 1)

    def _count_less(self, left: int, right: int, bound: int) -> int:
        # [left, right) 内 0 起始值 < bound 的个数
        if bound <= 0:
            return 0
        if bound >= (1 << self._depth):
            return right - left
        total = 0
        for lvl, bv in enumerate(self._levels):
            l1, r1 = bv.rank1(left), bv.rank1(right)
            if (bound >> (self._depth - 1 - lvl)) & 1:
                total += (right - r1) - (left - l1)
                z = self._zeros[lvl]
                left, right = z + l1, z + r1
            else:
                left, right = left - l1, right - r1
        return total

    def range_report(self, i: int, j: int, lo: int, hi: int) -> List[Tuple[int, int]]:
        """
        二维区域查询：位置在 [i,j] 且值在 [lo,hi] 内的所有 (位置, 值)，按位置升序
        """
        self._check_range(i, j)
        lo, hi = max(lo, 1), min(hi, self.sigma)
        if lo > hi:
            return []
        points = []
        for c, before, through in self._range_list(i, j, lo - 1, hi - 1):
            points.extend((self.select(c, r), c) for r in range(before + 1, through + 1))
        points.sort()
        return points

    def to_numpy(self) -> np.ndarray:
        """还原原始序列"""
        pos = np.arange(self._size, dtype=np.int64)
        value = np.zeros(self._size, dtype=np.int64)
        for lvl, bv in enumerate(self._levels):
            bits = bv.to_numpy()
            ones_before = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))[:-1]
            bit = bits[pos]
            value = (value << 1) | bit
            pos = np.where(bit, self._zeros[lvl] + ones_before[pos], pos - ones_before[pos])
        return value + 1
