"""
同聚物压缩模块 - 把 R 压缩为 Σ^hp 上的 R^h，并维护游程长度数组 H

长度 > 1 的游程写成元符号 c*，其长度按文本顺序追加到 H；
元符号位置由 meta 位向量标记，H[rank1(meta, p)] 即位置 p 的游程长度。
"""
import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from alphabet import BASE_SIGMA, HP_SENTINEL, HP_SIGMA, g, hp_symbol, is_meta
from collection import EmptyCollectionError, SeqCollection
from succinct import RSBitVector

logger = logging.getLogger(__name__)

# 由 alphabet 生成的查找表，下标 0 不用
_PLAIN = np.array([0] + [hp_symbol(b, 1) for b in range(1, BASE_SIGMA + 1)], dtype=np.uint8)
_META = np.array([0] + [hp_symbol(b, 2) for b in range(1, BASE_SIGMA + 1)], dtype=np.uint8)
_TO_BASE = np.array([0] + [g(s) for s in range(1, HP_SIGMA + 1)], dtype=np.uint8)
_IS_META = np.array([False] + [is_meta(s) for s in range(1, HP_SIGMA + 1)], dtype=bool)


class CorruptionError(ValueError):
    """H 与元符号不一致，或游程数据损坏"""


def expand_runs(text: Sequence[int], H: Sequence[int]) -> np.ndarray:
    """
    把 Σ^hp 文本按 H 展开为碱基文本

    Args:
        text: Σ^hp 编码
        H: 元符号对应的游程长度（按文本顺序）

    Returns:
        np.ndarray: 碱基编码（uint8）
    """
    hp = np.asarray(text, dtype=np.int64)
    lengths = np.asarray(H, dtype=np.int64)
    if hp.size and (hp.min() < 1 or hp.max() > HP_SIGMA):
        raise CorruptionError("文本含有越界的 Σ^hp 编码")
    meta = _IS_META[hp]
    if int(meta.sum()) != lengths.size:
        raise CorruptionError(f"元符号个数 {int(meta.sum())} 与 H 长度 {lengths.size} 不一致")
    if lengths.size and lengths.min() < 2:
        raise CorruptionError("H 中的游程长度必须 >= 2")
    runs = np.ones(hp.size, dtype=np.int64)
    runs[meta] = lengths
    return np.repeat(_TO_BASE[hp], runs)


@dataclass(frozen=True)
class RlcCollection:
    """压缩后的集合 R^h"""
    text: np.ndarray
    H: np.ndarray
    meta: RSBitVector
    boundaries: RSBitVector
    exp_starts: np.ndarray
    k: int
    run_lengths: np.ndarray = field(repr=False, default=None)

    @classmethod
    def from_parts(cls, text: Sequence[int], H: Sequence[int]) -> "RlcCollection":
        """
        由 R^h 文本与 H 组装（反序列化时使用），同时校验一致性

        Raises:
            CorruptionError: 元符号与 H 不匹配、哨兵缺失或相邻游程可合并
        """
        hp = np.asarray(text, dtype=np.uint8)
        lengths = np.asarray(H, dtype=np.uint32)
        if hp.size == 0:
            raise EmptyCollectionError("R^h 为空")
        if hp.min() < 1 or hp.max() >= HP_SIGMA:
            raise CorruptionError("文本含有非法 Σ^hp 编码（$* 不会出现在文本中）")
        if hp[-1] != HP_SENTINEL:
            raise CorruptionError("文本必须以哨兵结尾")

        meta_bits = _IS_META[hp]
        if int(meta_bits.sum()) != lengths.size:
            raise CorruptionError(f"元符号个数 {int(meta_bits.sum())} 与 H 长度 {lengths.size} 不一致")
        if lengths.size and lengths.min() < 2:
            raise CorruptionError("H 中的游程长度必须 >= 2")
        bases = _TO_BASE[hp]
        same = (bases[1:] == bases[:-1]) & (hp[1:] != HP_SENTINEL)
        if same.any():
            raise CorruptionError(f"位置 {int(np.flatnonzero(same)[0]) + 1} 处相邻游程的碱基相同")

        sentinels = hp == HP_SENTINEL
        if int(sentinels.sum()) % 2:
            raise CorruptionError("串数必须为偶数")

        runs = np.ones(hp.size, dtype=np.int64)
        runs[meta_bits] = lengths
        exp_starts = np.concatenate(([1], np.cumsum(runs)[:-1] + 1)).astype(np.int64)

        return cls(text=hp, H=lengths, meta=RSBitVector(meta_bits), boundaries=RSBitVector(sentinels),
                   exp_starts=exp_starts, k=int(sentinels.sum()) // 2, run_lengths=runs)

    @property
    def n(self) -> int:
        return int(self.text.size)

    @property
    def num_strings(self) -> int:
        return 2 * self.k

    @property
    def expanded_length(self) -> int:
        return int(self.run_lengths.sum())

    def _check(self, p: int) -> None:
        if not 1 <= p <= self.n:
            raise IndexError(f"位置 {p} 越界 [1,{self.n}]")

    def run_length_at(self, p: int) -> int:
        """位置 p 的游程长度：普通符号为 1，元符号查 H"""
        self._check(p)
        if self.meta.access(p):
            return int(self.H[self.meta.rank1(p) - 1])
        return 1

    def expanded_coord(self, p: int) -> int:
        """位置 p 所编码游程在 R 中的第一个位置"""
        self._check(p)
        return int(self.exp_starts[p - 1])

    def string_id_of(self, p: int) -> int:
        self._check(p)
        return self.boundaries.rank1(p - 1)

    def string_bounds(self, string_id: int) -> Tuple[int, int]:
        """(起点, 哨兵位置)，1 起始"""
        if not 0 <= string_id < self.num_strings:
            raise IndexError(f"串 id {string_id} 越界 [0,{self.num_strings})")
        start = self.boundaries.select1(string_id) + 1 if string_id else 1
        return start, self.boundaries.select1(string_id + 1)

    def string(self, string_id: int) -> np.ndarray:
        start, end = self.string_bounds(string_id)
        return self.text[start - 1:end - 1]

    def string_length(self, string_id: int) -> int:
        start, end = self.string_bounds(string_id)
        return end - start

    def expanded_string_length(self, string_id: int) -> int:
        start, end = self.string_bounds(string_id)
        return int(self.exp_starts[end - 1] - self.exp_starts[start - 1])

    def locate(self, p: int) -> Tuple[int, int]:
        """全局位置 -> (串 id, 串内 1 起始偏移)"""
        sid = self.string_id_of(p)
        start, _ = self.string_bounds(sid)
        return sid, p - start + 1

    def local_expanded_span(self, p: int, d: int) -> Tuple[int, int]:
        """
        R^h[p, p+d-1] 在展开串中的串内区间：首个游程的起点到末个游程的终点
        """
        sid = self.string_id_of(p)
        start, _ = self.string_bounds(sid)
        base = int(self.exp_starts[start - 1])
        last = p + d - 1
        first_exp = int(self.exp_starts[p - 1]) - base + 1
        last_exp = int(self.exp_starts[last - 1]) + int(self.run_lengths[last - 1]) - 1 - base + 1
        return first_exp, last_exp


def compress(collection: SeqCollection) -> RlcCollection:
    """
    同聚物压缩：极大游程 ℓ>1 变为元符号，ℓ 追加到 H；哨兵从不合并
    """
    text = collection.text.astype(np.int64)
    n = text.size
    starts = np.ones(n, dtype=bool)
    starts[1:] = (text[1:] != text[:-1]) | (text[1:] == HP_SENTINEL)
    run_pos = np.flatnonzero(starts)
    run_len = np.diff(np.append(run_pos, n))
    bases = text[run_pos]

    hp = np.where(run_len > 1, _META[bases], _PLAIN[bases]).astype(np.uint8)
    H = run_len[run_len > 1].astype(np.uint32)
    rlc = RlcCollection.from_parts(hp, H)
    logger.debug("同聚物压缩: n=%d -> n_h=%d, |H|=%d", n, rlc.n, H.size)
    return rlc


def decompress(rlc: RlcCollection) -> SeqCollection:
    """compress 的逆操作"""
    return SeqCollection.from_text(expand_runs(rlc.text, rlc.H))
