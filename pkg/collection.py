"""
读段集合模块 - 构建包含反向互补的扩展集合 R = {R_1$, R̂_1$, ..., R_k$, R̂_k$}
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from Bio import SeqIO

from alphabet import (BASE_SIGMA, SENTINEL, InvalidSymbolError, complement_base,
                      decode_bases, encode_read)
from succinct import RSBitVector

logger = logging.getLogger(__name__)

Read = Union[str, Sequence[int]]


class EmptyCollectionError(ValueError):
    """空集合或空读段"""


def mate_of(string_id: int) -> int:
    """正向串与其反向互补串互为配对：id XOR 1"""
    return string_id ^ 1


def reverse_complement(codes: Sequence[int]) -> List[int]:
    return [complement_base(int(c)) for c in reversed(codes)]


@dataclass(frozen=True)
class SeqCollection:
    """扩展集合 R：text 为碱基编码，boundaries 标记每个哨兵位置"""
    text: np.ndarray
    boundaries: RSBitVector
    k: int
    names: Tuple[str, ...] = ()

    @classmethod
    def from_text(cls, text: Sequence[int], names: Sequence[str] = ()) -> "SeqCollection":
        """
        由已经交错排列、带哨兵的文本构建集合

        Args:
            text: 碱基编码序列，每个串以哨兵结尾
            names: 读段名称（可选）

        Returns:
            SeqCollection
        """
        arr = np.asarray(text, dtype=np.uint8)
        if arr.size == 0:
            raise EmptyCollectionError("集合为空")
        if arr[-1] != SENTINEL:
            raise ValueError("文本必须以哨兵结尾")
        marks = arr == SENTINEL
        num_strings = int(marks.sum())
        if num_strings % 2:
            raise ValueError(f"串数必须为偶数（正向 + 反向互补），收到 {num_strings}")
        return cls(text=arr, boundaries=RSBitVector(marks), k=num_strings // 2, names=tuple(names))

    @property
    def n(self) -> int:
        return int(self.text.size)

    @property
    def num_strings(self) -> int:
        return 2 * self.k

    def string_id_of(self, pos: int) -> int:
        """位置 pos（1 起始）所在串的 id：pos 之前的哨兵个数"""
        if not 1 <= pos <= self.n:
            raise IndexError(f"位置 {pos} 越界 [1,{self.n}]")
        return self.boundaries.rank1(pos - 1)

    def string_bounds(self, string_id: int) -> Tuple[int, int]:
        """串的 (起点, 哨兵位置)，均为 1 起始"""
        if not 0 <= string_id < self.num_strings:
            raise IndexError(f"串 id {string_id} 越界 [0,{self.num_strings})")
        start = self.boundaries.select1(string_id) + 1 if string_id else 1
        return start, self.boundaries.select1(string_id + 1)

    def string(self, string_id: int) -> np.ndarray:
        """不含哨兵的串内容"""
        start, end = self.string_bounds(string_id)
        return self.text[start - 1:end - 1]

    def letters(self, string_id: int) -> str:
        return decode_bases(self.string(string_id))


def build_collection(reads: Sequence[Read], names: Optional[Sequence[str]] = None) -> SeqCollection:
    """
    构建扩展集合，正向串与反向互补串交错存放

    Args:
        reads: 读段列表，可以是 ACGT 字符串或碱基编码序列
        names: 读段名称，用于报错信息

    Returns:
        SeqCollection: 2k 个以哨兵结尾的串
    """
    if not reads:
        raise EmptyCollectionError("读段集合为空")
    names = list(names) if names is not None else [f"read_{i}" for i in range(len(reads))]

    text: List[int] = []
    for idx, read in enumerate(reads):
        name = names[idx]
        if isinstance(read, str):
            try:
                codes = encode_read(read)
            except InvalidSymbolError as e:
                raise InvalidSymbolError(f"读段 {name}: {e}") from e
        else:
            codes = [int(c) for c in read]
            for offset, c in enumerate(codes, 1):
                if not 2 <= c <= BASE_SIGMA:
                    raise InvalidSymbolError(f"读段 {name}: 非法编码 {c}，位置 {offset}")
        if not codes:
            raise EmptyCollectionError(f"读段 {name} 为空")
        text.extend(codes)
        text.append(SENTINEL)
        text.extend(reverse_complement(codes))
        text.append(SENTINEL)

    collection = SeqCollection.from_text(text, names)
    logger.debug("集合构建完成: k=%d, n=%d", collection.k, collection.n)
    return collection


def load_fasta(path: str) -> SeqCollection:
    """
    读取多行 FASTA，记录顺序即读段 id

    Raises:
        InvalidSymbolError: 某条记录含非法字符，消息包含记录名与偏移
        EmptyCollectionError: 文件中没有记录
    """
    names, reads = [], []
    with open(path, "r", encoding="utf-8") as handle:
        for record in SeqIO.parse(handle, "fasta"):
            names.append(record.id)
            reads.append(str(record.seq))
    if not reads:
        raise EmptyCollectionError(f"FASTA 中没有记录: {path}")
    return build_collection(reads, names)
