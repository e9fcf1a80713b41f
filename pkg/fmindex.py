"""
FM 索引模块 - R^h 的后缀数组、BWT（BCR 语义）、C 数组、LF / LF⁻¹ 与后向搜索

多串排序规则：每个串的哨兵小于所有字符，哨兵之间按串 id 排序；
串首字符在 BWT 中的前驱是该串自己的哨兵。
"""
import logging
import struct
from bisect import bisect_left
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from alphabet import HP_SENTINEL, HP_SIGMA
from collection import EmptyCollectionError
from rle import CorruptionError, RlcCollection
from succinct import WaveletTree

logger = logging.getLogger(__name__)

MAGIC = b"RLMEMIDX"
FORMAT_VERSION = 1
# magic, version, sigma, n_h, 串数, |H|
_HEADER = struct.Struct("<8sHHIII")


class IndexFormatError(ValueError):
    """索引文件格式错误或内容损坏"""


class VersionMismatchError(IndexFormatError):
    """索引文件版本与当前程序不一致"""


def suffix_array(text: Sequence[int]) -> np.ndarray:
    """
    多串后缀数组（前缀倍增）

    初始秩：哨兵按所属串 id，普通字符排在所有哨兵之后；
    每个后缀在遇到自己的哨兵时秩即唯一，所以越过串边界的比较不会影响结果。

    Args:
        text: 以哨兵结尾的一个或多个串

    Returns:
        np.ndarray: 1 起始的后缀数组（uint32）
    """
    t = np.asarray(text, dtype=np.int64)
    n = t.size
    if n == 0:
        raise EmptyCollectionError("文本为空")
    is_sentinel = t == HP_SENTINEL
    if not is_sentinel[-1]:
        raise ValueError("文本必须以哨兵结尾")

    string_ids = np.concatenate(([0], np.cumsum(is_sentinel)[:-1]))
    num_strings = int(is_sentinel.sum())
    rank = np.unique(np.where(is_sentinel, string_ids, num_strings + t), return_inverse=True)[1]
    rank = rank.astype(np.int64).reshape(-1)

    k = 1
    while int(rank.max()) < n - 1:
        second = np.full(n, -1, dtype=np.int64)
        second[:n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r, s = rank[order], second[order]
        changed = np.zeros(n, dtype=np.int64)
        changed[1:] = (r[1:] != r[:-1]) | (s[1:] != s[:-1])
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.cumsum(changed)
        k *= 2

    sa = np.empty(n, dtype=np.int64)
    sa[rank] = np.arange(n)
    return (sa + 1).astype(np.uint32)


def bwt_from_sa(text: Sequence[int], sa: Sequence[int]) -> np.ndarray:
    """
    BWT[j] = text[SA[j]-1]；串首位置的前驱取自己的哨兵

    哨兵编码相同，所以只有全局第一个位置需要特殊处理。
    """
    t = np.asarray(text, dtype=np.uint8)
    pos = np.asarray(sa, dtype=np.int64)
    prev = pos - 2
    bwt = t[np.maximum(prev, 0)].copy()
    bwt[prev < 0] = HP_SENTINEL
    return bwt


def counts_to_c(text: np.ndarray, sigma: int = HP_SIGMA) -> List[int]:
    """C[c] = 编码小于 c 的符号个数；下标 1..sigma+1（下标 0 不用）"""
    counts = np.bincount(np.asarray(text, dtype=np.int64), minlength=sigma + 1)[:sigma + 1]
    c = [0] * (sigma + 2)
    for sym in range(2, sigma + 2):
        c[sym] = c[sym - 1] + int(counts[sym - 1])
    return c


@dataclass
class FmIndex:
    """R^h 上的 FM 索引，保留明文 SA 用于报告"""
    rlc: RlcCollection
    sa: np.ndarray
    bwt_codes: np.ndarray
    bwt: WaveletTree
    C: List[int]
    sigma: int = HP_SIGMA

    @classmethod
    def build(cls, rlc: RlcCollection) -> "FmIndex":
        """
        构建索引

        Args:
            rlc: 压缩集合 R^h

        Returns:
            FmIndex
        """
        if rlc.n == 0:
            raise EmptyCollectionError("集合为空，无法建索引")
        sa = suffix_array(rlc.text)
        bwt_codes = bwt_from_sa(rlc.text, sa)
        index = cls(rlc=rlc, sa=sa, bwt_codes=bwt_codes,
                     bwt=WaveletTree(bwt_codes, HP_SIGMA), C=counts_to_c(rlc.text))
        logger.debug("FM 索引构建完成: n_h=%d, 串数=%d", rlc.n, rlc.num_strings)
        return index

    @property
    def n(self) -> int:
        return int(self.sa.size)

    def _check(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise IndexError(f"BWT 位置 {j} 越界 [1,{self.n}]")

    def sa_at(self, j: int) -> int:
        self._check(j)
        return int(self.sa[j - 1])

    def bwt_at(self, j: int) -> int:
        self._check(j)
        return int(self.bwt_codes[j - 1])

    def bucket_of(self, j: int) -> int:
        """第 j 行后缀的首字符（F 列）"""
        self._check(j)
        return bisect_left(self.C, j, 1) - 1

    def lf(self, j: int) -> int:
        c = self.bwt_at(j)
        return self.C[c] + self.bwt.rank(c, j)

    def lf_inverse(self, j: int) -> int:
        c = self.bucket_of(j)
        return self.bwt.select(c, j - self.C[c])

    def backward_step(self, s: int, e: int, c: int) -> Tuple[int, int]:
        """
        [s,e] 为 X 的 SA 区间，返回 cX 的区间；e' < s' 表示空
        """
        if not 1 <= c <= self.sigma:
            raise ValueError(f"符号 {c} 越界 [1,{self.sigma}]")
        if e < s:
            return 1, 0
        return self.C[c] + self.bwt.rank(c, s - 1) + 1, self.C[c] + self.bwt.rank(c, e)

    def backward_search(self, pattern: Sequence[int]) -> Tuple[int, int]:
        """模式 P 的 SA 区间（从右向左逐步后向搜索）"""
        s, e = 1, self.n
        for c in reversed(pattern):
            s, e = self.backward_step(s, e, int(c))
            if e < s:
                break
        return s, e

    def count(self, pattern: Sequence[int]) -> int:
        s, e = self.backward_search(pattern)
        return max(0, e - s + 1)

    def invert(self) -> List[List[int]]:
        """
        由 BWT 还原 R^h 的每个串：从串 id 对应的哨兵行出发反复 LF
        """
        strings = []
        for sid in range(self.rlc.num_strings):
            j, out = sid + 1, []
            while True:
                c = self.bwt_at(j)
                if c == HP_SENTINEL:
                    break
                out.append(c)
                j = self.lf(j)
            strings.append(out[::-1])
        return strings

    def lf_array(self) -> np.ndarray:
        """所有行的 LF 值（向量化）"""
        lf = np.empty(self.n, dtype=np.int64)
        for c in range(1, self.sigma + 1):
            rows = np.flatnonzero(self.bwt_codes == c)
            if rows.size:
                lf[rows] = self.C[c] + np.arange(1, rows.size + 1)
        return lf

    def to_bytes(self) -> bytes:
        """
        序列化：头部 | C[1..σ+1] u32 | BWT 4 位打包（低半字节在前）| SA u32 | H u32 | meta 位
        """
        codes = self.bwt_codes.astype(np.uint8)
        if codes.size % 2:
            codes = np.append(codes, 0).astype(np.uint8)
        packed_bwt = (codes[0::2] | (codes[1::2] << 4)).astype(np.uint8)
        meta_bits = np.packbits(self.rlc.meta.to_numpy(), bitorder="little")

        parts = [
            _HEADER.pack(MAGIC, FORMAT_VERSION, self.sigma, self.n, self.rlc.num_strings, self.rlc.H.size),
            np.asarray(self.C[1:], dtype="<u4").tobytes(),
            packed_bwt.tobytes(),
            self.sa.astype("<u4").tobytes(),
            self.rlc.H.astype("<u4").tobytes(),
            meta_bits.tobytes(),
        ]
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes) -> "FmIndex":
        """
        反序列化并校验；文本由 C 与 SA 还原（text[SA[j]] 为第 j 行的桶）

        Raises:
            IndexFormatError: magic 错误、截断或内容不一致
            VersionMismatchError: 版本不一致
        """
        if len(data) < _HEADER.size:
            raise IndexFormatError("索引文件过短")
        magic, version, sigma, n_h, num_strings, h_len = _HEADER.unpack_from(data, 0)
        if magic != MAGIC:
            raise IndexFormatError("不是 rlmem 索引文件（magic 不匹配）")
        if version != FORMAT_VERSION:
            raise VersionMismatchError(f"索引版本 {version} 与程序版本 {FORMAT_VERSION} 不一致")
        if sigma != HP_SIGMA:
            raise IndexFormatError(f"字母表大小 {sigma} 不受支持")

        sizes = [4 * (sigma + 1), (n_h + 1) // 2, 4 * n_h, 4 * h_len, (n_h + 7) // 8]
        if len(data) != _HEADER.size + sum(sizes):
            raise IndexFormatError("索引文件长度与头部不一致（可能被截断）")

        offset = _HEADER.size
        chunks = []
        for size in sizes:
            chunks.append(data[offset:offset + size])
            offset += size
        c_raw, bwt_raw, sa_raw, h_raw, meta_raw = chunks

        C = [0] + np.frombuffer(c_raw, dtype="<u4").astype(np.int64).tolist()
        packed = np.frombuffer(bwt_raw, dtype=np.uint8)
        bwt_codes = np.empty(packed.size * 2, dtype=np.uint8)
        bwt_codes[0::2] = packed & 0x0F
        bwt_codes[1::2] = packed >> 4
        bwt_codes = bwt_codes[:n_h]
        sa = np.frombuffer(sa_raw, dtype="<u4").astype(np.uint32)
        H = np.frombuffer(h_raw, dtype="<u4").astype(np.uint32)
        meta = np.unpackbits(np.frombuffer(meta_raw, dtype=np.uint8), bitorder="little")[:n_h].astype(bool)

        if C[1] != 0 or C[-1] != n_h or any(a > b for a, b in zip(C[1:], C[2:])):
            raise IndexFormatError("C 数组损坏")
        if sa.size and (int(sa.min()) < 1 or int(sa.max()) > n_h
                        or np.unique(sa).size != n_h):
            raise IndexFormatError("SA 不是 [1,n_h] 上的排列")

        buckets = np.repeat(np.arange(sigma + 1, dtype=np.uint8), np.diff(np.asarray(C, dtype=np.int64)))
        text = np.empty(n_h, dtype=np.uint8)
        text[sa.astype(np.int64) - 1] = buckets
        try:
            rlc = RlcCollection.from_parts(text, H)
        except (CorruptionError, EmptyCollectionError) as e:
            raise IndexFormatError(f"还原的文本不合法: {e}") from e
        if rlc.num_strings != num_strings:
            raise IndexFormatError("串数与头部不一致")
        if not np.array_equal(rlc.meta.to_numpy(), meta):
            raise IndexFormatError("元符号位向量与文本不一致")
        if not np.array_equal(bwt_from_sa(text, sa), bwt_codes):
            raise IndexFormatError("BWT 与 SA 不一致")

        return cls(rlc=rlc, sa=sa, bwt_codes=bwt_codes, bwt=WaveletTree(bwt_codes, HP_SIGMA), C=C)

    def save(self, path: str) -> None:
        with open(path, "wb") as f:
            f.write(self.to_bytes())
        logger.debug("索引已写入 %s", path)

    @classmethod
    def load(cls, path: str) -> "FmIndex":
        with open(path, "rb") as f:
            return cls.from_bytes(f.read())
