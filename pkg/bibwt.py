"""
隐式双向 BWT - 在同一个 BWT 上同步维护 X 与其反向互补 X̂ 的 SA 区间

集合对反向互补封闭，所以 BWT[s_X, e_X] 中符号的互补，排序后恰好是
X̂ 各次出现的右侧上下文；据此用一次 rangeCount 同步另一侧区间，
不需要第二个 BWT。
"""
from dataclasses import dataclass, replace
from typing import List, Tuple

from alphabet import HP_SENTINEL, strand_complement
from fmindex import FmIndex


@dataclass(frozen=True)
class BiRange:
    """X 的区间 fwd 与 X̂ 的区间 rc，位于同一个后缀数组中"""
    fwd_start: int
    fwd_end: int
    rc_start: int
    rc_end: int
    depth: int = 0

    @property
    def fwd(self) -> Tuple[int, int]:
        return self.fwd_start, self.fwd_end

    @property
    def rc(self) -> Tuple[int, int]:
        return self.rc_start, self.rc_end

    @property
    def size(self) -> int:
        return max(0, self.fwd_end - self.fwd_start + 1)

    @property
    def is_empty(self) -> bool:
        return self.fwd_end < self.fwd_start


class BiBwt:
    """
    双向扩展原语：extend_left / extend_right / enumerate_* / is_*_maximal，
    以及沿祖先回溯的 ancestors
    """

    def __init__(self, index: FmIndex):
        self.index = index
        self.bwt = index.bwt
        self.sigma = index.sigma

    def root_range(self) -> BiRange:
        n = self.index.n
        return BiRange(1, n, 1, n, 0)

    def _sync_offset(self, s: int, e: int, c: int) -> int:
        # 另一侧区间中排在 c 的互补之前的行数：先是哨兵，再是互补值更小（即编码更大）的符号
        if c == HP_SENTINEL:
            return 0
        sentinels = self.bwt.rank(HP_SENTINEL, e) - self.bwt.rank(HP_SENTINEL, s - 1)
        return sentinels + self.bwt.range_count(s, e, c + 1, self.sigma)

    def extend_left(self, b: BiRange, c: int) -> BiRange:
        """X -> cX"""
        if b.is_empty:
            return replace(b, depth=b.depth + 1)
        s, e = self.index.backward_step(b.fwd_start, b.fwd_end, c)
        if e < s:
            return BiRange(s, s - 1, b.rc_start, b.rc_start - 1, b.depth + 1)
        y = self._sync_offset(b.fwd_start, b.fwd_end, c)
        rc_start = b.rc_start + y
        return BiRange(s, e, rc_start, rc_start + (e - s), b.depth + 1)

    def extend_right(self, b: BiRange, c: int) -> BiRange:
        """X -> Xc：在 rc 一侧用 c 的互补做后向搜索，再同步 fwd"""
        if b.is_empty:
            return replace(b, depth=b.depth + 1)
        cc = strand_complement(c)
        s, e = self.index.backward_step(b.rc_start, b.rc_end, cc)
        if e < s:
            return BiRange(b.fwd_start, b.fwd_start - 1, s, s - 1, b.depth + 1)
        y = self._sync_offset(b.rc_start, b.rc_end, cc)
        fwd_start = b.fwd_start + y
        return BiRange(fwd_start, fwd_start + (e - s), s, e, b.depth + 1)

    def enumerate_left(self, b: BiRange) -> List[int]:
        """BWT[fwd] 中出现的不同符号（升序）"""
        if b.is_empty:
            return []
        return [c for c, _, _ in self.bwt.range_list(b.fwd_start, b.fwd_end)]

    def enumerate_right(self, b: BiRange) -> List[int]:
        """X 的右侧上下文：BWT[rc] 中不同符号的互补（升序）"""
        if b.is_empty:
            return []
        return sorted(strand_complement(c) for c, _, _ in self.bwt.range_list(b.rc_start, b.rc_end))

    def _has_two_symbols(self, s: int, e: int) -> bool:
        if e <= s:
            return False
        c = self.index.bwt_at(s)
        return self.bwt.rank(c, e) - self.bwt.rank(c, s - 1) < e - s + 1

    def _sentinels(self, s: int, e: int) -> int:
        if e < s:
            return 0
        return self.bwt.rank(HP_SENTINEL, e) - self.bwt.rank(HP_SENTINEL, s - 1)

    def is_left_maximal(self, b: BiRange) -> bool:
        return self._has_two_symbols(b.fwd_start, b.fwd_end)

    def is_right_maximal(self, b: BiRange) -> bool:
        return self._has_two_symbols(b.rc_start, b.rc_end)

    def is_left_branching(self, b: BiRange) -> bool:
        """
        每个串的哨兵视为不同的符号：左侧上下文含两个以上串首也算左分叉
        """
        return self.is_left_maximal(b) or self._sentinels(b.fwd_start, b.fwd_end) >= 2

    def is_right_branching(self, b: BiRange) -> bool:
        """X 在两个以上串尾出现（X̂ 在两个以上串首出现）也算右分叉"""
        return self.is_right_maximal(b) or self._sentinels(b.rc_start, b.rc_end) >= 2

    def spell(self, b: BiRange) -> List[int]:
        """
        从 s_v 出发用 LF⁻¹ 从左到右拼出 label(v)

        Raises:
            ValueError: depth 超过了串尾
        """
        if b.is_empty:
            raise ValueError("空区间没有标签")
        j, label = b.fwd_start, []
        for i in range(b.depth):
            c = self.index.bucket_of(j)
            if c == HP_SENTINEL:
                raise ValueError(f"深度 {b.depth} 超出串尾（在第 {i + 1} 个符号处遇到哨兵）")
            label.append(c)
            j = self.index.lf_inverse(j)
        return label

    def ancestors(self, b: BiRange) -> List[Tuple[BiRange, int]]:
        """
        后缀树节点 v 的所有真祖先，按深度升序（包括根）

        逐个拼出 label(v) 的符号；rc 一侧对互补符号做后向搜索，
        前缀 label(v)[:k] 右分叉时就是一个祖先（显式节点）。
        """
        if b.depth == 0:
            return []
        label = self.spell(b)
        w = self.root_range()
        found = [(w, 0)]
        for c in label[:-1]:
            w = self.extend_right(w, c)
            if self.is_right_branching(w):
                found.append((w, w.depth))
        return found
