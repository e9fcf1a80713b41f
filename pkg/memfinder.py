"""
MEM 查找模块 - 后缀链接树遍历 + repMEM，按游程超额过滤

遍历从根出发，只沿显式 Weiner 链接（cW 右分叉）入栈，因此每个
后缀树内部节点恰好访问一次；左右都分叉且深度 >= τ 的节点调用 repMEM。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from alphabet import HP_SENTINEL, g
from bibwt import BiBwt, BiRange
from fmindex import FmIndex
from grid import MemGrid
from rle import RlcCollection

logger = logging.getLogger(__name__)


class ReportMode(str, Enum):
    SA = "sa"
    GRID = "grid"


class CoordSpace(str, Enum):
    RLE = "rle"
    EXPANDED = "expanded"
    BOTH = "both"


@dataclass(frozen=True)
class MemParams:
    """
    查找参数

    Args:
        tau: 最小 MEM 长度（R^h 符号数）
        excess_max: 允许的最大游程超额 e
        report_mode: sa（扫描 SA）或 grid（网格报告）
        coord_space: 输出坐标空间
        verify: 每次输出前直接比对文本（调试用）
    """
    tau: int = 2
    excess_max: int = 0
    report_mode: ReportMode = ReportMode.SA
    coord_space: CoordSpace = CoordSpace.BOTH
    verify: bool = False

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError(f"最小 MEM 长度必须 >= 1，收到 {self.tau}")
        if self.excess_max < 0:
            raise ValueError(f"最大游程超额必须 >= 0，收到 {self.excess_max}")
        try:
            object.__setattr__(self, "report_mode", ReportMode(self.report_mode))
            object.__setattr__(self, "coord_space", CoordSpace(self.coord_space))
        except ValueError as e:
            raise ValueError(f"未知的报告模式或坐标空间: {e}") from e


@dataclass(frozen=True)
class MemRecord:
    """一对 MEM 出现；坐标均为串内 1 起始闭区间"""
    id_a: int
    start_a: int
    end_a: int
    id_b: int
    start_b: int
    end_b: int
    length: int
    excess: int
    exp_start_a: int
    exp_end_a: int
    exp_start_b: int
    exp_end_b: int

    def sort_key(self) -> Tuple[int, int, int, int]:
        return self.id_a, self.start_a, self.id_b, self.start_b

    def swapped(self) -> "MemRecord":
        return MemRecord(self.id_b, self.start_b, self.end_b, self.id_a, self.start_a, self.end_a,
                         self.length, self.excess,
                         self.exp_start_b, self.exp_end_b, self.exp_start_a, self.exp_end_a)

    def ordered(self) -> "MemRecord":
        """保证 id_a < id_b"""
        return self if self.id_a < self.id_b else self.swapped()


@dataclass
class NodeProfile:
    depth: int
    occurrences: int
    extend_calls: int
    points: int


@dataclass
class TraversalStats:
    nodes: int = 0
    rep_mem_calls: int = 0
    emitted: int = 0
    profile: bool = False
    profiles: List[NodeProfile] = field(default_factory=list)

    def merge(self, other: "TraversalStats") -> None:
        self.nodes += other.nodes
        self.rep_mem_calls += other.rep_mem_calls
        self.emitted += other.emitted
        self.profiles.extend(other.profiles)


Sink = Callable[[MemRecord], None]


def rl_excess(rlc: RlcCollection, pos_a: int, pos_b: int, d: int, check: bool = False) -> int:
    """
    游程超额：对齐的 d 个游程长度差的最大绝对值

    Args:
        rlc: 压缩集合
        pos_a, pos_b: R^h 中的全局起始位置（1 起始）
        d: 长度
        check: 为 True 时断言两段的 g() 符号一致

    Raises:
        ValueError: 区间越过哨兵
    """
    if d <= 0:
        return 0
    for pos in (pos_a, pos_b):
        end = pos + d - 1
        if pos < 1 or end > rlc.n:
            raise ValueError(f"区间 [{pos},{end}] 越界")
        if rlc.boundaries.rank1(end) - rlc.boundaries.rank1(pos - 1):
            raise ValueError(f"区间 [{pos},{end}] 跨越了哨兵")
    if check:
        seg_a = [g(int(c)) for c in rlc.text[pos_a - 1:pos_a - 1 + d]]
        seg_b = [g(int(c)) for c in rlc.text[pos_b - 1:pos_b - 1 + d]]
        assert seg_a == seg_b, f"游程压缩后的符号不一致: {seg_a} vs {seg_b}"
    lens_a = rlc.run_lengths[pos_a - 1:pos_a - 1 + d]
    lens_b = rlc.run_lengths[pos_b - 1:pos_b - 1 + d]
    return int(np.abs(lens_a - lens_b).max())


def make_record(rlc: RlcCollection, pos_a: int, pos_b: int, d: int, excess: int) -> MemRecord:
    """由全局位置构造记录（串内坐标，id_a < id_b）"""
    id_a, off_a = rlc.locate(pos_a)
    id_b, off_b = rlc.locate(pos_b)
    exp_a = rlc.local_expanded_span(pos_a, d)
    exp_b = rlc.local_expanded_span(pos_b, d)
    rec = MemRecord(id_a, off_a, off_a + d - 1, id_b, off_b, off_b + d - 1, d, excess,
                    exp_a[0], exp_a[1], exp_b[0], exp_b[1])
    return rec.ordered()


def canonicalize(rec: MemRecord, rlc: RlcCollection) -> MemRecord:
    """
    同一个 MEM 在正反链上各出现一次；取 (id_a, id_b, start_a, start_b) 最小的形式
    """
    def mirror(sid: int, start: int, end: int, exp_start: int, exp_end: int):
        length = rlc.string_length(sid)
        exp_length = rlc.expanded_string_length(sid)
        return sid ^ 1, length - end + 1, length - start + 1, exp_length - exp_end + 1, exp_length - exp_start + 1

    rec = rec.ordered()
    a = mirror(rec.id_a, rec.start_a, rec.end_a, rec.exp_start_a, rec.exp_end_a)
    b = mirror(rec.id_b, rec.start_b, rec.end_b, rec.exp_start_b, rec.exp_end_b)
    mirrored = MemRecord(a[0], a[1], a[2], b[0], b[1], b[2], rec.length, rec.excess,
                         a[3], a[4], b[3], b[4]).ordered()

    def key(r: MemRecord):
        return r.id_a, r.id_b, r.start_a, r.start_b

    return min(rec, mirrored, key=key)


class MemFinder:
    """
    在 FM 索引上枚举所有串对之间的 MEM
    """

    def __init__(self, index: FmIndex, params: MemParams, grid: Optional[MemGrid] = None):
        self.index = index
        self.rlc = index.rlc
        self.params = params
        self.bi = BiBwt(index)
        if params.report_mode == ReportMode.GRID and grid is None:
            grid = MemGrid.build(index)
        self.grid = grid
        self.last_stats = TraversalStats()

    # ------------------------------------------------------------
    # 遍历
    # ------------------------------------------------------------
    def traverse(self, sink: Sink, profile: bool = False) -> TraversalStats:
        """
        单线程遍历整棵后缀链接树，原始（未规范化）记录送入 sink
        """
        stats = TraversalStats(profile=profile)
        self._walk([(self.bi.root_range(), 0)], sink, stats)
        return stats

    def _walk(self, stack: List[Tuple[BiRange, int]], sink: Sink, stats: TraversalStats) -> None:
        while stack:
            v, d = stack.pop()
            stack.extend(self._visit(v, d, sink, stats))

    def _visit(self, v: BiRange, d: int, sink: Sink, stats: TraversalStats) -> List[Tuple[BiRange, int]]:
        stats.nodes += 1
        if d >= self.params.tau and self.bi.is_left_branching(v) and self.bi.is_right_branching(v):
            if self.params.report_mode == ReportMode.GRID:
                self.rep_mem_grid(v, d, sink, stats)
            else:
                self.rep_mem(v, d, sink, stats)

        pushed = []
        for c in self.bi.enumerate_left(v):
            if c == HP_SENTINEL:
                continue
            u = self.bi.extend_left(v, c)
            if self.bi.is_right_branching(u):
                pushed.append((u, d + 1))
        return pushed

    def find(self, threads: int = 1, profile: bool = False) -> List[MemRecord]:
        """
        枚举、规范化、去重并排序

        threads > 1 时按根的显式 Weiner 链接划分子树并行遍历；
        结果在最终排序后与线程数无关。
        """
        records: List[MemRecord] = []
        stats = TraversalStats(profile=profile)
        root = self.bi.root_range()

        if threads <= 1:
            self._walk([(root, 0)], records.append, stats)
        else:
            seeds = self._visit(root, 0, records.append, stats)
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for part, part_stats in pool.map(lambda seed: self._run_subtree(seed, profile), seeds):
                    records.extend(part)
                    stats.merge(part_stats)

        self.last_stats = stats
        unique = {canonicalize(rec, self.rlc) for rec in records}
        result = sorted(unique, key=MemRecord.sort_key)
        logger.debug("遍历 %d 个节点，原始输出 %d 条，规范化后 %d 条", stats.nodes, len(records), len(result))
        return result

    def _run_subtree(self, seed: Tuple[BiRange, int], profile: bool) -> Tuple[List[MemRecord], TraversalStats]:
        part: List[MemRecord] = []
        stats = TraversalStats(profile=profile)
        self._walk([seed], part.append, stats)
        return part, stats

    # ------------------------------------------------------------
    # repMEM
    # ------------------------------------------------------------
    def _children(self, v: BiRange) -> List[Tuple[int, BiRange]]:
        return [(c, self.bi.extend_right(v, c)) for c in self.bi.enumerate_right(v)]

    def rep_mem(self, v: BiRange, d: int, sink: Sink, stats: Optional[TraversalStats] = None) -> None:
        """
        SA 模式：每个孩子 Xc 的每个 Weiner 链接 aXc 构成一组出现位置，
        组间左右符号都不同（或为哨兵）时两两配对
        """
        children = self._children(v)
        calls = len(children)
        groups: List[Tuple[int, int, List[int]]] = []
        for c, child in children:
            for a in self.bi.enumerate_left(child):
                link = self.bi.extend_left(child, a)
                calls += 1
                if a == HP_SENTINEL:
                    rows = range(link.fwd_start, link.fwd_end + 1)
                    positions = [self.index.sa_at(self.index.lf_inverse(x)) for x in rows]
                else:
                    positions = [int(p) + 1 for p in self.index.sa[link.fwd_start - 1:link.fwd_end]]
                groups.append((c, a, positions))

        emitted = self._report_groups(groups, d, sink)
        self._record(stats, v, d, calls, 0, emitted)

    def rep_mem_grid(self, v: BiRange, d: int, sink: Sink, stats: Optional[TraversalStats] = None) -> None:
        """
        网格模式：对每个 Weiner 链接 [l1,l2] 查询区域 [i,j]×[l1,l2]，
        再按孩子区间 Q 切分，得到 L×Q 的格子
        """
        children = self._children(v)
        calls = len(children)
        starts = [child.fwd_start for _, child in children]
        links = []
        for a in self.bi.enumerate_left(v):
            links.append((a, self.bi.extend_left(v, a)))
            calls += 1

        cells: Dict[Tuple[int, int], List[int]] = {}
        points = 0
        for a, link in links:
            for row, _, pos in self.grid.report_area(v.fwd_start, v.fwd_end, link.fwd_start, link.fwd_end):
                points += 1
                k = np.searchsorted(starts, row, side="right") - 1
                cells.setdefault((children[k][0], a), []).append(pos)

        groups = [(c, a, positions) for (c, a), positions in sorted(cells.items())]
        emitted = self._report_groups(groups, d, sink)
        self._record(stats, v, d, calls, points, emitted)

    def _record(self, stats: Optional[TraversalStats], v: BiRange, d: int,
                calls: int, points: int, emitted: int) -> None:
        if stats is None:
            return
        stats.rep_mem_calls += 1
        stats.emitted += emitted
        if stats.profile:
            stats.profiles.append(NodeProfile(d, v.size, calls, points))

    def _report_groups(self, groups: List[Tuple[int, int, List[int]]], d: int, sink: Sink) -> int:
        emitted = 0
        for gi, (ca, la, pa) in enumerate(groups):
            for gj in range(gi, len(groups)):
                cb, lb, pb = groups[gj]
                if gi == gj:
                    # 同一组只有左右都是串边界时才互为极大
                    if ca != HP_SENTINEL or la != HP_SENTINEL:
                        continue
                    pairs = combinations(pa, 2)
                else:
                    if ca == cb and ca != HP_SENTINEL:
                        continue
                    if la == lb and la != HP_SENTINEL:
                        continue
                    pairs = product(pa, pb)
                for p, q in pairs:
                    emitted += self._emit(p, q, d, sink)
        return emitted

    def _emit(self, p: int, q: int, d: int, sink: Sink) -> int:
        id_p, id_q = self.rlc.string_id_of(p), self.rlc.string_id_of(q)
        if id_p == id_q or id_p == id_q ^ 1:
            return 0
        excess = rl_excess(self.rlc, p, q, d)
        if excess > self.params.excess_max:
            return 0
        if self.params.verify:
            self._verify(p, q, d)
        sink(make_record(self.rlc, p, q, d, excess))
        return 1

    def _verify(self, p: int, q: int, d: int) -> None:
        text = self.rlc.text
        assert d >= self.params.tau
        assert np.array_equal(text[p - 1:p - 1 + d], text[q - 1:q - 1 + d]), "MEM 两侧内容不一致"
        left_p, left_q = int(text[p - 2]) if p > 1 else HP_SENTINEL, int(text[q - 2]) if q > 1 else HP_SENTINEL
        assert left_p != left_q or left_p == HP_SENTINEL, "MEM 可以向左扩展"
        right_p, right_q = int(text[p - 1 + d]), int(text[q - 1 + d])
        assert right_p != right_q or right_p == HP_SENTINEL, "MEM 可以向右扩展"


def find_mems(index: FmIndex, params: MemParams, threads: int = 1) -> List[MemRecord]:
    """便捷入口：构造 MemFinder 并返回规范化后的 MEM 列表"""
    return MemFinder(index, params).find(threads=threads)
