"""
暴力参照实现 - 后缀排序、模式扫描、rank/select、朴素后缀树与 MEM 枚举

运行 `python tests/oracle.py` 会重新打印文档和测试中用到的推导样例。
"""
import os
import random
import sys
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from alphabet import HP_SENTINEL  # noqa: E402
from collection import build_collection  # noqa: E402
from fmindex import FmIndex  # noqa: E402
from memfinder import MemRecord, canonicalize, make_record  # noqa: E402
from rle import RlcCollection, compress  # noqa: E402

BASES = "ACGT"


# ============================================================
# 后缀排序与模式扫描
# ============================================================
def string_ids(text: Sequence[int]) -> List[int]:
    ids, sid = [], 0
    for c in text:
        ids.append(sid)
        if c == HP_SENTINEL:
            sid += 1
    return ids


def naive_suffix_sort(text: Sequence[int]) -> List[int]:
    """逐个比较后缀（截止到自己的哨兵），哨兵按串 id 排序且小于所有字符"""
    text = [int(c) for c in text]
    ids = string_ids(text)
    m = ids[-1] + 1

    def key(i: int):
        out = []
        for p in range(i, len(text)):
            if text[p] == HP_SENTINEL:
                out.append(ids[p])
                break
            out.append(m + text[p])
        return out

    return [i + 1 for i in sorted(range(len(text)), key=key)]


def naive_bwt(text: Sequence[int], sa: Sequence[int]) -> List[int]:
    text = [int(c) for c in text]
    out = []
    for p in sa:
        if p == 1 or text[p - 2] == HP_SENTINEL:
            out.append(HP_SENTINEL)
        else:
            out.append(text[p - 2])
    return out


def naive_occurrences(text: Sequence[int], pattern: Sequence[int]) -> List[int]:
    """模式出现的 1 起始位置；空模式匹配所有位置"""
    text, pattern = [int(c) for c in text], [int(c) for c in pattern]
    k = len(pattern)
    if k == 0:
        return list(range(1, len(text) + 1))
    return [p + 1 for p in range(len(text) - k + 1) if text[p:p + k] == pattern]


def naive_rows(text: Sequence[int], sa: Sequence[int], pattern: Sequence[int]) -> List[int]:
    """以 pattern 开头的后缀所在的行"""
    occ = set(naive_occurrences(text, pattern))
    return [j for j, p in enumerate(sa, 1) if p in occ]


# ============================================================
# rank / select / rangeList / rangeCount
# ============================================================
def naive_rank(seq: Sequence[int], c: int, i: int) -> int:
    return sum(1 for x in seq[:i] if x == c)


def naive_select(seq: Sequence[int], c: int, r: int) -> Optional[int]:
    seen = 0
    for pos, x in enumerate(seq, 1):
        if x == c:
            seen += 1
            if seen == r:
                return pos
    return None


def naive_range_list(seq: Sequence[int], i: int, j: int) -> List[Tuple[int, int, int]]:
    symbols = sorted(set(seq[i - 1:j]))
    return [(c, naive_rank(seq, c, i - 1), naive_rank(seq, c, j)) for c in symbols]


def naive_range_count(seq: Sequence[int], i: int, j: int, lo: int, hi: int) -> int:
    return sum(1 for x in seq[i - 1:j] if lo <= x <= hi)


# ============================================================
# 朴素后缀树（每个串的哨兵视为不同符号）
# ============================================================
def substring_occurrences(text: Sequence[int]) -> Dict[Tuple[int, ...], List[int]]:
    """所有不含哨兵的子串 -> 出现位置"""
    text = [int(c) for c in text]
    occ: Dict[Tuple[int, ...], List[int]] = {}
    start = 0
    for end, c in enumerate(text):
        if c != HP_SENTINEL:
            continue
        for i in range(start, end):
            for j in range(i + 1, end + 1):
                occ.setdefault(tuple(text[i:j]), []).append(i + 1)
        start = end + 1
    return occ


def _right_contexts(text, ids, positions, length):
    out = set()
    for p in positions:
        c = int(text[p - 1 + length])
        out.add(("$", ids[p - 1]) if c == HP_SENTINEL else c)
    return out


def _left_contexts(text, ids, positions):
    out = set()
    for p in positions:
        if p == 1 or int(text[p - 2]) == HP_SENTINEL:
            out.add(("$", ids[p - 1]))
        else:
            out.add(int(text[p - 2]))
    return out


def naive_nodes(text: Sequence[int]) -> Set[Tuple[int, ...]]:
    """后缀树内部节点的标签：根与所有右分叉子串"""
    ids = string_ids(text)
    nodes = {()}
    for label, positions in substring_occurrences(text).items():
        if len(_right_contexts(text, ids, positions, len(label))) >= 2:
            nodes.add(label)
    return nodes


def naive_maximal_nodes(text: Sequence[int]) -> Set[Tuple[int, ...]]:
    """左右都分叉的节点"""
    ids = string_ids(text)
    occ = substring_occurrences(text)
    return {label for label in naive_nodes(text)
            if label and len(_left_contexts(text, ids, occ[label])) >= 2}


def naive_ancestor_depths(nodes: Set[Tuple[int, ...]], label: Tuple[int, ...]) -> List[int]:
    return [d for d in range(len(label)) if label[:d] in nodes]


# ============================================================
# MEM
# ============================================================
def naive_mems(rlc: RlcCollection, tau: int, excess_max: int) -> Set[MemRecord]:
    """
    对每一对不同且不互为反向互补的串，枚举左极大的起点并向右扩展到底
    """
    strings = [np.asarray(rlc.string(sid), dtype=np.int64) for sid in range(rlc.num_strings)]
    starts = [rlc.string_bounds(sid)[0] for sid in range(rlc.num_strings)]
    result: Set[MemRecord] = set()

    for x in range(rlc.num_strings):
        for y in range(x + 1, rlc.num_strings):
            if y == x ^ 1:
                continue
            sx, sy = strings[x], strings[y]
            eq = sx[:, None] == sy[None, :]
            lcp = np.zeros((sx.size + 1, sy.size + 1), dtype=np.int64)
            for i in range(sx.size - 1, -1, -1):
                lcp[i, :-1] = np.where(eq[i], 1 + lcp[i + 1, 1:], 0)
            for i, j in zip(*np.nonzero(lcp[:-1, :-1] >= tau)):
                if i > 0 and j > 0 and eq[i - 1, j - 1]:
                    continue
                d = int(lcp[i, j])
                p, q = starts[x] + int(i), starts[y] + int(j)
                runs_a = rlc.run_lengths[p - 1:p - 1 + d]
                runs_b = rlc.run_lengths[q - 1:q - 1 + d]
                excess = int(np.abs(runs_a - runs_b).max())
                if excess <= excess_max:
                    result.add(canonicalize(make_record(rlc, p, q, d, excess), rlc))
    return result


# ============================================================
# 随机 HiFi 风格读段
# ============================================================
def random_runs(rng: random.Random, n_runs: int, max_run: int = 6) -> List[Tuple[str, int]]:
    runs, prev = [], None
    for _ in range(n_runs):
        base = rng.choice([b for b in BASES if b != prev])
        runs.append((base, rng.randint(1, max_run) if rng.random() < 0.4 else 1))
        prev = base
    return runs


def revcomp(read: str) -> str:
    table = {"A": "T", "C": "G", "G": "C", "T": "A"}
    return "".join(table[b] for b in reversed(read))


def random_reads(rng: random.Random, n_reads: int, min_len: int = 10, max_len: int = 40,
                 max_run: int = 6, noise: int = 1) -> List[str]:
    """
    从一段随机基因组上截取读段，对长度 >= 2 的游程加 ±noise 的扰动，
    并随机取反向互补，保证读段之间有足够多的共享片段
    """
    genome = random_runs(rng, 4 * max_len, max_run)
    reads = []
    for _ in range(n_reads):
        target = rng.randint(min_len, max_len)
        i = rng.randrange(0, len(genome) - 1)
        out = []
        while i < len(genome) and sum(length for _, length in out) < target:
            base, length = genome[i]
            if length >= 2 and noise:
                length = max(2, length + rng.randint(-noise, noise))
            out.append((base, length))
            i += 1
        read = "".join(base * length for base, length in out)
        reads.append(revcomp(read) if rng.random() < 0.3 else read)
    return reads


def index_of(reads: Sequence[str]) -> FmIndex:
    return FmIndex.build(compress(build_collection(list(reads))))


if __name__ == "__main__":
    print("=" * 60)
    print("推导样例")
    print("=" * 60)

    aca = [2, 4, 2, 1]
    sa = naive_suffix_sort(aca)
    print(f"ACA$ 的 SA: {sa}")
    print(f"ACA$ 的 BWT: {naive_bwt(aca, sa)}")

    two = [2, 1, 4, 1]
    sa = naive_suffix_sort(two)
    print(f"{{A$, C$}} 的 SA: {sa}，BWT: {naive_bwt(two, sa)}")

    rlc = compress(build_collection(["AAACGG", "ACGGGG"]))
    print(f"AAACGG / ACGGGG 的游程长度: {rlc.run_lengths.tolist()}")

    for rec in sorted(naive_mems(compress(build_collection(["AACGTA", "TACGTT"])), 2, 1),
                      key=MemRecord.sort_key):
        print(f"MEM: {rec}")
