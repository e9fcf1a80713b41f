"""
主程序 - rlmem：HiFi 读段之间的全对全 MEM 查找
功能: FASTA 读取 + 同聚物压缩 + 隐式双向 BWT 索引 + MEM 枚举 + TSV 输出

用法:
    rlmem mems -i reads.fa --min-mem LEN --max-excess E [--mode sa|grid]
               [--coords rle|expanded|both] [-t N] [-o out.tsv] [--index reads.idx]
    rlmem index -i reads.fa -o reads.idx

坐标均为 1 起始闭区间；反向互补链上的记录映射回正向读段坐标，
读段 id 为 FASTA 记录序号（0 起始）加链方向 +/-。
"""
import argparse
import logging
import os
import sys
from typing import List, Optional

import pandas as pd

from alphabet import InvalidSymbolError
from collection import EmptyCollectionError, load_fasta
from config import Config, RunConfig
from fmindex import FmIndex, IndexFormatError
from memfinder import CoordSpace, MemFinder, MemParams, MemRecord
from rle import RlcCollection, compress

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2

RLE_COLUMNS = ["id_a", "start_a", "end_a", "id_b", "start_b", "end_b", "length_rlc", "excess"]
EXPANDED_COLUMNS = ["exp_start_a", "exp_end_a", "exp_start_b", "exp_end_b"]


def status(text: str):
    """状态信息写到 stderr，stdout 留给 TSV"""
    print(text, file=sys.stderr)


def print_header(text: str):
    """打印美化的标题"""
    status("\n" + "=" * 60)
    status(text)
    status("=" * 60)


def build_index(fasta_path: str) -> FmIndex:
    """FASTA -> 扩展集合 -> R^h -> FM 索引"""
    collection = load_fasta(fasta_path)
    status(f"✅ 读取 {collection.k} 条读段（含反向互补共 {collection.num_strings} 个串，n={collection.n}）")
    rlc = compress(collection)
    status(f"📊 同聚物压缩: n={collection.n} -> n_h={rlc.n}，H 长度 {rlc.H.size}")
    return FmIndex.build(rlc)


def read_label(string_id: int) -> str:
    """串 id -> 读段 id：偶数为正链 +，奇数为反向互补 -"""
    return f"{string_id // 2}{'+' if string_id % 2 == 0 else '-'}"


def _forward_side(rlc: RlcCollection, sid: int, start: int, end: int, exp_start: int, exp_end: int):
    # 反向互补串上的区间映射回正向读段坐标
    if sid % 2 == 0:
        return start, end, exp_start, exp_end
    length = rlc.string_length(sid)
    exp_length = rlc.expanded_string_length(sid)
    return length - end + 1, length - start + 1, exp_length - exp_end + 1, exp_length - exp_start + 1


def records_to_frame(records: List[MemRecord], rlc: RlcCollection, coord_space: str) -> pd.DataFrame:
    """
    把规范化后的记录整理成输出表格

    Args:
        records: 已排序的 MemRecord
        rlc: 用于坐标换算的压缩集合
        coord_space: rle / expanded / both

    Returns:
        pd.DataFrame: 列顺序固定，空结果也保留表头
    """
    rows = []
    for rec in records:
        a = _forward_side(rlc, rec.id_a, rec.start_a, rec.end_a, rec.exp_start_a, rec.exp_end_a)
        b = _forward_side(rlc, rec.id_b, rec.start_b, rec.end_b, rec.exp_start_b, rec.exp_end_b)
        rows.append({
            "id_a": read_label(rec.id_a), "start_a": a[0], "end_a": a[1],
            "id_b": read_label(rec.id_b), "start_b": b[0], "end_b": b[1],
            "length_rlc": rec.length, "excess": rec.excess,
            "exp_start_a": a[2], "exp_end_a": a[3], "exp_start_b": b[2], "exp_end_b": b[3],
        })
    frame = pd.DataFrame(rows, columns=RLE_COLUMNS + EXPANDED_COLUMNS)

    space = CoordSpace(coord_space)
    if space == CoordSpace.RLE:
        return frame[RLE_COLUMNS]
    if space == CoordSpace.EXPANDED:
        frame = frame[["id_a", "exp_start_a", "exp_end_a", "id_b", "exp_start_b", "exp_end_b",
                       "length_rlc", "excess"]]
        return frame.rename(columns={"exp_start_a": "start_a", "exp_end_a": "end_a",
                                     "exp_start_b": "start_b", "exp_end_b": "end_b"})
    return frame


def write_frame(frame: pd.DataFrame, output_path: Optional[str]):
    if output_path:
        frame.to_csv(output_path, sep="\t", index=False, lineterminator="\n")
    else:
        frame.to_csv(sys.stdout, sep="\t", index=False, lineterminator="\n")


def _index_is_stale(cfg: RunConfig) -> bool:
    """索引文件早于 FASTA 时视为过期"""
    return bool(cfg.input_path) and os.path.getmtime(cfg.input_path) > os.path.getmtime(cfg.index_path)


def _obtain_index(cfg: RunConfig) -> FmIndex:
    if cfg.index_path and os.path.exists(cfg.index_path):
        if _index_is_stale(cfg):
            status(f"⚠️ 索引 {cfg.index_path} 早于输入文件，重新建立")
            index = build_index(cfg.input_path)
            index.save(cfg.index_path)
            status(f"💾 索引已保存: {cfg.index_path}")
            return index
        if cfg.input_path:
            status(f"⚠️ 使用已有索引 {cfg.index_path}，忽略输入文件 {cfg.input_path}")
        index = FmIndex.load(cfg.index_path)
        status(f"✅ 已加载索引: {cfg.index_path}（n_h={index.n}）")
        return index
    if not cfg.input_path:
        raise FileNotFoundError(f"索引文件不存在: {cfg.index_path}")
    index = build_index(cfg.input_path)
    if cfg.index_path:
        index.save(cfg.index_path)
        status(f"💾 索引已保存: {cfg.index_path}")
    return index


def run(cfg: RunConfig) -> int:
    """
    运行一次完整的 MEM 查找

    Args:
        cfg: 运行配置

    Returns:
        int: 退出码（0 成功，1 I/O 错误，2 输入或索引格式错误）
    """
    print_header("🚀 rlmem: 全对全 MEM 查找")

    try:
        index = _obtain_index(cfg)
        params = MemParams(tau=cfg.tau, excess_max=cfg.excess_max,
                           report_mode=cfg.mode, coord_space=cfg.coord_space)
        finder = MemFinder(index, params)
        records = finder.find(threads=cfg.threads)
        status(f"📊 遍历 {finder.last_stats.nodes} 个节点，得到 {len(records)} 个 MEM")
        write_frame(records_to_frame(records, index.rlc, cfg.coord_space), cfg.output_path)
    except (InvalidSymbolError, EmptyCollectionError, IndexFormatError, UnicodeDecodeError) as e:
        status(f"❌ 输入无效: {e}")
        return EXIT_INVALID
    except OSError as e:
        status(f"❌ 读写失败: {e}")
        return EXIT_IO

    status("✅ 完成")
    return EXIT_OK


def run_index(input_path: str, output_path: Optional[str]) -> int:
    """rlmem index：建索引并写入文件"""
    print_header("🚀 rlmem: 建立索引")
    output_path = output_path or input_path + Config.INDEX_SUFFIX
    try:
        build_index(input_path).save(output_path)
    except (InvalidSymbolError, EmptyCollectionError, UnicodeDecodeError) as e:
        status(f"❌ 输入无效: {e}")
        return EXIT_INVALID
    except OSError as e:
        status(f"❌ 读写失败: {e}")
        return EXIT_IO
    status(f"✅ 索引已写入: {output_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rlmem",
        description="HiFi 读段之间的全对全 MEM 查找（坐标为 1 起始闭区间）")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    sub = parser.add_subparsers(dest="command", required=True)

    mems = sub.add_parser("mems", help="查找 MEM 并输出 TSV")
    mems.add_argument("-i", "--input", help="FASTA 文件")
    mems.add_argument("--min-mem", type=int, default=None, help="最小 MEM 长度（压缩后符号数）")
    mems.add_argument("--max-excess", type=int, default=None, help="允许的最大游程超额")
    mems.add_argument("--mode", choices=["sa", "grid"], default=None, help="报告方式")
    mems.add_argument("--coords", choices=["rle", "expanded", "both"], default=None, help="输出坐标空间")
    mems.add_argument("-t", "--threads", type=int, default=None, help="线程数（默认取 RLMEM_THREADS）")
    mems.add_argument("-o", "--output", help="输出文件（默认 stdout）")
    mems.add_argument("--index", help="索引文件：存在则加载，否则建好后保存")

    index = sub.add_parser("index", help="建立并保存索引")
    index.add_argument("-i", "--input", required=True, help="FASTA 文件")
    index.add_argument("-o", "--output", help="索引文件（默认 <输入>.idx）")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == "index":
        return run_index(args.input, args.output)

    # 只读取命令行没有给出的环境变量，取值范围由 RunConfig 校验
    try:
        cfg = RunConfig(
            input_path=args.input,
            tau=args.min_mem if args.min_mem is not None else Config.min_mem(),
            excess_max=args.max_excess if args.max_excess is not None else Config.max_excess(),
            mode=args.mode or Config.mode(),
            coord_space=args.coords or Config.coords(),
            threads=args.threads if args.threads is not None else Config.threads(),
            index_path=args.index,
            output_path=args.output,
        )
    except ValueError as e:
        status(str(e))
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
