"""
字母表模块 - DNA碱基字母表、互补置换、同聚物扩展字母表 Σ^hp 与映射 g
"""
from typing import Iterable, List

# 基础字母表 Σ = [1,5]，1 为哨兵 $
SENTINEL = 1
BASE_SIGMA = 5
BASE_LETTERS = "$ACGT"
BASE_CODES = {"A": 2, "C": 3, "G": 4, "T": 5}

# 同聚物字母表 Σ^hp = [1,10]，按互补对称排列
HP_SIGMA = 10
HP_LETTERS = ("$", "A", "A*", "C", "C*", "G*", "G", "T*", "T", "$*")
META_CODES = frozenset({3, 5, 6, 8, 10})
HP_SENTINEL = 1
HP_META_SENTINEL = 10

_BASE_COMPLEMENT = (0, 1, 5, 4, 3, 2)
# 碱基 -> (单个符号, 元符号)
_BASE_TO_HP = {1: (1, 10), 2: (2, 3), 3: (4, 5), 4: (7, 6), 5: (9, 8)}
_HP_TO_BASE = (0, 1, 2, 2, 3, 3, 4, 4, 5, 5, 1)


class InvalidSymbolError(ValueError):
    """非法符号（超出字母表或非 ACGT 字符）"""


def _check_base(s: int) -> int:
    if not 1 <= s <= BASE_SIGMA:
        raise InvalidSymbolError(f"碱基编码越界: {s}（应在 [1,{BASE_SIGMA}]）")
    return s


def _check_hp(s: int) -> int:
    if not 1 <= s <= HP_SIGMA:
        raise InvalidSymbolError(f"同聚物编码越界: {s}（应在 [1,{HP_SIGMA}]）")
    return s


def complement_base(s: int) -> int:
    """碱基互补 π：A<->T, C<->G，$ 保持不变"""
    return _BASE_COMPLEMENT[_check_base(s)]


def complement_hp(s: int) -> int:
    """Σ^hp 上的互补：编码 k 映射到 11-k（对称排列）"""
    return HP_SIGMA + 1 - _check_hp(s)


def strand_complement(s: int) -> int:
    """
    文本层面的互补符号

    R$ 的反向互补是 R̂$，哨兵在链之间映射到自身；其余符号同 complement_hp。
    """
    if s == HP_SENTINEL:
        return HP_SENTINEL
    return complement_hp(s)


def g(s: int) -> int:
    """把元符号映射回碱基；普通符号返回其本身对应的碱基"""
    return _HP_TO_BASE[_check_hp(s)]


def is_meta(s: int) -> bool:
    """是否为元符号 c*"""
    return _check_hp(s) in META_CODES


def hp_symbol(base: int, run_length: int) -> int:
    """
    把一个碱基游程编码为 Σ^hp 符号

    Args:
        base: 碱基编码 [1,5]
        run_length: 游程长度 >= 1

    Returns:
        int: 长度为 1 时为普通符号，否则为元符号
    """
    if run_length < 1:
        raise ValueError(f"游程长度必须 >= 1，收到 {run_length}")
    plain, meta = _BASE_TO_HP[_check_base(base)]
    return plain if run_length == 1 else meta


def encode_read(read: str) -> List[int]:
    """
    把 ACGT 字符串编码为碱基编码（大小写不敏感）

    Raises:
        InvalidSymbolError: 出现 ACGT 以外的字符（包括 N），消息中带 1 起始偏移
    """
    codes = []
    for offset, ch in enumerate(read.upper(), 1):
        code = BASE_CODES.get(ch)
        if code is None:
            raise InvalidSymbolError(f"非法字符 '{ch}'，位置 {offset}")
        codes.append(code)
    return codes


def decode_bases(codes: Iterable[int]) -> str:
    return "".join(BASE_LETTERS[_check_base(int(c)) - 1] for c in codes)


def decode_hp(codes: Iterable[int]) -> List[str]:
    return [HP_LETTERS[_check_hp(int(c)) - 1] for c in codes]


if __name__ == "__main__":
    print("=" * 60)
    print("测试字母表")
    print("=" * 60)
    for code in range(1, HP_SIGMA + 1):
        print(f"  {HP_LETTERS[code - 1]:>2} -> 互补 {HP_LETTERS[complement_hp(code) - 1]:>2}"
              f" | g = {BASE_LETTERS[g(code) - 1]}")
