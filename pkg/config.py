"""
配置文件 - 管理所有配置项
"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

_MODES = ("sa", "grid")
_COORDS = ("rle", "expanded", "both")


class Config:
    """配置类（默认值，可被 .env 或环境变量覆盖）"""

    # MEM 参数
    DEFAULT_MIN_MEM = 2
    DEFAULT_MAX_EXCESS = 0
    DEFAULT_MODE = "sa"
    DEFAULT_COORDS = "both"
    DEFAULT_THREADS = 1

    # 索引文件后缀
    INDEX_SUFFIX = ".idx"

    @staticmethod
    def _env_int(key: str, default: int) -> int:
        raw = os.getenv(key)
        if raw is None or raw.strip() == "":
            return default
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"❌ 环境变量 {key} 必须是整数，收到 '{raw}'")

    @classmethod
    def threads(cls) -> int:
        """RLMEM_THREADS，调用时读取"""
        return cls._env_int("RLMEM_THREADS", cls.DEFAULT_THREADS)

    @classmethod
    def min_mem(cls) -> int:
        return cls._env_int("RLMEM_MIN_MEM", cls.DEFAULT_MIN_MEM)

    @classmethod
    def max_excess(cls) -> int:
        return cls._env_int("RLMEM_MAX_EXCESS", cls.DEFAULT_MAX_EXCESS)

    @classmethod
    def mode(cls) -> str:
        return os.getenv("RLMEM_MODE", cls.DEFAULT_MODE)

    @classmethod
    def coords(cls) -> str:
        return os.getenv("RLMEM_COORDS", cls.DEFAULT_COORDS)

    @classmethod
    def validate(cls):
        """验证环境配置是否合法"""
        if cls.threads() < 1:
            raise ValueError("❌ RLMEM_THREADS 必须 >= 1")
        if cls.min_mem() < 1:
            raise ValueError("❌ RLMEM_MIN_MEM 必须 >= 1")
        if cls.max_excess() < 0:
            raise ValueError("❌ RLMEM_MAX_EXCESS 必须 >= 0")
        if cls.mode() not in _MODES:
            raise ValueError(f"❌ RLMEM_MODE 必须是 {'/'.join(_MODES)} 之一")
        if cls.coords() not in _COORDS:
            raise ValueError(f"❌ RLMEM_COORDS 必须是 {'/'.join(_COORDS)} 之一")
        return True


@dataclass
class RunConfig:
    """一次 mems 运行的完整配置"""
    input_path: Optional[str]
    tau: int
    excess_max: int
    mode: str = "sa"
    coord_space: str = "both"
    threads: int = 1
    index_path: Optional[str] = None
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError(f"❌ --min-mem 必须 >= 1，收到 {self.tau}")
        if self.excess_max < 0:
            raise ValueError(f"❌ --max-excess 必须 >= 0，收到 {self.excess_max}")
        if self.threads < 1:
            raise ValueError(f"❌ 线程数必须 >= 1，收到 {self.threads}")
        if self.mode not in _MODES:
            raise ValueError(f"❌ 未知模式: {self.mode}")
        if self.coord_space not in _COORDS:
            raise ValueError(f"❌ 未知坐标空间: {self.coord_space}")
        if not self.input_path and not self.index_path:
            raise ValueError("❌ 需要 -i 输入文件或 --index 索引文件")


if __name__ == "__main__":
    # 测试配置
    try:
        Config.validate()
        print("✅ 配置验证成功！")
        print(f"默认线程数: {Config.threads()}")
        print(f"默认最小 MEM 长度: {Config.min_mem()}")
    except Exception as e:
        print(f"❌ 配置错误: {e}")
