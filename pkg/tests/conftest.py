import os
import random
import sys

import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.append(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def rng():
    return random.Random(20241017)


@pytest.fixture
def fasta_file(tmp_path):
    """写一个 FASTA 文件并返回路径"""
    def write(records, name="reads.fa"):
        path = tmp_path / name
        with open(path, "w") as f:
            for rec_name, seq in records:
                f.write(f">{rec_name}\n")
                for i in range(0, len(seq), 10):
                    f.write(seq[i:i + 10] + "\n")
        return str(path)
    return write
