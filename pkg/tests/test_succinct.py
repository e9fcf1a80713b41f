import pytest

from oracle import naive_range_count, naive_range_list, naive_rank, naive_select
from succinct import RSBitVector, SymbolNotFoundError, WaveletTree

ACA = [2, 3, 2]


def test_wavelet_examples():
    w = WaveletTree(ACA, 10)
    assert w.access(2) == 3
    assert w.rank(2, 3) == 2
    assert w.rank(3, 0) == 0
    assert w.rank(4, 3) == 0
    assert w.select(2, 2) == 3
    with pytest.raises(SymbolNotFoundError):
        w.select(3, 2)
    with pytest.raises(IndexError):
        w.access(0)
    assert WaveletTree([7], 10).access(1) == 7


def test_wavelet_range_examples():
    w = WaveletTree(ACA, 10)
    assert w.range_list(1, 3) == [(2, 0, 2), (3, 0, 1)]
    assert w.range_list(2, 2) == [(3, 0, 1)]
    assert w.range_count(1, 3, 2, 2) == 2
    assert w.range_count(1, 3, 1, 10) == 3
    assert w.range_count(1, 3, 5, 4) == 0
    assert w.range_report(1, 3, 2, 2) == [(1, 2), (3, 2)]


@pytest.mark.parametrize("size", [1, 63, 64, 65, 200])
def test_bitvector_against_scan(rng, size):
    bits = [rng.random() < 0.3 for _ in range(size)]
    bv = RSBitVector(bits)
    assert bv.ones == sum(bits)
    for i in range(size + 1):
        assert bv.rank1(i) == sum(bits[:i])
    for r in range(1, bv.ones + 1):
        assert bv.select1(r) == naive_select([int(b) for b in bits], 1, r)
    for r in range(1, bv.zeros + 1):
        assert bv.select0(r) == naive_select([int(b) for b in bits], 0, r)
    for i in range(1, size + 1):
        assert bv.access(i) == int(bits[i - 1])


def test_bitvector_all_zeros():
    bv = RSBitVector([0] * 100)
    assert all(bv.rank1(i) == 0 for i in range(101))
    with pytest.raises(SymbolNotFoundError):
        bv.select1(1)


@pytest.mark.parametrize("sigma", [2, 4, 10, 37])
def test_wavelet_against_scan(rng, sigma):
    for _ in range(7):
        seq = [rng.randint(1, sigma) for _ in range(rng.randint(1, 300))]
        w = WaveletTree(seq, sigma)
        m = len(seq)
        assert w.to_numpy().tolist() == seq
        assert sum(w.rank(c, m) for c in range(1, sigma + 1)) == m
        for _ in range(400):
            i = rng.randint(1, m)
            j = rng.randint(i, m)
            c = rng.randint(1, sigma)
            lo, hi = rng.randint(1, sigma), rng.randint(1, sigma)
            assert w.access(i) == seq[i - 1]
            assert w.rank(c, j) == naive_rank(seq, c, j)
            total = naive_rank(seq, c, m)
            if total:
                r = rng.randint(1, total)
                assert w.select(c, r) == naive_select(seq, c, r)
            triplets = w.range_list(i, j)
            assert triplets == naive_range_list(seq, i, j)
            assert sum(after - before for _, before, after in triplets) == j - i + 1
            assert w.range_count(i, j, lo, hi) == naive_range_count(seq, i, j, lo, hi)
            assert w.range_report(i, j, lo, hi) == [(p, seq[p - 1]) for p in range(i, j + 1)
                                                    if lo <= seq[p - 1] <= hi]


def test_wavelet_rejects_out_of_alphabet():
    with pytest.raises(ValueError):
        WaveletTree([0, 1], 4)
    with pytest.raises(ValueError):
        WaveletTree([5], 4)
