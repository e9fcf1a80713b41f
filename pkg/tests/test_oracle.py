from collection import build_collection
from memfinder import canonicalize
from oracle import (index_of, naive_bwt, naive_mems, naive_occurrences, naive_range_count,
                    naive_rank, naive_rows, naive_suffix_sort, random_reads, substring_occurrences)
from rle import compress


def rlc_of(reads):
    return compress(build_collection(reads))


def test_naive_suffix_sort_examples():
    assert naive_suffix_sort([2, 4, 2, 1]) == [4, 3, 1, 2]
    assert naive_bwt([2, 4, 2, 1], [4, 3, 1, 2]) == [2, 4, 1, 2]
    assert naive_suffix_sort([2, 1, 4, 1]) == [2, 4, 1, 3]


def test_naive_scans():
    text = [2, 4, 2, 1]
    assert naive_occurrences(text, []) == [1, 2, 3, 4]
    assert naive_occurrences(text, [2]) == [1, 3]
    assert naive_rows(text, [4, 3, 1, 2], [2]) == [2, 3]
    assert all(naive_rank([0] * 20, 1, i) == 0 for i in range(21))
    assert naive_range_count([2, 3, 2], 1, 3, 2, 2) == 2


def test_one_read_and_disjoint_reads_are_empty():
    assert naive_mems(rlc_of(["ACGTTGCA"]), 1, 10) == set()
    assert naive_mems(rlc_of(["AAAA", "CCCC"]), 1, 10) == set()


def test_hand_checked_pair():
    rlc = rlc_of(["GTACGA", "CTACGC"])
    found = {(r.id_a, r.start_a, r.end_a, r.id_b, r.start_b, r.end_b, r.length, r.excess)
             for r in naive_mems(rlc, 3, 0)}
    assert found == {(0, 2, 5, 2, 2, 5, 4, 0), (0, 1, 3, 3, 3, 5, 3, 0)}


def test_extension_is_symmetric(rng):
    for _ in range(10):
        rlc = index_of(random_reads(rng, 4)).rlc
        mems = naive_mems(rlc, 2, 1)
        for rec in mems:
            assert canonicalize(rec.swapped(), rlc) == rec
            assert rec.id_a < rec.id_b


def test_substring_occurrences_cover_all_positions():
    text = compress(build_collection(["ACGT"])).text.tolist()
    occ = substring_occurrences(text)
    singles = sorted(p for label, positions in occ.items() if len(label) == 1 for p in positions)
    assert singles == [p for p in range(1, len(text) + 1) if text[p - 1] != 1]
